#include <doctest.h>

#include "iwa/textio.hpp"

using namespace iwa;
namespace tio = iwa::textio;

TEST_CASE("series round trip") {
  auto ctx = PrecisionContext::make(5, 4, 8);
  auto x1 = PowerSeriesElement::variable(ctx, 2, 1);
  auto x2 = PowerSeriesElement::variable(ctx, 2, 2);
  auto f = PowerSeriesElement::constant(ctx, 2, 7) + x1 * x1.scaled(3) + x2.scaled(5);

  std::string s = tio::series_to_string(f);
  CHECK(tio::parse_series(s, ctx, 2) == f);
  CHECK(tio::series_to_string(PowerSeriesElement::zero(ctx, 2)) == "0");
  CHECK(tio::parse_series("0", ctx, 2).is_zero());

  // canonical output is stable
  CHECK(tio::series_to_string(tio::parse_series(s, ctx, 2)) == s);

  // negative coefficients are reduced
  auto g = tio::parse_series("-1*X1^1 + 626", ctx, 1);
  CHECK(g.coefficient1(0) == 1); // 626 = 625 + 1
  CHECK(g.coefficient1(1) == 624);

  CHECK_THROWS_AS((void)tio::parse_series("1*X3^1", ctx, 2), AlgebraError);
  CHECK_THROWS_AS((void)tio::parse_series("", ctx, 2), AlgebraError);
}

TEST_CASE("group entry round trip") {
  auto ctx = PrecisionContext::make(5, 3, 6);
  AbelianGroupSpec z4({4});
  GroupRingElement a = GroupRingElement::zero(ctx, 1, z4);
  a.add_coefficient({0}, PowerSeriesElement::constant(ctx, 1, 3));
  a.add_coefficient({2}, PowerSeriesElement::variable(ctx, 1, 1).scaled(2));

  std::string s = tio::entry_to_string(a);
  CHECK(tio::parse_entry(s, ctx, 1, z4) == a);
  CHECK(tio::parse_entry("0", ctx, 1, z4).is_zero());
}

TEST_CASE("presentation job round trip") {
  auto ctx = PrecisionContext::make(3, 6, 10);
  auto p = PowerSeriesElement::constant(ctx, 1, 3);
  auto x = PowerSeriesElement::variable(ctx, 1, 1);
  Presentation P = Presentation::from_series_matrix({{p, x}, {x, p * x}});

  std::string text = tio::write_presentation_job(P);
  tio::ParsedJob job = tio::parse_job(text);
  REQUIRE(job.presentation.has_value());
  CHECK(job.ctx->p() == 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(job.presentation->at(i, j) == P.at(i, j));

  // precision override reparses entries under the new context
  tio::ParsedJob job2 = tio::parse_job(text, std::make_pair(4, 6));
  CHECK(job2.ctx->coeff_precision() == 4);
  CHECK(job2.ctx->degree_cap() == 6);

  // schema tag is mandatory
  CHECK_THROWS_AS((void)tio::parse_job("context p=3 N=4 D=4\n"), AlgebraError);
  // parse errors carry line numbers
  try {
    (void)tio::parse_job("schema 1\ncontext p=3 N=4 D=4\nbogus line\n");
    CHECK(false);
  } catch (const AlgebraError &e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("tower and ideal jobs") {
  auto ctx = PrecisionContext::make(3, 6, 10);
  std::vector<Presentation> levels;
  for (int j = 1; j <= 3; ++j) {
    PowerSeriesElement f = PowerSeriesElement::constant(ctx, j, 3);
    for (int i = 1; i <= j; ++i)
      f = f + PowerSeriesElement::variable(ctx, j, i);
    levels.push_back(Presentation::from_series_matrix({{f}}));
  }
  Tower T(std::move(levels));

  tio::ParsedJob job = tio::parse_job(tio::write_tower_job(T));
  REQUIRE(job.tower.has_value());
  CHECK(job.tower->size() == 3);
  CHECK(check_compatibility(*job.tower).compatible);

  std::vector<PowerSeriesElement> gens = {
      PowerSeriesElement::variable(ctx, 2, 1).scaled(3),
      PowerSeriesElement::variable(ctx, 2, 2)};
  tio::ParsedJob ij =
      tio::parse_job(tio::write_ideal_job(ctx, AbelianGroupSpec{}, 2, gens));
  REQUIRE(ij.ideal_level.has_value());
  CHECK(*ij.ideal_level == 2);
  REQUIRE(ij.ideal_gens.size() == 2);
  CHECK(ij.ideal_gens[0] == gens[0]);
  CHECK(ij.ideal_gens[1] == gens[1]);
}

TEST_CASE("human rendering from json") {
  std::string json = R"({"command":"char","status":"ok","mu":1})";
  std::string human = tio::render_human(json);
  CHECK(human.find("command: char") != std::string::npos);
  CHECK(human.find("mu: 1") != std::string::npos);
}
