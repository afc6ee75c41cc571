#include <doctest.h>

#include <random>

#include "iwa/groupring.hpp"

using namespace iwa;

TEST_CASE("group ring convolution basics") {
  auto ctx = PrecisionContext::make(5, 4, 6);
  AbelianGroupSpec z4({4});
  auto g = GroupRingElement::group_element(ctx, 1, z4, {1});
  auto ginv = GroupRingElement::group_element(ctx, 1, z4, {3});
  auto one = GroupRingElement::one(ctx, 1, z4);
  CHECK(convolve(g, ginv) == one);

  auto a = g + one.scaled(2);
  CHECK(convolve(a, one) == a);

  // G = Z/2: (1+s)(1-s) = 0
  AbelianGroupSpec z2({2});
  auto s = GroupRingElement::group_element(ctx, 1, z2, {1});
  auto e = GroupRingElement::one(ctx, 1, z2);
  CHECK(convolve(e + s, e - s).is_zero());
}

TEST_CASE("idempotent split for Z/2 at p=5") {
  auto ctx = PrecisionContext::make(5, 2, 6);
  AbelianGroupSpec z2({2});
  auto idems = split_idempotents(z2, ctx, 1);
  REQUIRE(idems.size() == 2);

  // e_+- = 13 (1 +- s), since 13 = 1/2 mod 25
  auto one = GroupRingElement::one(ctx, 1, z2);
  auto s = GroupRingElement::group_element(ctx, 1, z2, {1});
  CHECK(idems[0].idempotent == (one + s).scaled(13));
  CHECK(idems[1].idempotent == (one - s).scaled(13));

  GroupRingElement sum = idems[0].idempotent + idems[1].idempotent;
  CHECK(sum == one);
  for (const auto &chi : idems) {
    CHECK(convolve(chi.idempotent, chi.idempotent) == chi.idempotent);
    // g e_chi = chi(g) e_chi
    auto lhs = convolve(s, chi.idempotent);
    auto rhs = chi.idempotent.scaled(chi.value_at({1}).residue());
    CHECK(lhs == rhs);
  }
  CHECK(convolve(idems[0].idempotent, idems[1].idempotent).is_zero());
}

TEST_CASE("split refusals") {
  auto ctx2 = PrecisionContext::make(2, 4, 6);
  AbelianGroupSpec z2({2});
  CHECK_THROWS_AS((void)split_idempotents(z2, ctx2, 1), AlgebraError);

  // exp(G) must divide p-1: Z/3 at p=5 fails
  auto ctx5 = PrecisionContext::make(5, 4, 6);
  AbelianGroupSpec z3({3});
  CHECK_THROWS_AS((void)split_idempotents(z3, ctx5, 1), AlgebraError);

  // trivial group splits anywhere
  CHECK(split_idempotents(AbelianGroupSpec{}, ctx2, 1).size() == 1);
}

TEST_CASE("idempotent axioms for Z/4 and Z/2 x Z/2 at p=5") {
  auto ctx = PrecisionContext::make(5, 3, 6);
  for (const auto &orders : {std::vector<int>{4}, std::vector<int>{2, 2}}) {
    AbelianGroupSpec G(orders);
    auto idems = split_idempotents(G, ctx, 1);
    REQUIRE(static_cast<long long>(idems.size()) == G.order());
    GroupRingElement sum = GroupRingElement::zero(ctx, 1, G);
    for (size_t i = 0; i < idems.size(); ++i) {
      sum = sum + idems[i].idempotent;
      CHECK(convolve(idems[i].idempotent, idems[i].idempotent) == idems[i].idempotent);
      for (size_t j = i + 1; j < idems.size(); ++j)
        CHECK(convolve(idems[i].idempotent, idems[j].idempotent).is_zero());
    }
    CHECK(sum == GroupRingElement::one(ctx, 1, G));
  }
}

TEST_CASE("component is a ring homomorphism with reconstruction") {
  auto ctx = PrecisionContext::make(5, 3, 5);
  AbelianGroupSpec z4({4});
  auto idems = split_idempotents(z4, ctx, 1);

  for (const auto &chi : idems) {
    CHECK(component(GroupRingElement::one(ctx, 1, z4), chi) ==
          PowerSeriesElement::one(ctx, 1));
    auto g = GroupRingElement::group_element(ctx, 1, z4, {1});
    CHECK(component(g, chi) ==
          PowerSeriesElement::constant(ctx, 1, chi.value_at({1}).residue()));
  }

  std::mt19937_64 rng(3);
  auto rand_elem = [&]() {
    GroupRingElement a = GroupRingElement::zero(ctx, 1, z4);
    for (int k = 0; k < 4; ++k) {
      PowerSeriesElement f(ctx, 1);
      for (int i = 0; i < 3; ++i)
        f.add_term(Monomial{i}, Int(static_cast<long long>(rng() % 30)));
      a.add_coefficient({k}, f);
    }
    return a;
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto a = rand_elem(), b = rand_elem();
    for (const auto &chi : idems)
      CHECK(component(convolve(a, b), chi) == component(a, chi) * component(b, chi));
    // reconstruction a = sum_chi component(a, chi) e_chi
    GroupRingElement rec = GroupRingElement::zero(ctx, 1, z4);
    for (const auto &chi : idems)
      rec = rec + chi.idempotent.scaled_series(component(a, chi));
    CHECK(rec == a);
  }
}

TEST_CASE("convolution commutes with projections coefficientwise") {
  auto ctx = PrecisionContext::make(3, 4, 6);
  AbelianGroupSpec z2({2});
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    GroupRingElement a = GroupRingElement::zero(ctx, 2, z2);
    GroupRingElement b = GroupRingElement::zero(ctx, 2, z2);
    for (int k = 0; k < 2; ++k) {
      PowerSeriesElement f(ctx, 2), g(ctx, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          f.add_term(Monomial{i, j}, Int(static_cast<long long>(rng() % 9)));
          g.add_term(Monomial{i, j}, Int(static_cast<long long>(rng() % 9)));
        }
      a.add_coefficient({k}, f);
      b.add_coefficient({k}, g);
    }
    CHECK(project_down(convolve(a, b)) == convolve(project_down(a), project_down(b)));
    CHECK(project_to(convolve(a, b), 1) ==
          convolve(project_to(a, 1), project_to(b, 1)));
  }
}
