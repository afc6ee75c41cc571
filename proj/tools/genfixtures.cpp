// Writes the fixture corpus under fixtures/: deterministic, diffable job
// files for the unit/acceptance suites and the CLI determinism runs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "iwa/textio.hpp"

using namespace iwa;
namespace tio = iwa::textio;
namespace fs = std::filesystem;

namespace {

std::ofstream manifest;

void emit(const fs::path &dir, const std::string &name, const std::string &kind,
          const std::string &text) {
  fs::path path = dir / name;
  std::ofstream out(path);
  out << text;
  manifest << kind << " " << name << "\n";
}

PowerSeriesElement poly1(const CtxPtr &ctx, std::vector<long long> coeffs) {
  PowerSeriesElement f(ctx, 1);
  for (size_t i = 0; i < coeffs.size(); ++i)
    f.add_term(Monomial{static_cast<int>(i)}, coeffs[i]);
  return f;
}

// Small atoms whose products make chain-divisible diagonal entries.
std::vector<PowerSeriesElement> atom_pool(const CtxPtr &ctx) {
  long long p = ctx->p();
  std::vector<PowerSeriesElement> pool = {
      PowerSeriesElement::constant(ctx, 1, p), // p
      poly1(ctx, {0, 1}),                      // X
      poly1(ctx, {p, 1}),                      // X + p
      poly1(ctx, {-p, 0, 1}),                  // X^2 - p (Eisenstein)
      poly1(ctx, {p * p, 1}),                  // X + p^2
  };
  if (p > 2) pool.push_back(poly1(ctx, {2 * p, 1})); // X + 2p
  return pool;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  long long next(long long bound) { return static_cast<long long>(gen() % static_cast<unsigned long long>(bound)); }
};

PowerSeriesElement random_product(const std::vector<PowerSeriesElement> &pool,
                                  const CtxPtr &ctx, Rng &rng, int count) {
  PowerSeriesElement f = PowerSeriesElement::one(ctx, 1);
  for (int i = 0; i < count; ++i)
    f = f * pool[static_cast<size_t>(rng.next(static_cast<long long>(pool.size())))];
  return f;
}

PowerSeriesElement random_small_series(const CtxPtr &ctx, Rng &rng) {
  PowerSeriesElement f(ctx, 1);
  for (int d = 0; d <= 2; ++d)
    f.add_term(Monomial{d}, Int(rng.next(ctx->p() * ctx->p())));
  return f;
}

// U D V with D = diag(c1, c1*extra) and elementary unimodular U, V.
Presentation quad_fixture(const CtxPtr &ctx, Rng &rng) {
  auto pool = atom_pool(ctx);
  while (true) {
    PowerSeriesElement c1 = random_product(pool, ctx, rng, static_cast<int>(rng.next(3)));
    PowerSeriesElement extra = random_product(pool, ctx, rng, 1 + static_cast<int>(rng.next(2)));
    PowerSeriesElement c2 = c1 * extra;
    if (c1.is_zero() || c2.is_zero()) continue;
    if ((c1 * c2).degree() >= ctx->degree_cap() - 4) continue;

    auto z = PowerSeriesElement::zero(ctx, 1);
    std::vector<std::vector<PowerSeriesElement>> m = {{c1, z}, {z, c2}};
    // left: row0 += f row1; right: col1 += g col0
    PowerSeriesElement f = random_small_series(ctx, rng);
    PowerSeriesElement g = random_small_series(ctx, rng);
    m[0][1] = m[0][1] + f * m[1][1];
    m[0][0] = m[0][0];
    std::vector<std::vector<PowerSeriesElement>> out = m;
    out[0][1] = out[0][1] + out[0][0] * g;
    out[1][1] = out[1][1] + out[1][0] * g;
    return Presentation::from_series_matrix(out);
  }
}

Presentation quad1_fixture(const CtxPtr &ctx, Rng &rng) {
  auto pool = atom_pool(ctx);
  while (true) {
    PowerSeriesElement c = random_product(pool, ctx, rng, 1 + static_cast<int>(rng.next(3)));
    if (c.is_zero() || c.degree() >= ctx->degree_cap() - 4) continue;
    return Presentation::from_series_matrix({{c}});
  }
}

Tower sum_tower(const CtxPtr &ctx, int m) {
  std::vector<Presentation> levels;
  for (int j = 1; j <= m; ++j) {
    PowerSeriesElement f = PowerSeriesElement::constant(ctx, j, ctx->p());
    for (int i = 1; i <= j; ++i)
      f = f + PowerSeriesElement::variable(ctx, j, i);
    levels.push_back(Presentation::from_series_matrix({{f}}));
  }
  return Tower(std::move(levels));
}

Tower constant_tower(const CtxPtr &ctx, int m) {
  auto p = PowerSeriesElement::constant(ctx, 1, ctx->p());
  auto x = PowerSeriesElement::variable(ctx, 1, 1);
  auto z = PowerSeriesElement::zero(ctx, 1);
  Presentation base = Presentation::from_series_matrix({{p, z}, {z, x}});
  std::vector<Presentation> levels;
  for (int j = 1; j <= m; ++j) levels.push_back(base.include_up_entries(j));
  return Tower(std::move(levels));
}

Tower mixed_tower(const CtxPtr &ctx, int m, Rng &rng) {
  auto p = PowerSeriesElement::constant(ctx, 1, ctx->p());
  auto x1 = PowerSeriesElement::variable(ctx, 1, 1);
  auto z = PowerSeriesElement::zero(ctx, 1);
  Presentation base =
      Presentation::from_series_matrix({{p + x1, x1, z}, {z, x1, p}, {z, z, p}});
  std::vector<Presentation> levels{base};
  for (int j = 2; j <= m; ++j) {
    Presentation up = levels.back().include_up_entries(j);
    PowerSeriesElement xj = PowerSeriesElement::variable(ctx, j, j);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (rng.next(2) == 0)
          up.set(r, c,
                 up.at(r, c) + GroupRingElement::from_series(
                                   xj.scaled(Int(rng.next(ctx->p()))), AbelianGroupSpec{}));
    levels.push_back(std::move(up));
  }
  return Tower(std::move(levels));
}

} // namespace

int main(int argc, char **argv) {
  fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
  fs::create_directories(dir);
  manifest.open(dir / "manifest.txt");

  char name[128];

  // Quadratic level-1 corpus: chain-divisible diagonals under unimodular
  // transforms, d in {1, 2}, 60 per prime.
  for (long long p : {2, 3}) {
    auto ctx = PrecisionContext::make(p, 8, 16);
    Rng rng(1000 + static_cast<unsigned long long>(p));
    for (int i = 0; i < 60; ++i) {
      Presentation P = (i % 3 == 0) ? quad1_fixture(ctx, rng) : quad_fixture(ctx, rng);
      std::snprintf(name, sizeof name, "corpus_p%lld_q%03d.job", p, i);
      emit(dir, name, "quad", tio::write_presentation_job(P));
    }
  }

  // Handmade presentations.
  {
    auto ctx = PrecisionContext::make(3, 8, 16);
    auto p = PowerSeriesElement::constant(ctx, 1, 3);
    auto x = PowerSeriesElement::variable(ctx, 1, 1);
    auto z = PowerSeriesElement::zero(ctx, 1);
    emit(dir, "diag_p_x_p3.job", "quad-nc",
         tio::write_presentation_job(
             Presentation::from_series_matrix({{p, z}, {z, x}})));
    emit(dir, "ut_x_p_x_p3.job", "quad-nc",
         tio::write_presentation_job(
             Presentation::from_series_matrix({{x, p}, {z, x}})));
    emit(dir, "wide_p_x_p3.job", "wide",
         tio::write_presentation_job(Presentation::from_series_matrix({{p, x}})));

    auto x1 = PowerSeriesElement::variable(ctx, 2, 1);
    auto p2 = PowerSeriesElement::constant(ctx, 2, 3);
    emit(dir, "level2_wide_p3.job", "level2",
         tio::write_presentation_job(Presentation::from_series_matrix({{p2, x1}})));
    auto x2 = PowerSeriesElement::variable(ctx, 2, 2);
    auto z2l = PowerSeriesElement::zero(ctx, 2);
    emit(dir, "level2_quad_p3.job", "level2-quad",
         tio::write_presentation_job(Presentation::from_series_matrix(
             {{p2 + x1 + x2, z2l}, {z2l, x1 + p2}})));
  }

  // Towers.
  {
    auto ctx3 = PrecisionContext::make(3, 8, 16);
    emit(dir, "tower_sum_p3.job", "tower", tio::write_tower_job(sum_tower(ctx3, 4)));
    emit(dir, "tower_const_p3.job", "tower",
         tio::write_tower_job(constant_tower(ctx3, 4)));
    auto ctx5 = PrecisionContext::make(5, 8, 16);
    Rng rng(77);
    emit(dir, "tower_mixed_p5.job", "tower",
         tio::write_tower_job(mixed_tower(ctx5, 4, rng)));

    Presentation t1 =
        Presentation::from_series_matrix({{PowerSeriesElement::one(ctx3, 1)}});
    Presentation t2 = Presentation::from_series_matrix(
        {{PowerSeriesElement::variable(ctx3, 2, 2)}});
    emit(dir, "tower_bad_p3.job", "tower-bad", tio::write_tower_job(Tower({t1, t2})));
  }

  // Group-ring presentations.
  {
    auto ctx = PrecisionContext::make(5, 8, 16);
    AbelianGroupSpec z2({2});
    auto p = PowerSeriesElement::constant(ctx, 1, 5);
    auto x = PowerSeriesElement::variable(ctx, 1, 1);
    GroupRingElement a = GroupRingElement::from_series(p + x, z2);
    a.add_coefficient({1}, x);
    GroupRingElement b = GroupRingElement::from_series(x * x + p, z2);
    Presentation P(ctx, 1, z2, 2, 2);
    P.set(0, 0, a);
    P.set(1, 1, b);
    emit(dir, "group_p5_z2.job", "group", tio::write_presentation_job(P));

    AbelianGroupSpec z4({4});
    Presentation Q(ctx, 1, z4, 1, 1);
    GroupRingElement c = GroupRingElement::from_series(p + x, z4);
    c.add_coefficient({2}, x.scaled(2));
    Q.set(0, 0, c);
    emit(dir, "group_p5_z4.job", "group", tio::write_presentation_job(Q));

    auto ctx2 = PrecisionContext::make(2, 8, 16);
    Presentation R(ctx2, 1, z2, 1, 1);
    R.set(0, 0, GroupRingElement::from_series(
                    PowerSeriesElement::variable(ctx2, 1, 1), z2));
    emit(dir, "group_p2_z2.job", "group-bad", tio::write_presentation_job(R));
  }

  // Ideal blocks and a context-only job.
  {
    auto ctx5 = PrecisionContext::make(5, 8, 16);
    emit(dir, "prep_p5.job", "ideal",
         tio::write_ideal_job(ctx5, AbelianGroupSpec{}, 1,
                              {poly1(ctx5, {5, 5}), poly1(ctx5, {5, 1}),
                               poly1(ctx5, {0, 5, 1})}));
    auto ctx3 = PrecisionContext::make(3, 8, 16);
    emit(dir, "demo_p3.job", "context",
         "schema 1\ncontext p=3 N=8 D=16\n");
  }

  manifest.close();
  std::cout << "fixtures written to " << dir.string() << "\n";
  return 0;
}
