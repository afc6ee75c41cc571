#include <doctest.h>

#include <array>
#include <random>

#include "iwa/weierstrass.hpp"

using namespace iwa;

namespace {

PowerSeriesElement poly1(const CtxPtr &ctx, std::vector<long long> coeffs) {
  PowerSeriesElement f(ctx, 1);
  for (size_t i = 0; i < coeffs.size(); ++i)
    f.add_term(Monomial{static_cast<int>(i)}, coeffs[i]);
  return f;
}

bool roundtrip_ok(const PowerSeriesElement &f) {
  WeierstrassData w = weierstrass_prepare(f);
  return multiply_p_power(w.unit * w.distinguished, w.mu) == f;
}

} // namespace

TEST_CASE("weierstrass preparation examples") {
  auto ctx = PrecisionContext::make(5, 6, 10);
  long long p = 5;

  // f = p + X -> mu 0, lambda 1, distinguished X + p, unit 1
  auto f1 = poly1(ctx, {p, 1});
  WeierstrassData w1 = weierstrass_prepare(f1);
  CHECK(w1.mu == 0);
  CHECK(w1.lambda == 1);
  CHECK(w1.distinguished == poly1(ctx, {p, 1}));
  CHECK(w1.unit == PowerSeriesElement::one(ctx, 1));
  CHECK(roundtrip_ok(f1));

  // f = p(1 + X) -> mu 1, lambda 0
  auto f2 = poly1(ctx, {p, p});
  WeierstrassData w2 = weierstrass_prepare(f2);
  CHECK(w2.mu == 1);
  CHECK(w2.lambda == 0);
  CHECK(w2.distinguished == PowerSeriesElement::one(ctx, 1));
  CHECK(w2.unit == poly1(ctx, {1, 1}));
  CHECK(roundtrip_ok(f2));

  // f = pX + X^2 -> mu 0, lambda 2, distinguished X^2 + pX, unit 1
  auto f3 = poly1(ctx, {0, p, 1});
  WeierstrassData w3 = weierstrass_prepare(f3);
  CHECK(w3.mu == 0);
  CHECK(w3.lambda == 2);
  CHECK(w3.distinguished == f3);
  CHECK(roundtrip_ok(f3));

  CHECK_THROWS_AS((void)weierstrass_prepare(PowerSeriesElement::zero(ctx, 1)),
                  AlgebraError);
}

TEST_CASE("weierstrass roundtrip on random series") {
  std::mt19937_64 rng(42);
  for (long long p : {2, 3, 5}) {
    auto ctx = PrecisionContext::make(p, 8, 12);
    for (int trial = 0; trial < 60; ++trial) {
      PowerSeriesElement f(ctx, 1);
      for (int i = 0; i < 12; ++i)
        if (rng() % 3 != 0)
          f.add_term(Monomial{i}, Int(static_cast<long long>(rng() % 1000)));
      // force a unit coefficient somewhere below degree 6
      f.add_term(Monomial{static_cast<int>(rng() % 6)}, 1 + p * Int(static_cast<long long>(rng() % 7)));
      if (f.is_zero()) continue;
      WeierstrassData w = weierstrass_prepare(f);
      CHECK(multiply_p_power(w.unit * w.distinguished, w.mu) == f);
      CHECK(is_unit(w.unit));
      // distinguished: monic with p-divisible lower coefficients
      CHECK(w.distinguished.coefficient1(w.lambda) == 1);
      for (int i = 0; i < w.lambda; ++i)
        CHECK(w.distinguished.coefficient1(i) % p == 0);
    }
  }
}

TEST_CASE("gcd examples") {
  auto ctx = PrecisionContext::make(5, 6, 10);
  long long p = 5;
  auto x = poly1(ctx, {0, 1});

  // (pX, X^2) -> X
  Level1Canonical g1 = gcd_level1(poly1(ctx, {0, p}), poly1(ctx, {0, 0, 1}));
  CHECK(g1.mu == 0);
  CHECK(g1.poly == x);
  CHECK(divides_level1(g1, poly1(ctx, {0, p})));
  CHECK(divides_level1(g1, poly1(ctx, {0, 0, 1})));

  // (p f, f) -> canonical form of f
  auto f = poly1(ctx, {p, 1, 1});
  Level1Canonical cf = canonical_level1(f);
  Level1Canonical g2 = gcd_level1(f.scaled(p), f);
  CHECK(g2.mu == cf.mu);
  CHECK(g2.poly == cf.poly);

  // (X+p, X-p) coprime for odd p
  Level1Canonical g3 = gcd_level1(poly1(ctx, {p, 1}), poly1(ctx, {-p, 1}));
  CHECK(g3.is_unit_ideal());
}

TEST_CASE("gcd against exhaustive low-degree divisor search") {
  // Tiny parameters: p=2, N=3, D=3. The search multiplies candidate pairs
  // over the integers (truncating only at X^D) so that wraparound mod p^N
  // cannot fake a divisor; every genuine common divisor found this way must
  // divide the computed gcd at precision.
  auto ctx = PrecisionContext::make(2, 3, 3);
  const int B = 8; // coefficient range of the search
  using Zpoly = std::array<long long, 3>;
  // Full integer product; a witness only counts when nothing spills past
  // the degree cap, so nilpotency of X cannot fake a divisor either.
  auto zmul = [](const Zpoly &a, const Zpoly &b, bool &exact) {
    Zpoly c{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i + j < 3)
          c[i + j] += a[i] * b[j];
        else if (a[i] * b[j] != 0)
          exact = false;
      }
    return c;
  };
  std::vector<Zpoly> all;
  for (int c0 = 0; c0 < B; ++c0)
    for (int c1 = 0; c1 < B; ++c1)
      for (int c2 = 0; c2 < B; ++c2) all.push_back(Zpoly{c0, c1, c2});
  auto divides_exact = [&](const Zpoly &h, const Zpoly &f) {
    for (const auto &q : all) {
      bool exact = true;
      if (zmul(q, h, exact) == f && exact) return true;
    }
    return false;
  };
  auto lift = [&](const Zpoly &a) {
    return poly1(ctx, {a[0], a[1], a[2]});
  };

  std::vector<std::pair<Zpoly, Zpoly>> cases = {
      {{0, 2, 0}, {0, 0, 1}},
      {{2, 1, 0}, {0, 1, 0}},
      {{0, 0, 1}, {0, 1, 1}},
      {{0, 2, 1}, {0, 0, 2}},
  };
  for (const auto &[f, g] : cases) {
    Level1Canonical d = gcd_level1(lift(f), lift(g));
    for (const auto &h : all) {
      if (h == Zpoly{0, 0, 0}) continue;
      if (!divides_exact(h, f) || !divides_exact(h, g)) continue;
      PowerSeriesElement he = lift(h);
      if (he.is_zero()) continue;
      // h | f and h | g exactly, hence h must divide the gcd at precision
      CHECK(divides_level1(canonical_level1(he), d.element()));
    }
  }
}

TEST_CASE("factor_distinguished examples") {
  auto ctx = PrecisionContext::make(3, 6, 10);
  long long p = 3;
  auto x = poly1(ctx, {0, 1});

  // X^2 + pX = X(X+p) is rejected: X^2 mod p
  CHECK_THROWS_AS((void)factor_distinguished(poly1(ctx, {0, p, 1})), AlgebraError);

  // degree 1 is itself
  auto lin = poly1(ctx, {p, 1});
  auto f1 = factor_distinguished(lin);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].factor == lin);
  CHECK(f1[0].multiplicity == 1);

  // X^2 - p is irreducible over Z_3 (Eisenstein); also confirmed by
  // exhaustive root search at small precision.
  auto eis = poly1(ctx, {-p, 0, 1});
  for (long long r = 0; r < 27; ++r)
    CHECK((Int(r) * r - p) % 27 != 0);
  auto f2 = factor_distinguished(eis);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].factor == eis);

  // pure X powers split off exactly
  auto f3 = factor_distinguished(x * x * x);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].factor == x);
  CHECK(f3[0].multiplicity == 3);
}

TEST_CASE("factor_partial splits mixed X powers and simple roots") {
  auto ctx = PrecisionContext::make(3, 6, 12);
  long long p = 3;
  auto x = poly1(ctx, {0, 1});

  // X(X+p): partial factorization is complete even though the strict op
  // rejects it.
  PartialFactorization pf = factor_partial(poly1(ctx, {0, p, 1}));
  CHECK(pf.complete());
  REQUIRE(pf.factors.size() == 2);
  CHECK(pf.factors[0].factor == x);
  CHECK(pf.factors[1].factor == poly1(ctx, {p, 1}));

  // distinct simple roots at the same slope: (X+p)(X+2p)
  auto f = poly1(ctx, {p, 1}) * poly1(ctx, {2 * p, 1});
  PartialFactorization pf2 = factor_partial(f);
  CHECK(pf2.complete());
  CHECK(pf2.factors.size() == 2);

  // different slopes: (X+p)(X+p^2)
  auto g = poly1(ctx, {p, 1}) * poly1(ctx, {p * p, 1});
  PartialFactorization pf3 = factor_partial(g);
  CHECK(pf3.complete());
  CHECK(pf3.factors.size() == 2);

  // (X+p)^2 has a double root mod p: stays as a residual block
  auto h = poly1(ctx, {p, 1}) * poly1(ctx, {p, 1});
  PartialFactorization pf4 = factor_partial(h);
  CHECK(!pf4.complete());
  CHECK(pf4.factors.empty());
  CHECK(pf4.residual == h);
}

TEST_CASE("canonical product and quotient") {
  auto ctx = PrecisionContext::make(5, 8, 10);
  Level1Canonical a{1, poly1(ctx, {5, 1})};
  Level1Canonical b{2, poly1(ctx, {0, 1})};
  Level1Canonical ab = product_level1(a, b);
  CHECK(ab.mu == 3);
  CHECK(ab.poly == poly1(ctx, {5, 1}) * poly1(ctx, {0, 1}));
  Level1Canonical q = quotient_level1(ab, a);
  CHECK(q.mu == b.mu);
  CHECK(q.poly == b.poly);
}

TEST_CASE("random gcd divides both inputs") {
  std::mt19937_64 rng(5);
  for (long long p : {2, 3, 5}) {
    auto ctx = PrecisionContext::make(p, 8, 12);
    for (int trial = 0; trial < 40; ++trial) {
      PowerSeriesElement f(ctx, 1), g(ctx, 1);
      for (int i = 0; i < 6; ++i) {
        if (rng() % 2) f.add_term(Monomial{i}, Int(static_cast<long long>(rng() % 200)));
        if (rng() % 2) g.add_term(Monomial{i}, Int(static_cast<long long>(rng() % 200)));
      }
      if (f.is_zero() || g.is_zero()) continue;
      Level1Canonical d = gcd_level1(f, g);
      CHECK(divides_level1(d, f));
      CHECK(divides_level1(d, g));
    }
  }
}
