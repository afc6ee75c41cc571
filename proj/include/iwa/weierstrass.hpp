#pragma once

#include <utility>
#include <vector>

#include "iwa/series.hpp"

namespace iwa {

/// Weierstrass factorization data for a level-1 element:
/// unit * p^mu * distinguished == input mod (p^N, X^D), with distinguished
/// monic of degree lambda and all lower coefficients divisible by p.
struct WeierstrassData {
  int mu = 0;
  int lambda = 0;
  PowerSeriesElement distinguished;
  PowerSeriesElement unit;
};

/// Canonical generator of a principal ideal of Z_p[[X]] at precision:
/// p^mu times a monic distinguished polynomial (unit part discarded).
struct Level1Canonical {
  int mu = 0;
  PowerSeriesElement poly; // monic distinguished, degree = lambda

  int lambda() const { return poly.degree() < 0 ? 0 : poly.degree(); }
  bool is_unit_ideal() const { return mu == 0 && lambda() == 0; }
  /// The generator p^mu * poly as a ring element.
  PowerSeriesElement element() const { return multiply_p_power(poly, mu); }
};

WeierstrassData weierstrass_prepare(const PowerSeriesElement &f);

/// Canonical form of the principal ideal (f), f a nonzero level-1 element.
Level1Canonical canonical_level1(const PowerSeriesElement &f);

/// Canonical gcd of (f) and (g): p^min(mu) times the monic gcd of the
/// distinguished parts, computed by a Euclidean remainder sequence with
/// Weierstrass re-preparation of each remainder. Result divides both inputs
/// at precision (verified).
Level1Canonical gcd_level1(const PowerSeriesElement &f,
                           const PowerSeriesElement &g);
Level1Canonical gcd_level1(const Level1Canonical &a, const Level1Canonical &b);

/// Whether the canonical ideal (c) contains f, i.e. c divides f at precision.
bool divides_level1(const Level1Canonical &c, const PowerSeriesElement &f);
bool divides_level1(const Level1Canonical &c, const Level1Canonical &f);

/// Exact quotient of canonical forms (b must divide a; verified).
Level1Canonical quotient_level1(const Level1Canonical &a,
                                const Level1Canonical &b);

Level1Canonical product_level1(const Level1Canonical &a,
                               const Level1Canonical &b);

/// Quotient of level-1 polynomials by a monic divisor, accepted only when the
/// remainder vanishes exactly at the full stored precision.
std::optional<PowerSeriesElement> poly_divide_exact(const PowerSeriesElement &f,
                                                    const PowerSeriesElement &monic);

struct DistinguishedFactor {
  PowerSeriesElement factor; // monic distinguished, irreducible when certified
  int multiplicity = 1;
};

struct PartialFactorization {
  std::vector<DistinguishedFactor> factors;
  /// Residual monic distinguished cofactor the certified moves could not
  /// split; equal to 1 when the factorization is complete.
  PowerSeriesElement residual;
  bool complete() const { return residual.degree() <= 0; }
};

/// Certified-only factorization of a monic distinguished polynomial: exact
/// X-power split, simple-root Hensel lifts per integer polygon slope, and
/// Eisenstein/inert single-segment criteria. Never guesses: whatever remains
/// is returned as the residual.
PartialFactorization factor_partial(const PowerSeriesElement &P);

/// Strict factorization into distinguished irreducibles; rejects inputs whose
/// mod-p image mixes an exact X-power with a further factor sharing the root
/// X, and inputs whose residual cannot be certified.
std::vector<DistinguishedFactor> factor_distinguished(const PowerSeriesElement &P);

} // namespace iwa
