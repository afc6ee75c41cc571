#pragma once

#include "iwa/structure.hpp"

namespace iwa::oracle {

/// Finite shadow Q = (Z/p^a)[X_1..X_n]/(X_i^b)[G] of the working ring. The
/// reduction is a ring map as long as a <= N and D >= n(b-1)+1.
struct FiniteQuotientSpec {
  long long p = 2;
  int a = 1; // coefficients in Z/p^a
  int b = 1; // each variable nilpotent of order b
  int level = 1;
  AbelianGroupSpec group;
  long long cap = 1ll << 20; // max ring cardinality
  bool parallel = false;     // partition enumeration; results stay deterministic

  long long monomial_count() const; // b^level * |G|
  Int ring_cardinality() const;     // p^(a * monomial_count)
};

/// |coker| over the finite shadow: |Q^d| / |image of Q^e|, computed from the
/// additive span of the shifted matrix columns over Z/p^a. Deliberately
/// shares nothing with the fpmod/structure arithmetic beyond integer ops.
Int coker_cardinality(const Presentation &P, const FiniteQuotientSpec &spec);

/// Same computation by literal exhaustive enumeration of Q^e (tiny specs
/// only; used to validate the span path).
Int coker_cardinality_exhaustive(const Presentation &P,
                                 const FiniteQuotientSpec &spec,
                                 long long domain_cap = 1ll << 22);

struct CrossValidateVerdict {
  bool equal = false;
  Int enumerated;
  Int predicted;
  std::vector<Int> summand_cardinalities;
};

/// Recomputes the cardinality predicted by a decomposition (each chain
/// summand A/(c_i) and residual block fed to the same enumerator as a 1 x 1
/// presentation) and compares with the direct enumeration.
CrossValidateVerdict cross_validate(const Presentation &P,
                                    const FiniteQuotientSpec &spec);
CrossValidateVerdict cross_validate(const Presentation &P,
                                    const Decomposition &dec,
                                    const FiniteQuotientSpec &spec);

} // namespace iwa::oracle
