#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwa/groupring.hpp"
#include "iwa/weierstrass.hpp"

namespace iwa {

/// Finite presentation of M = coker(theta): a d x e matrix over A_n = R_n[G]
/// (G possibly trivial); quadratic when e == d.
class Presentation {
public:
  Presentation(CtxPtr ctx, int level, AbelianGroupSpec group, int rows, int cols);

  static Presentation from_series_matrix(const std::vector<std::vector<PowerSeriesElement>> &m);

  const CtxPtr &ctx() const { return ctx_; }
  int level() const { return level_; }
  const AbelianGroupSpec &group() const { return group_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool quadratic() const { return rows_ == cols_; }

  const GroupRingElement &at(int i, int j) const;
  void set(int i, int j, GroupRingElement v);

  /// Entrywise rho: the level-(n-1) presentation.
  Presentation project_down_entries() const;
  Presentation project_to_entries(int n) const;
  Presentation include_up_entries(int m) const;

  /// Entrywise character component (trivial-group presentation over R_n).
  Presentation component(const CharacterIdempotent &chi) const;

private:
  CtxPtr ctx_;
  int level_;
  AbelianGroupSpec group_;
  int rows_, cols_;
  std::vector<GroupRingElement> entries_;
};

/// Canonical generator of a principal ideal. Level-1 ideals are stored as
/// p^mu times a monic distinguished polynomial; level >= 2 ideals as a
/// determinant normalized so that the grlex-leading coefficient of the lowest
/// nonzero homogeneous part is an exact p-power; split ideals carry one
/// canonical generator per character.
class PrincipalIdeal {
public:
  enum class Kind { Level1, Det, Split };

  static PrincipalIdeal level1(Level1Canonical c);
  static PrincipalIdeal det_normalized(PowerSeriesElement g);
  static PrincipalIdeal split(std::vector<PrincipalIdeal> components);

  Kind kind() const { return kind_; }
  /// mu / lambda of a level-1 canonical form.
  int mu() const;
  int lambda() const;
  const Level1Canonical &level1_form() const;
  const PowerSeriesElement &generator() const { return generator_; }
  const std::vector<PrincipalIdeal> &components() const { return components_; }

  bool is_unit_ideal() const;
  bool operator==(const PrincipalIdeal &rhs) const;

private:
  PrincipalIdeal() = default;

  Kind kind_ = Kind::Level1;
  Level1Canonical level1_{};
  PowerSeriesElement generator_;
  std::vector<PrincipalIdeal> components_;
};

/// Deterministic unit normalization of a nonzero element: scale by the
/// constant unit making the grlex-leading coefficient of the lowest-degree
/// nonzero homogeneous part equal to p^(its valuation).
PowerSeriesElement normalize_det_generator(const PowerSeriesElement &f);

struct TorsionVerdict {
  bool torsion = false;
  bool exact = false; // false: all minors vanish at precision
};

/// All d x d minors of the presentation matrix (cofactor expansion with
/// shared sub-minor memoization), duplicates and zeros removed, in a
/// deterministic order. Dimensions are capped at 8.
std::vector<GroupRingElement> fitting0(const Presentation &P);

GroupRingElement det_quadratic(const Presentation &P);

TorsionVerdict is_torsion(const Presentation &P);

PrincipalIdeal char_ideal(const Presentation &P);

struct PseudoNullVerdict {
  bool pseudo_null = false;
  bool exact = true;
};

PseudoNullVerdict is_pseudo_null(const Presentation &P);

/// Prime descriptor in a support report: the prime p, or an irreducible
/// distinguished polynomial.
struct PrimeDescriptor {
  bool is_p = false;
  PowerSeriesElement poly; // meaningful when !is_p

  std::string label() const;
};

struct SupportEntry {
  PrimeDescriptor prime;
  int multiplicity = 1;
};

struct SupportComponent {
  std::vector<int> character; // empty for the unsplit/trivial case
  std::vector<SupportEntry> entries;
  std::vector<PowerSeriesElement> unfactored_blocks;
};

struct SupportReport {
  std::vector<SupportComponent> components;
};

SupportReport support_primes(const Presentation &P);

struct MultiplicativityVerdict {
  bool product_ok = false;
  bool inclusion_ok = false;
  PrincipalIdeal char1, char3, char2, product;
};

/// Builds P2 = [[theta1, B],[0, theta3]] with a seeded random coupling block
/// and verifies char(P2) = char(P1) char(P3) and char(P2) contained in
/// char(P3) by divisibility.
MultiplicativityVerdict check_multiplicativity(const Presentation &P1,
                                               const Presentation &P3,
                                               unsigned long long seed = 1);

struct PseudoNullCertificate {
  int gen_index_a = 0, gen_index_b = 0;
  PowerSeriesElement specialization_a, specialization_b;
};

/// Sufficient condition for pseudo-nullity at level >= 2: two Fit0 generators
/// whose specializations X_i := 0 (i >= 2) are coprime at level 1. Returns a
/// certificate or nothing (never a "false").
std::optional<PseudoNullCertificate> pseudo_null_sufficient(const Presentation &P);

} // namespace iwa
