#pragma once

#include <optional>

#include "iwa/fpmod.hpp"

namespace iwa {

/// Compatible family (theta_j)_j: theta_j is a quadratic d x d presentation
/// at level j, with entrywise rho(theta_j) == theta_{j-1}.
class Tower {
public:
  explicit Tower(std::vector<Presentation> levels);

  const CtxPtr &ctx() const { return levels_[0].ctx(); }
  const AbelianGroupSpec &group() const { return levels_[0].group(); }
  int size() const { return static_cast<int>(levels_.size()); }
  int dim() const { return levels_[0].rows(); }
  /// theta_j for 1 <= j <= size().
  const Presentation &level(int j) const;

private:
  std::vector<Presentation> levels_;
};

struct CompatVerdict {
  bool compatible = true;
  int level = 0, row = 0, col = 0; // first failing entry when incompatible
};

CompatVerdict check_compatibility(const Tower &T);

struct LevelChar {
  int level = 0;
  bool torsion_exact = false;
  std::optional<PrincipalIdeal> char_ideal;
  bool descent_verified = false; // against the previous level with a char
};

/// Characteristic ideals per level with the descent identity
/// rho(char_j) == char_{j-1} verified between adjacent torsion levels.
struct IdealFamily {
  std::vector<LevelChar> levels;
  std::optional<int> stabilization_level;
};

/// parallel: compute per-level chars concurrently (deterministic results).
IdealFamily levelwise_char(const Tower &T, bool parallel = false);

struct ProChar {
  int n0 = 0;        // first level from which every level is torsion
  int top_level = 0; // the representative lives here
  PrincipalIdeal generator;
  std::optional<int> stabilization_level;
};

ProChar pro_char(const Tower &T, bool parallel = false);

struct FixedPartVerdict {
  bool certified = false;
  int level = 0; // j: compares levels j+1 and j
  PowerSeriesElement projected_generator;
  PowerSeriesElement expected_generator;
};

/// Certifies pseudo-nullity of the X_{j+1}-fixed part by verifying that the
/// projected level-(j+1) characteristic generator matches the level-j one
/// canonically; on mismatch the verdict carries both generators.
FixedPartVerdict fixed_part_check(const Tower &T, int j);

/// Canonical comparison used by descent checks: canonicalizes the projection
/// of a generator and compares with the lower-level canonical generator,
/// falling back to two-sided divisibility at precision.
bool descent_matches(const PrincipalIdeal &upper, const PrincipalIdeal &lower,
                     PowerSeriesElement *projected_out = nullptr);

/// Image ideal generators under rho_<n>: projections with zeros dropped.
std::vector<PowerSeriesElement> project_ideal(const std::vector<PowerSeriesElement> &gens,
                                              int n);

struct MembershipCertificate {
  int variable_index = 0; // X_i certified to lie in the projected ideal
  std::vector<std::pair<PowerSeriesElement, int>> combination; // coeff, gen index
};

struct DemoLevel {
  int level = 0;
  std::vector<PowerSeriesElement> generators;
  std::vector<MembershipCertificate> memberships;
  bool one_excluded = false; // all generators vanish at the origin
};

struct NoncompletenessReport {
  int m = 0;
  std::vector<DemoLevel> levels;
};

/// The ideal {pX_1} union {X_i - pX_{i+1}} projected to levels 1..m: each
/// image contains (X_1,...,X_j) with machine-checked combination certificates
/// while 1 stays outside at precision.
NoncompletenessReport noncompleteness_demo(const CtxPtr &ctx, int m);

} // namespace iwa
