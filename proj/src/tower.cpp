#include "iwa/tower.hpp"

#include <future>

namespace iwa {

Tower::Tower(std::vector<Presentation> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) fail(ErrorKind::InvalidArgument, "tower needs at least one level");
  for (size_t i = 0; i < levels_.size(); ++i) {
    const Presentation &P = levels_[i];
    if (!P.quadratic()) fail(ErrorKind::NotQuadratic, "tower levels must be quadratic");
    if (P.level() != static_cast<int>(i) + 1)
      fail(ErrorKind::InvalidArgument, "theta_j must live at level j");
    if (P.rows() != levels_[0].rows())
      fail(ErrorKind::InvalidArgument, "tower levels must share d");
    require_same_context(*P.ctx(), *levels_[0].ctx());
    if (!(P.group() == levels_[0].group()))
      fail(ErrorKind::ContextMismatch, "tower levels must share the group");
  }
}

const Presentation &Tower::level(int j) const {
  if (j < 1 || j > size()) fail(ErrorKind::InvalidArgument, "level out of range");
  return levels_[static_cast<size_t>(j) - 1];
}

CompatVerdict check_compatibility(const Tower &T) {
  for (int j = 2; j <= T.size(); ++j) {
    Presentation down = T.level(j).project_down_entries();
    for (int i = 0; i < T.dim(); ++i)
      for (int k = 0; k < T.dim(); ++k)
        if (!(down.at(i, k) == T.level(j - 1).at(i, k)))
          return CompatVerdict{false, j, i, k};
  }
  return CompatVerdict{};
}

namespace {

PowerSeriesElement project_down_generator(const PowerSeriesElement &g) {
  return project_down(g);
}

// Canonicalize an element at its own level the way char_ideal would.
std::optional<PrincipalIdeal> canonicalize_at_level(const PowerSeriesElement &f) {
  if (f.is_zero()) return std::nullopt;
  if (f.level() <= 1) return PrincipalIdeal::level1(canonical_level1(f));
  return PrincipalIdeal::det_normalized(normalize_det_generator(f));
}

bool descent_matches_plain(const PrincipalIdeal &upper, const PrincipalIdeal &lower,
                           PowerSeriesElement *projected_out) {
  PowerSeriesElement projected = project_down_generator(upper.generator());
  if (projected_out) *projected_out = projected;
  auto canon = canonicalize_at_level(projected);
  if (!canon) return false;
  if (*canon == lower) return true;
  // Unit ambiguity fallback: equal ideals via two-sided divisibility.
  return divide_truncated(canon->generator(), lower.generator()).has_value() &&
         divide_truncated(lower.generator(), canon->generator()).has_value();
}

} // namespace

bool descent_matches(const PrincipalIdeal &upper, const PrincipalIdeal &lower,
                     PowerSeriesElement *projected_out) {
  if (upper.kind() == PrincipalIdeal::Kind::Split ||
      lower.kind() == PrincipalIdeal::Kind::Split) {
    if (upper.kind() != PrincipalIdeal::Kind::Split ||
        lower.kind() != PrincipalIdeal::Kind::Split ||
        upper.components().size() != lower.components().size())
      return false;
    for (size_t i = 0; i < upper.components().size(); ++i)
      if (!descent_matches_plain(upper.components()[i], lower.components()[i],
                                 i == 0 ? projected_out : nullptr))
        return false;
    return true;
  }
  return descent_matches_plain(upper, lower, projected_out);
}

IdealFamily levelwise_char(const Tower &T, bool parallel) {
  CompatVerdict cv = check_compatibility(T);
  if (!cv.compatible)
    fail(ErrorKind::InvalidArgument,
         "tower is not compatible at level " + std::to_string(cv.level));

  IdealFamily out;
  out.levels.resize(static_cast<size_t>(T.size()));

  auto compute_one = [&T](int j) {
    LevelChar lc;
    lc.level = j;
    TorsionVerdict tv = is_torsion(T.level(j));
    lc.torsion_exact = tv.torsion && tv.exact;
    if (lc.torsion_exact) lc.char_ideal = char_ideal(T.level(j));
    return lc;
  };

  if (parallel) {
    std::vector<std::future<LevelChar>> futs;
    futs.reserve(static_cast<size_t>(T.size()));
    for (int j = 1; j <= T.size(); ++j)
      futs.push_back(std::async(std::launch::async, compute_one, j));
    for (int j = 1; j <= T.size(); ++j)
      out.levels[static_cast<size_t>(j) - 1] = futs[static_cast<size_t>(j) - 1].get();
  } else {
    for (int j = 1; j <= T.size(); ++j)
      out.levels[static_cast<size_t>(j) - 1] = compute_one(j);
  }

  // Descent pass over adjacent levels that both carry a char.
  for (int j = 2; j <= T.size(); ++j) {
    LevelChar &hi = out.levels[static_cast<size_t>(j) - 1];
    LevelChar &lo = out.levels[static_cast<size_t>(j) - 2];
    if (!hi.char_ideal || !lo.char_ideal) continue;
    if (!descent_matches(*hi.char_ideal, *lo.char_ideal))
      fail(ErrorKind::DescentViolation,
           "projected char at level " + std::to_string(j) +
               " differs from level " + std::to_string(j - 1));
    hi.descent_verified = true;
  }

  // Stabilization: generators above s are the include_up images of gen_s
  // (meaningful only when at least one higher level witnesses it).
  for (int s = 1; s < T.size(); ++s) {
    const auto &base = out.levels[static_cast<size_t>(s) - 1];
    if (!base.char_ideal) continue;
    bool stable = true;
    for (int j = s + 1; j <= T.size() && stable; ++j) {
      const auto &up = out.levels[static_cast<size_t>(j) - 1];
      if (!up.char_ideal) { stable = false; break; }
      stable = up.char_ideal->generator() ==
               include_up(base.char_ideal->generator(), j);
    }
    if (stable) {
      out.stabilization_level = s;
      break;
    }
  }
  return out;
}

ProChar pro_char(const Tower &T, bool parallel) {
  IdealFamily fam = levelwise_char(T, parallel);
  int n0 = -1;
  for (int j = T.size(); j >= 1; --j) {
    if (!fam.levels[static_cast<size_t>(j) - 1].char_ideal) break;
    n0 = j;
  }
  if (n0 < 0)
    fail(ErrorKind::NotTorsionAtPrecision, "no torsion tail in the tower");
  const LevelChar &top = fam.levels.back();
  return ProChar{n0, T.size(), *top.char_ideal, fam.stabilization_level};
}

FixedPartVerdict fixed_part_check(const Tower &T, int j) {
  if (j < 1 || j + 1 > T.size())
    fail(ErrorKind::InvalidArgument, "fixed_part_check needs levels j and j+1");
  TorsionVerdict tj = is_torsion(T.level(j));
  TorsionVerdict tj1 = is_torsion(T.level(j + 1));
  if (!tj.torsion || !tj1.torsion)
    fail(ErrorKind::NotTorsionAtPrecision,
         "fixed-part certificate needs torsion at levels j and j+1");
  PrincipalIdeal hi = char_ideal(T.level(j + 1));
  PrincipalIdeal lo = char_ideal(T.level(j));
  FixedPartVerdict v;
  v.level = j;
  v.expected_generator = lo.generator();
  v.certified = descent_matches(hi, lo, &v.projected_generator);
  return v;
}

std::vector<PowerSeriesElement> project_ideal(const std::vector<PowerSeriesElement> &gens,
                                              int n) {
  std::vector<PowerSeriesElement> out;
  for (const auto &g : gens) {
    PowerSeriesElement h = project_to(g, std::min(n, g.level()));
    if (!h.is_zero()) out.push_back(h);
  }
  return out;
}

NoncompletenessReport noncompleteness_demo(const CtxPtr &ctx, int m) {
  if (m < 1 || m > 6)
    fail(ErrorKind::InvalidArgument, "demo level cap is 1..6");

  // Level-m representatives of {pX_1} union {X_i - pX_{i+1}}: the generator
  // X_m - pX_{m+1} becomes X_m since X_{m+1} maps to zero here.
  std::vector<PowerSeriesElement> gens;
  PowerSeriesElement px1 =
      PowerSeriesElement::variable(ctx, m, 1).scaled(Int(ctx->p()));
  gens.push_back(px1);
  for (int i = 1; i < m; ++i) {
    PowerSeriesElement g =
        PowerSeriesElement::variable(ctx, m, i) -
        PowerSeriesElement::variable(ctx, m, i + 1).scaled(Int(ctx->p()));
    gens.push_back(g);
  }
  gens.push_back(PowerSeriesElement::variable(ctx, m, m));

  NoncompletenessReport report;
  report.m = m;
  for (int j = 1; j <= m; ++j) {
    DemoLevel lvl;
    lvl.level = j;
    lvl.generators = project_ideal(gens, j);
    // Generator layout at level j: [pX_1, X_1-pX_2, ..., X_{j-1}-pX_j, X_j].
    for (int i = 1; i <= j; ++i) {
      MembershipCertificate cert;
      cert.variable_index = i;
      // X_i = sum_{k=i}^{j-1} p^{k-i} (X_k - pX_{k+1}) + p^{j-i} X_j.
      for (int k = i; k < j; ++k)
        cert.combination.push_back(
            {PowerSeriesElement::constant(ctx, j, ctx->p_pow(k - i)), k});
      cert.combination.push_back(
          {PowerSeriesElement::constant(ctx, j, ctx->p_pow(j - i)),
           static_cast<int>(lvl.generators.size()) - 1});
      PowerSeriesElement sum = PowerSeriesElement::zero(ctx, j);
      for (const auto &[coeff, idx] : cert.combination)
        sum = sum + coeff * lvl.generators[static_cast<size_t>(idx)];
      if (!(sum == PowerSeriesElement::variable(ctx, j, i)))
        fail(ErrorKind::PrecisionExhausted, "membership certificate failed to verify");
      lvl.memberships.push_back(std::move(cert));
    }
    lvl.one_excluded = true;
    for (const auto &g : lvl.generators)
      if (g.coefficient(Monomial(j, 0)) != 0) lvl.one_excluded = false;
    report.levels.push_back(std::move(lvl));
  }
  return report;
}

} // namespace iwa
