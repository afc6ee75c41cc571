#include "iwa/fpmod.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

namespace iwa {

Presentation::Presentation(CtxPtr ctx, int level, AbelianGroupSpec group,
                           int rows, int cols)
    : ctx_(std::move(ctx)), level_(level), group_(std::move(group)),
      rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1)
    fail(ErrorKind::InvalidArgument, "presentation needs d >= 1, e >= 1");
  if (rows > 8 || cols > 8)
    fail(ErrorKind::UnsupportedShape, "presentation dimensions are capped at 8");
  entries_.assign(static_cast<size_t>(rows) * cols,
                  GroupRingElement::zero(ctx_, level_, group_));
}

Presentation Presentation::from_series_matrix(
    const std::vector<std::vector<PowerSeriesElement>> &m) {
  if (m.empty() || m[0].empty())
    fail(ErrorKind::InvalidArgument, "empty matrix");
  Presentation P(m[0][0].ctx(), m[0][0].level(), AbelianGroupSpec{},
                 static_cast<int>(m.size()), static_cast<int>(m[0].size()));
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m[0].size())
      fail(ErrorKind::InvalidArgument, "ragged matrix");
    for (size_t j = 0; j < m[i].size(); ++j)
      P.set(static_cast<int>(i), static_cast<int>(j),
            GroupRingElement::from_series(m[i][j], AbelianGroupSpec{}));
  }
  return P;
}

const GroupRingElement &Presentation::at(int i, int j) const {
  return entries_[static_cast<size_t>(i) * cols_ + j];
}

void Presentation::set(int i, int j, GroupRingElement v) {
  require_same_context(*ctx_, *v.ctx());
  if (v.level() != level_ || !(v.group() == group_))
    fail(ErrorKind::ContextMismatch, "entry level or group mismatch");
  entries_[static_cast<size_t>(i) * cols_ + j] = std::move(v);
}

Presentation Presentation::project_down_entries() const {
  if (level_ == 0) fail(ErrorKind::LevelUnderflow, "project at level 0");
  Presentation out(ctx_, level_ - 1, group_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, project_down(at(i, j)));
  return out;
}

Presentation Presentation::project_to_entries(int n) const {
  Presentation out = *this;
  while (out.level() > n) out = out.project_down_entries();
  return out;
}

Presentation Presentation::include_up_entries(int m) const {
  Presentation out(ctx_, m, group_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, include_up(at(i, j), m));
  return out;
}

Presentation Presentation::component(const CharacterIdempotent &chi) const {
  Presentation out(ctx_, level_, AbelianGroupSpec{}, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      out.set(i, j, GroupRingElement::from_series(iwa::component(at(i, j), chi),
                                                  AbelianGroupSpec{}));
  return out;
}

PrincipalIdeal PrincipalIdeal::level1(Level1Canonical c) {
  PrincipalIdeal out;
  out.kind_ = Kind::Level1;
  out.generator_ = c.element();
  out.level1_ = std::move(c);
  return out;
}

PrincipalIdeal PrincipalIdeal::det_normalized(PowerSeriesElement g) {
  PrincipalIdeal out;
  out.kind_ = Kind::Det;
  out.generator_ = std::move(g);
  return out;
}

PrincipalIdeal PrincipalIdeal::split(std::vector<PrincipalIdeal> components) {
  if (components.empty())
    fail(ErrorKind::InvalidArgument, "split ideal needs components");
  PrincipalIdeal out;
  out.kind_ = Kind::Split;
  out.generator_ = components[0].generator_;
  out.components_ = std::move(components);
  return out;
}

int PrincipalIdeal::mu() const {
  if (kind_ != Kind::Level1) fail(ErrorKind::UnsupportedShape, "mu needs a level-1 form");
  return level1_.mu;
}

int PrincipalIdeal::lambda() const {
  if (kind_ != Kind::Level1) fail(ErrorKind::UnsupportedShape, "lambda needs a level-1 form");
  return level1_.lambda();
}

const Level1Canonical &PrincipalIdeal::level1_form() const {
  if (kind_ != Kind::Level1)
    fail(ErrorKind::UnsupportedShape, "no level-1 canonical form");
  return level1_;
}

bool PrincipalIdeal::is_unit_ideal() const {
  switch (kind_) {
  case Kind::Level1: return level1_.is_unit_ideal();
  case Kind::Det: return is_unit(generator_);
  case Kind::Split:
    return std::all_of(components_.begin(), components_.end(),
                       [](const PrincipalIdeal &c) { return c.is_unit_ideal(); });
  }
  return false;
}

bool PrincipalIdeal::operator==(const PrincipalIdeal &rhs) const {
  if (kind_ != rhs.kind_) return false;
  if (kind_ == Kind::Split) {
    if (components_.size() != rhs.components_.size()) return false;
    for (size_t i = 0; i < components_.size(); ++i)
      if (!(components_[i] == rhs.components_[i])) return false;
    return true;
  }
  return generator_ == rhs.generator_;
}

PowerSeriesElement normalize_det_generator(const PowerSeriesElement &f) {
  if (f.is_zero())
    fail(ErrorKind::InvalidArgument, "cannot normalize the zero element");
  const auto &ctx = *f.ctx();
  // Terms are grlex-ascending, so the lowest homogeneous part is a prefix;
  // its grlex-largest monomial is the last term of that prefix.
  int low_deg = total_degree(f.terms().begin()->first);
  Int lead = 0;
  for (const auto &[m, c] : f.terms()) {
    if (total_degree(m) != low_deg) break;
    lead = c;
  }
  Valuation v = val_p(lead, ctx);
  Int unit = lead / ctx.p_pow(v.value);
  return f.scaled(invert_residue(unit, ctx, ctx.coeff_precision()));
}

namespace {

// Minors of the first popcount(mask) rows and the columns in mask, memoized
// across overlapping column subsets.
class MinorTable {
public:
  explicit MinorTable(const Presentation &P) : P_(P) {}

  const GroupRingElement &minor(unsigned mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    int k = std::popcount(mask);
    GroupRingElement result = GroupRingElement::zero(P_.ctx(), P_.level(), P_.group());
    if (k == 0) {
      result = GroupRingElement::one(P_.ctx(), P_.level(), P_.group());
    } else {
      // Expand along the last row of the k-row submatrix; the leading sign
      // is (-1)^(k-1).
      int row = k - 1;
      int sign = (k - 1) % 2 == 0 ? 1 : -1;
      for (int j = 0; j < P_.cols(); ++j) {
        if (!(mask & (1u << j))) continue;
        const GroupRingElement &entry = P_.at(row, j);
        if (!entry.is_zero()) {
          GroupRingElement term = entry * minor(mask & ~(1u << j));
          result = sign > 0 ? result + term : result - term;
        }
        sign = -sign;
      }
    }
    return memo_.emplace(mask, std::move(result)).first->second;
  }

private:
  const Presentation &P_;
  std::map<unsigned, GroupRingElement> memo_;
};

} // namespace

std::vector<GroupRingElement> fitting0(const Presentation &P) {
  MinorTable table(P);
  std::vector<GroupRingElement> out;
  if (P.cols() < P.rows()) return out;
  for (unsigned mask = 0; mask < (1u << P.cols()); ++mask) {
    if (std::popcount(mask) != P.rows()) continue;
    const GroupRingElement &m = table.minor(mask);
    if (m.is_zero()) continue;
    bool dup = false;
    for (const auto &g : out)
      if (g == m) { dup = true; break; }
    if (!dup) out.push_back(m);
  }
  std::sort(out.begin(), out.end(),
            [](const GroupRingElement &a, const GroupRingElement &b) {
              return compare(a, b) < 0;
            });
  return out;
}

GroupRingElement det_quadratic(const Presentation &P) {
  if (!P.quadratic()) fail(ErrorKind::NotQuadratic, "determinant needs e == d");
  MinorTable table(P);
  return table.minor((1u << P.cols()) - 1);
}

TorsionVerdict is_torsion(const Presentation &P) {
  auto gens = fitting0(P);
  if (gens.empty()) return TorsionVerdict{false, false};
  return TorsionVerdict{true, true};
}

namespace {

PrincipalIdeal char_ideal_trivial_group(const Presentation &P) {
  if (P.level() <= 1) {
    auto gens = fitting0(P);
    if (gens.empty())
      fail(ErrorKind::NotTorsionAtPrecision, "all maximal minors vanish at precision");
    std::optional<Level1Canonical> acc;
    for (const auto &g : gens) {
      Level1Canonical c = canonical_level1(g.as_series());
      acc = acc ? gcd_level1(*acc, c) : c;
    }
    for (const auto &g : gens)
      if (!divides_level1(*acc, g.as_series()))
        fail(ErrorKind::PrecisionExhausted, "char generator fails to divide Fit0");
    return PrincipalIdeal::level1(*acc);
  }
  if (!P.quadratic())
    fail(ErrorKind::UnsupportedShape,
         "characteristic ideal at level >= 2 needs a quadratic presentation");
  GroupRingElement det = det_quadratic(P);
  if (det.is_zero())
    fail(ErrorKind::NotTorsionAtPrecision, "determinant vanishes at precision");
  return PrincipalIdeal::det_normalized(normalize_det_generator(det.as_series()));
}

} // namespace

PrincipalIdeal char_ideal(const Presentation &P) {
  TorsionVerdict t = is_torsion(P);
  if (!t.torsion)
    fail(ErrorKind::NotTorsionAtPrecision, "presentation is not torsion at precision");
  if (P.group().trivial()) return char_ideal_trivial_group(P);
  auto chars = split_idempotents(P.group(), P.ctx(), P.level());
  std::vector<PrincipalIdeal> comps;
  comps.reserve(chars.size());
  for (const auto &chi : chars)
    comps.push_back(char_ideal_trivial_group(P.component(chi)));
  return PrincipalIdeal::split(std::move(comps));
}

PseudoNullVerdict is_pseudo_null(const Presentation &P) {
  if (P.group().trivial() && P.level() >= 2)
    fail(ErrorKind::UnsupportedShape,
         "pseudo-nullity is only decided at level 1 or in the split case");
  PrincipalIdeal c = char_ideal(P);
  return PseudoNullVerdict{c.is_unit_ideal(), true};
}

std::string PrimeDescriptor::label() const {
  if (is_p) return "p";
  std::string s = "poly(deg " + std::to_string(poly.degree()) + ")";
  return s;
}

namespace {

SupportComponent support_of_level1(const Level1Canonical &c,
                                   std::vector<int> character) {
  SupportComponent out;
  out.character = std::move(character);
  if (c.mu > 0)
    out.entries.push_back({PrimeDescriptor{true, PowerSeriesElement::zero(
                                                     c.poly.ctx(), c.poly.level())},
                           c.mu});
  if (c.lambda() > 0) {
    PartialFactorization pf = factor_partial(c.poly);
    for (const auto &f : pf.factors)
      out.entries.push_back({PrimeDescriptor{false, f.factor}, f.multiplicity});
    if (!pf.complete()) out.unfactored_blocks.push_back(pf.residual);
  }
  return out;
}

} // namespace

SupportReport support_primes(const Presentation &P) {
  PrincipalIdeal c = char_ideal(P);
  SupportReport out;
  switch (c.kind()) {
  case PrincipalIdeal::Kind::Level1:
    out.components.push_back(support_of_level1(c.level1_form(), {}));
    break;
  case PrincipalIdeal::Kind::Split: {
    auto chars = split_idempotents(P.group(), P.ctx(), P.level());
    for (size_t i = 0; i < c.components().size(); ++i)
      out.components.push_back(
          support_of_level1(c.components()[i].level1_form(), chars[i].exponents));
    break;
  }
  case PrincipalIdeal::Kind::Det:
    fail(ErrorKind::UnsupportedShape, "no support factorization at level >= 2");
  }
  return out;
}

MultiplicativityVerdict check_multiplicativity(const Presentation &P1,
                                               const Presentation &P3,
                                               unsigned long long seed) {
  if (!P1.quadratic() || !P3.quadratic())
    fail(ErrorKind::NotQuadratic, "multiplicativity needs quadratic presentations");
  require_same_context(*P1.ctx(), *P3.ctx());
  if (P1.level() != P3.level() || !(P1.group() == P3.group()))
    fail(ErrorKind::ContextMismatch, "presentations live over different rings");

  int d1 = P1.rows(), d3 = P3.rows();
  Presentation P2(P1.ctx(), P1.level(), P1.group(), d1 + d3, d1 + d3);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) P2.set(i, j, P1.at(i, j));
  for (int i = 0; i < d3; ++i)
    for (int j = 0; j < d3; ++j) P2.set(d1 + i, d1 + j, P3.at(i, j));

  // Seeded coupling block with small constant/linear entries.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d3; ++j) {
      PowerSeriesElement f = PowerSeriesElement::constant(
          P1.ctx(), P1.level(), Int(static_cast<long long>(rng() % 5)));
      if (P1.level() >= 1 && rng() % 2 == 0) {
        PowerSeriesElement x1 =
            PowerSeriesElement::variable(P1.ctx(), P1.level(), 1);
        f = f + x1.scaled(Int(static_cast<long long>(rng() % 3)));
      }
      P2.set(i, d1 + j, GroupRingElement::from_series(f, P1.group()));
    }

  PrincipalIdeal c1 = char_ideal(P1);
  PrincipalIdeal c3 = char_ideal(P3);
  PrincipalIdeal c2 = char_ideal(P2);

  if (c1.kind() == PrincipalIdeal::Kind::Level1 &&
      c3.kind() == PrincipalIdeal::Kind::Level1) {
    PrincipalIdeal product =
        PrincipalIdeal::level1(product_level1(c1.level1_form(), c3.level1_form()));
    bool product_ok = c2 == product;
    bool inclusion_ok =
        divides_level1(c3.level1_form(), c2.level1_form().element());
    return MultiplicativityVerdict{product_ok, inclusion_ok, c1, c3, c2, product};
  }
  if (c1.kind() == PrincipalIdeal::Kind::Det ||
      c3.kind() == PrincipalIdeal::Kind::Det) {
    PrincipalIdeal product = PrincipalIdeal::det_normalized(
        normalize_det_generator(c1.generator() * c3.generator()));
    bool product_ok = c2 == product;
    bool inclusion_ok =
        divide_truncated(c2.generator(), c3.generator()).has_value();
    return MultiplicativityVerdict{product_ok, inclusion_ok, c1, c3, c2, product};
  }
  fail(ErrorKind::UnsupportedShape, "unsupported ideal kinds for multiplicativity");
}

std::optional<PseudoNullCertificate> pseudo_null_sufficient(const Presentation &P) {
  if (!P.group().trivial())
    fail(ErrorKind::UnsupportedShape, "sufficient condition needs the trivial group");
  auto gens = fitting0(P);
  for (size_t a = 0; a < gens.size(); ++a)
    for (size_t b = a + 1; b < gens.size(); ++b) {
      PowerSeriesElement fa = project_to(gens[a].as_series(), std::min(P.level(), 1));
      PowerSeriesElement fb = project_to(gens[b].as_series(), std::min(P.level(), 1));
      if (fa.is_zero() || fb.is_zero()) continue;
      Level1Canonical g = gcd_level1(fa, fb);
      if (g.is_unit_ideal())
        return PseudoNullCertificate{static_cast<int>(a), static_cast<int>(b), fa, fb};
    }
  return std::nullopt;
}

} // namespace iwa
