#include "iwa/series.hpp"

#include <algorithm>

namespace iwa {

int total_degree(const Monomial &m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool GrlexLess::operator()(const Monomial &a, const Monomial &b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Same degree: X1 most significant; smaller exponent on the first
  // differing variable means grlex-smaller.
  for (size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

PowerSeriesElement::PowerSeriesElement(CtxPtr ctx, int level)
    : ctx_(std::move(ctx)), level_(level) {
  if (level < 0) fail(ErrorKind::InvalidArgument, "level must be >= 0");
}

PowerSeriesElement PowerSeriesElement::zero(CtxPtr ctx, int level) {
  return PowerSeriesElement(std::move(ctx), level);
}

PowerSeriesElement PowerSeriesElement::constant(CtxPtr ctx, int level,
                                                const Int &c) {
  PowerSeriesElement f(std::move(ctx), level);
  f.add_term(Monomial(level, 0), c);
  return f;
}

PowerSeriesElement PowerSeriesElement::one(CtxPtr ctx, int level) {
  return constant(std::move(ctx), level, 1);
}

PowerSeriesElement PowerSeriesElement::variable(CtxPtr ctx, int level,
                                                int index) {
  if (index < 1 || index > level)
    fail(ErrorKind::InvalidArgument, "variable index out of range");
  PowerSeriesElement f(std::move(ctx), level);
  Monomial m(level, 0);
  m[index - 1] = 1;
  f.add_term(m, 1);
  return f;
}

PowerSeriesElement PowerSeriesElement::from_terms(
    CtxPtr ctx, int level, const std::vector<std::pair<Monomial, Int>> &terms) {
  PowerSeriesElement f(std::move(ctx), level);
  for (const auto &[m, c] : terms) f.add_term(m, c);
  return f;
}

Int PowerSeriesElement::coefficient(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Int(0) : it->second;
}

Int PowerSeriesElement::coefficient1(int k) const {
  if (level_ == 0) return k == 0 ? coefficient(Monomial{}) : Int(0);
  if (level_ != 1) fail(ErrorKind::InvalidArgument, "coefficient1 needs level <= 1");
  return coefficient(Monomial{k});
}

int PowerSeriesElement::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

void PowerSeriesElement::add_term(const Monomial &m, const Int &c) {
  if (static_cast<int>(m.size()) != level_)
    fail(ErrorKind::InvalidArgument, "exponent vector length != level");
  for (int e : m)
    if (e < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
  if (total_degree(m) >= ctx_->degree_cap()) return;
  Int v = (coefficient(m) + c) % ctx_->p_pow_precision();
  if (v < 0) v += ctx_->p_pow_precision();
  if (v == 0)
    terms_.erase(m);
  else
    terms_[m] = v;
}

PowerSeriesElement PowerSeriesElement::operator+(
    const PowerSeriesElement &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  if (level_ != rhs.level_) fail(ErrorKind::ContextMismatch, "level mismatch");
  PowerSeriesElement out = *this;
  for (const auto &[m, c] : rhs.terms_) out.add_term(m, c);
  return out;
}

PowerSeriesElement PowerSeriesElement::operator-(
    const PowerSeriesElement &rhs) const {
  return *this + (-rhs);
}

PowerSeriesElement PowerSeriesElement::operator-() const {
  PowerSeriesElement out(ctx_, level_);
  for (const auto &[m, c] : terms_) out.add_term(m, -c);
  return out;
}

PowerSeriesElement PowerSeriesElement::operator*(
    const PowerSeriesElement &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  if (level_ != rhs.level_) fail(ErrorKind::ContextMismatch, "level mismatch");
  PowerSeriesElement out(ctx_, level_);
  const int cap = ctx_->degree_cap();
  for (const auto &[ma, ca] : terms_) {
    int da = total_degree(ma);
    for (const auto &[mb, cb] : rhs.terms_) {
      if (da + total_degree(mb) >= cap) continue;
      Monomial m(level_);
      for (int i = 0; i < level_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

bool PowerSeriesElement::operator==(const PowerSeriesElement &rhs) const {
  return ctx_->same(*rhs.ctx_) && level_ == rhs.level_ && terms_ == rhs.terms_;
}

PowerSeriesElement PowerSeriesElement::scaled(const Int &c) const {
  PowerSeriesElement out(ctx_, level_);
  for (const auto &[m, v] : terms_) out.add_term(m, v * c);
  return out;
}

int compare(const PowerSeriesElement &a, const PowerSeriesElement &b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  GrlexLess less;
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    ++ia, ++ib;
  }
  if (ia != a.terms().end()) return 1;
  if (ib != b.terms().end()) return -1;
  return 0;
}

PowerSeriesElement project_down(const PowerSeriesElement &f) {
  if (f.level() == 0)
    fail(ErrorKind::LevelUnderflow, "project_down at level 0");
  PowerSeriesElement out(f.ctx(), f.level() - 1);
  for (const auto &[m, c] : f.terms()) {
    if (m.back() != 0) continue;
    out.add_term(Monomial(m.begin(), m.end() - 1), c);
  }
  return out;
}

PowerSeriesElement project_to(const PowerSeriesElement &f, int n) {
  if (n < 0 || n > f.level())
    fail(ErrorKind::InvalidArgument, "project_to target out of range");
  PowerSeriesElement out = f;
  while (out.level() > n) out = project_down(out);
  return out;
}

PowerSeriesElement include_up(const PowerSeriesElement &f, int m) {
  if (m < f.level())
    fail(ErrorKind::InvalidArgument, "include_up target below level");
  PowerSeriesElement out(f.ctx(), m);
  for (const auto &[mon, c] : f.terms()) {
    Monomial padded = mon;
    padded.resize(m, 0);
    out.add_term(padded, c);
  }
  return out;
}

bool is_unit(const PowerSeriesElement &f) {
  Int c0 = f.coefficient(Monomial(f.level(), 0));
  return c0 % f.ctx()->p() != 0;
}

PowerSeriesElement inverse(const PowerSeriesElement &f) {
  if (!is_unit(f)) fail(ErrorKind::NotAUnit, "series has no unit constant term");
  const auto &ctx = *f.ctx();
  Int c0 = f.coefficient(Monomial(f.level(), 0));
  PowerSeriesElement g = PowerSeriesElement::constant(
      f.ctx(), f.level(), invert_residue(c0, ctx, ctx.coeff_precision()));
  PowerSeriesElement two = PowerSeriesElement::constant(f.ctx(), f.level(), 2);
  PowerSeriesElement one = PowerSeriesElement::one(f.ctx(), f.level());
  // Newton iteration g <- g(2 - fg); quadratic convergence in (p, X)-adic
  // distance, so ~log2(max(N, D)) rounds suffice.
  int rounds = 1;
  int target = std::max(ctx.coeff_precision(), ctx.degree_cap());
  while ((1 << rounds) < 2 * target && rounds < 30) ++rounds;
  for (int i = 0; i < rounds; ++i) {
    PowerSeriesElement fg = f * g;
    if (fg == one) break;
    g = g * (two - fg);
  }
  if (!(f * g == one))
    fail(ErrorKind::PrecisionExhausted, "series inversion did not converge");
  return g;
}

Valuation content_valuation(const PowerSeriesElement &f) {
  if (f.is_zero()) return Valuation{f.ctx()->coeff_precision(), false};
  int best = f.ctx()->coeff_precision();
  for (const auto &[m, c] : f.terms())
    best = std::min(best, val_p(c, *f.ctx()).value);
  return Valuation{best, true};
}

PowerSeriesElement divide_p_power(const PowerSeriesElement &f, int k) {
  if (k == 0) return f;
  Int pk = f.ctx()->p_pow(k);
  PowerSeriesElement out(f.ctx(), f.level());
  for (const auto &[m, c] : f.terms()) {
    if (c % pk != 0)
      fail(ErrorKind::InvalidArgument, "coefficient not divisible by p^" + std::to_string(k));
    out.add_term(m, c / pk);
  }
  return out;
}

PowerSeriesElement multiply_p_power(const PowerSeriesElement &f, int k) {
  return f.scaled(f.ctx()->p_pow(std::min(k, f.ctx()->coeff_precision())));
}

std::optional<PowerSeriesElement> divide_truncated(const PowerSeriesElement &f,
                                                   const PowerSeriesElement &g) {
  require_same_context(*f.ctx(), *g.ctx());
  if (f.level() != g.level()) fail(ErrorKind::ContextMismatch, "level mismatch");
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) return PowerSeriesElement::zero(f.ctx(), f.level());

  const auto &ctx = *f.ctx();
  // Pivot on the grlex-least term of g; each reduction step strictly raises
  // the least remaining term of r, so the loop terminates.
  const auto &[gm, gc] = *g.terms().begin();
  Valuation gv = val_p(gc, ctx);
  Int gunit = gc / ctx.p_pow(gv.value);
  int W = ctx.coeff_precision() - gv.value;
  if (W <= 0) return std::nullopt;
  Int gunit_inv = invert_residue(gunit, ctx, W);

  PowerSeriesElement q(f.ctx(), f.level());
  PowerSeriesElement r = f;
  size_t guard = 0;
  while (!r.is_zero()) {
    if (++guard > 1u << 20) return std::nullopt;
    const auto &[rm, rc] = *r.terms().begin();
    Monomial qm(rm.size());
    bool ok = true;
    for (size_t i = 0; i < rm.size(); ++i) {
      qm[i] = rm[i] - gm[i];
      if (qm[i] < 0) { ok = false; break; }
    }
    if (!ok) return std::nullopt;
    if (rc % ctx.p_pow(gv.value) != 0) return std::nullopt;
    Int qc = ((rc / ctx.p_pow(gv.value)) * gunit_inv) % ctx.p_pow(W);
    PowerSeriesElement t(f.ctx(), f.level());
    t.add_term(qm, qc);
    q = q + t;
    r = r - t * g;
  }
  if (!(q * g == f)) return std::nullopt;
  return q;
}

} // namespace iwa
