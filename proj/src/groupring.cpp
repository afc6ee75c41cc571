#include "iwa/groupring.hpp"

#include <numeric>

namespace iwa {

AbelianGroupSpec::AbelianGroupSpec(std::vector<int> orders)
    : cyclic_orders(std::move(orders)) {
  for (int m : cyclic_orders)
    if (m < 1) fail(ErrorKind::InvalidArgument, "cyclic order must be >= 1");
}

long long AbelianGroupSpec::order() const {
  long long n = 1;
  for (int m : cyclic_orders) n *= m;
  return n;
}

long long AbelianGroupSpec::exponent() const {
  long long e = 1;
  for (int m : cyclic_orders) e = std::lcm(e, static_cast<long long>(m));
  return e;
}

bool AbelianGroupSpec::trivial() const { return order() == 1; }

std::vector<int> AbelianGroupSpec::reduce(std::vector<int> g) const {
  if (g.size() != cyclic_orders.size())
    fail(ErrorKind::InvalidArgument, "group element rank mismatch");
  for (size_t i = 0; i < g.size(); ++i) {
    g[i] %= cyclic_orders[i];
    if (g[i] < 0) g[i] += cyclic_orders[i];
  }
  return g;
}

std::vector<int> AbelianGroupSpec::add(const std::vector<int> &a,
                                       const std::vector<int> &b) const {
  std::vector<int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return reduce(out);
}

std::vector<int> AbelianGroupSpec::negate(const std::vector<int> &g) const {
  std::vector<int> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = -g[i];
  return reduce(out);
}

std::vector<std::vector<int>> AbelianGroupSpec::elements() const {
  std::vector<std::vector<int>> out;
  out.push_back(identity());
  for (size_t i = 0; i < cyclic_orders.size(); ++i) {
    std::vector<std::vector<int>> next;
    for (const auto &g : out)
      for (int k = 0; k < cyclic_orders[i]; ++k) {
        auto h = g;
        h[i] = k;
        next.push_back(h);
      }
    out = std::move(next);
  }
  return out;
}

GroupRingElement::GroupRingElement(CtxPtr ctx, int level, AbelianGroupSpec group)
    : ctx_(std::move(ctx)), level_(level), group_(std::move(group)) {}

GroupRingElement GroupRingElement::zero(CtxPtr ctx, int level,
                                        AbelianGroupSpec group) {
  return GroupRingElement(std::move(ctx), level, std::move(group));
}

GroupRingElement GroupRingElement::one(CtxPtr ctx, int level,
                                       AbelianGroupSpec group) {
  GroupRingElement a(ctx, level, group);
  a.add_coefficient(a.group_.identity(), PowerSeriesElement::one(ctx, level));
  return a;
}

GroupRingElement GroupRingElement::from_series(const PowerSeriesElement &f,
                                               AbelianGroupSpec group) {
  GroupRingElement a(f.ctx(), f.level(), std::move(group));
  a.add_coefficient(a.group_.identity(), f);
  return a;
}

GroupRingElement GroupRingElement::group_element(CtxPtr ctx, int level,
                                                 AbelianGroupSpec group,
                                                 const GroupElem &g) {
  GroupRingElement a(ctx, level, group);
  a.add_coefficient(a.group_.reduce(g), PowerSeriesElement::one(ctx, level));
  return a;
}

PowerSeriesElement GroupRingElement::coefficient(const GroupElem &g) const {
  auto it = coeffs_.find(group_.reduce(g));
  return it == coeffs_.end() ? PowerSeriesElement::zero(ctx_, level_)
                             : it->second;
}

void GroupRingElement::add_coefficient(const GroupElem &g,
                                       const PowerSeriesElement &f) {
  require_same_context(*ctx_, *f.ctx());
  if (f.level() != level_) fail(ErrorKind::ContextMismatch, "level mismatch");
  GroupElem key = group_.reduce(g);
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    if (!f.is_zero()) coeffs_.emplace(key, f);
    return;
  }
  PowerSeriesElement sum = it->second + f;
  if (sum.is_zero())
    coeffs_.erase(it);
  else
    it->second = sum;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  if (level_ != rhs.level_ || !(group_ == rhs.group_))
    fail(ErrorKind::ContextMismatch, "group or level mismatch");
  GroupRingElement out = *this;
  for (const auto &[g, f] : rhs.coeffs_) out.add_coefficient(g, f);
  return out;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out(ctx_, level_, group_);
  for (const auto &[g, f] : coeffs_) out.add_coefficient(g, -f);
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement &rhs) const {
  return *this + (-rhs);
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  if (level_ != rhs.level_ || !(group_ == rhs.group_))
    fail(ErrorKind::ContextMismatch, "group or level mismatch");
  GroupRingElement out(ctx_, level_, group_);
  for (const auto &[ga, fa] : coeffs_)
    for (const auto &[gb, fb] : rhs.coeffs_)
      out.add_coefficient(group_.add(ga, gb), fa * fb);
  return out;
}

bool GroupRingElement::operator==(const GroupRingElement &rhs) const {
  return ctx_->same(*rhs.ctx_) && level_ == rhs.level_ && group_ == rhs.group_ &&
         coeffs_ == rhs.coeffs_;
}

GroupRingElement GroupRingElement::scaled(const Int &c) const {
  GroupRingElement out(ctx_, level_, group_);
  for (const auto &[g, f] : coeffs_) out.add_coefficient(g, f.scaled(c));
  return out;
}

GroupRingElement GroupRingElement::scaled_series(const PowerSeriesElement &f) const {
  GroupRingElement out(ctx_, level_, group_);
  for (const auto &[g, h] : coeffs_) out.add_coefficient(g, h * f);
  return out;
}

PowerSeriesElement GroupRingElement::as_series() const {
  if (!group_.trivial())
    fail(ErrorKind::UnsupportedShape, "as_series needs the trivial group");
  auto it = coeffs_.find(group_.identity());
  return it == coeffs_.end() ? PowerSeriesElement::zero(ctx_, level_) : it->second;
}

int compare(const GroupRingElement &a, const GroupRingElement &b) {
  auto ia = a.coeffs().begin(), ib = b.coeffs().begin();
  while (ia != a.coeffs().end() && ib != b.coeffs().end()) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = compare(ia->second, ib->second);
    if (c != 0) return c;
    ++ia, ++ib;
  }
  if (ia != a.coeffs().end()) return 1;
  if (ib != b.coeffs().end()) return -1;
  return 0;
}

GroupRingElement convolve(const GroupRingElement &a, const GroupRingElement &b) {
  return a * b;
}

GroupRingElement project_down(const GroupRingElement &a) {
  GroupRingElement out(a.ctx(), a.level() - 1, a.group());
  for (const auto &[g, f] : a.coeffs()) out.add_coefficient(g, project_down(f));
  return out;
}

GroupRingElement project_to(const GroupRingElement &a, int n) {
  GroupRingElement out = a;
  while (out.level() > n) out = project_down(out);
  return out;
}

GroupRingElement include_up(const GroupRingElement &a, int m) {
  GroupRingElement out(a.ctx(), m, a.group());
  for (const auto &[g, f] : a.coeffs()) out.add_coefficient(g, include_up(f, m));
  return out;
}

PadicInt CharacterIdempotent::value_at(const GroupElem &g) const {
  PadicInt v(generator_values.empty() ? idempotent.ctx() : generator_values[0].ctx(),
             1);
  v = PadicInt(idempotent.ctx(), 1);
  for (size_t i = 0; i < generator_values.size(); ++i) {
    for (int k = 0; k < g[i]; ++k) v = v * generator_values[i];
  }
  return v;
}

namespace {

long long primitive_root(long long p) {
  // Smallest generator of (Z/p)^x; p is desk scale.
  auto order_mod = [p](long long a) {
    long long x = a % p, ord = 1;
    while (x != 1) {
      x = (x * a) % p;
      ++ord;
    }
    return ord;
  };
  for (long long w = 2; w < p; ++w)
    if (order_mod(w) == p - 1) return w;
  return 1; // p == 2
}

} // namespace

std::vector<CharacterIdempotent> split_idempotents(const AbelianGroupSpec &group,
                                                   const CtxPtr &ctx, int level) {
  long long n = group.order();
  if (n % ctx->p() == 0)
    fail(ErrorKind::GroupNotSplit, "p divides |G|");
  if (ctx->p() == 2 ? group.exponent() > 1 : (ctx->p() - 1) % group.exponent() != 0)
    fail(ErrorKind::GroupNotSplit, "exp(G) does not divide p-1");

  // zeta_i = omega^((p-1)/m_i) has exact order m_i.
  std::vector<PadicInt> zetas;
  PadicInt omega = ctx->p() == 2 ? PadicInt(ctx, 1)
                                 : teichmuller(ctx, Int(primitive_root(ctx->p())));
  for (int m : group.cyclic_orders) {
    PadicInt z(ctx, 1);
    long long e = (ctx->p() - 1) / m;
    if (ctx->p() == 2) e = 0;
    for (long long i = 0; i < e; ++i) z = z * omega;
    zetas.push_back(z);
  }

  Int inv_n = invert_residue(Int(n), *ctx, ctx->coeff_precision());
  auto elements = group.elements();

  // Character exponent tuples in lexicographic order.
  std::vector<std::vector<int>> chars = group.elements();
  std::vector<CharacterIdempotent> out;
  for (const auto &kappa : chars) {
    std::vector<PadicInt> gen_values;
    for (int i = 0; i < group.rank(); ++i) {
      PadicInt v(ctx, 1);
      for (int k = 0; k < kappa[i]; ++k) v = v * zetas[static_cast<size_t>(i)];
      gen_values.push_back(v);
    }
    GroupRingElement e = GroupRingElement::zero(ctx, level, group);
    for (const auto &g : elements) {
      // chi(g^-1) = prod zeta_i^{-kappa_i g_i}
      PadicInt chi_inv(ctx, 1);
      auto ginv = group.negate(g);
      for (int i = 0; i < group.rank(); ++i)
        for (int k = 0; k < ginv[i]; ++k)
          chi_inv = chi_inv * gen_values[static_cast<size_t>(i)];
      PowerSeriesElement coeff = PowerSeriesElement::constant(
          ctx, level, chi_inv.residue() * inv_n);
      e.add_coefficient(g, coeff);
    }
    out.push_back(CharacterIdempotent{kappa, std::move(gen_values), std::move(e)});
  }
  return out;
}

PowerSeriesElement component(const GroupRingElement &a,
                             const CharacterIdempotent &chi) {
  PowerSeriesElement out = PowerSeriesElement::zero(a.ctx(), a.level());
  for (const auto &[g, f] : a.coeffs())
    out = out + f.scaled(chi.value_at(g).residue());
  return out;
}

} // namespace iwa
