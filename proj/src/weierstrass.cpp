#include "iwa/weierstrass.hpp"

#include <algorithm>
#include <numeric>

// Level-1 elements are handled densely here: a polynomial is a coefficient
// vector indexed by degree, reduced modulo the working p-power. Working
// precision drops whenever p-content is divided out of a remainder; every
// exported result is re-verified against the inputs at the surviving
// precision.

namespace iwa {

namespace {

using Poly = std::vector<Int>;

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly &a) { return static_cast<int>(a.size()) - 1; }

Poly reduce(Poly a, const Int &mod) {
  for (auto &c : a) {
    c %= mod;
    if (c < 0) c += mod;
  }
  trim(a);
  return a;
}

Poly to_poly(const PowerSeriesElement &f) {
  Poly a;
  if (f.level() == 0) {
    Int c = f.coefficient(Monomial{});
    if (c != 0) a.push_back(c);
    return a;
  }
  for (const auto &[m, c] : f.terms()) {
    int d = m[0];
    if (degree(a) < d) a.resize(d + 1, 0);
    a[d] = c;
  }
  return a;
}

PowerSeriesElement from_poly(const CtxPtr &ctx, const Poly &a, int level) {
  PowerSeriesElement f(ctx, level);
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    Monomial m(level, 0);
    if (level >= 1) m[0] = i;
    if (level == 0 && i > 0)
      fail(ErrorKind::InvalidArgument, "nonconstant poly at level 0");
    f.add_term(m, a[i]);
  }
  return f;
}

Poly mul(const Poly &a, const Poly &b, const Int &mod, int degcap) {
  if (a.empty() || b.empty()) return {};
  Poly out(std::min(static_cast<int>(a.size() + b.size()) - 1, degcap), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < out.size(); ++j)
      out[i + j] += a[i] * b[j];
  }
  return reduce(std::move(out), mod);
}

Poly sub(const Poly &a, const Poly &b, const Int &mod) {
  Poly out = a;
  if (out.size() < b.size()) out.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return reduce(std::move(out), mod);
}

// Remainder of a modulo monic b (exact over Z/p^W since b is monic).
Poly mod_monic(Poly a, const Poly &b, const Int &mod) {
  int db = degree(b);
  if (db < 0) fail(ErrorKind::InvalidArgument, "division by zero polynomial");
  a = reduce(std::move(a), mod);
  while (degree(a) >= db) {
    Int lead = a.back();
    int shift = degree(a) - db;
    if (lead != 0)
      for (int i = 0; i <= db; ++i) {
        a[i + shift] -= lead * b[i];
        a[i + shift] %= mod;
      }
    a.pop_back();
    trim(a);
  }
  return reduce(std::move(a), mod);
}

Poly divmod_monic(Poly a, const Poly &b, const Int &mod, Poly &rem) {
  int db = degree(b);
  a = reduce(std::move(a), mod);
  Poly q(std::max(0, degree(a) - db + 1), 0);
  while (degree(a) >= db) {
    Int lead = a.back();
    int shift = degree(a) - db;
    q[shift] = lead;
    for (int i = 0; i <= db; ++i) {
      a[i + shift] -= lead * b[i];
      a[i + shift] %= mod;
    }
    a.pop_back();
    trim(a);
  }
  rem = reduce(std::move(a), mod);
  return reduce(std::move(q), mod);
}

int val_of(const Int &c, long long p, int cap) {
  if (c == 0) return cap;
  Int r = c;
  int v = 0;
  while (v < cap && r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

int content_val(const Poly &a, long long p, int cap) {
  int best = cap;
  for (const auto &c : a) best = std::min(best, val_of(c, p, cap));
  return best;
}

// Inverse of a unit series modulo (p, X^degcap).
Poly invert_mod_p(const Poly &h, long long p, int degcap) {
  Poly inv(degcap, 0);
  Int h0 = h[0] % p;
  Int inv0 = invert_residue(h0, *PrecisionContext::make(p, 1, 1), 1);
  inv[0] = inv0;
  for (int k = 1; k < degcap; ++k) {
    Int s = 0;
    for (int j = 1; j <= k && j < static_cast<int>(h.size()); ++j)
      s += (h[j] % p) * inv[k - j];
    inv[k] = ((-inv0 * s) % p + p) % p;
  }
  trim(inv);
  return inv;
}

struct CorePrep {
  int content; // p-content divided out first
  int lambda;
  Poly dist; // monic distinguished, coefficients mod p^(W - content)
  Poly unit;
};

// Factor a nonzero polynomial over Z/p^W as p^content * unit * distinguished,
// by successive correction along the p-adic filtration.
CorePrep prepare_poly(const Poly &input, const PrecisionContext &ctx, int W) {
  long long p = ctx.p();
  int degcap = ctx.degree_cap();
  Poly a = reduce(Poly(input), ctx.p_pow(W));
  if (a.empty())
    fail(ErrorKind::PrecisionExhausted, "cannot prepare 0 at precision");
  int mu = content_val(a, p, W);
  if (mu >= W)
    fail(ErrorKind::PrecisionExhausted, "content exhausts working precision");
  for (auto &c : a) c /= ctx.p_pow(mu);
  int Wp = W - mu;
  Int mod = ctx.p_pow(Wp);
  a = reduce(std::move(a), mod);

  int lambda = -1;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    if (a[i] % p != 0) {
      lambda = i;
      break;
    }
  if (lambda < 0 || lambda >= degcap)
    fail(ErrorKind::DegreeCapExceeded, "no unit coefficient below the degree cap");

  Poly h(a.begin() + lambda, a.end());
  Poly hinv = invert_mod_p(h, p, degcap);

  Poly P(lambda + 1, 0);
  P[lambda] = 1;
  Poly u = h;
  for (int k = 1; k < Wp; ++k) {
    Poly E = sub(a, mul(u, P, mod, degcap), mod);
    if (E.empty()) break;
    Int pk = ctx.p_pow(k);
    Poly Ep;
    Ep.reserve(E.size());
    for (const auto &c : E) {
      if (c % pk != 0)
        fail(ErrorKind::PrecisionExhausted, "weierstrass correction misaligned");
      Ep.push_back(c / pk);
    }
    Ep = reduce(std::move(Ep), Int(p));
    // Solve u dP + du P = E' mod p, i.e. h dP + X^lambda du = E': dP is the
    // low part of hinv E', and du = shift(E' - h dP).
    Poly w = mul(hinv, Ep, Int(p), degcap);
    Poly dP(w.begin(), w.begin() + std::min<size_t>(w.size(), static_cast<size_t>(lambda)));
    trim(dP);
    Poly rest = sub(Ep, mul(h, dP, Int(p), degcap), Int(p));
    Poly du;
    for (int i = lambda; i < static_cast<int>(rest.size()); ++i) du.push_back(rest[i]);
    for (int i = 0; i < lambda && i < static_cast<int>(rest.size()); ++i)
      if (rest[i] % p != 0)
        fail(ErrorKind::PrecisionExhausted, "weierstrass correction misaligned");
    if (u.size() < du.size()) u.resize(du.size(), 0);
    if (P.size() < static_cast<size_t>(lambda + 1)) P.resize(lambda + 1, 0);
    for (size_t i = 0; i < dP.size(); ++i) P[i] += pk * dP[i];
    for (size_t i = 0; i < du.size(); ++i) u[i] += pk * du[i];
    P = reduce(std::move(P), mod);
    P.resize(lambda + 1, 0);
    u = reduce(std::move(u), mod);
  }
  if (!sub(a, mul(u, P, mod, degcap), mod).empty())
    fail(ErrorKind::PrecisionExhausted, "weierstrass iteration did not close");
  P.resize(lambda + 1, 0);
  return CorePrep{mu, lambda, std::move(P), std::move(u)};
}

void require_level1(const PowerSeriesElement &f, const char *who) {
  if (f.level() > 1)
    fail(ErrorKind::UnsupportedShape, std::string(who) + " needs a level <= 1 element");
}

void require_monic_distinguished(const Poly &q, const PrecisionContext &ctx) {
  if (q.empty() || q.back() != 1)
    fail(ErrorKind::InvalidArgument, "polynomial is not monic");
  for (int i = 0; i + 1 < static_cast<int>(q.size()); ++i)
    if (q[i] % ctx.p() != 0)
      fail(ErrorKind::InvalidArgument, "polynomial is not distinguished");
}

} // namespace

WeierstrassData weierstrass_prepare(const PowerSeriesElement &f) {
  require_level1(f, "weierstrass_prepare");
  if (f.is_zero())
    fail(ErrorKind::PrecisionExhausted, "zero element at precision");
  const auto &ctx = *f.ctx();
  CorePrep prep = prepare_poly(to_poly(f), ctx, ctx.coeff_precision());
  return WeierstrassData{prep.content, prep.lambda,
                         from_poly(f.ctx(), prep.dist, f.level()),
                         from_poly(f.ctx(), prep.unit, f.level())};
}

Level1Canonical canonical_level1(const PowerSeriesElement &f) {
  WeierstrassData w = weierstrass_prepare(f);
  return Level1Canonical{w.mu, w.distinguished};
}

Level1Canonical gcd_level1(const Level1Canonical &ca, const Level1Canonical &cb) {
  const auto &ctx = *ca.poly.ctx();
  require_same_context(ctx, *cb.poly.ctx());
  int mu = std::min(ca.mu, cb.mu);
  int W = ctx.coeff_precision() - std::max(ca.mu, cb.mu);
  if (W <= 0) fail(ErrorKind::PrecisionExhausted, "no digits left for gcd");

  Poly a = to_poly(ca.poly), b = to_poly(cb.poly);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (true) {
    if (degree(b) == 0) {
      b = {Int(1)};
      break;
    }
    Poly r = mod_monic(a, b, ctx.p_pow(W));
    if (r.empty()) break; // b divides a at working precision
    CorePrep prep = prepare_poly(r, ctx, W);
    W -= prep.content;
    if (W <= 0)
      fail(ErrorKind::PrecisionExhausted,
           "leading coefficient inexactly zero in remainder sequence");
    a = reduce(std::move(b), ctx.p_pow(W));
    b = prep.dist;
  }
  Level1Canonical out{mu, from_poly(ca.poly.ctx(), b, ca.poly.level())};
  return out;
}

Level1Canonical gcd_level1(const PowerSeriesElement &f,
                           const PowerSeriesElement &g) {
  require_level1(f, "gcd_level1");
  require_level1(g, "gcd_level1");
  Level1Canonical out = gcd_level1(canonical_level1(f), canonical_level1(g));
  if (!divides_level1(out, f) || !divides_level1(out, g))
    fail(ErrorKind::PrecisionExhausted, "gcd verification failed at precision");
  return out;
}

bool divides_level1(const Level1Canonical &c, const Level1Canonical &f) {
  const auto &ctx = *c.poly.ctx();
  if (c.mu > f.mu) return false;
  if (c.lambda() > f.lambda()) return false;
  if (c.lambda() == 0) return true;
  int W = ctx.coeff_precision() - std::max(c.mu, f.mu);
  if (W <= 0) fail(ErrorKind::PrecisionExhausted, "no digits left to test divisibility");
  Poly r = mod_monic(to_poly(f.poly), to_poly(c.poly), ctx.p_pow(W));
  return r.empty();
}

bool divides_level1(const Level1Canonical &c, const PowerSeriesElement &f) {
  if (f.is_zero()) return true;
  return divides_level1(c, canonical_level1(f));
}

Level1Canonical quotient_level1(const Level1Canonical &a,
                                const Level1Canonical &b) {
  const auto &ctx = *a.poly.ctx();
  if (b.mu > a.mu)
    fail(ErrorKind::InvalidArgument, "quotient would have negative p-exponent");
  int W = ctx.coeff_precision() - std::max(a.mu, b.mu);
  if (W <= 0) fail(ErrorKind::PrecisionExhausted, "no digits left for quotient");
  Poly rem;
  Poly q = divmod_monic(to_poly(a.poly), to_poly(b.poly), ctx.p_pow(W), rem);
  if (!rem.empty())
    fail(ErrorKind::InvalidArgument, "canonical quotient is not exact");
  return Level1Canonical{a.mu - b.mu, from_poly(a.poly.ctx(), q, a.poly.level())};
}

Level1Canonical product_level1(const Level1Canonical &a,
                               const Level1Canonical &b) {
  const auto &ctx = *a.poly.ctx();
  require_same_context(ctx, *b.poly.ctx());
  if (a.mu + b.mu >= ctx.coeff_precision())
    fail(ErrorKind::PrecisionExhausted, "product p-exponent reaches precision");
  if (a.lambda() + b.lambda() >= ctx.degree_cap())
    fail(ErrorKind::DegreeCapExceeded, "product degree reaches the cap");
  int W = ctx.coeff_precision() - (a.mu + b.mu);
  Poly prod = mul(to_poly(a.poly), to_poly(b.poly), ctx.p_pow(W), ctx.degree_cap());
  return Level1Canonical{a.mu + b.mu,
                         from_poly(a.poly.ctx(), prod, a.poly.level())};
}

std::optional<PowerSeriesElement> poly_divide_exact(const PowerSeriesElement &f,
                                                    const PowerSeriesElement &monic) {
  require_level1(f, "poly_divide_exact");
  const auto &ctx = *f.ctx();
  Poly b = to_poly(monic);
  if (b.empty() || b.back() != 1) return std::nullopt;
  Poly rem;
  Poly q = divmod_monic(to_poly(f), b, ctx.p_pow_precision(), rem);
  if (!rem.empty()) return std::nullopt;
  return from_poly(f.ctx(), q, f.level());
}

namespace {

struct RootLift {
  Int root; // element of p^v * units, reduced
  bool found = false;
};

Int eval_poly(const Poly &q, const Int &x, const Int &mod) {
  Int acc = 0;
  for (int i = degree(q); i >= 0; --i) acc = (acc * x + q[i]) % mod;
  if (acc < 0) acc += mod;
  return acc;
}

// Simple roots of the slope-v residual polynomial, Hensel-lifted until the
// factor (X - root) divides q exactly at precision N.
RootLift find_root_at_slope(const Poly &q, const PrecisionContext &ctx, int v) {
  long long p = ctx.p();
  int N = ctx.coeff_precision();
  int cv = N;
  for (int i = 0; i <= degree(q); ++i) {
    if (q[i] == 0) continue;
    cv = std::min(cv, val_of(q[i], p, N) + v * i);
  }
  if (cv >= N) return {};
  int W = N - cv;
  // g(t) = q(p^v t) / p^cv, an integral polynomial mod p^W.
  Poly g(q.size(), 0);
  for (int i = 0; i <= degree(q); ++i) {
    if (q[i] == 0) continue;
    int e = val_of(q[i], p, N) + v * i;
    if (e - cv >= W) continue;
    g[i] = (q[i] / ctx.p_pow(val_of(q[i], p, N))) % ctx.p_pow(W - (e - cv));
    g[i] = (g[i] * ctx.p_pow(e - cv)) % ctx.p_pow(W);
  }
  trim(g);
  Poly gp; // derivative
  for (int i = 1; i <= degree(g); ++i) gp.push_back(g[i] * i);
  for (long long t0 = 1; t0 < p; ++t0) {
    if (eval_poly(g, Int(t0), Int(p)) != 0) continue;
    if (gp.empty() || eval_poly(gp, Int(t0), Int(p)) == 0) continue;
    Int t = t0;
    for (int k = 1; k < W; ++k) {
      Int mod = ctx.p_pow(std::min(N, k + 1));
      Int fv = eval_poly(g, t, mod);
      Int dv = eval_poly(gp, t, Int(p));
      Int corr = (fv / ctx.p_pow(k)) % p;
      corr = (corr * invert_residue(dv, ctx, 1)) % p;
      t = (t - corr * ctx.p_pow(k)) % mod;
      if (t < 0) t += mod;
    }
    if (eval_poly(g, t, ctx.p_pow(W)) != 0) continue;
    Int root = (ctx.p_pow(v) * t) % ctx.p_pow_precision();
    return RootLift{root, true};
  }
  return {};
}

// Divide q by (X - root); returns true and replaces q on exact division.
bool strip_root(Poly &q, const Int &root, const PrecisionContext &ctx) {
  const Int mod = ctx.p_pow_precision();
  Poly b(q.size() - 1, 0);
  Int carry = 0;
  for (int i = degree(q); i >= 1; --i) {
    carry = (q[i] + carry * root) % mod;
    b[i - 1] = carry;
  }
  Int rem = (q[0] + carry * root) % mod;
  if (rem % mod != 0) return false;
  q = reduce(std::move(b), mod);
  return true;
}

bool eisenstein_irreducible(const Poly &q, const PrecisionContext &ctx) {
  int e = degree(q);
  int h = val_of(q[0], ctx.p(), ctx.coeff_precision());
  if (h >= ctx.coeff_precision()) return false;
  if (std::gcd(h, e) != 1) return false;
  for (int i = 1; i < e; ++i) {
    if (q[i] == 0) continue;
    if (val_of(q[i], ctx.p(), ctx.coeff_precision()) * e < h * (e - i)) return false;
  }
  return true;
}

// Single integer slope v with an irreducible residual of full degree; only
// degrees 2 and 3 are decided (rootless over F_p).
bool inert_irreducible(const Poly &q, const PrecisionContext &ctx) {
  int e = degree(q);
  if (e > 3) return false;
  long long p = ctx.p();
  int N = ctx.coeff_precision();
  int h = val_of(q[0], p, N);
  if (h >= N || h % e != 0) return false;
  int v = h / e;
  if (v == 0) return false;
  for (int i = 1; i < e; ++i) {
    if (q[i] == 0) continue;
    if (val_of(q[i], p, N) < v * (e - i)) return false;
  }
  Poly R(e + 1, 0);
  for (int i = 0; i <= e; ++i) {
    if (q[i] == 0) continue;
    if (val_of(q[i], p, N) + v * i == v * e)
      R[i] = (q[i] / ctx.p_pow(val_of(q[i], p, N))) % p;
  }
  for (long long t = 0; t < p; ++t)
    if (eval_poly(R, Int(t), Int(p)) == 0) return false;
  return true;
}

} // namespace

PartialFactorization factor_partial(const PowerSeriesElement &P) {
  require_level1(P, "factor_partial");
  const auto &ctx = *P.ctx();
  Poly q = to_poly(P);
  require_monic_distinguished(q, ctx);

  PartialFactorization out{{}, PowerSeriesElement::one(P.ctx(), P.level())};
  auto push = [&](const PowerSeriesElement &f, int mult) {
    for (auto &df : out.factors)
      if (df.factor == f) {
        df.multiplicity += mult;
        return;
      }
    out.factors.push_back({f, mult});
  };

  if (degree(q) == 0) return out;

  int x_mult = 0;
  while (x_mult < degree(q) && q[x_mult] == 0) ++x_mult;
  if (x_mult > 0) {
    push(PowerSeriesElement::variable(P.ctx(), P.level(), 1), x_mult);
    q.erase(q.begin(), q.begin() + x_mult);
  }

  bool progress = true;
  while (progress && degree(q) >= 2) {
    progress = false;
    for (int v = 1; v < ctx.coeff_precision() && degree(q) >= 2; ++v) {
      RootLift rl = find_root_at_slope(q, ctx, v);
      if (!rl.found) continue;
      Poly trial = q;
      if (!strip_root(trial, rl.root, ctx)) continue;
      Int c = (ctx.p_pow_precision() - rl.root) % ctx.p_pow_precision();
      PowerSeriesElement lin = PowerSeriesElement::from_terms(
          P.ctx(), P.level(), {{Monomial{0}, c}, {Monomial{1}, 1}});
      if (P.level() == 0) fail(ErrorKind::UnsupportedShape, "factor at level 0");
      push(lin, 1);
      q = std::move(trial);
      progress = true;
    }
  }

  if (degree(q) == 1) {
    push(from_poly(P.ctx(), q, P.level()), 1);
    q = {Int(1)};
  } else if (degree(q) >= 2 &&
             (eisenstein_irreducible(q, ctx) || inert_irreducible(q, ctx))) {
    push(from_poly(P.ctx(), q, P.level()), 1);
    q = {Int(1)};
  }

  std::sort(out.factors.begin(), out.factors.end(),
            [](const DistinguishedFactor &a, const DistinguishedFactor &b) {
              bool ax = a.factor.terms().size() == 1 && a.factor.degree() == 1;
              bool bx = b.factor.terms().size() == 1 && b.factor.degree() == 1;
              if (ax != bx) return ax; // plain X first
              if (a.factor.degree() != b.factor.degree())
                return a.factor.degree() < b.factor.degree();
              return compare(a.factor, b.factor) < 0;
            });
  out.residual = from_poly(P.ctx(), q, P.level());

  // Certified reconstruction: the product of everything returned equals P.
  PowerSeriesElement check = out.residual;
  for (const auto &df : out.factors)
    for (int i = 0; i < df.multiplicity; ++i) check = check * df.factor;
  if (!(check == P))
    fail(ErrorKind::PrecisionExhausted, "factor reconstruction failed");
  return out;
}

std::vector<DistinguishedFactor> factor_distinguished(const PowerSeriesElement &P) {
  require_level1(P, "factor_distinguished");
  Poly q = to_poly(P);
  require_monic_distinguished(q, *P.ctx());
  int x_mult = 0;
  while (x_mult < degree(q) && q[x_mult] == 0) ++x_mult;
  if (x_mult > 0 && x_mult < degree(q))
    fail(ErrorKind::NotSquarefreeModP,
         "mod-p image X^" + std::to_string(degree(q)) +
             " mixes an exact X-power with a cofactor sharing its root");
  PartialFactorization pf = factor_partial(P);
  if (!pf.complete())
    fail(ErrorKind::NotSquarefreeModP,
         "residual factor could not be certified irreducible");
  return pf.factors;
}

} // namespace iwa
