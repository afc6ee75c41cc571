#include "iwa/oracle.hpp"

#include <future>
#include <unordered_set>

// Brute-force ground truth over finite shadows of the working ring. All
// arithmetic here is on raw integer coefficient vectors modulo p^a; none of
// the power-series, Weierstrass or Fitting machinery is reused.

namespace iwa::oracle {

namespace {

long long pow_ll(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct Shadow {
  FiniteQuotientSpec spec;
  long long pa;      // p^a
  int n;             // level
  long long mono;    // b^n
  long long gsize;   // |G|
  long long mcount;  // mono * gsize

  explicit Shadow(const FiniteQuotientSpec &s) : spec(s) {
    pa = pow_ll(s.p, s.a);
    n = s.level;
    mono = pow_ll(s.b, n);
    gsize = s.group.order();
    mcount = mono * gsize;
  }

  // Basis index of (monomial exponents, group element).
  long long index_of(const std::vector<int> &expo, const std::vector<int> &g) const {
    long long mi = 0;
    for (int i = 0; i < n; ++i) mi = mi * spec.b + expo[static_cast<size_t>(i)];
    long long gi = 0;
    for (size_t i = 0; i < g.size(); ++i)
      gi = gi * spec.group.cyclic_orders[i] + g[i];
    return gi * mono + mi;
  }

  void decode(long long idx, std::vector<int> &expo, std::vector<int> &g) const {
    long long mi = idx % mono, gi = idx / mono;
    expo.assign(static_cast<size_t>(n), 0);
    for (int i = n - 1; i >= 0; --i) {
      expo[static_cast<size_t>(i)] = static_cast<int>(mi % spec.b);
      mi /= spec.b;
    }
    g.assign(spec.group.cyclic_orders.size(), 0);
    for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) {
      g[static_cast<size_t>(i)] = static_cast<int>(gi % spec.group.cyclic_orders[static_cast<size_t>(i)]);
      gi /= spec.group.cyclic_orders[static_cast<size_t>(i)];
    }
  }

  // Dense Q element: mcount residues mod p^a.
  using Elem = std::vector<long long>;

  Elem zero() const { return Elem(static_cast<size_t>(mcount), 0); }

  Elem reduce_entry(const GroupRingElement &x) const {
    Elem out = zero();
    for (const auto &[g, f] : x.coeffs()) {
      for (const auto &[mon, c] : f.terms()) {
        bool dead = false;
        for (int e : mon)
          if (e >= spec.b) { dead = true; break; }
        if (dead) continue;
        long long idx = index_of(mon, g);
        long long cc = static_cast<long long>(c % pa);
        out[static_cast<size_t>(idx)] = (out[static_cast<size_t>(idx)] + cc) % pa;
      }
    }
    return out;
  }

  Elem mul(const Elem &x, const Elem &y) const {
    Elem out = zero();
    std::vector<int> ex, gx, ey, gy;
    for (long long i = 0; i < mcount; ++i) {
      if (x[static_cast<size_t>(i)] == 0) continue;
      decode(i, ex, gx);
      for (long long j = 0; j < mcount; ++j) {
        if (y[static_cast<size_t>(j)] == 0) continue;
        decode(j, ey, gy);
        bool dead = false;
        std::vector<int> es(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) {
          es[static_cast<size_t>(t)] = ex[static_cast<size_t>(t)] + ey[static_cast<size_t>(t)];
          if (es[static_cast<size_t>(t)] >= spec.b) { dead = true; break; }
        }
        if (dead) continue;
        std::vector<int> gs = spec.group.trivial() ? gx : spec.group.add(gx, gy);
        long long idx = index_of(es, gs);
        out[static_cast<size_t>(idx)] =
            (out[static_cast<size_t>(idx)] +
             x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)]) % pa;
      }
    }
    return out;
  }
};

int val_mod(long long x, long long p, int a) {
  if (x == 0) return a;
  int v = 0;
  while (x % p == 0) { x /= p; ++v; }
  return v;
}

long long inv_unit_mod(long long u, long long m) {
  long long r0 = m, r1 = u % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long t = r0 - q * r1; r0 = r1; r1 = t;
    t = s0 - q * s1; s0 = s1; s1 = t;
  }
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

// Cardinality of the additive span of generator vectors inside (Z/p^a)^K,
// by Howell-style elimination with p-power pivots.
Int span_cardinality(std::vector<std::vector<long long>> gens, long long p, int a,
                     long long pa, size_t K) {
  std::vector<std::vector<long long>> pivot(K); // by pivot column
  std::vector<int> pivot_val(K, a);

  std::vector<std::vector<long long>> queue = std::move(gens);
  while (!queue.empty()) {
    std::vector<long long> w = std::move(queue.back());
    queue.pop_back();
    for (size_t c = 0; c < K; ++c) {
      if (w[c] % pa == 0) { w[c] = 0; continue; }
      int vw = val_mod(w[c], p, a);
      if (!pivot[c].empty() && pivot_val[c] <= vw) {
        long long factor = (w[c] / pow_ll(p, pivot_val[c])) % pa;
        for (size_t t = 0; t < K; ++t)
          w[t] = ((w[t] - factor * pivot[c][t]) % pa + pa) % pa;
        continue;
      }
      // Normalize w into a pivot at column c.
      long long unit = w[c] / pow_ll(p, vw);
      long long uinv = inv_unit_mod(unit, pa);
      for (size_t t = 0; t < K; ++t) w[t] = (w[t] * uinv) % pa;
      std::vector<long long> old = std::move(pivot[c]);
      int old_val = pivot_val[c];
      pivot[c] = w;
      pivot_val[c] = vw;
      if (a > vw) {
        // Howell closure: the annihilator multiple stays in the span.
        std::vector<long long> ann(K);
        long long mult = pow_ll(p, a - vw);
        for (size_t t = 0; t < K; ++t) ann[t] = (w[t] * mult) % pa;
        ann[c] = 0;
        queue.push_back(std::move(ann));
      }
      if (!old.empty()) queue.push_back(std::move(old));
      (void)old_val;
      w.clear();
      break;
    }
  }

  Int size = 1;
  for (size_t c = 0; c < K; ++c)
    if (!pivot[c].empty())
      for (int t = 0; t < a - pivot_val[c]; ++t) size *= p;
  return size;
}

Shadow make_shadow(const Presentation &P, const FiniteQuotientSpec &spec) {
  if (spec.a < 1 || spec.b < 1)
    fail(ErrorKind::InvalidArgument, "shadow needs a, b >= 1");
  if (spec.level != P.level())
    fail(ErrorKind::InvalidArgument, "shadow level differs from presentation level");
  if (!(spec.group == P.group()))
    fail(ErrorKind::InvalidArgument, "shadow group differs from presentation group");
  if (spec.p != P.ctx()->p())
    fail(ErrorKind::InvalidArgument, "shadow prime differs from context prime");
  if (spec.a > P.ctx()->coeff_precision())
    fail(ErrorKind::InvalidArgument, "shadow precision exceeds context precision");
  if (P.ctx()->degree_cap() < spec.level * (spec.b - 1) + 1)
    fail(ErrorKind::InvalidArgument,
         "degree cap too small for the shadow to be a ring quotient");
  FiniteQuotientSpec s = spec;
  Shadow sh(s);
  Int card = sh.spec.ring_cardinality();
  if (card > spec.cap)
    fail(ErrorKind::CapExceeded, "ring cardinality " + card.str() +
                                     " exceeds cap " + std::to_string(spec.cap));
  return sh;
}

std::vector<std::vector<long long>> generators_for_column(
    const std::vector<Shadow::Elem> &entries, const Shadow &sh, int d, int e,
    int j) {
  size_t K = static_cast<size_t>(d) * static_cast<size_t>(sh.mcount);
  std::vector<std::vector<long long>> gens;
  for (long long basis = 0; basis < sh.mcount; ++basis) {
    Shadow::Elem be = sh.zero();
    be[static_cast<size_t>(basis)] = 1;
    std::vector<long long> vec(K, 0);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      Shadow::Elem prod = sh.mul(entries[static_cast<size_t>(i) * e + j], be);
      for (long long t = 0; t < sh.mcount; ++t) {
        vec[static_cast<size_t>(i) * sh.mcount + t] = prod[static_cast<size_t>(t)];
        nonzero |= prod[static_cast<size_t>(t)] != 0;
      }
    }
    if (nonzero) gens.push_back(std::move(vec));
  }
  return gens;
}

std::vector<std::vector<long long>> image_generators(const Presentation &P,
                                                     const Shadow &sh) {
  int d = P.rows(), e = P.cols();
  std::vector<Shadow::Elem> entries;
  entries.reserve(static_cast<size_t>(d) * e);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < e; ++j) entries.push_back(sh.reduce_entry(P.at(i, j)));

  std::vector<std::vector<long long>> gens;
  if (sh.spec.parallel && e > 1) {
    // Enumeration partitioned per column; merged in column order so the
    // generator list (and everything downstream) is unchanged.
    std::vector<std::future<std::vector<std::vector<long long>>>> futs;
    for (int j = 0; j < e; ++j)
      futs.push_back(std::async(std::launch::async, generators_for_column,
                                std::cref(entries), std::cref(sh), d, e, j));
    for (auto &f : futs)
      for (auto &v : f.get()) gens.push_back(std::move(v));
  } else {
    for (int j = 0; j < e; ++j)
      for (auto &v : generators_for_column(entries, sh, d, e, j))
        gens.push_back(std::move(v));
  }
  return gens;
}

} // namespace

long long FiniteQuotientSpec::monomial_count() const {
  return pow_ll(b, level) * group.order();
}

Int FiniteQuotientSpec::ring_cardinality() const {
  Int out = 1;
  long long digits = static_cast<long long>(a) * monomial_count();
  for (long long i = 0; i < digits; ++i) out *= p;
  return out;
}

Int coker_cardinality(const Presentation &P, const FiniteQuotientSpec &spec) {
  Shadow sh = make_shadow(P, spec);
  size_t K = static_cast<size_t>(P.rows()) * static_cast<size_t>(sh.mcount);
  Int total = 1; // |Q^d| = p^(a*K)
  for (size_t i = 0; i < K; ++i)
    for (int t = 0; t < spec.a; ++t) total *= spec.p;
  Int image = span_cardinality(image_generators(P, sh), spec.p, spec.a, sh.pa, K);
  return total / image;
}

Int coker_cardinality_exhaustive(const Presentation &P,
                                 const FiniteQuotientSpec &spec,
                                 long long domain_cap) {
  Shadow sh = make_shadow(P, spec);
  int d = P.rows(), e = P.cols();
  Int domain = 1;
  for (int j = 0; j < e; ++j) domain *= sh.spec.ring_cardinality();
  if (domain > domain_cap)
    fail(ErrorKind::CapExceeded, "exhaustive domain " + domain.str() + " too large");
  Int range = 1;
  for (int i = 0; i < d; ++i) range *= sh.spec.ring_cardinality();
  if (range > (Int(1) << 62))
    fail(ErrorKind::CapExceeded, "exhaustive range does not fit a 64-bit key");

  std::vector<Shadow::Elem> entries;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < e; ++j) entries.push_back(sh.reduce_entry(P.at(i, j)));

  size_t digits = static_cast<size_t>(e) * static_cast<size_t>(sh.mcount);
  std::vector<long long> counter(digits, 0);
  std::unordered_set<unsigned long long> image;
  bool done = false;
  while (!done) {
    // y = theta * x, hashed into a single 64-bit key via mixed radix.
    unsigned long long key = 0;
    for (int i = 0; i < d; ++i) {
      Shadow::Elem acc = sh.zero();
      for (int j = 0; j < e; ++j) {
        Shadow::Elem x(counter.begin() + static_cast<long long>(j) * sh.mcount,
                       counter.begin() + static_cast<long long>(j + 1) * sh.mcount);
        Shadow::Elem prod = sh.mul(entries[static_cast<size_t>(i) * e + j], x);
        for (long long t = 0; t < sh.mcount; ++t)
          acc[static_cast<size_t>(t)] =
              (acc[static_cast<size_t>(t)] + prod[static_cast<size_t>(t)]) % sh.pa;
      }
      for (long long t = 0; t < sh.mcount; ++t)
        key = key * static_cast<unsigned long long>(sh.pa) +
              static_cast<unsigned long long>(acc[static_cast<size_t>(t)]);
    }
    image.insert(key);
    done = true;
    for (size_t i = 0; i < digits; ++i) {
      if (++counter[i] < sh.pa) { done = false; break; }
      counter[i] = 0;
    }
  }

  Int total = 1;
  for (size_t i = 0; i < static_cast<size_t>(d) * static_cast<size_t>(sh.mcount); ++i)
    for (int t = 0; t < spec.a; ++t) total *= spec.p;
  return total / Int(image.size());
}

CrossValidateVerdict cross_validate(const Presentation &P,
                                    const Decomposition &dec,
                                    const FiniteQuotientSpec &spec) {
  CrossValidateVerdict v;
  v.enumerated = coker_cardinality(P, spec);
  v.predicted = 1;
  for (const auto &c : dec.chain) {
    Presentation cyc(P.ctx(), P.level(), P.group(), 1, 1);
    cyc.set(0, 0, GroupRingElement::from_series(c.element(), P.group()));
    Int card = coker_cardinality(cyc, spec);
    v.summand_cardinalities.push_back(card);
    v.predicted *= card;
  }
  v.equal = v.enumerated == v.predicted;
  return v;
}

CrossValidateVerdict cross_validate(const Presentation &P,
                                    const FiniteQuotientSpec &spec) {
  return cross_validate(P, decompose(P), spec);
}

} // namespace iwa::oracle
