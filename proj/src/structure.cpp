#include "iwa/structure.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace iwa {

namespace {

// All k x k minors over chosen row and column subsets, memoized on the pair
// of masks (row masks always have the same popcount as column masks).
class SubMinorTable {
public:
  explicit SubMinorTable(const Presentation &P) : P_(P) {}

  const GroupRingElement &minor(unsigned rows, unsigned cols) {
    auto key = std::make_pair(rows, cols);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    GroupRingElement result = GroupRingElement::zero(P_.ctx(), P_.level(), P_.group());
    if (rows == 0) {
      result = GroupRingElement::one(P_.ctx(), P_.level(), P_.group());
    } else {
      int r = std::countr_zero(rows); // expand along the lowest selected row
      unsigned rest_rows = rows & (rows - 1);
      int sign = 1;
      for (int j = 0; j < P_.cols(); ++j) {
        if (!(cols & (1u << j))) continue;
        const GroupRingElement &entry = P_.at(r, j);
        if (!entry.is_zero()) {
          GroupRingElement term = entry * minor(rest_rows, cols & ~(1u << j));
          result = sign > 0 ? result + term : result - term;
        }
        sign = -sign;
      }
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

private:
  const Presentation &P_;
  std::map<std::pair<unsigned, unsigned>, GroupRingElement> memo_;
};

void require_level1_quadratic_torsion(const Presentation &P) {
  if (!P.group().trivial())
    fail(ErrorKind::UnsupportedShape, "decomposition over groups goes through decompose_split");
  if (P.level() > 1)
    fail(ErrorKind::UnsupportedShape, "no decomposition at level >= 2");
  if (!P.quadratic()) fail(ErrorKind::NotQuadratic, "need e == d");
  if (!is_torsion(P).torsion)
    fail(ErrorKind::NotTorsionAtPrecision, "presentation is not torsion at precision");
}

} // namespace

std::vector<Level1Canonical> determinantal_divisors(const Presentation &P) {
  require_level1_quadratic_torsion(P);
  SubMinorTable table(P);
  int d = P.rows();
  std::vector<Level1Canonical> out;
  for (int k = 1; k <= d; ++k) {
    std::optional<Level1Canonical> acc;
    for (unsigned rows = 0; rows < (1u << d); ++rows) {
      if (std::popcount(rows) != k) continue;
      for (unsigned cols = 0; cols < (1u << d); ++cols) {
        if (std::popcount(cols) != k) continue;
        const GroupRingElement &m = table.minor(rows, cols);
        if (m.is_zero()) continue;
        Level1Canonical c = canonical_level1(m.as_series());
        acc = acc ? gcd_level1(*acc, c) : c;
        if (acc->is_unit_ideal()) break;
      }
      if (acc && acc->is_unit_ideal()) break;
    }
    if (!acc)
      fail(ErrorKind::NotTorsionAtPrecision,
           "all " + std::to_string(k) + "x" + std::to_string(k) +
               " minors vanish at precision");
    out.push_back(*acc);
  }
  for (size_t k = 1; k < out.size(); ++k)
    if (!divides_level1(out[k - 1], out[k]))
      fail(ErrorKind::PrecisionExhausted, "determinantal divisor chain broke at precision");
  return out;
}

Decomposition decompose(const Presentation &P) {
  std::vector<Level1Canonical> g = determinantal_divisors(P);
  int d = static_cast<int>(g.size());

  Decomposition out;
  out.char_generator = g.back();

  // Chain quotients c_i = g_i / g_{i-1}.
  for (int i = 0; i < d; ++i) {
    Level1Canonical c = i == 0 ? g[0] : quotient_level1(g[i], g[i - 1]);
    if (!c.is_unit_ideal()) out.chain.push_back(c);
  }

  // Factor each quotient; group exponents per prime. The same prime can
  // surface in different chain quotients under different residue lifts, so
  // primes already found are divided out first (exact division at full
  // precision) before the factorizer runs on what is left.
  struct Key {
    bool is_p;
    PowerSeriesElement poly;
  };
  std::vector<std::pair<Key, std::vector<int>>> table;
  auto bump = [&](bool is_p, const PowerSeriesElement &poly, int mult) {
    for (auto &[k, exps] : table)
      if (k.is_p == is_p && (is_p || k.poly == poly)) {
        exps.push_back(mult);
        return;
      }
    table.push_back({Key{is_p, poly}, {mult}});
  };

  for (size_t i = 0; i < out.chain.size(); ++i) {
    const Level1Canonical &c = out.chain[i];
    if (c.mu > 0)
      bump(true, PowerSeriesElement::zero(P.ctx(), P.level()), c.mu);
    if (c.lambda() > 0) {
      PowerSeriesElement work = c.poly;
      std::vector<PowerSeriesElement> known;
      for (const auto &[k, exps] : table)
        if (!k.is_p) known.push_back(k.poly);
      for (const auto &prime : known) {
        if (work.degree() < 1) break;
        int mult = 0;
        while (work.degree() >= prime.degree()) {
          auto q = poly_divide_exact(work, prime);
          if (!q) break;
          work = *q;
          ++mult;
        }
        if (mult > 0) bump(false, prime, mult);
      }
      if (work.degree() > 0) {
        PartialFactorization pf = factor_partial(work);
        for (const auto &f : pf.factors) bump(false, f.factor, f.multiplicity);
        if (!pf.complete())
          out.residual_blocks.push_back({static_cast<int>(i) + 1, pf.residual});
      }
    }
  }

  // Deterministic order: p first, then X, then by (degree, term compare).
  std::sort(table.begin(), table.end(), [](const auto &a, const auto &b) {
    if (a.first.is_p != b.first.is_p) return a.first.is_p;
    bool ax = a.first.poly.terms().size() == 1 && a.first.poly.degree() == 1;
    bool bx = b.first.poly.terms().size() == 1 && b.first.poly.degree() == 1;
    if (ax != bx) return ax;
    if (a.first.poly.degree() != b.first.poly.degree())
      return a.first.poly.degree() < b.first.poly.degree();
    return compare(a.first.poly, b.first.poly) < 0;
  });
  for (auto &[k, exps] : table) {
    std::sort(exps.begin(), exps.end(), std::greater<int>());
    out.primes.push_back({PrimeDescriptor{k.is_p, k.poly}, exps});
  }

  // Invariant: product of listed prime powers and blocks equals the char
  // generator.
  Level1Canonical product{0, PowerSeriesElement::one(P.ctx(), P.level())};
  for (const auto &pe : out.primes)
    for (int e : pe.exponents) {
      if (pe.prime.is_p)
        product.mu += e;
      else
        for (int t = 0; t < e; ++t)
          product = product_level1(
              product, Level1Canonical{0, pe.prime.poly});
    }
  for (const auto &blk : out.residual_blocks)
    product = product_level1(product, Level1Canonical{0, blk.factor});
  if (!(product.element() == out.char_generator.element()))
    fail(ErrorKind::PrecisionExhausted, "decomposition invariant failed at precision");

  return out;
}

SplitDecomposition decompose_split(const Presentation &P) {
  auto chars = split_idempotents(P.group(), P.ctx(), P.level());
  SplitDecomposition out;
  for (const auto &chi : chars) {
    out.characters.push_back(chi.exponents);
    out.components.push_back(decompose(P.component(chi)));
  }
  return out;
}

} // namespace iwa
