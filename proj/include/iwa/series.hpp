#pragma once

#include <map>
#include <optional>
#include <vector>

#include "iwa/padic.hpp"

namespace iwa {

/// Exponent vector; length equals the level (number of active variables).
using Monomial = std::vector<int>;

int total_degree(const Monomial &m);

/// Graded lexicographic order with X1 > X2 > ... ; lower total degree first,
/// within a degree the lex-smaller (in the X1-most-significant sense) first.
struct GrlexLess {
  bool operator()(const Monomial &a, const Monomial &b) const;
};

/// Sparse truncated element of R_n = Z_p[[X_1,...,X_n]]: finitely many terms
/// of total degree < D with coefficients reduced mod p^N. Stored terms are
/// nonzero.
class PowerSeriesElement {
public:
  using TermMap = std::map<Monomial, Int, GrlexLess>;

  /// Null-context placeholder; must be assigned before use.
  PowerSeriesElement() : level_(0) {}
  PowerSeriesElement(CtxPtr ctx, int level);

  static PowerSeriesElement zero(CtxPtr ctx, int level);
  static PowerSeriesElement constant(CtxPtr ctx, int level, const Int &c);
  static PowerSeriesElement one(CtxPtr ctx, int level);
  /// The variable X_{index} (1-based).
  static PowerSeriesElement variable(CtxPtr ctx, int level, int index);
  static PowerSeriesElement from_terms(CtxPtr ctx, int level,
                                       const std::vector<std::pair<Monomial, Int>> &terms);

  const CtxPtr &ctx() const { return ctx_; }
  int level() const { return level_; }
  const TermMap &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a monomial (zero if absent), as a reduced residue.
  Int coefficient(const Monomial &m) const;
  /// Coefficient of X1^k for level-1 (and level-0 with k == 0) elements.
  Int coefficient1(int k) const;

  /// Total degree of the element, or -1 for zero.
  int degree() const;

  void add_term(const Monomial &m, const Int &c);

  PowerSeriesElement operator+(const PowerSeriesElement &rhs) const;
  PowerSeriesElement operator-(const PowerSeriesElement &rhs) const;
  PowerSeriesElement operator*(const PowerSeriesElement &rhs) const;
  PowerSeriesElement operator-() const;
  bool operator==(const PowerSeriesElement &rhs) const;

  PowerSeriesElement scaled(const Int &c) const;

private:
  CtxPtr ctx_;
  int level_;
  TermMap terms_;
};

/// Deterministic total order on same-shape elements (for sorting generator
/// lists); compares term sequences in grlex order.
int compare(const PowerSeriesElement &a, const PowerSeriesElement &b);

/// rho_n: substitute X_n := 0 and drop the last exponent coordinate.
PowerSeriesElement project_down(const PowerSeriesElement &f);

/// rho_<n>: substitute X_i := 0 for all i > n; equals (m-n)-fold project_down.
PowerSeriesElement project_to(const PowerSeriesElement &f, int n);

/// iota_n: natural inclusion into a higher level (zero-padded exponents).
PowerSeriesElement include_up(const PowerSeriesElement &f, int m);

/// True iff the constant term is a p-adic unit.
bool is_unit(const PowerSeriesElement &f);

/// Inverse of a unit at precision: inverse(f) * f == 1 mod (p^N, deg >= D).
PowerSeriesElement inverse(const PowerSeriesElement &f);

/// Minimal p-valuation over all coefficients (inexact for the zero element).
Valuation content_valuation(const PowerSeriesElement &f);

/// f / p^k, assuming p^k divides every coefficient; residues are lifted by
/// exact integer division (canonical lift, defined mod p^(N-k)).
PowerSeriesElement divide_p_power(const PowerSeriesElement &f, int k);

PowerSeriesElement multiply_p_power(const PowerSeriesElement &f, int k);

/// Greedy local division in the truncated ring: returns q with q*g == f
/// exactly at precision, or nullopt if no such q was found.
std::optional<PowerSeriesElement> divide_truncated(const PowerSeriesElement &f,
                                                   const PowerSeriesElement &g);

} // namespace iwa
