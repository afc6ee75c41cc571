#pragma once

#include <map>
#include <vector>

#include "iwa/series.hpp"

namespace iwa {

/// Finite abelian group as a product of cyclic factors; elements are
/// exponent tuples reduced modulo the orders. The empty spec is the trivial
/// group.
struct AbelianGroupSpec {
  std::vector<int> cyclic_orders;

  AbelianGroupSpec() = default;
  explicit AbelianGroupSpec(std::vector<int> orders);

  int rank() const { return static_cast<int>(cyclic_orders.size()); }
  long long order() const;
  long long exponent() const;
  bool trivial() const;

  std::vector<int> reduce(std::vector<int> g) const;
  std::vector<int> identity() const { return std::vector<int>(cyclic_orders.size(), 0); }
  std::vector<int> add(const std::vector<int> &a, const std::vector<int> &b) const;
  std::vector<int> negate(const std::vector<int> &g) const;
  std::vector<std::vector<int>> elements() const;

  bool operator==(const AbelianGroupSpec &) const = default;
};

using GroupElem = std::vector<int>;

/// Element of A_n = R_n[G]: finitely many group elements with power series
/// coefficients (absent means zero).
class GroupRingElement {
public:
  GroupRingElement(CtxPtr ctx, int level, AbelianGroupSpec group);

  static GroupRingElement zero(CtxPtr ctx, int level, AbelianGroupSpec group);
  static GroupRingElement one(CtxPtr ctx, int level, AbelianGroupSpec group);
  static GroupRingElement from_series(const PowerSeriesElement &f,
                                      AbelianGroupSpec group);
  static GroupRingElement group_element(CtxPtr ctx, int level,
                                        AbelianGroupSpec group, const GroupElem &g);

  const CtxPtr &ctx() const { return ctx_; }
  int level() const { return level_; }
  const AbelianGroupSpec &group() const { return group_; }
  const std::map<GroupElem, PowerSeriesElement> &coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  PowerSeriesElement coefficient(const GroupElem &g) const;
  void add_coefficient(const GroupElem &g, const PowerSeriesElement &f);

  GroupRingElement operator+(const GroupRingElement &rhs) const;
  GroupRingElement operator-(const GroupRingElement &rhs) const;
  GroupRingElement operator-() const;
  /// Group-ring product (convolution of coefficient series).
  GroupRingElement operator*(const GroupRingElement &rhs) const;
  bool operator==(const GroupRingElement &rhs) const;

  GroupRingElement scaled(const Int &c) const;
  GroupRingElement scaled_series(const PowerSeriesElement &f) const;

  /// The unique series coefficient of a trivial-group element.
  PowerSeriesElement as_series() const;

private:
  CtxPtr ctx_;
  int level_;
  AbelianGroupSpec group_;
  std::map<GroupElem, PowerSeriesElement> coeffs_;
};

int compare(const GroupRingElement &a, const GroupRingElement &b);

GroupRingElement convolve(const GroupRingElement &a, const GroupRingElement &b);
GroupRingElement project_down(const GroupRingElement &a);
GroupRingElement project_to(const GroupRingElement &a, int n);
GroupRingElement include_up(const GroupRingElement &a, int m);

/// A character with values in the Teichmuller roots of unity, together with
/// its idempotent e_chi = |G|^-1 sum_g chi(g^-1) g.
struct CharacterIdempotent {
  std::vector<int> exponents;      // character index: generator i maps to zeta_i^exponents[i]
  std::vector<PadicInt> generator_values;
  GroupRingElement idempotent;

  PadicInt value_at(const GroupElem &g) const;
};

/// Requires p not dividing |G| and exp(G) dividing p-1, so that all character
/// values are Teichmuller lifts inside Z_p. Characters are listed in
/// lexicographic order of their exponent tuples.
std::vector<CharacterIdempotent> split_idempotents(const AbelianGroupSpec &group,
                                                   const CtxPtr &ctx, int level);

/// Scalar of the chi-component of A = prod R: sum_g chi(g) coeff_g(a).
PowerSeriesElement component(const GroupRingElement &a,
                             const CharacterIdempotent &chi);

} // namespace iwa
