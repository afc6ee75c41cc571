#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <string>

#include "iwa/errors.hpp"

namespace iwa {

using Int = boost::multiprecision::cpp_int;

/// Shared computational universe: prime p, coefficient precision N (work
/// modulo p^N) and degree cap D (terms of total degree >= D are discarded).
class PrecisionContext {
public:
  static std::shared_ptr<const PrecisionContext> make(long long p, int N,
                                                      int D);

  long long p() const { return p_; }
  int coeff_precision() const { return N_; }
  int degree_cap() const { return D_; }
  const Int &p_pow_precision() const { return pN_; }

  /// p^k for 0 <= k <= N.
  Int p_pow(int k) const;

  bool same(const PrecisionContext &other) const {
    return p_ == other.p_ && N_ == other.N_ && D_ == other.D_;
  }

private:
  PrecisionContext(long long p, int N, int D);

  long long p_;
  int N_;
  int D_;
  Int pN_;
};

using CtxPtr = std::shared_ptr<const PrecisionContext>;

void require_same_context(const PrecisionContext &a, const PrecisionContext &b);

/// Order of vanishing at p, precision aware: exact=false means the value is
/// indistinguishable from infinity at precision (residue was 0 mod p^N), in
/// which case value == N.
struct Valuation {
  int value = 0;
  bool exact = true;

  bool operator==(const Valuation &) const = default;
};

/// Residue in [0, p^N) representing an element of Z_p at precision N.
class PadicInt {
public:
  PadicInt(CtxPtr ctx, Int value);

  const CtxPtr &ctx() const { return ctx_; }
  const Int &residue() const { return residue_; }
  bool is_zero() const { return residue_ == 0; }

  PadicInt operator+(const PadicInt &rhs) const;
  PadicInt operator-(const PadicInt &rhs) const;
  PadicInt operator*(const PadicInt &rhs) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt &rhs) const;

  std::string to_string() const { return residue_.str(); }

private:
  CtxPtr ctx_;
  Int residue_;
};

/// Largest k <= N with p^k dividing the residue; inexact iff residue == 0.
Valuation val_p(const PadicInt &x);
Valuation val_p(const Int &residue, const PrecisionContext &ctx);

/// Inverse modulo p^N; requires val_p(x) == 0.
PadicInt invert(const PadicInt &x);

/// Inverse of a unit residue modulo p^k (1 <= k <= N).
Int invert_residue(const Int &r, const PrecisionContext &ctx, int k);

/// Teichmuller representative: the unique x mod p^N with x^(p-1) = 1 and
/// x = a mod p, computed by iterating a -> a^p to a fixed point.
PadicInt teichmuller(const CtxPtr &ctx, const Int &a);

} // namespace iwa
