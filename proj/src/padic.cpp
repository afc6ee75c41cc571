#include "iwa/padic.hpp"

namespace iwa {

const char *to_string(ErrorKind k) {
  switch (k) {
  case ErrorKind::NotAUnit: return "NotAUnit";
  case ErrorKind::ContextMismatch: return "ContextMismatch";
  case ErrorKind::LevelUnderflow: return "LevelUnderflow";
  case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
  case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
  case ErrorKind::NotSquarefreeModP: return "NotSquarefreeModP";
  case ErrorKind::GroupNotSplit: return "GroupNotSplit";
  case ErrorKind::NotQuadratic: return "NotQuadratic";
  case ErrorKind::NotTorsionAtPrecision: return "NotTorsionAtPrecision";
  case ErrorKind::UnsupportedShape: return "UnsupportedShape";
  case ErrorKind::DescentViolation: return "DescentViolation";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

} // namespace

PrecisionContext::PrecisionContext(long long p, int N, int D)
    : p_(p), N_(N), D_(D) {
  pN_ = 1;
  for (int i = 0; i < N; ++i) pN_ *= p;
}

std::shared_ptr<const PrecisionContext> PrecisionContext::make(long long p,
                                                               int N, int D) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p must be prime");
  if (N < 1) fail(ErrorKind::InvalidArgument, "coefficient precision N must be >= 1");
  if (D < 1) fail(ErrorKind::InvalidArgument, "degree cap D must be >= 1");
  return std::shared_ptr<const PrecisionContext>(new PrecisionContext(p, N, D));
}

Int PrecisionContext::p_pow(int k) const {
  if (k < 0 || k > N_) fail(ErrorKind::InvalidArgument, "p_pow out of range");
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

void require_same_context(const PrecisionContext &a,
                          const PrecisionContext &b) {
  if (!a.same(b))
    fail(ErrorKind::ContextMismatch, "operands use different (p, N, D)");
}

PadicInt::PadicInt(CtxPtr ctx, Int value) : ctx_(std::move(ctx)) {
  residue_ = value % ctx_->p_pow_precision();
  if (residue_ < 0) residue_ += ctx_->p_pow_precision();
}

PadicInt PadicInt::operator+(const PadicInt &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  return PadicInt(ctx_, residue_ + rhs.residue_);
}

PadicInt PadicInt::operator-(const PadicInt &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  return PadicInt(ctx_, residue_ - rhs.residue_);
}

PadicInt PadicInt::operator*(const PadicInt &rhs) const {
  require_same_context(*ctx_, *rhs.ctx_);
  return PadicInt(ctx_, residue_ * rhs.residue_);
}

PadicInt PadicInt::operator-() const { return PadicInt(ctx_, -residue_); }

bool PadicInt::operator==(const PadicInt &rhs) const {
  return ctx_->same(*rhs.ctx_) && residue_ == rhs.residue_;
}

Valuation val_p(const Int &residue, const PrecisionContext &ctx) {
  if (residue == 0) return Valuation{ctx.coeff_precision(), false};
  Int r = residue;
  int v = 0;
  while (r % ctx.p() == 0) {
    r /= ctx.p();
    ++v;
  }
  return Valuation{v, true};
}

Valuation val_p(const PadicInt &x) { return val_p(x.residue(), *x.ctx()); }

namespace {

// Extended Euclid on (a, m); returns g and writes x with a*x = g mod m.
Int ext_gcd(Int a, Int m, Int &x) {
  Int old_r = a, r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  x = old_s;
  return old_r;
}

} // namespace

Int invert_residue(const Int &r, const PrecisionContext &ctx, int k) {
  Int m = ctx.p_pow(k);
  Int x;
  Int g = ext_gcd(r % m, m, x);
  if (g != 1 && g != -1)
    fail(ErrorKind::NotAUnit, "residue " + r.str() + " is divisible by p");
  if (g == -1) x = -x;
  x %= m;
  if (x < 0) x += m;
  return x;
}

PadicInt invert(const PadicInt &x) {
  if (x.residue() % x.ctx()->p() == 0)
    fail(ErrorKind::NotAUnit, "cannot invert " + x.to_string());
  return PadicInt(x.ctx(),
                  invert_residue(x.residue(), *x.ctx(), x.ctx()->coeff_precision()));
}

PadicInt teichmuller(const CtxPtr &ctx, const Int &a) {
  Int m = ctx->p_pow_precision();
  Int t = a % m;
  if (t < 0) t += m;
  if (t % ctx->p() == 0)
    fail(ErrorKind::NotAUnit, "teichmuller requires p not dividing a");
  // a -> a^p gains one digit of agreement per step.
  for (int i = 0; i <= ctx->coeff_precision(); ++i) {
    Int next = boost::multiprecision::powm(t, Int(ctx->p()), m);
    if (next == t) break;
    t = next;
  }
  return PadicInt(ctx, t);
}

} // namespace iwa
