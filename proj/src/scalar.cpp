#include "mwc/scalar.hpp"

#include <limits>

namespace mwc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::NonUnitSubstitution: return "NonUnitSubstitution";
    case ErrorKind::LengthUnderflow: return "LengthUnderflow";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::NotCongruentModP: return "NotCongruentModP";
    case ErrorKind::IncompatibleLifts: return "IncompatibleLifts";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::WindowOverflow: return "WindowOverflow";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::JobParseError: return "JobParseError";
  }
  return "Unknown";
}

namespace {
constexpr std::int64_t kModulusLimit = std::int64_t{1} << 62;
}

int max_precision(std::int64_t p) {
  int k = 0;
  std::int64_t m = 1;
  while (m <= kModulusLimit / p) {
    m *= p;
    ++k;
  }
  return k;
}

std::int64_t ipow(std::int64_t p, int k) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "negative exponent in ipow");
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > kModulusLimit / p) fail(ErrorKind::InvalidArgument, "p^" + std::to_string(k) + " exceeds the residue range");
    r *= p;
  }
  return r;
}

int valuation(std::int64_t p, std::int64_t x, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  __int128 old_r = mod_reduce(a, m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) fail(ErrorKind::NotDivisible, "element is not a unit modulo " + std::to_string(m));
  return mod_reduce(static_cast<std::int64_t>(old_s % m), m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeCtx::PrimeCtx(std::int64_t p_, int n_) : p(p_), N(n_) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (N < 1) fail(ErrorKind::InvalidArgument, "precision N must be >= 1");
  if (N > max_precision(p)) fail(ErrorKind::InvalidArgument, "precision N too large for 64-bit residues");
}

PrecScalar::PrecScalar(const PrimeCtx& ctx, std::int64_t value) : PrecScalar(ctx, value, ctx.N) {}

PrecScalar::PrecScalar(const PrimeCtx& ctx, std::int64_t value, int prec) : ctx_(ctx), prec_(prec) {
  if (prec < 1) fail(ErrorKind::PrecisionExhausted, "scalar precision must be >= 1");
  value_ = mod_reduce(value, ipow(ctx.p, prec));
}

PrecScalar PrecScalar::reduced(int prec) const {
  if (prec > prec_) fail(ErrorKind::InvalidArgument, "cannot raise the precision of a scalar");
  return PrecScalar(ctx_, value_, prec);
}

PrecScalar PrecScalar::inverse() const {
  if (!is_unit()) fail(ErrorKind::NotDivisible, "scalar " + to_string() + " is not a unit");
  return PrecScalar(ctx_, inv_mod(value_, modulus()), prec_);
}

PrecScalar PrecScalar::div_exact(int v) const { return scalar_div_exact(*this, v); }

PrecScalar operator+(const PrecScalar& a, const PrecScalar& b) {
  int prec = std::min(a.prec_, b.prec_);
  std::int64_t m = ipow(a.ctx_.p, prec);
  return PrecScalar(a.ctx_, add_mod(a.value_ % m, b.value_ % m, m), prec);
}

PrecScalar operator-(const PrecScalar& a, const PrecScalar& b) { return a + (-b); }

PrecScalar operator*(const PrecScalar& a, const PrecScalar& b) {
  int prec = std::min(a.prec_, b.prec_);
  std::int64_t m = ipow(a.ctx_.p, prec);
  return PrecScalar(a.ctx_, mul_mod(a.value_ % m, b.value_ % m, m), prec);
}

PrecScalar PrecScalar::operator-() const { return PrecScalar(ctx_, value_ == 0 ? 0 : modulus() - value_, prec_); }

bool operator==(const PrecScalar& a, const PrecScalar& b) {
  if (a.ctx_.p != b.ctx_.p) return false;
  std::int64_t m = ipow(a.ctx_.p, std::min(a.prec_, b.prec_));
  return a.value_ % m == b.value_ % m;
}

std::string PrecScalar::to_string() const {
  return std::to_string(value_) + " (mod " + std::to_string(ctx_.p) + "^" + std::to_string(prec_) + ")";
}

PrecScalar scalar_div_exact(const PrecScalar& a, int v) {
  if (v < 0) fail(ErrorKind::InvalidArgument, "negative division exponent");
  if (v == 0) return a;
  if (a.prec() - v < 1)
    fail(ErrorKind::PrecisionExhausted, "dividing " + a.to_string() + " by p^" + std::to_string(v) + " exhausts precision");
  std::int64_t pv = ipow(a.ctx().p, v);
  if (a.value() % pv != 0)
    fail(ErrorKind::NotDivisible, a.to_string() + " is not divisible by " + std::to_string(a.ctx().p) + "^" + std::to_string(v));
  return PrecScalar(a.ctx(), a.value() / pv, a.prec() - v);
}

PrecScalar unit_coeff(const PrimeCtx& ctx, int i) { return unit_coeff(ctx, i, ctx.N); }

PrecScalar unit_coeff(const PrimeCtx& ctx, int i, int prec) {
  if (i < 0) fail(ErrorKind::InvalidArgument, "unit_coeff index must be >= 0");
  std::int64_t n = static_cast<std::int64_t>(i) + 1;
  int v = 0;
  while (n % ctx.p == 0) {
    n /= ctx.p;
    ++v;
  }
  int shift = i + 1 - v;
  if (shift >= prec) return PrecScalar(ctx, 0, prec);
  std::int64_t m = ipow(ctx.p, prec);
  return PrecScalar(ctx, mul_mod(ipow(ctx.p, shift), inv_mod(n % m, m), m), prec);
}

}  // namespace mwc
