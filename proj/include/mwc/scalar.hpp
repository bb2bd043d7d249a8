#pragma once

#include <cstdint>
#include <string>

#include "mwc/error.hpp"

namespace mwc {

/// Largest exponent k for which p^k is representable; residues live in [0, p^k).
int max_precision(std::int64_t p);

/// p^k as an exact integer. Throws InvalidArgument when it would overflow 2^62.
std::int64_t ipow(std::int64_t p, int k);

/// p-adic valuation of a nonzero integer; `cap` is returned for zero.
int valuation(std::int64_t p, std::int64_t x, int cap);

/// Canonical residue of x modulo m in [0, m).
inline std::int64_t mod_reduce(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t add_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t s = a + b;  // both in [0, m) and m < 2^62
  return s >= m ? s - m : s;
}

/// Inverse of a unit modulo m (gcd(a, m) = 1 required).
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

bool is_prime(std::int64_t n);

/// The base residue ring Z/p^N: prime p and the working precision N.
struct PrimeCtx {
  std::int64_t p = 2;
  int N = 1;

  PrimeCtx() = default;
  PrimeCtx(std::int64_t p_, int n_);

  std::int64_t modulus() const { return ipow(p, N); }
  std::int64_t modulus(int prec) const { return ipow(p, prec); }

  friend bool operator==(const PrimeCtx&, const PrimeCtx&) = default;
};

/// Residue class modulo p^prec. Arithmetic keeps the smaller of the operand
/// precisions; exact division by p^v consumes v digits.
class PrecScalar {
 public:
  PrecScalar(const PrimeCtx& ctx, std::int64_t value);
  PrecScalar(const PrimeCtx& ctx, std::int64_t value, int prec);

  const PrimeCtx& ctx() const { return ctx_; }
  std::int64_t value() const { return value_; }
  int prec() const { return prec_; }
  std::int64_t modulus() const { return ipow(ctx_.p, prec_); }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return value_ % ctx_.p != 0; }
  /// Valuation, equal to prec() for the zero class.
  int valuation() const { return mwc::valuation(ctx_.p, value_, prec_); }

  PrecScalar reduced(int prec) const;
  PrecScalar inverse() const;
  PrecScalar div_exact(int v) const;

  friend PrecScalar operator+(const PrecScalar& a, const PrecScalar& b);
  friend PrecScalar operator-(const PrecScalar& a, const PrecScalar& b);
  friend PrecScalar operator*(const PrecScalar& a, const PrecScalar& b);
  PrecScalar operator-() const;

  /// Equality of classes at the common (minimum) precision.
  friend bool operator==(const PrecScalar& a, const PrecScalar& b);

  std::string to_string() const;

 private:
  PrimeCtx ctx_;
  std::int64_t value_ = 0;
  int prec_ = 1;
};

/// Exact division a / p^v with precision loss v.
PrecScalar scalar_div_exact(const PrecScalar& a, int v);

/// p^{i+1}/(i+1) in Z/p^N: the coefficient of the homotopy operator.
PrecScalar unit_coeff(const PrimeCtx& ctx, int i);

/// unit_coeff at an explicit precision (used when working below ctx.N).
PrecScalar unit_coeff(const PrimeCtx& ctx, int i, int prec);

}  // namespace mwc
