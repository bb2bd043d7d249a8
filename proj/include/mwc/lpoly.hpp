#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwc/scalar.hpp"

namespace mwc {

using Exponent = std::vector<int>;

/// Variables of a Laurent polynomial ring over Z/p^N.
///
/// A variable flagged invertible may carry negative exponents. A variable
/// with a truncation bound t is read modulo (var^{t+1}); this is used only
/// for the auxiliary homotopy variable, where the bound is derived from the
/// precision so that every dropped term is annihilated downstream.
struct PolyRing {
  PrimeCtx ctx;
  std::vector<std::string> names;
  std::vector<bool> invertible;
  std::vector<int> truncation;  // -1 = none

  std::size_t nvars() const { return names.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(const PrimeCtx& ctx, std::vector<std::string> names, std::vector<bool> invertible = {},
                  std::vector<int> truncation = {});

/// Same variables, different base precision context.
RingPtr with_ctx(const RingPtr& ring, const PrimeCtx& ctx);

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

/// Sparse multivariate Laurent polynomial with coefficients in Z/p^prec.
/// Terms are kept in lexicographic order of exponent vectors; zero
/// coefficients are never stored.
class LPoly {
 public:
  using TermMap = std::map<Exponent, std::int64_t>;

  explicit LPoly(RingPtr ring);
  LPoly(RingPtr ring, int prec);
  LPoly(RingPtr ring, int prec, TermMap terms);

  static LPoly constant(RingPtr ring, std::int64_t c, int prec);
  static LPoly constant(RingPtr ring, std::int64_t c) {
    int prec = ring->ctx.N;
    return constant(std::move(ring), c, prec);
  }
  static LPoly monomial(RingPtr ring, Exponent e, std::int64_t c, int prec);
  static LPoly variable(RingPtr ring, std::size_t j, int prec);
  static LPoly variable(RingPtr ring, std::size_t j) {
    int prec = ring->ctx.N;
    return variable(std::move(ring), j, prec);
  }

  const RingPtr& ring() const { return ring_; }
  const PrimeCtx& ctx() const { return ring_->ctx; }
  std::int64_t p() const { return ring_->ctx.p; }
  int prec() const { return prec_; }
  std::int64_t modulus() const { return ipow(p(), prec_); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  PrecScalar coeff(const Exponent& e) const;
  /// Constant term as a scalar.
  PrecScalar constant_term() const;

  /// Maximum total degree over terms; nullopt for the zero polynomial.
  std::optional<long> degree() const;
  /// Largest exponent of variable j that occurs (nullopt for zero).
  std::optional<int> degree_in(std::size_t j) const;
  /// Minimum p-adic valuation of the coefficients (prec() for zero).
  int valuation() const;

  /// Drops digits: coefficients reduced modulo p^prec.
  LPoly reduced(int prec) const;
  /// Reinterprets the stored representatives at a higher precision.
  LPoly lifted(int prec) const;
  /// Same residues viewed in another ring with identical variables.
  LPoly rebased(RingPtr ring) const;

  LPoly operator-() const;
  friend LPoly operator+(const LPoly& a, const LPoly& b);
  friend LPoly operator-(const LPoly& a, const LPoly& b);
  friend LPoly operator*(const LPoly& a, const LPoly& b);
  LPoly& operator+=(const LPoly& b) { return *this = *this + b; }
  LPoly& operator-=(const LPoly& b) { return *this = *this - b; }
  LPoly& operator*=(const LPoly& b) { return *this = *this * b; }

  LPoly scaled(std::int64_t c) const;
  LPoly scaled(const PrecScalar& c) const;
  LPoly pow(std::uint64_t e) const;
  /// Exact division by p^v; the result carries prec() - v digits.
  LPoly div_p_exact(int v) const;

  /// True when the polynomial is a unit: a unit monomial in invertible,
  /// untruncated variables times 1 + (element of the ideal (p, truncated vars)).
  bool is_unit() const;
  /// Inverse of a unit (NonUnitSubstitution otherwise).
  LPoly unit_inverse() const;

  LPoly partial_derivative(std::size_t j) const;

  /// Equality at the common (minimum) precision.
  friend bool operator==(const LPoly& a, const LPoly& b);
  /// Equality of precision and stored terms.
  bool identical(const LPoly& other) const;

  std::string to_string() const;

 private:
  void normalize();

  RingPtr ring_;
  int prec_;
  TermMap terms_;
};

/// Ring homomorphism between Laurent polynomial rings, given by images of
/// generators. Invertible generators must map to units.
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr target, std::vector<LPoly> images);

  static RingMap identity(const RingPtr& ring);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<LPoly>& images() const { return images_; }
  const LPoly& image(std::size_t j) const { return images_.at(j); }
  int prec() const;

  LPoly apply(const LPoly& f) const;
  LPoly operator()(const LPoly& f) const { return apply(f); }

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<LPoly> images_;
  std::vector<std::optional<LPoly>> inverses_;
};

/// outer ∘ inner.
RingMap compose(const RingMap& outer, const RingMap& inner);

/// Equality of two maps on generators at the common precision.
bool same_on_generators(const RingMap& a, const RingMap& b);

}  // namespace mwc
