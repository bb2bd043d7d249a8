#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mwc/forms.hpp"

namespace mwc {

/// Seeded generator with platform-independent draws: mt19937_64 output with
/// rejection sampling, so a seed gives the same inputs on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Shape of random polynomials: at most `max_terms` terms of total degree
/// (sum of absolute exponents) at most `max_degree`.
struct PolyShape {
  int max_terms = 6;
  int max_degree = 4;
};

LPoly random_poly(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape);
/// Nonzero modulo p.
LPoly random_nonzero_poly(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape);
Form random_form(Rng& rng, const RingPtr& ring, int degree, int prec, const PolyShape& shape);
TForm random_tform(Rng& rng, const RingPtr& base, int degree, int prec, int t_degree, const PolyShape& shape);

/// Random ring map source -> target. Images of invertible generators are
/// unit monomials times a 1-unit 1 + p·g.
RingMap random_ring_map(Rng& rng, const RingPtr& source, const RingPtr& target, int prec, const PolyShape& shape);
/// ψ2 with ψ2(x_j) ≡ ψ1(x_j) mod p for every generator.
RingMap random_congruent_map(Rng& rng, const RingMap& psi1, const PolyShape& shape);

/// Endomorphism x_j ↦ x_j^p + p·g_j; for invertible x_j the perturbation is
/// x_j^p·h_j so the image stays a unit. Perturbations have total degree <= p
/// on rings without invertible variables.
RingMap random_frobenius_map(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape);

}  // namespace mwc
