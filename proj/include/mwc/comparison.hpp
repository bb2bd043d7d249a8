#pragma once

#include <optional>
#include <vector>

#include "mwc/forms.hpp"
#include "mwc/homotopy.hpp"
#include "mwc/witt.hpp"

namespace mwc {

/// Endomorphism f of a Laurent polynomial ring with f(x_j) ≡ x_j^p mod p.
class FrobLift {
 public:
  /// Checks the congruence on every generator (NotDivisible otherwise).
  explicit FrobLift(RingMap f);
  /// Skips the congruence check; for exercising downstream failure paths.
  static FrobLift unchecked(RingMap f);

  /// The monomial lift x_j ↦ x_j^p.
  static FrobLift standard(const RingPtr& ring, int prec);

  const RingMap& map() const { return f_; }
  const RingPtr& ring() const { return f_.source(); }
  /// g_j with f(x_j) = x_j^p + p·g_j.
  const std::vector<LPoly>& perturbations() const { return perturbations_; }

 private:
  FrobLift(RingMap f, bool check);

  RingMap f_;
  std::vector<LPoly> perturbations_;
};

/// s_f and t_f into Witt vectors of length n, working at M = N + n - 1.
struct ComparisonMap {
  FrobLift lift;
  std::size_t n;
  int N;

  ComparisonMap(FrobLift lift, std::size_t n, int N);
  int working_prec() const { return N + static_cast<int>(n) - 1; }
};

/// The Witt vector with ghost components (a, f(a), ..., f^{n-1}(a)).
WittVec s_f(const ComparisonMap& cm, const LPoly& a);
/// W(π)∘s_f: the same vector with every slot reduced to F_p.
WittVec t_f(const ComparisonMap& cm, const LPoly& a);

struct FunctorialityCase {
  LPoly element;
  WittVec lhs;  // W(φ)(s_f(a))
  WittVec rhs;  // s_{f'}(φ(a))
};

/// Checks φ∘f = f'∘φ on generators (IncompatibleLifts otherwise), then the
/// square W(φ)∘s_f = s_{f'}∘φ on each test element (FunctorialityViolation).
std::vector<FunctorialityCase> functoriality_check(const ComparisonMap& cm, const ComparisonMap& cm2,
                                                   const RingMap& phi, const std::vector<LPoly>& elements);

struct ProfileEntry {
  std::size_t slot;
  std::optional<long> degree;  // nullopt for a zero slot
  long bound;
};

/// Degrees of the slots of t_f(a) against deg(a)·p^i. Requires every
/// perturbation to have total degree <= p; BoundViolation otherwise or when
/// a slot exceeds its bound.
std::vector<ProfileEntry> overconvergence_profile(const ComparisonMap& cm, const LPoly& a);

/// Coordinate ring of W_n(Ā): variables x_i for every variable x and slot i,
/// over Z/p^N; slot variables of an invertible x are invertible.
RingPtr witt_coordinate_ring(const RingPtr& ring, std::size_t n, int N);

/// Ring map A -> coordinate ring: x_j ↦ Σ_i p^i·slot_i(t_f(x_j)) with the
/// slot-i polynomial written in the slot-i variables. It reduces to
/// x_j ↦ x_{j,0} modulo p for every lift f.
RingMap comparison_coordinates(const ComparisonMap& cm);

/// Pullback of ω along comparison_coordinates(cm).
Form induced_form_map(const ComparisonMap& cm, const Form& w);

/// Reduction modulo p followed by x_{j,0} ↦ x_j; higher slot variables
/// must have vanished (InvalidArgument otherwise).
Form slot0_projection(const Form& w, const RingPtr& ring, std::size_t n);

/// Chain homotopy between the induced form maps of two lifts on the same ring.
ChainHomotopyResult lift_independence(const ComparisonMap& cm, const ComparisonMap& cm2, const Form& w);

}  // namespace mwc
