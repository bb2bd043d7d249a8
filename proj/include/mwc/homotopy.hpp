#pragma once

#include <vector>

#include "mwc/forms.hpp"

namespace mwc {

/// L(ω) = Σ_i (p^{i+1}/(i+1)) ω''_i. The degree drops by one.
Form homotopy_operator(const TForm& w);

/// Both sides of h_p - h_0 = dL + Ld evaluated on one T-decomposed form.
struct HomotopyIdentity {
  Form lhs;  // h_p(ω) - h_0(ω)
  Form rhs;  // d(L ω) + L(d ω)
};

/// Evaluates both sides and throws IdentityViolation when they differ.
HomotopyIdentity check_homotopy_identity(const TForm& w);

/// Smallest truncation K such that every power T^i with i > K is invisible
/// modulo p^prec to both h_p (through p^i) and L (through p^{i+1}/(i+1)),
/// including the (K+1)T^K dT term that d produces from T^{K+1}.
int homotopy_t_window(std::int64_t p, int prec);

/// Strong homotopy φ: A -> B[T] with h_0∘φ = ψ1 and h_p∘φ = ψ2.
struct HomotopyCertificate {
  RingMap psi1;
  RingMap psi2;
  RingMap phi;
  RingPtr extended;  // B[T], truncated at t_window
  int t_window = 0;
  int prec = 0;      // precision at which the certificate is valid
};

/// φ(x_j) = ψ1(x_j) + T·(ψ2(x_j) - ψ1(x_j))/p. Throws NotCongruentModP
/// when some difference is not divisible by p.
HomotopyCertificate build_strong_homotopy(const RingMap& psi1, const RingMap& psi2);

/// H(ω) = L(φ^* ω).
Form apply_homotopy(const HomotopyCertificate& cert, const Form& w);

struct ChainHomotopyResult {
  Form h;           // H(ω)
  Form difference;  // ψ2^* ω - ψ1^* ω
  Form dh_plus_hd;  // d(Hω) + H(dω)
  int prec = 0;
  bool verified = false;
};

/// Computes H(ω) and checks ψ2^* - ψ1^* = dH + Hd on ω exactly at the
/// certificate precision; throws IdentityViolation on mismatch.
ChainHomotopyResult chain_homotopy(const HomotopyCertificate& cert, const Form& w);

}  // namespace mwc
