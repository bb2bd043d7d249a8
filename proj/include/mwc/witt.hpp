#pragma once

#include <vector>

#include "mwc/lpoly.hpp"

namespace mwc {

/// Ghost coordinates (g_0, ..., g_{n-1}); slot m carries its own precision.
struct GhostVec {
  std::vector<LPoly> comps;

  std::size_t size() const { return comps.size(); }
  const LPoly& operator[](std::size_t m) const { return comps[m]; }
  friend bool operator==(const GhostVec& a, const GhostVec& b) { return a.comps == b.comps; }
};

/// p-typical Witt vector of length n over a Laurent polynomial ring.
///
/// The precision ledger is the per-slot precision of the components; it is
/// kept non-increasing along the slots.
class WittVec {
 public:
  explicit WittVec(std::vector<LPoly> comps);

  static WittVec zero(const RingPtr& ring, std::size_t n, int prec);
  static WittVec one(const RingPtr& ring, std::size_t n, int prec);
  /// Teichmüller lift [a] = (a, 0, ..., 0).
  static WittVec teichmuller(const LPoly& a, std::size_t n);

  std::size_t length() const { return comps_.size(); }
  const std::vector<LPoly>& comps() const { return comps_; }
  const LPoly& operator[](std::size_t i) const { return comps_[i]; }
  const RingPtr& ring() const { return comps_.front().ring(); }
  std::int64_t p() const { return ring()->ctx.p; }

  std::vector<int> ledger() const;
  int min_prec() const { return comps_.back().prec(); }
  /// Every slot reduced to at most `prec` digits.
  WittVec reduced(int prec) const;

  /// Slotwise equality, each slot compared at its common precision.
  friend bool operator==(const WittVec& a, const WittVec& b);

 private:
  std::vector<LPoly> comps_;
};

/// g_m = Σ_{i<=m} p^i x_i^{p^{m-i}}. Slot m is exact modulo p^{q_m + m}
/// when x_i is known modulo p^{q_i}.
GhostVec ghost(const WittVec& w);

/// Recovers x_m = (g_m - Σ_{i<m} p^i x_i^{p^{m-i}}) / p^m. Slot m is known
/// to min(prec(g_m) - m, prec(x_{m-1})) digits.
WittVec ghost_invert(const GhostVec& g);

WittVec witt_add(const WittVec& u, const WittVec& v);
WittVec witt_sub(const WittVec& u, const WittVec& v);
WittVec witt_mul(const WittVec& u, const WittVec& v);
WittVec witt_neg(const WittVec& u);
/// k-fold Witt sum of u.
WittVec witt_times(const WittVec& u, unsigned k);

/// Frobenius: ghost(F u)_m = ghost(u)_{m+1}; the result is one slot shorter.
WittVec frobenius(const WittVec& u);

/// Verschiebung (0, x_0, x_1, ...). With extend=false the top slot is
/// dropped so the length is preserved.
WittVec verschiebung(const WittVec& u, bool extend = false);

/// W(π): coefficientwise reduction of every slot to F_p (precision 1).
WittVec reduce_mod_p(const WittVec& w);

/// W(φ): apply a ring map to every component.
WittVec witt_map(const RingMap& phi, const WittVec& w);

}  // namespace mwc
