#include "mwc/witt.hpp"

#include <algorithm>
#include <functional>

namespace mwc {

WittVec::WittVec(std::vector<LPoly> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) fail(ErrorKind::LengthUnderflow, "Witt vectors have length >= 1");
  for (std::size_t i = 1; i < comps_.size(); ++i) {
    require_same_ring(comps_[i].ring(), comps_[0].ring(), "Witt components");
    if (comps_[i].prec() > comps_[i - 1].prec()) comps_[i] = comps_[i].reduced(comps_[i - 1].prec());
  }
}

WittVec WittVec::zero(const RingPtr& ring, std::size_t n, int prec) {
  return WittVec(std::vector<LPoly>(n, LPoly(ring, prec)));
}

WittVec WittVec::one(const RingPtr& ring, std::size_t n, int prec) {
  return teichmuller(LPoly::constant(ring, 1, prec), n);
}

WittVec WittVec::teichmuller(const LPoly& a, std::size_t n) {
  std::vector<LPoly> c(n, LPoly(a.ring(), a.prec()));
  c[0] = a;
  return WittVec(std::move(c));
}

std::vector<int> WittVec::ledger() const {
  std::vector<int> out;
  for (const auto& c : comps_) out.push_back(c.prec());
  return out;
}

WittVec WittVec::reduced(int prec) const {
  std::vector<LPoly> c;
  for (const auto& x : comps_) c.push_back(x.reduced(std::min(prec, x.prec())));
  return WittVec(std::move(c));
}

bool operator==(const WittVec& a, const WittVec& b) { return a.comps_ == b.comps_; }

namespace {

// powers[k] = x^{p^k} for k = 0..count-1, computed on the stored
// representative of x at precision `prec`.
std::vector<LPoly> frobenius_powers(const LPoly& x, int prec, std::size_t count) {
  std::vector<LPoly> out;
  out.reserve(count);
  out.push_back(x.lifted(prec));
  for (std::size_t k = 1; k < count; ++k) out.push_back(out.back().pow(static_cast<std::uint64_t>(x.p())));
  return out;
}

void require_compatible(const WittVec& u, const WittVec& v, const char* where) {
  if (u.length() != v.length()) fail(ErrorKind::VariableMismatch, std::string("Witt length mismatch in ") + where);
  require_same_ring(u.ring(), v.ring(), where);
}

WittVec ghostwise(const WittVec& u, const WittVec& v, const std::function<LPoly(const LPoly&, const LPoly&)>& op) {
  const int q = std::min(u.min_prec(), v.min_prec());
  GhostVec gu = ghost(u.reduced(q));
  GhostVec gv = ghost(v.reduced(q));
  GhostVec g;
  for (std::size_t m = 0; m < gu.size(); ++m) g.comps.push_back(op(gu[m], gv[m]));
  return ghost_invert(g).reduced(q);
}

}  // namespace

GhostVec ghost(const WittVec& w) {
  const std::size_t n = w.length();
  const std::int64_t p = w.p();
  std::vector<int> target(n);
  int top = 0;
  for (std::size_t m = 0; m < n; ++m) {
    target[m] = w[m].prec() + static_cast<int>(m);
    top = std::max(top, target[m]);
  }
  if (top > max_precision(p)) fail(ErrorKind::PrecisionExhausted, "ghost components exceed the residue range");
  std::vector<std::vector<LPoly>> powers;
  for (std::size_t i = 0; i < n; ++i) powers.push_back(frobenius_powers(w[i], top, n - i));
  GhostVec g;
  for (std::size_t m = 0; m < n; ++m) {
    LPoly gm(w.ring(), target[m]);
    for (std::size_t i = 0; i <= m; ++i)
      gm += powers[i][m - i].reduced(target[m]).scaled(ipow(p, static_cast<int>(i)) % ipow(p, target[m]));
    g.comps.push_back(std::move(gm));
  }
  return g;
}

WittVec ghost_invert(const GhostVec& g) {
  const std::size_t n = g.size();
  if (n == 0) fail(ErrorKind::LengthUnderflow, "empty ghost vector");
  const RingPtr& ring = g[0].ring();
  const std::int64_t p = ring->ctx.p;
  int top = 0;
  for (const auto& c : g.comps) {
    require_same_ring(c.ring(), ring, "ghost_invert");
    top = std::max(top, c.prec());
  }
  std::vector<LPoly> x;
  std::vector<std::vector<LPoly>> powers;
  for (std::size_t m = 0; m < n; ++m) {
    int s = g[m].prec() - static_cast<int>(m);
    if (m > 0) s = std::min(s, x[m - 1].prec());
    if (s < 1)
      fail(ErrorKind::PrecisionExhausted,
           "ghost slot " + std::to_string(m) + " at precision " + std::to_string(g[m].prec()) + " leaves no digits");
    const int work = s + static_cast<int>(m);
    LPoly numer = g[m].reduced(work);
    for (std::size_t i = 0; i < m; ++i)
      numer -= powers[i][m - i].reduced(work).scaled(ipow(p, static_cast<int>(i)) % ipow(p, work));
    LPoly xm = [&] {
      try {
        return numer.div_p_exact(static_cast<int>(m));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotDivisible) throw;
        fail(ErrorKind::NotDivisible, "ghost slot " + std::to_string(m) + " is not congruent to a Witt vector: " +
                                          numer.to_string() + " is not divisible by p^" + std::to_string(m));
      }
    }();
    powers.push_back(frobenius_powers(xm, top, n - m));
    x.push_back(std::move(xm));
  }
  return WittVec(std::move(x));
}

WittVec witt_add(const WittVec& u, const WittVec& v) {
  require_compatible(u, v, "witt_add");
  return ghostwise(u, v, [](const LPoly& a, const LPoly& b) { return a + b; });
}

WittVec witt_sub(const WittVec& u, const WittVec& v) {
  require_compatible(u, v, "witt_sub");
  return ghostwise(u, v, [](const LPoly& a, const LPoly& b) { return a - b; });
}

WittVec witt_mul(const WittVec& u, const WittVec& v) {
  require_compatible(u, v, "witt_mul");
  return ghostwise(u, v, [](const LPoly& a, const LPoly& b) { return a * b; });
}

WittVec witt_neg(const WittVec& u) { return witt_sub(WittVec::zero(u.ring(), u.length(), u.min_prec()), u); }

WittVec witt_times(const WittVec& u, unsigned k) {
  WittVec acc = WittVec::zero(u.ring(), u.length(), u.min_prec());
  for (unsigned i = 0; i < k; ++i) acc = witt_add(acc, u);
  return acc;
}

WittVec frobenius(const WittVec& u) {
  if (u.length() < 2) fail(ErrorKind::LengthUnderflow, "Frobenius needs length >= 2");
  const int q = u.min_prec();
  GhostVec g = ghost(u.reduced(q));
  GhostVec shifted;
  shifted.comps.assign(g.comps.begin() + 1, g.comps.end());
  return ghost_invert(shifted).reduced(q);
}

WittVec verschiebung(const WittVec& u, bool extend) {
  std::vector<LPoly> c;
  c.push_back(LPoly(u.ring(), u[0].prec()));
  for (const auto& x : u.comps()) c.push_back(x);
  if (!extend) c.pop_back();
  return WittVec(std::move(c));
}

WittVec reduce_mod_p(const WittVec& w) { return w.reduced(1); }

WittVec witt_map(const RingMap& phi, const WittVec& w) {
  std::vector<LPoly> c;
  for (const auto& x : w.comps()) c.push_back(phi.apply(x));
  return WittVec(std::move(c));
}

}  // namespace mwc
