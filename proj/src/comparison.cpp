#include "mwc/comparison.hpp"

#include <algorithm>

namespace mwc {

FrobLift::FrobLift(RingMap f) : FrobLift(std::move(f), true) {}

FrobLift FrobLift::unchecked(RingMap f) { return FrobLift(std::move(f), false); }

FrobLift::FrobLift(RingMap f, bool check) : f_(std::move(f)) {
  require_same_ring(f_.source(), f_.target(), "Frobenius lift must be an endomorphism");
  const RingPtr& ring = f_.source();
  for (std::size_t j = 0; j < ring->nvars(); ++j) {
    const LPoly& image = f_.image(j);
    LPoly delta = image - LPoly::variable(ring, j, image.prec()).pow(static_cast<std::uint64_t>(ring->ctx.p));
    if (!check) {
      if (delta.valuation() >= 1 && delta.prec() > 1) perturbations_.push_back(delta.div_p_exact(1));
      continue;
    }
    try {
      perturbations_.push_back(delta.div_p_exact(1));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDivisible) throw;
      fail(ErrorKind::NotDivisible,
           "f(" + ring->names[j] + ") = " + image.to_string() + " is not congruent to " + ring->names[j] + "^p mod p");
    }
  }
}

FrobLift FrobLift::standard(const RingPtr& ring, int prec) {
  std::vector<LPoly> images;
  for (std::size_t j = 0; j < ring->nvars(); ++j)
    images.push_back(LPoly::variable(ring, j, prec).pow(static_cast<std::uint64_t>(ring->ctx.p)));
  return FrobLift(RingMap(ring, ring, std::move(images)));
}

ComparisonMap::ComparisonMap(FrobLift lift_, std::size_t n_, int N_) : lift(std::move(lift_)), n(n_), N(N_) {
  if (n < 1) fail(ErrorKind::LengthUnderflow, "Witt length must be >= 1");
  if (N < 1) fail(ErrorKind::InvalidArgument, "precision N must be >= 1");
  if (lift.map().prec() < working_prec())
    fail(ErrorKind::PrecisionExhausted, "Frobenius lift known to " + std::to_string(lift.map().prec()) +
                                            " digits; comparison needs " + std::to_string(working_prec()));
}

WittVec s_f(const ComparisonMap& cm, const LPoly& a) {
  require_same_ring(a.ring(), cm.lift.ring(), "s_f argument");
  const int q = std::min(a.prec(), cm.working_prec());
  GhostVec g;
  g.comps.push_back(a.reduced(q));
  for (std::size_t m = 1; m < cm.n; ++m) g.comps.push_back(cm.lift.map().apply(g.comps.back()).reduced(q));
  return ghost_invert(g);
}

WittVec t_f(const ComparisonMap& cm, const LPoly& a) { return reduce_mod_p(s_f(cm, a)); }

std::vector<FunctorialityCase> functoriality_check(const ComparisonMap& cm, const ComparisonMap& cm2,
                                                   const RingMap& phi, const std::vector<LPoly>& elements) {
  if (cm.n != cm2.n) fail(ErrorKind::InvalidArgument, "functoriality needs equal Witt lengths");
  require_same_ring(phi.source(), cm.lift.ring(), "functoriality source");
  require_same_ring(phi.target(), cm2.lift.ring(), "functoriality target");
  RingMap left = compose(phi, cm.lift.map());
  RingMap right = compose(cm2.lift.map(), phi);
  for (std::size_t j = 0; j < left.images().size(); ++j)
    if (!(left.image(j) == right.image(j)))
      fail(ErrorKind::IncompatibleLifts, "phi(f(" + phi.source()->names[j] + ")) = " + left.image(j).to_string() +
                                             " but f'(phi(" + phi.source()->names[j] + ")) = " + right.image(j).to_string());
  std::vector<FunctorialityCase> out;
  for (const auto& a : elements) {
    FunctorialityCase c{a, witt_map(phi, s_f(cm, a)), s_f(cm2, phi.apply(a))};
    if (!(c.lhs == c.rhs))
      fail(ErrorKind::FunctorialityViolation, "W(phi)(s_f(a)) != s_f'(phi(a)) for a = " + a.to_string());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ProfileEntry> overconvergence_profile(const ComparisonMap& cm, const LPoly& a) {
  const long p = cm.lift.ring()->ctx.p;
  const auto& perturb = cm.lift.perturbations();
  if (perturb.size() != cm.lift.ring()->nvars())
    fail(ErrorKind::BoundViolation, "lift is not a Frobenius lift; no perturbation degrees available");
  for (std::size_t j = 0; j < perturb.size(); ++j) {
    auto deg = perturb[j].degree();
    if (deg && *deg > p)
      fail(ErrorKind::BoundViolation, "perturbation of " + cm.lift.ring()->names[j] + " has degree " +
                                          std::to_string(*deg) + " > p");
  }
  const WittVec t = t_f(cm, a);
  const long base = a.degree().value_or(0);
  std::vector<ProfileEntry> out;
  long scale = 1;
  for (std::size_t i = 0; i < t.length(); ++i, scale *= p) {
    ProfileEntry e{i, t[i].degree(), base * scale};
    if (e.degree && *e.degree > e.bound)
      fail(ErrorKind::BoundViolation, "slot " + std::to_string(i) + " of t_f(" + a.to_string() + ") has degree " +
                                          std::to_string(*e.degree) + " > " + std::to_string(e.bound));
    out.push_back(e);
  }
  return out;
}

RingPtr witt_coordinate_ring(const RingPtr& ring, std::size_t n, int N) {
  std::vector<std::string> names;
  std::vector<bool> inv;
  for (std::size_t j = 0; j < ring->nvars(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(ring->names[j] + "_" + std::to_string(i));
      inv.push_back(ring->invertible[j]);
    }
  }
  return make_ring(PrimeCtx(ring->ctx.p, N), std::move(names), std::move(inv));
}

RingMap comparison_coordinates(const ComparisonMap& cm) {
  const RingPtr& ring = cm.lift.ring();
  const std::size_t k = ring->nvars();
  RingPtr coords = witt_coordinate_ring(ring, cm.n, cm.N);
  // slot_maps[i]: x_j ↦ x_{j,i}
  std::vector<RingMap> slot_maps;
  for (std::size_t i = 0; i < cm.n; ++i) {
    std::vector<LPoly> images;
    for (std::size_t j = 0; j < k; ++j) images.push_back(LPoly::variable(coords, j * cm.n + i, cm.N));
    slot_maps.emplace_back(ring, coords, std::move(images));
  }
  std::vector<LPoly> images;
  for (std::size_t j = 0; j < k; ++j) {
    WittVec t = t_f(cm, LPoly::variable(ring, j, cm.working_prec()));
    LPoly image(coords, cm.N);
    for (std::size_t i = 0; i < cm.n; ++i) {
      if (static_cast<int>(i) >= cm.N) break;
      image += slot_maps[i].apply(t[i].lifted(cm.N)).scaled(ipow(ring->ctx.p, static_cast<int>(i)));
    }
    images.push_back(std::move(image));
  }
  return RingMap(ring, coords, std::move(images));
}

Form induced_form_map(const ComparisonMap& cm, const Form& w) { return pullback(comparison_coordinates(cm), w); }

Form slot0_projection(const Form& w, const RingPtr& ring, std::size_t n) {
  const std::size_t k = ring->nvars();
  if (w.ring()->nvars() != k * n) fail(ErrorKind::VariableMismatch, "not a Witt coordinate ring of this length");
  Form reduced = w.reduced(1);
  Form out(ring, w.degree(), 1);
  for (const auto& [idx, c] : reduced.terms()) {
    std::vector<int> new_idx;
    for (int v : idx) {
      if (v % static_cast<int>(n) != 0) fail(ErrorKind::InvalidArgument, "higher slot differential survives mod p");
      new_idx.push_back(v / static_cast<int>(n));
    }
    LPoly::TermMap terms;
    for (const auto& [e, x] : c.terms()) {
      Exponent ne(k, 0);
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (v % n != 0) fail(ErrorKind::InvalidArgument, "higher slot variable survives mod p");
        ne[v / n] = e[v];
      }
      terms.emplace(std::move(ne), x);
    }
    out += Form::monomial(LPoly(ring, 1, std::move(terms)), new_idx);
  }
  return out;
}

ChainHomotopyResult lift_independence(const ComparisonMap& cm, const ComparisonMap& cm2, const Form& w) {
  require_same_ring(cm.lift.ring(), cm2.lift.ring(), "lift independence");
  if (cm.n != cm2.n || cm.N != cm2.N) fail(ErrorKind::InvalidArgument, "lift independence needs matching n and N");
  HomotopyCertificate cert = build_strong_homotopy(comparison_coordinates(cm), comparison_coordinates(cm2));
  return chain_homotopy(cert, w);
}

}  // namespace mwc
