#include "mwc/homotopy.hpp"

#include <algorithm>

namespace mwc {

Form homotopy_operator(const TForm& w) {
  Form out(w.base(), w.degree() - 1, w.prec());
  for (const auto& [i, wpp] : w.dprimes()) out += wpp.scaled(unit_coeff(w.base()->ctx, i, w.prec()));
  return out;
}

HomotopyIdentity check_homotopy_identity(const TForm& w) {
  const std::int64_t p = w.base()->ctx.p;
  Form lhs = eval_t(w, p) - eval_t(w, 0);
  Form rhs = d(homotopy_operator(w)) + homotopy_operator(d_t(w));
  if (!(lhs == rhs))
    fail(ErrorKind::IdentityViolation, "h_p - h_0 = " + lhs.to_string() + " but dL + Ld = " + rhs.to_string());
  return {std::move(lhs), std::move(rhs)};
}

int homotopy_t_window(std::int64_t p, int prec) {
  // v_p(p^{i+1}/(i+1)) = i + 1 - v_p(i+1) >= i + 1 - floor(log_p(i+1)), and
  // the lower bound is non-decreasing in i; past `stable` it stays >= prec.
  auto floor_log = [p](std::int64_t x) {
    int k = 0;
    while (x >= p) {
      x /= p;
      ++k;
    }
    return k;
  };
  int stable = 0;
  while (stable + 1 - floor_log(stable + 1) < prec) ++stable;
  int window = std::max(prec - 1, 0);
  for (int i = 0; i < stable; ++i)
    if (i + 1 - valuation(p, i + 1, 64) < prec) window = std::max(window, i);
  return window;
}

HomotopyCertificate build_strong_homotopy(const RingMap& psi1, const RingMap& psi2) {
  require_same_ring(psi1.source(), psi2.source(), "strong homotopy sources");
  require_same_ring(psi1.target(), psi2.target(), "strong homotopy targets");
  const RingPtr& base = psi1.target();
  const int prec = std::min(psi1.prec(), psi2.prec()) - 1;
  if (prec < 1) fail(ErrorKind::PrecisionExhausted, "strong homotopy needs precision >= 2");
  const int window = homotopy_t_window(base->ctx.p, prec);
  RingPtr ext = adjoin_t(base, window);
  Exponent t_exp(ext->nvars(), 0);
  t_exp[0] = 1;
  const LPoly t = LPoly::monomial(ext, t_exp, 1, prec);

  std::vector<LPoly> images;
  for (std::size_t j = 0; j < psi1.images().size(); ++j) {
    LPoly delta = psi2.image(j) - psi1.image(j);
    LPoly c = [&] {
      try {
        return delta.div_p_exact(1);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotDivisible) throw;
        fail(ErrorKind::NotCongruentModP, "generator " + psi1.source()->names[j] + ": " + psi2.image(j).to_string() +
                                              " - " + psi1.image(j).to_string() + " is not divisible by p");
      }
    }();
    images.push_back(embed_in_t(psi1.image(j).reduced(prec), ext) + embed_in_t(c, ext) * t);
  }
  RingMap phi(psi1.source(), ext, std::move(images));

  // h_0∘φ = ψ1 and h_p∘φ = ψ2 on generators.
  for (std::size_t j = 0; j < phi.images().size(); ++j) {
    LPoly at0(base, prec), atp(base, prec);
    const std::int64_t m = ipow(base->ctx.p, prec);
    for (const auto& [i, ci] : split_by_t(phi.image(j), base)) {
      std::int64_t pi = i == 0 ? 1 : ipow(base->ctx.p, std::min(i, prec)) % m;
      if (i == 0) at0 += ci;
      atp += ci.scaled(pi);
    }
    if (!(at0 == psi1.image(j)) || !(atp == psi2.image(j)))
      fail(ErrorKind::IdentityViolation, "strong homotopy endpoints do not match on " + psi1.source()->names[j]);
  }
  return HomotopyCertificate{psi1, psi2, std::move(phi), std::move(ext), window, prec};
}

Form apply_homotopy(const HomotopyCertificate& cert, const Form& w) {
  Form lifted = pullback(cert.phi, w);
  if (lifted.degree() < 0) return Form(cert.psi1.target(), -1, lifted.prec());
  return homotopy_operator(TForm::from_form(lifted, cert.psi1.target()));
}

ChainHomotopyResult chain_homotopy(const HomotopyCertificate& cert, const Form& w) {
  ChainHomotopyResult r{apply_homotopy(cert, w), pullback(cert.psi2, w) - pullback(cert.psi1, w),
                        Form(cert.psi1.target(), w.degree(), cert.prec), cert.prec, false};
  r.dh_plus_hd = d(r.h) + apply_homotopy(cert, d(w));
  r.difference = r.difference.reduced(cert.prec);
  r.dh_plus_hd = r.dh_plus_hd.reduced(cert.prec);
  if (!(r.difference == r.dh_plus_hd))
    fail(ErrorKind::IdentityViolation,
         "psi2* - psi1* = " + r.difference.to_string() + " but dH + Hd = " + r.dh_plus_hd.to_string());
  r.verified = true;
  return r;
}

}  // namespace mwc
