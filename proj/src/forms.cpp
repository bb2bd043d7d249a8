#include "mwc/forms.hpp"

#include <algorithm>

namespace mwc {

namespace {

// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

Form::Form(RingPtr ring, int degree, int prec) : ring_(std::move(ring)), degree_(degree), prec_(prec) {
  if (degree < -1) fail(ErrorKind::InvalidArgument, "form degree must be >= -1");
  if (prec < 1) fail(ErrorKind::PrecisionExhausted, "form precision must be >= 1");
}

Form Form::function(const LPoly& f) {
  Form w(f.ring(), 0, f.prec());
  w.add_term({}, f);
  return w;
}

Form Form::differential(const RingPtr& ring, std::size_t j, int prec) {
  return monomial(LPoly::constant(ring, 1, prec), {static_cast<int>(j)});
}

Form Form::monomial(const LPoly& coeff, const std::vector<int>& idx) {
  IndexSet sorted = idx;
  for (int i : sorted)
    if (i < 0 || static_cast<std::size_t>(i) >= coeff.ring()->nvars())
      fail(ErrorKind::VariableMismatch, "differential index out of range");
  int sign = sort_with_sign(sorted);
  Form w(coeff.ring(), static_cast<int>(idx.size()), coeff.prec());
  if (sign != 0) w.add_term(sorted, sign > 0 ? coeff : -coeff);
  return w;
}

LPoly Form::coefficient(const IndexSet& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? LPoly(ring_, prec_) : it->second;
}

void Form::add_term(const IndexSet& idx, const LPoly& c) {
  require_same_ring(c.ring(), ring_, "form coefficient");
  if (static_cast<int>(idx.size()) != degree_) fail(ErrorKind::InvalidArgument, "term degree does not match form degree");
  if (c.prec() < prec_) {
    prec_ = c.prec();
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second.reduced(prec_);
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
  }
  LPoly cc = c.reduced(prec_);
  if (cc.is_zero()) return;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(idx, std::move(cc));
    return;
  }
  it->second += cc;
  if (it->second.is_zero()) terms_.erase(it);
}

Form Form::reduced(int prec) const {
  Form w(ring_, degree_, std::min(prec, prec_));
  for (const auto& [idx, c] : terms_) w.add_term(idx, c.reduced(w.prec_));
  return w;
}

Form Form::rebased(const RingPtr& ring) const {
  Form w(ring, degree_, prec_);
  for (const auto& [idx, c] : terms_) w.add_term(idx, c.rebased(ring));
  return w;
}

Form Form::operator-() const {
  Form w(ring_, degree_, prec_);
  for (const auto& [idx, c] : terms_) w.terms_.emplace(idx, -c);
  return w;
}

Form operator+(const Form& a, const Form& b) {
  require_same_ring(a.ring_, b.ring_, "form add");
  if (a.degree_ != b.degree_) fail(ErrorKind::InvalidArgument, "adding forms of different degrees");
  Form w(a.ring_, a.degree_, std::min(a.prec_, b.prec_));
  for (const auto& [idx, c] : a.terms_) w.add_term(idx, c);
  for (const auto& [idx, c] : b.terms_) w.add_term(idx, c);
  return w;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form Form::times(const LPoly& f) const {
  Form w(ring_, degree_, std::min(prec_, f.prec()));
  for (const auto& [idx, c] : terms_) w.add_term(idx, c * f);
  return w;
}

Form Form::scaled(const PrecScalar& c) const {
  Form w(ring_, degree_, std::min(prec_, c.prec()));
  for (const auto& [idx, x] : terms_) w.add_term(idx, x.scaled(c));
  return w;
}

bool operator==(const Form& a, const Form& b) {
  if (!same_ring(a.ring_, b.ring_) || a.degree_ != b.degree_) return false;
  const int prec = std::min(a.prec_, b.prec_);
  Form ra = a.reduced(prec), rb = b.reduced(prec);
  if (ra.terms_.size() != rb.terms_.size()) return false;
  for (const auto& [idx, c] : ra.terms_) {
    auto it = rb.terms_.find(idx);
    if (it == rb.terms_.end() || !c.identical(it->second)) return false;
  }
  return true;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + c.to_string() + ")";
    for (int i : idx) out += " d" + ring_->names[i];
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_same_ring(a.ring(), b.ring(), "wedge");
  if (a.degree() < 0 || b.degree() < 0) return Form(a.ring(), -1, std::min(a.prec(), b.prec()));
  Form out(a.ring(), a.degree() + b.degree(), std::min(a.prec(), b.prec()));
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out += Form::monomial(ca * cb, idx);
    }
  }
  return out;
}

Form d(const Form& w) {
  Form out(w.ring(), w.degree() + 1, w.prec());
  if (w.degree() < 0) return out;
  const std::size_t n = w.ring()->nvars();
  for (const auto& [idx, c] : w.terms()) {
    for (std::size_t k = 0; k < n; ++k) {
      if (std::find(idx.begin(), idx.end(), static_cast<int>(k)) != idx.end()) continue;
      LPoly dk = c.partial_derivative(k);
      if (dk.is_zero()) continue;
      std::vector<int> full{static_cast<int>(k)};
      full.insert(full.end(), idx.begin(), idx.end());
      out += Form::monomial(dk, full);
    }
  }
  return out;
}

Form pullback(const RingMap& phi, const Form& w) {
  require_same_ring(w.ring(), phi.source(), "pullback");
  const int prec = std::min(w.prec(), phi.prec());
  Form out(phi.target(), w.degree(), prec);
  if (w.degree() < 0) return out;
  std::vector<Form> dimg;
  for (const auto& im : phi.images()) dimg.push_back(d(Form::function(im.reduced(std::min(im.prec(), prec)))));
  for (const auto& [idx, c] : w.terms()) {
    Form term = Form::function(phi.apply(c));
    for (int j : idx) term = wedge(term, dimg[j]);
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------

RingPtr adjoin_t(const RingPtr& base, int t_window) {
  std::string name = "T";
  for (int k = 1; base->index_of(name); ++k) name = "T" + std::to_string(k);
  std::vector<std::string> names{name};
  names.insert(names.end(), base->names.begin(), base->names.end());
  std::vector<bool> inv{false};
  inv.insert(inv.end(), base->invertible.begin(), base->invertible.end());
  std::vector<int> trunc{t_window};
  trunc.insert(trunc.end(), base->truncation.begin(), base->truncation.end());
  return make_ring(base->ctx, std::move(names), std::move(inv), std::move(trunc));
}

LPoly embed_in_t(const LPoly& f, const RingPtr& extended) {
  if (extended->nvars() != f.ring()->nvars() + 1) fail(ErrorKind::VariableMismatch, "not the T-extension of this ring");
  LPoly::TermMap t;
  for (const auto& [e, c] : f.terms()) {
    Exponent x{0};
    x.insert(x.end(), e.begin(), e.end());
    t.emplace(std::move(x), c);
  }
  return LPoly(extended, f.prec(), std::move(t));
}

std::map<int, LPoly> split_by_t(const LPoly& f, const RingPtr& base) {
  if (f.ring()->nvars() != base->nvars() + 1) fail(ErrorKind::VariableMismatch, "not the T-extension of this ring");
  std::map<int, LPoly::TermMap> parts;
  for (const auto& [e, c] : f.terms()) parts[e[0]].emplace(Exponent(e.begin() + 1, e.end()), c);
  std::map<int, LPoly> out;
  for (auto& [i, t] : parts) out.emplace(i, LPoly(base, f.prec(), std::move(t)));
  return out;
}

TForm::TForm(RingPtr base, int degree, int prec) : base_(std::move(base)), degree_(degree), prec_(prec) {
  if (degree < 0) fail(ErrorKind::InvalidArgument, "T-decomposed forms have degree >= 0");
}

Form TForm::prime(int i) const {
  auto it = primes_.find(i);
  return it == primes_.end() ? Form(base_, degree_, prec_) : it->second.reduced(prec_);
}

Form TForm::dprime(int i) const {
  auto it = dprimes_.find(i);
  return it == dprimes_.end() ? Form(base_, degree_ - 1, prec_) : it->second.reduced(prec_);
}

int TForm::t_degree() const {
  int top = -1;
  if (!primes_.empty()) top = std::max(top, primes_.rbegin()->first);
  if (!dprimes_.empty()) top = std::max(top, dprimes_.rbegin()->first);
  return top;
}

namespace {

void accumulate(std::map<int, Form>& parts, int i, const Form& w, int& prec) {
  if (i < 0) fail(ErrorKind::InvalidArgument, "negative T exponent");
  prec = std::min(prec, w.prec());
  auto it = parts.find(i);
  Form sum = it == parts.end() ? w : it->second + w;
  if (it != parts.end()) parts.erase(it);
  if (!sum.is_zero()) parts.emplace(i, std::move(sum));
}

}  // namespace

void TForm::add_prime(int i, const Form& w) {
  require_same_ring(w.ring(), base_, "TForm prime");
  if (w.degree() != degree_) fail(ErrorKind::InvalidArgument, "ω' must have the form degree");
  accumulate(primes_, i, w, prec_);
}

void TForm::add_dprime(int i, const Form& w) {
  require_same_ring(w.ring(), base_, "TForm dprime");
  if (w.degree() != degree_ - 1) fail(ErrorKind::InvalidArgument, "ω'' must have degree one less than the form");
  accumulate(dprimes_, i, w, prec_);
}

TForm TForm::from_form(const Form& w, const RingPtr& base) {
  if (w.degree() < 0) fail(ErrorKind::InvalidArgument, "cannot decompose a degree -1 form");
  TForm out(base, w.degree(), w.prec());
  for (const auto& [idx, c] : w.terms()) {
    const bool has_dt = !idx.empty() && idx[0] == 0;
    std::vector<int> rest;
    for (int i : idx)
      if (i != 0) rest.push_back(i - 1);
    for (const auto& [i, ci] : split_by_t(c, base)) {
      Form part = Form::monomial(ci, rest);
      if (has_dt)
        out.add_dprime(i, part);
      else
        out.add_prime(i, part);
    }
  }
  return out;
}

Form TForm::to_form(const RingPtr& extended) const {
  Form out(extended, degree_, prec_);
  auto t_pow = [&](int i) {
    Exponent e(extended->nvars(), 0);
    e[0] = i;
    return LPoly::monomial(extended, e, 1, prec_);
  };
  for (const auto& [i, w] : primes_) {
    for (const auto& [idx, c] : w.terms()) {
      std::vector<int> shifted;
      for (int k : idx) shifted.push_back(k + 1);
      out += Form::monomial(embed_in_t(c, extended) * t_pow(i), shifted);
    }
  }
  for (const auto& [i, w] : dprimes_) {
    for (const auto& [idx, c] : w.terms()) {
      std::vector<int> shifted{0};
      for (int k : idx) shifted.push_back(k + 1);
      out += Form::monomial(embed_in_t(c, extended) * t_pow(i), shifted);
    }
  }
  return out;
}

TForm operator+(const TForm& a, const TForm& b) {
  require_same_ring(a.base_, b.base_, "TForm add");
  if (a.degree_ != b.degree_) fail(ErrorKind::InvalidArgument, "adding TForms of different degrees");
  TForm out(a.base_, a.degree_, std::min(a.prec_, b.prec_));
  for (const auto* src : {&a, &b}) {
    for (const auto& [i, w] : src->primes_) out.add_prime(i, w);
    for (const auto& [i, w] : src->dprimes_) out.add_dprime(i, w);
  }
  return out;
}

TForm operator-(const TForm& a, const TForm& b) {
  TForm neg(b.base_, b.degree_, b.prec_);
  for (const auto& [i, w] : b.primes_) neg.add_prime(i, -w);
  for (const auto& [i, w] : b.dprimes_) neg.add_dprime(i, -w);
  return a + neg;
}

bool operator==(const TForm& a, const TForm& b) {
  if (!same_ring(a.base_, b.base_) || a.degree_ != b.degree_) return false;
  const int top = std::max(a.t_degree(), b.t_degree());
  for (int i = 0; i <= top; ++i) {
    if (!(a.prime(i) == b.prime(i))) return false;
    if (a.degree_ > 0 && !(a.dprime(i) == b.dprime(i))) return false;
  }
  return true;
}

TForm d_t(const TForm& w) {
  TForm out(w.base(), w.degree() + 1, w.prec());
  const std::int64_t m = ipow(w.base()->ctx.p, w.prec());
  for (const auto& [i, wp] : w.primes()) {
    out.add_prime(i, d(wp));
    // d(T^i ω') contributes i T^{i-1} dT∧ω'.
    if (i > 0) out.add_dprime(i - 1, wp.scaled(PrecScalar(w.base()->ctx, mod_reduce(i, m), w.prec())));
  }
  // d(T^i dT∧ω'') = -T^i dT∧dω''.
  for (const auto& [i, wpp] : w.dprimes()) out.add_dprime(i, -d(wpp));
  return out;
}

Form eval_t(const TForm& w, std::int64_t c) {
  Form out(w.base(), w.degree(), w.prec());
  const std::int64_t m = ipow(w.base()->ctx.p, w.prec());
  for (const auto& [i, wp] : w.primes()) {
    std::int64_t ci = 1;
    for (int k = 0; k < i; ++k) ci = mul_mod(ci, mod_reduce(c, m), m);
    if (ci != 0 || m == 1) out += wp.scaled(PrecScalar(w.base()->ctx, ci, w.prec()));
  }
  return out;
}

}  // namespace mwc
