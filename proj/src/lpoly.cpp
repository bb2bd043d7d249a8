#include "mwc/lpoly.hpp"

#include <algorithm>

#include "mwc/poly_text.hpp"

namespace mwc {

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

RingPtr make_ring(const PrimeCtx& ctx, std::vector<std::string> names, std::vector<bool> invertible,
                  std::vector<int> truncation) {
  PolyRing r;
  r.ctx = ctx;
  r.names = std::move(names);
  r.invertible = invertible.empty() ? std::vector<bool>(r.names.size(), false) : std::move(invertible);
  r.truncation = truncation.empty() ? std::vector<int>(r.names.size(), -1) : std::move(truncation);
  if (r.invertible.size() != r.names.size() || r.truncation.size() != r.names.size())
    fail(ErrorKind::InvalidArgument, "ring flags do not match the number of variables");
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    if (r.names[i].empty()) fail(ErrorKind::InvalidArgument, "empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (r.names[i] == r.names[j]) fail(ErrorKind::InvalidArgument, "duplicate variable " + r.names[i]);
    if (r.invertible[i] && r.truncation[i] >= 0)
      fail(ErrorKind::InvalidArgument, "a truncated variable cannot be invertible");
  }
  return std::make_shared<const PolyRing>(std::move(r));
}

RingPtr with_ctx(const RingPtr& ring, const PrimeCtx& ctx) {
  return make_ring(ctx, ring->names, ring->invertible, ring->truncation);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
  if (!same_ring(a, b)) fail(ErrorKind::VariableMismatch, std::string("operands live in different rings (") + where + ")");
}

LPoly::LPoly(RingPtr ring) : LPoly(ring, ring->ctx.N) {}

LPoly::LPoly(RingPtr ring, int prec) : ring_(std::move(ring)), prec_(prec) {
  if (prec_ < 1) fail(ErrorKind::PrecisionExhausted, "polynomial precision must be >= 1");
  if (prec_ > max_precision(ring_->ctx.p)) fail(ErrorKind::InvalidArgument, "precision exceeds the residue range");
}

LPoly::LPoly(RingPtr ring, int prec, TermMap terms) : LPoly(std::move(ring), prec) {
  terms_ = std::move(terms);
  normalize();
}

void LPoly::normalize() {
  const std::int64_t m = modulus();
  const auto& r = *ring_;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != r.nvars()) fail(ErrorKind::VariableMismatch, "exponent vector has the wrong length");
    bool drop = false;
    for (std::size_t j = 0; j < r.nvars(); ++j) {
      int e = it->first[j];
      if (e < 0 && !r.invertible[j])
        fail(ErrorKind::InvalidArgument, "negative exponent on non-invertible variable " + r.names[j]);
      if (r.truncation[j] >= 0 && e > r.truncation[j]) drop = true;
    }
    it->second = mod_reduce(it->second, m);
    if (drop || it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

LPoly LPoly::constant(RingPtr ring, std::int64_t c, int prec) {
  Exponent e(ring->nvars(), 0);
  return monomial(std::move(ring), std::move(e), c, prec);
}

LPoly LPoly::monomial(RingPtr ring, Exponent e, std::int64_t c, int prec) {
  TermMap t;
  t.emplace(std::move(e), c);
  return LPoly(std::move(ring), prec, std::move(t));
}

LPoly LPoly::variable(RingPtr ring, std::size_t j, int prec) {
  if (j >= ring->nvars()) fail(ErrorKind::VariableMismatch, "variable index out of range");
  Exponent e(ring->nvars(), 0);
  e[j] = 1;
  return monomial(std::move(ring), std::move(e), 1, prec);
}

PrecScalar LPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return PrecScalar(ctx(), it == terms_.end() ? 0 : it->second, prec_);
}

PrecScalar LPoly::constant_term() const { return coeff(Exponent(ring_->nvars(), 0)); }

std::optional<long> LPoly::degree() const {
  std::optional<long> d;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (int x : e) s += x;
    if (!d || s > *d) d = s;
  }
  return d;
}

std::optional<int> LPoly::degree_in(std::size_t j) const {
  std::optional<int> d;
  for (const auto& [e, c] : terms_)
    if (!d || e[j] > *d) d = e[j];
  return d;
}

int LPoly::valuation() const {
  int v = prec_;
  for (const auto& [e, c] : terms_) v = std::min(v, mwc::valuation(p(), c, prec_));
  return v;
}

LPoly LPoly::reduced(int prec) const {
  if (prec > prec_) fail(ErrorKind::InvalidArgument, "reduced() cannot raise precision");
  if (prec == prec_) return *this;
  return LPoly(ring_, prec, terms_);
}

LPoly LPoly::lifted(int prec) const {
  if (prec < prec_) return reduced(prec);
  LPoly r(ring_, prec);
  r.terms_ = terms_;
  return r;
}

LPoly LPoly::rebased(RingPtr ring) const {
  if (ring->names != ring_->names || ring->invertible != ring_->invertible || ring->ctx.p != ring_->ctx.p)
    fail(ErrorKind::VariableMismatch, "rebased() requires identical variables");
  return LPoly(std::move(ring), prec_, terms_);
}

LPoly LPoly::operator-() const {
  LPoly r(ring_, prec_);
  const std::int64_t m = modulus();
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, m - c);
  return r;
}

LPoly operator+(const LPoly& a, const LPoly& b) {
  require_same_ring(a.ring_, b.ring_, "add");
  const int prec = std::min(a.prec_, b.prec_);
  const std::int64_t m = ipow(a.p(), prec);
  LPoly r(a.ring_, prec);
  for (const auto& [e, c] : a.terms_) {
    std::int64_t v = c % m;
    if (v != 0) r.terms_.emplace_hint(r.terms_.end(), e, v);
  }
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = r.terms_.try_emplace(e, 0);
    it->second = add_mod(it->second, c % m, m);
    if (it->second == 0) r.terms_.erase(it);
  }
  return r;
}

LPoly operator-(const LPoly& a, const LPoly& b) { return a + (-b); }

LPoly operator*(const LPoly& a, const LPoly& b) {
  require_same_ring(a.ring_, b.ring_, "mul");
  const int prec = std::min(a.prec_, b.prec_);
  const std::int64_t m = ipow(a.p(), prec);
  const auto& trunc = a.ring_->truncation;
  const std::size_t n = a.ring_->nvars();
  LPoly r(a.ring_, prec);
  Exponent e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      bool drop = false;
      for (std::size_t j = 0; j < n; ++j) {
        e[j] = ea[j] + eb[j];
        if (trunc[j] >= 0 && e[j] > trunc[j]) drop = true;
      }
      if (drop) continue;
      std::int64_t v = mul_mod(ca % m, cb % m, m);
      if (v == 0) continue;
      auto [it, inserted] = r.terms_.try_emplace(e, 0);
      it->second = add_mod(it->second, v, m);
    }
  }
  std::erase_if(r.terms_, [](const auto& t) { return t.second == 0; });
  return r;
}

LPoly LPoly::scaled(std::int64_t c) const { return scaled(PrecScalar(ctx(), c, prec_)); }

LPoly LPoly::scaled(const PrecScalar& c) const {
  const int prec = std::min(prec_, c.prec());
  const std::int64_t m = ipow(p(), prec);
  const std::int64_t cv = c.value() % m;
  LPoly r(ring_, prec);
  for (const auto& [e, x] : terms_) {
    std::int64_t v = mul_mod(x % m, cv, m);
    if (v != 0) r.terms_.emplace_hint(r.terms_.end(), e, v);
  }
  return r;
}

LPoly LPoly::pow(std::uint64_t e) const {
  LPoly result = constant(ring_, 1, prec_);
  LPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

LPoly LPoly::div_p_exact(int v) const {
  if (v < 0) fail(ErrorKind::InvalidArgument, "negative division exponent");
  if (v == 0) return *this;
  if (prec_ - v < 1)
    fail(ErrorKind::PrecisionExhausted, "dividing by p^" + std::to_string(v) + " exhausts precision " + std::to_string(prec_));
  const std::int64_t pv = ipow(p(), v);
  LPoly r(ring_, prec_ - v);
  for (const auto& [e, c] : terms_) {
    if (c % pv != 0) fail(ErrorKind::NotDivisible, "coefficient of " + to_string() + " not divisible by p^" + std::to_string(v));
    r.terms_.emplace_hint(r.terms_.end(), e, c / pv);
  }
  return r;
}

namespace {

// The unique term with unit coefficient and no truncated variable, if the
// polynomial is a unit; nullopt otherwise.
std::optional<std::pair<Exponent, std::int64_t>> leading_unit_term(const LPoly& f) {
  const auto& r = *f.ring();
  std::optional<std::pair<Exponent, std::int64_t>> found;
  for (const auto& [e, c] : f.terms()) {
    if (c % f.p() == 0) continue;
    bool truncated_part = false;
    for (std::size_t j = 0; j < r.nvars(); ++j)
      if (r.truncation[j] >= 0 && e[j] != 0) truncated_part = true;
    if (truncated_part) continue;
    if (found) return std::nullopt;
    found.emplace(e, c);
  }
  if (!found) return std::nullopt;
  for (std::size_t j = 0; j < r.nvars(); ++j)
    if (found->first[j] != 0 && !r.invertible[j]) return std::nullopt;
  return found;
}

}  // namespace

bool LPoly::is_unit() const { return leading_unit_term(*this).has_value(); }

LPoly LPoly::unit_inverse() const {
  auto lead = leading_unit_term(*this);
  if (!lead) fail(ErrorKind::NonUnitSubstitution, to_string() + " is not a unit");
  Exponent neg = lead->first;
  for (int& x : neg) x = -x;
  LPoly lead_inv = monomial(ring_, neg, inv_mod(lead->second, modulus()), prec_);
  // this = lead * (1 + e) with e in (p, truncated variables); invert the
  // 1-unit by its terminating geometric series.
  LPoly e = (*this) * lead_inv - constant(ring_, 1, prec_);
  LPoly sum = constant(ring_, 1, prec_);
  LPoly term = sum;
  LPoly minus_e = -e;
  while (true) {
    term *= minus_e;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * lead_inv;
}

LPoly LPoly::partial_derivative(std::size_t j) const {
  if (j >= ring_->nvars()) fail(ErrorKind::VariableMismatch, "derivative variable out of range");
  const std::int64_t m = modulus();
  LPoly r(ring_, prec_);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0) continue;
    std::int64_t v = mul_mod(c, mod_reduce(e[j], m), m);
    if (v == 0) continue;
    Exponent d = e;
    d[j] -= 1;
    r.terms_.emplace(std::move(d), v);
  }
  return r;
}

bool operator==(const LPoly& a, const LPoly& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  const int prec = std::min(a.prec_, b.prec_);
  return a.reduced(prec).terms_ == b.reduced(prec).terms_;
}

bool LPoly::identical(const LPoly& other) const {
  return same_ring(ring_, other.ring_) && prec_ == other.prec_ && terms_ == other.terms_;
}

std::string LPoly::to_string() const { return format_poly(*this); }

// ---------------------------------------------------------------------------

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<LPoly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->nvars())
    fail(ErrorKind::VariableMismatch, "ring map needs one image per source generator");
  if (source_->ctx.p != target_->ctx.p) fail(ErrorKind::VariableMismatch, "ring map between different primes");
  inverses_.resize(images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j) {
    require_same_ring(images_[j].ring(), target_, "ring map image");
    if (source_->invertible[j]) {
      if (!images_[j].is_unit())
        fail(ErrorKind::NonUnitSubstitution,
             "invertible generator " + source_->names[j] + " maps to non-unit " + images_[j].to_string());
      inverses_[j] = images_[j].unit_inverse();
    }
  }
}

RingMap RingMap::identity(const RingPtr& ring) {
  std::vector<LPoly> images;
  for (std::size_t j = 0; j < ring->nvars(); ++j) images.push_back(LPoly::variable(ring, j, max_precision(ring->ctx.p)));
  return RingMap(ring, ring, std::move(images));
}

int RingMap::prec() const {
  int prec = max_precision(target_->ctx.p);
  for (const auto& im : images_) prec = std::min(prec, im.prec());
  return prec;
}

LPoly RingMap::apply(const LPoly& f) const {
  require_same_ring(f.ring(), source_, "ring map argument");
  const int prec = std::min(f.prec(), this->prec());
  const std::size_t n = source_->nvars();
  // Per-variable power caches; keys are signed exponents.
  std::vector<std::map<int, LPoly>> cache(n);
  auto power = [&](std::size_t j, int e) -> const LPoly& {
    auto it = cache[j].find(e);
    if (it != cache[j].end()) return it->second;
    const LPoly& base = e > 0 ? images_[j] : *inverses_[j];
    LPoly v = base.reduced(std::min(base.prec(), prec)).pow(static_cast<std::uint64_t>(e > 0 ? e : -e));
    return cache[j].emplace(e, std::move(v)).first->second;
  };
  LPoly result(target_, prec);
  for (const auto& [e, c] : f.terms()) {
    LPoly term = LPoly::constant(target_, c, prec);
    for (std::size_t j = 0; j < n; ++j)
      if (e[j] != 0) term *= power(j, e[j]);
    result += term;
  }
  return result;
}

RingMap compose(const RingMap& outer, const RingMap& inner) {
  require_same_ring(inner.target(), outer.source(), "compose");
  std::vector<LPoly> images;
  for (const auto& im : inner.images()) images.push_back(outer.apply(im));
  return RingMap(inner.source(), outer.target(), std::move(images));
}

bool same_on_generators(const RingMap& a, const RingMap& b) {
  if (!same_ring(a.source(), b.source()) || !same_ring(a.target(), b.target())) return false;
  for (std::size_t j = 0; j < a.images().size(); ++j)
    if (!(a.image(j) == b.image(j))) return false;
  return true;
}

}  // namespace mwc
