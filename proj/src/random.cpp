#include "mwc/random.hpp"

#include <cstdlib>

namespace mwc {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

Exponent random_exponent(Rng& rng, const RingPtr& ring, int max_degree) {
  const std::size_t n = ring->nvars();
  Exponent e(n, 0);
  int budget = static_cast<int>(rng.uniform(0, max_degree));
  for (std::size_t j = 0; j < n && budget > 0; ++j) {
    const int k = static_cast<int>(j + 1 == n ? budget : rng.uniform(0, budget));
    e[j] = (ring->invertible[j] && rng.coin()) ? -k : k;
    budget -= k;
  }
  // Spread the degree over variables in a random order.
  for (std::size_t j = n; j > 1; --j) std::swap(e[j - 1], e[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(j) - 1))]);
  for (std::size_t j = 0; j < n; ++j)
    if (!ring->invertible[j]) e[j] = std::abs(e[j]);
  return e;
}

LPoly one_plus_p(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape) {
  return LPoly::constant(ring, 1, prec) + random_poly(rng, ring, prec, shape).scaled(ring->ctx.p);
}

}  // namespace

LPoly random_poly(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape) {
  const std::int64_t mod = ipow(ring->ctx.p, prec);
  const int terms = static_cast<int>(rng.uniform(0, shape.max_terms));
  LPoly f(ring, prec);
  for (int t = 0; t < terms; ++t)
    f += LPoly::monomial(ring, random_exponent(rng, ring, shape.max_degree), rng.uniform(0, mod - 1), prec);
  return f;
}

LPoly random_nonzero_poly(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape) {
  while (true) {
    LPoly f = random_poly(rng, ring, prec, shape);
    if (!f.reduced(1).is_zero()) return f;
  }
}

Form random_form(Rng& rng, const RingPtr& ring, int degree, int prec, const PolyShape& shape) {
  const int n = static_cast<int>(ring->nvars());
  Form w(ring, degree, prec);
  if (degree < 0 || degree > n) return w;
  const int terms = static_cast<int>(rng.uniform(1, 3));
  for (int t = 0; t < terms; ++t) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = n; i > 1; --i) std::swap(all[i - 1], all[static_cast<std::size_t>(rng.uniform(0, i - 1))]);
    std::vector<int> idx(all.begin(), all.begin() + degree);
    w += Form::monomial(random_poly(rng, ring, prec, shape), idx);
  }
  return w;
}

TForm random_tform(Rng& rng, const RingPtr& base, int degree, int prec, int t_degree, const PolyShape& shape) {
  TForm w(base, degree, prec);
  for (int i = 0; i <= t_degree; ++i) {
    if (rng.coin()) w.add_prime(i, random_form(rng, base, degree, prec, shape));
    if (degree >= 1 && rng.coin()) w.add_dprime(i, random_form(rng, base, degree - 1, prec, shape));
  }
  return w;
}

RingMap random_ring_map(Rng& rng, const RingPtr& source, const RingPtr& target, int prec, const PolyShape& shape) {
  std::vector<std::size_t> inv_target;
  for (std::size_t j = 0; j < target->nvars(); ++j)
    if (target->invertible[j]) inv_target.push_back(j);
  const std::int64_t mod = ipow(target->ctx.p, prec);
  std::vector<LPoly> images;
  for (std::size_t j = 0; j < source->nvars(); ++j) {
    if (!source->invertible[j]) {
      images.push_back(random_poly(rng, target, prec, shape));
      continue;
    }
    Exponent e(target->nvars(), 0);
    for (std::size_t k : inv_target) e[k] = static_cast<int>(rng.uniform(-2, 2));
    std::int64_t c;
    do c = rng.uniform(1, mod - 1);
    while (c % target->ctx.p == 0);
    PolyShape small{2, shape.max_degree / 2};
    images.push_back(LPoly::monomial(target, e, c, prec) * one_plus_p(rng, target, prec, small));
  }
  return RingMap(source, target, std::move(images));
}

RingMap random_congruent_map(Rng& rng, const RingMap& psi1, const PolyShape& shape) {
  const RingPtr& source = psi1.source();
  const RingPtr& target = psi1.target();
  const int prec = psi1.prec();
  std::vector<LPoly> images;
  for (std::size_t j = 0; j < source->nvars(); ++j) {
    const LPoly& a = psi1.image(j);
    if (source->invertible[j]) {
      PolyShape small{2, shape.max_degree / 2};
      images.push_back(a * one_plus_p(rng, target, prec, small));
    } else {
      images.push_back(a + random_poly(rng, target, prec, shape).scaled(target->ctx.p));
    }
  }
  return RingMap(source, target, std::move(images));
}

RingMap random_frobenius_map(Rng& rng, const RingPtr& ring, int prec, const PolyShape& shape) {
  const std::int64_t p = ring->ctx.p;
  PolyShape capped{shape.max_terms, std::min(shape.max_degree, static_cast<int>(p))};
  std::vector<LPoly> images;
  for (std::size_t j = 0; j < ring->nvars(); ++j) {
    LPoly xp = LPoly::variable(ring, j, prec).pow(static_cast<std::uint64_t>(p));
    if (ring->invertible[j])
      images.push_back(xp * one_plus_p(rng, ring, prec, {capped.max_terms, 1}));
    else
      images.push_back(xp + random_poly(rng, ring, prec, capped).scaled(p));
  }
  return RingMap(ring, ring, std::move(images));
}

}  // namespace mwc
