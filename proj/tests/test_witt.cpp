#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mwc/poly_text.hpp"
#include "mwc/random.hpp"
#include "mwc/witt.hpp"
#include "test_util.hpp"

using namespace mwc;

namespace {

using Int = __int128;

Int ipow_z(Int b, int e) {
  Int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Witt vectors with integer entries, inverted exactly over Z.
std::vector<Int> ghost_z(const std::vector<Int>& x, Int p) {
  std::vector<Int> g;
  for (std::size_t m = 0; m < x.size(); ++m) {
    Int s = 0;
    for (std::size_t i = 0; i <= m; ++i) s += ipow_z(p, static_cast<int>(i)) * ipow_z(x[i], static_cast<int>(ipow_z(p, static_cast<int>(m - i))));
    g.push_back(s);
  }
  return g;
}

std::vector<Int> ghost_invert_z(const std::vector<Int>& g, Int p) {
  std::vector<Int> x;
  for (std::size_t m = 0; m < g.size(); ++m) {
    Int r = g[m];
    for (std::size_t i = 0; i < m; ++i) r -= ipow_z(p, static_cast<int>(i)) * ipow_z(x[i], static_cast<int>(ipow_z(p, static_cast<int>(m - i))));
    REQUIRE(r % ipow_z(p, static_cast<int>(m)) == 0);
    x.push_back(r / ipow_z(p, static_cast<int>(m)));
  }
  return x;
}

WittVec constant_vec(const RingPtr& R, const std::vector<Int>& x, int prec) {
  const Int mod = ipow_z(R->ctx.p, prec);
  std::vector<LPoly> c;
  for (Int v : x) c.push_back(LPoly::constant(R, static_cast<std::int64_t>(((v % mod) + mod) % mod), prec));
  return WittVec(std::move(c));
}

WittVec random_witt(Rng& rng, const RingPtr& R, std::size_t n, int prec, const PolyShape& shape) {
  std::vector<LPoly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(random_poly(rng, R, prec, shape));
  return WittVec(std::move(c));
}

// Keeps p^{n-1}-th powers of random entries small enough to stay fast.
PolyShape shape_for(std::int64_t p, std::size_t n) {
  if (p == 5 && n >= 3) return {2, 1};
  if (p == 5 || n >= 4) return {2, 2};
  return {3, 2};
}

}  // namespace

TEST_CASE("ghost examples") {
  auto R = make_ring(PrimeCtx(3, 4), {"x"});
  LPoly x = LPoly::variable(R, 0);
  GhostVec g = ghost(WittVec::teichmuller(x, 3));
  CHECK(g[0] == x);
  CHECK(g[1] == x.pow(3));
  CHECK(g[2] == x.pow(9));

  GhostVec h = ghost(WittVec({x, LPoly::constant(R, 1)}));
  CHECK(h[1] == x.pow(3) + LPoly::constant(R, 3));

  auto R2 = make_ring(PrimeCtx(2, 4), {"x"});
  GhostVec k = ghost(constant_vec(R2, {1, 1}, 4));
  CHECK(k[1].constant_term().value() == 3);
}

TEST_CASE("ghost_invert examples") {
  auto R = make_ring(PrimeCtx(2, 4), {"x"});
  GhostVec g{{LPoly::constant(R, 2, 4), LPoly::constant(R, 2, 4)}};
  WittVec w = ghost_invert(g);
  auto oracle = ghost_invert_z({2, 2}, 2);
  CHECK(oracle[1] == -1);
  CHECK(w == constant_vec(R, oracle, 4));
  CHECK(w[1].constant_term().value() == 7);  // -1 at precision 3

  auto R3 = make_ring(PrimeCtx(3, 4), {"x"});
  LPoly x = LPoly::variable(R3, 0);
  CHECK_THROWS_KIND(ghost_invert(GhostVec{{x, x * x}}), ErrorKind::NotDivisible);
  CHECK_THROWS_KIND(ghost_invert(GhostVec{{LPoly::constant(R3, 1, 1), LPoly::constant(R3, 1, 1)}}),
                    ErrorKind::PrecisionExhausted);
}

TEST_CASE("integer Witt vectors match exact inversion over Z") {
  Rng rng(31);
  for (std::int64_t p : {2, 3, 5}) {
    const int N = 3;
    auto R = make_ring(PrimeCtx(p, N), {"x"});
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = p == 5 ? 2 : 3;
      std::vector<Int> a, b;
      for (std::size_t i = 0; i < n; ++i) {
        a.push_back(rng.uniform(-4, 4));
        b.push_back(rng.uniform(-4, 4));
      }
      auto ga = ghost_z(a, p), gb = ghost_z(b, p);
      std::vector<Int> gs, gp;
      for (std::size_t m = 0; m < n; ++m) {
        gs.push_back(ga[m] + gb[m]);
        gp.push_back(ga[m] * gb[m]);
      }
      WittVec u = constant_vec(R, a, N), v = constant_vec(R, b, N);
      CHECK(witt_add(u, v) == constant_vec(R, ghost_invert_z(gs, p), N));
      CHECK(witt_mul(u, v) == constant_vec(R, ghost_invert_z(gp, p), N));
    }
  }
}

TEST_CASE("Witt sum and product examples") {
  auto R = make_ring(PrimeCtx(2, 4), {"a", "b"});
  WittVec one = WittVec::one(R, 2, 4);
  WittVec two = witt_add(one, one);
  CHECK(two == constant_vec(R, {2, -1}, 4));

  LPoly a = LPoly::variable(R, 0), b = LPoly::variable(R, 1);
  CHECK(witt_mul(WittVec::teichmuller(a, 3), WittVec::teichmuller(b, 3)) == WittVec::teichmuller(a * b, 3));

  Rng rng(3);
  WittVec u = random_witt(rng, R, 3, 4, {3, 2});
  CHECK(witt_add(u, WittVec::zero(R, 3, 4)) == u);
  CHECK(witt_mul(u, WittVec::one(R, 3, 4)) == u);
  CHECK(witt_add(u, witt_neg(u)) == WittVec::zero(R, 3, 4));
}

TEST_CASE("universal first sum polynomial") {
  for (std::int64_t p : {2, 3}) {
    const int N = 4;
    auto R = make_ring(PrimeCtx(p, N), {"X0", "X1", "Y0", "Y1"});
    LPoly X0 = LPoly::variable(R, 0), X1 = LPoly::variable(R, 1);
    LPoly Y0 = LPoly::variable(R, 2), Y1 = LPoly::variable(R, 3);
    WittVec s = witt_add(WittVec({X0, X1}), WittVec({Y0, Y1}));
    // S_1 = X1 + Y1 - Σ_{0<k<p} (C(p,k)/p) X0^k Y0^{p-k}
    LPoly oracle = X1 + Y1;
    std::int64_t binom = 1;
    for (std::int64_t k = 1; k < p; ++k) {
      binom = binom * (p - k + 1) / k;
      oracle -= (X0.pow(static_cast<std::uint64_t>(k)) * Y0.pow(static_cast<std::uint64_t>(p - k))).scaled(binom / p);
    }
    CHECK(s[0] == X0 + Y0);
    CHECK(s[1] == oracle);
    CHECK(s[1].prec() == N);
  }
}

TEST_CASE("Verschiebung and Frobenius examples") {
  auto R = make_ring(PrimeCtx(2, 4), {"a"});
  WittVec v = verschiebung(WittVec::one(R, 2, 4), true);
  CHECK(v == constant_vec(R, {0, 1, 0}, 4));
  GhostVec g = ghost(v);
  CHECK(g[0].is_zero());
  CHECK(g[1] == LPoly::constant(R, 2));
  CHECK(g[2] == LPoly::constant(R, 2));
  CHECK(verschiebung(WittVec::one(R, 2, 4)).length() == 2);

  LPoly a = LPoly::variable(R, 0);
  CHECK(frobenius(WittVec::teichmuller(a, 3)) == WittVec::teichmuller(a.pow(2), 2));
  CHECK_THROWS_KIND(frobenius(WittVec::one(R, 1, 4)), ErrorKind::LengthUnderflow);
}

TEST_CASE("reduce_mod_p examples") {
  auto R = make_ring(PrimeCtx(3, 4), {"x"});
  LPoly x = LPoly::variable(R, 0);
  WittVec w({x.scaled(4), x});
  WittVec r = reduce_mod_p(WittVec({LPoly::constant(R, 4), x}));
  CHECK(r[0].identical(LPoly::constant(R, 1, 1)));
  CHECK(r[1].identical(x.reduced(1)));
  CHECK(reduce_mod_p(ghost_invert(ghost(w))) == reduce_mod_p(w));
}

TEST_CASE("ghost map is a ring homomorphism") {
  Rng rng(1001);
  for (std::int64_t p : {2, 3, 5}) {
    const int N = 3;
    auto R = make_ring(PrimeCtx(p, N), {"x", "y"}, {true, false});
    auto R1 = make_ring(PrimeCtx(p, N), {"x"}, {true});
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
      const RingPtr& ring = (p == 5 || n == 4) ? R1 : R;
      WittVec u = random_witt(rng, ring, n, N, shape_for(p, n));
      WittVec v = random_witt(rng, ring, n, N, shape_for(p, n));
      GhostVec gu = ghost(u), gv = ghost(v);
      GhostVec gs = ghost(witt_add(u, v)), gm = ghost(witt_mul(u, v));
      for (std::size_t m = 0; m < n; ++m) {
        CHECK(gs[m] == gu[m] + gv[m]);
        CHECK(gm[m] == gu[m] * gv[m]);
      }
      CHECK(ghost_invert(gu) == u);
    }
  }
}

TEST_CASE("F V = p and the projection formula") {
  Rng rng(77);
  for (std::int64_t p : {2, 3, 5}) {
    const int N = 3;
    auto R = make_ring(PrimeCtx(p, N), {"x"}, {true});
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(2, p == 5 ? 3 : 4));
      WittVec u = random_witt(rng, R, n, N, shape_for(p, n + 1));
      CHECK(frobenius(verschiebung(u, true)) == witt_times(u, static_cast<unsigned>(p)));

      WittVec w = random_witt(rng, R, n, N, shape_for(p, n));
      std::vector<LPoly> head(u.comps().begin(), u.comps().end() - 1);
      WittVec u1(head);
      CHECK(witt_mul(verschiebung(u), w) == verschiebung(witt_mul(u1, frobenius(w)), true));
    }
  }
}

TEST_CASE("reduction modulo p is a ring map and lift independent") {
  Rng rng(404);
  for (std::int64_t p : {2, 3, 5}) {
    const int N = 3;
    auto R = make_ring(PrimeCtx(p, N), {"x"}, {true});
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      WittVec u = random_witt(rng, R, n, N, shape_for(p, n));
      WittVec v = random_witt(rng, R, n, N, shape_for(p, n));
      WittVec ru = reduce_mod_p(u), rv = reduce_mod_p(v);
      CHECK(reduce_mod_p(witt_add(u, v)) == witt_add(ru, rv));
      CHECK(reduce_mod_p(witt_mul(u, v)) == witt_mul(ru, rv));
      // A second lift of the same residues: add p times random slots.
      std::vector<LPoly> other;
      for (const auto& c : u.comps()) other.push_back(c + random_poly(rng, R, N, {2, 2}).scaled(p));
      CHECK(reduce_mod_p(witt_mul(WittVec(other), v)) == witt_mul(ru, rv));
    }
  }
}

TEST_CASE("ledger is non-increasing") {
  auto R = make_ring(PrimeCtx(2, 4), {"x"});
  WittVec w({LPoly::constant(R, 1, 2), LPoly::constant(R, 1, 4)});
  CHECK(w.ledger() == std::vector<int>{2, 2});
}
