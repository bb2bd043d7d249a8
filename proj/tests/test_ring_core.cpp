#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mwc/lpoly.hpp"
#include "mwc/poly_text.hpp"
#include "mwc/random.hpp"
#include "test_util.hpp"

using namespace mwc;

namespace {

// p^{i+1}/(i+1) as the unique x mod p^N with (i+1)·x ≡ p^{i+1} mod p^{N+v}.
std::int64_t rational_oracle(std::int64_t p, int N, int i) {
  const std::int64_t k = i + 1;
  int v = 0;
  for (std::int64_t t = k; t % p == 0; t /= p) ++v;
  __int128 big = 1;
  for (int j = 0; j < N + v; ++j) big *= p;
  __int128 num = 1;
  for (int j = 0; j < i + 1; ++j) num = (num * p) % big;
  const std::int64_t mod = ipow(p, N);
  for (std::int64_t x = 0; x < mod; ++x)
    if ((static_cast<__int128>(k) * x - num) % big == 0) return x;
  return -1;
}

}  // namespace

TEST_CASE("scalar_div_exact examples") {
  PrimeCtx c3(3, 4);
  auto b = scalar_div_exact(PrecScalar(c3, 18, 4), 2);
  CHECK(b.value() == 2);
  CHECK(b.prec() == 2);
  auto z = scalar_div_exact(PrecScalar(c3, 0, 4), 1);
  CHECK(z.value() == 0);
  CHECK(z.prec() == 3);
  PrimeCtx c2(2, 5);
  CHECK_THROWS_KIND(scalar_div_exact(PrecScalar(c2, 12, 5), 3), ErrorKind::NotDivisible);
  CHECK_THROWS_KIND(scalar_div_exact(PrecScalar(c2, 0, 2), 2), ErrorKind::PrecisionExhausted);
}

TEST_CASE("unit_coeff examples against the rational oracle") {
  CHECK(unit_coeff(PrimeCtx(2, 4), 0).value() == 2);
  CHECK(unit_coeff(PrimeCtx(2, 4), 1).value() == 2);
  CHECK(unit_coeff(PrimeCtx(3, 3), 1).value() == 18);
  CHECK(rational_oracle(2, 4, 1) == 2);
  CHECK(rational_oracle(3, 3, 1) == 18);
  for (std::int64_t p : {2, 3, 5})
    for (int N = 1; N <= 4; ++N)
      for (int i = 0; i < 4 * N; ++i) {
        CAPTURE(p);
        CAPTURE(N);
        CAPTURE(i);
        CHECK(unit_coeff(PrimeCtx(p, N), i).value() == rational_oracle(p, N, i));
      }
}

TEST_CASE("unit_coeff times (i+1) is p^{i+1}") {
  for (std::int64_t p : {2, 3, 5, 7})
    for (int N = 1; N <= 5; ++N) {
      PrimeCtx ctx(p, N);
      const std::int64_t mod = ctx.modulus();
      for (int i = 0; i < 4 * N; ++i) {
        std::int64_t lhs = mul_mod(unit_coeff(ctx, i).value(), (i + 1) % mod, mod);
        std::int64_t rhs = 1;
        for (int j = 0; j <= i; ++j) rhs = mul_mod(rhs, p, mod);
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("scalar_div_exact inverts multiplication by p^v") {
  Rng rng(11);
  for (std::int64_t p : {2, 3, 5}) {
    PrimeCtx ctx(p, 4);
    for (int t = 0; t < 200; ++t) {
      const int prec = static_cast<int>(rng.uniform(2, 4));
      const int v = static_cast<int>(rng.uniform(0, prec - 1));
      PrecScalar a(ctx, rng.uniform(0, ctx.modulus(prec) - 1), prec);
      PrecScalar pa = a * PrecScalar(ctx, ipow(p, v), prec);
      PrecScalar back = scalar_div_exact(pa, v);
      CHECK(back.prec() == prec - v);
      CHECK(back == a);
    }
  }
}

TEST_CASE("PrimeCtx rejects composite p and bad N") {
  CHECK_THROWS_KIND(PrimeCtx(4, 2), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(PrimeCtx(3, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("polynomial examples") {
  PrimeCtx ctx(5, 3);
  auto R = make_ring(ctx, {"x"});
  LPoly x = LPoly::variable(R, 0);
  LPoly one = LPoly::constant(R, 1);
  CHECK((x + one) * (x - one) == x * x - one);
  CHECK(format_poly((x + one) * (x - one)) == "124+1*x^2");

  RingMap frob(R, R, {x.pow(5)});
  CHECK(frob(x * x) == x.pow(10));

  auto G = make_ring(ctx, {"x"}, {true});
  LPoly xi = LPoly::monomial(G, {-1}, 1, 3);
  CHECK(xi.partial_derivative(0) == LPoly::monomial(G, {-2}, 124, 3));
  CHECK(x.degree() == 1);
  CHECK(!LPoly(R).degree().has_value());
}

TEST_CASE("substitution errors") {
  PrimeCtx ctx(3, 3);
  auto G = make_ring(ctx, {"x"}, {true});
  LPoly x = LPoly::variable(G, 0);
  CHECK_THROWS_KIND(RingMap(G, G, {x + LPoly::constant(G, 1)}), ErrorKind::NonUnitSubstitution);
  auto R = make_ring(ctx, {"y"});
  CHECK_THROWS_KIND(x + LPoly::variable(R, 0), ErrorKind::VariableMismatch);
  CHECK_THROWS_KIND(RingMap(G, G, {}), ErrorKind::VariableMismatch);
}

TEST_CASE("unit inverse of a 1-unit times a monomial") {
  PrimeCtx ctx(3, 4);
  auto G = make_ring(ctx, {"x", "y"}, {true, false});
  LPoly u = parse_poly("2*x^-1 + 3*x*y + 9*y^2", G);
  REQUIRE(u.is_unit());
  CHECK(u * u.unit_inverse() == LPoly::constant(G, 1));
  CHECK(!parse_poly("x + y", G).is_unit());
}

TEST_CASE("ring axioms on random Laurent polynomials") {
  Rng rng(2024);
  for (std::int64_t p : {2, 3, 5}) {
    auto R = make_ring(PrimeCtx(p, 4), {"x", "y"}, {true, false});
    PolyShape shape{5, 4};
    for (int t = 0; t < 200; ++t) {
      LPoly a = random_poly(rng, R, 4, shape);
      LPoly b = random_poly(rng, R, 4, shape);
      LPoly c = random_poly(rng, R, 4, shape);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == LPoly(R));
    }
  }
}

TEST_CASE("partial derivatives are derivations") {
  Rng rng(7);
  for (std::int64_t p : {2, 3, 5}) {
    auto R = make_ring(PrimeCtx(p, 3), {"x", "y"}, {true, true});
    for (int t = 0; t < 200; ++t) {
      LPoly a = random_poly(rng, R, 3, {4, 4});
      LPoly b = random_poly(rng, R, 3, {4, 4});
      for (std::size_t j = 0; j < 2; ++j)
        CHECK((a * b).partial_derivative(j) == a.partial_derivative(j) * b + a * b.partial_derivative(j));
    }
  }
}

TEST_CASE("substitution is a homomorphism and composes") {
  Rng rng(99);
  for (std::int64_t p : {2, 3, 5}) {
    auto R = make_ring(PrimeCtx(p, 3), {"x", "y"}, {true, false});
    auto S = make_ring(PrimeCtx(p, 3), {"u", "v"}, {true, false});
    for (int t = 0; t < 200; ++t) {
      RingMap f = random_ring_map(rng, R, S, 3, {3, 2});
      RingMap g = random_ring_map(rng, S, R, 3, {3, 2});
      LPoly a = random_poly(rng, R, 3, {3, 3});
      LPoly b = random_poly(rng, R, 3, {3, 3});
      CHECK(f(a + b) == f(a) + f(b));
      CHECK(f(a * b) == f(a) * f(b));
      RingMap gf = compose(g, f);
      CHECK(gf(a) == g(f(a)));
      for (std::size_t j = 0; j < 2; ++j) CHECK(gf.image(j) == g(f.image(j)));
    }
  }
}

TEST_CASE("canonical text round trip") {
  Rng rng(5);
  for (std::int64_t p : {2, 3, 5}) {
    auto R = make_ring(PrimeCtx(p, 3), {"x", "y"}, {true, false});
    for (int t = 0; t < 200; ++t) {
      LPoly a = random_poly(rng, R, 3, {5, 4});
      CHECK(parse_poly(format_poly(a), R).identical(a));
    }
  }
  auto R = make_ring(PrimeCtx(3, 2), {"x"}, {true});
  CHECK(format_poly(parse_poly("- x^(-2) + 2", R)) == "8*x^-2+2");
  CHECK(format_poly(LPoly(R)) == "0");
}
