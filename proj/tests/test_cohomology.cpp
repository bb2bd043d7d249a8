#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mwc/cohomology.hpp"
#include "mwc/poly_text.hpp"
#include "mwc/random.hpp"
#include "test_util.hpp"

using namespace mwc;

namespace {

int vp(std::int64_t p, std::int64_t m) {
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

// Determinant by permutation expansion modulo `mod`.
std::int64_t det_expand(const std::vector<std::vector<std::int64_t>>& a, std::int64_t mod) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::int64_t term = 1;
    for (std::size_t i = 0; i < n; ++i) term = mul_mod(term, a[i][perm[i]], mod);
    total = mod_reduce(total + (inversions % 2 ? -term : term), mod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<std::vector<std::size_t>> combos(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) c.push_back(i);
    out.push_back(c);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Minimal valuation of the k×k minors (the k-th determinantal divisor).
int determinantal_exponent(const ModMatrix& a, std::size_t k) {
  int best = a.K();
  for (const auto& rs : combos(a.rows(), k))
    for (const auto& cs : combos(a.cols(), k)) {
      std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a.at(rs[i], cs[j]);
      best = std::min(best, valuation(a.p(), det_expand(m, a.modulus()), a.K()));
    }
  return best;
}

ModMatrix random_matrix(Rng& rng, std::int64_t p, int K, std::size_t r, std::size_t c) {
  ModMatrix m(p, K, r, c);
  const std::int64_t mod = ipow(p, K);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      // Bias toward high valuations so that nontrivial divisors appear.
      const int v = static_cast<int>(rng.uniform(0, K));
      m.set(i, j, v == K ? 0 : mul_mod(rng.uniform(0, mod - 1), ipow(p, v), mod));
    }
  return m;
}

Form from_text(const RingPtr& R, const std::string& coeff, std::vector<int> idx) {
  return Form::monomial(parse_poly(coeff, R), idx);
}

}  // namespace

TEST_CASE("boundary matrix examples") {
  auto A1 = make_ring(PrimeCtx(2, 3), {"T"});
  GradedComplex a1(A1, 8);
  CHECK(boundary_matrix_integral(a1, 0, {0}).empty());
  for (int m = 1; m <= 8; ++m) {
    auto mat = boundary_matrix_integral(a1, 0, {m});
    REQUIRE(mat.size() == 1);
    CHECK(mat[0][0] == m);
  }
  auto Gm = make_ring(PrimeCtx(3, 3), {"x"}, {true});
  GradedComplex gm(Gm, 4);
  ModMatrix z = boundary_matrix(gm, 0, {0});
  CHECK(z.rows() == 1);
  CHECK(z.cols() == 1);
  CHECK(z.at(0, 0) == 0);

  auto A2 = make_ring(PrimeCtx(3, 3), {"x", "y"});
  GradedComplex a2(A2, 2);
  auto rows = a2.basis({1, 1}, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].idx == IndexSet{0});
  CHECK(rows[0].exponent == Exponent{0, 1});
  auto mat = boundary_matrix_integral(a2, 0, {1, 1});
  CHECK(mat == std::vector<std::vector<std::int64_t>>{{1}, {1}});
  CHECK(boundary_matrix_integral(a2, 1, {1, 1}) == std::vector<std::vector<std::int64_t>>{{-1, 1}});
}

TEST_CASE("Smith normal form examples") {
  const std::int64_t p = 3;
  auto s1 = smith_normal_form(ModMatrix::from_rows(p, 2, {{3, 0}, {0, 1}}));
  CHECK(s1.exponents == std::vector<int>{0, 1});
  auto s2 = smith_normal_form(ModMatrix::from_rows(p, 2, {{3, 3}, {3, 3}}));
  CHECK(s2.exponents == std::vector<int>{1, 2});
  CHECK(s2.rank() == 1);
  auto s3 = smith_normal_form(ModMatrix(p, 2, 3, 2));
  CHECK(s3.exponents == std::vector<int>{2, 2});
  CHECK(s3.rank() == 0);
}

TEST_CASE("Smith normal form on random matrices") {
  Rng rng(51);
  for (std::int64_t p : {2, 3, 5}) {
    for (int t = 0; t < 200; ++t) {
      const int K = static_cast<int>(rng.uniform(1, 4));
      const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 8));
      const std::size_t c = static_cast<std::size_t>(rng.uniform(1, 8));
      ModMatrix a = random_matrix(rng, p, K, r, c);
      SmithForm s = smith_normal_form(a);
      CHECK(s.U * a * s.V == s.D);
      CHECK(s.U.determinant() % p != 0);
      CHECK(s.V.determinant() % p != 0);
      CHECK(std::is_sorted(s.exponents.begin(), s.exponents.end()));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          const std::int64_t expect = (i == j && s.exponents[i] < K) ? ipow(p, s.exponents[i]) : 0;
          CHECK(s.D.at(i, j) == expect);
        }
      if (r <= 4 && c <= 4) {
        int partial = 0;
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
          partial = std::min(K, partial + s.exponents[k - 1]);
          CHECK(determinantal_exponent(a, k) == partial);
        }
      }
    }
  }
}

TEST_CASE("torsion of the affine line") {
  auto A1 = make_ring(PrimeCtx(2, 3), {"T"});
  CohomReport rep = cohomology(GradedComplex(A1, 8));
  const CohomBlock* h0 = rep.find(0, {0});
  REQUIRE(h0);
  CHECK(h0->divisors == std::vector<int>{3});
  for (int m = 1; m <= 8; ++m) CHECK(rep.find(0, {m})->divisors.empty());
  const std::vector<int> orders{1, 2, 1, 4, 1, 2, 1, 8};
  for (int m = 1; m <= 8; ++m) CHECK((1 << rep.order_exponent(1, {m})) == orders[m - 1]);
  CHECK(rep.order_exponent(1, {0}) == 0);

  for (std::int64_t p : {2, 3, 5}) {
    for (int N = 1; N <= 3; ++N) {
      const int D = static_cast<int>(p * p * p);
      CohomReport r = cohomology(GradedComplex(make_ring(PrimeCtx(p, N), {"T"}), D));
      for (int m = 1; m <= D; ++m) {
        const CohomBlock* b = r.find(1, {m});
        const int e = std::min(vp(p, m), N);
        CHECK(b->divisors == (e == 0 ? std::vector<int>{} : std::vector<int>{e}));
      }
    }
  }
}

TEST_CASE("cohomology of the multiplicative group") {
  for (std::int64_t p : {2, 3}) {
    const int N = 3;
    CohomReport rep = cohomology(GradedComplex(make_ring(PrimeCtx(p, N), {"x"}, {true}), 8));
    const CohomBlock* log = rep.find(1, {0});
    REQUIRE(log);
    CHECK(log->divisors == std::vector<int>{N});
    CHECK(log->free_rank == 1);
    for (int m = -8; m <= 8; ++m) {
      if (m == 0) continue;
      const int e = std::min(vp(p, std::abs(m)), N);
      CHECK(rep.order_exponent(1, {m}) == e);
      CHECK(rep.find(0, {m})->divisors.empty());
    }
    CHECK(rep.find(0, {0})->divisors == std::vector<int>{N});
  }
}

TEST_CASE("H0 is the constants") {
  for (auto inv : std::vector<std::vector<bool>>{{false, false}, {true, false}, {true, true}}) {
    CohomReport rep = cohomology(GradedComplex(make_ring(PrimeCtx(3, 2), {"x", "y"}, inv), 3));
    for (const auto& b : rep.blocks) {
      if (b.degree != 0) continue;
      const bool origin = std::all_of(b.multidegree.begin(), b.multidegree.end(), [](int v) { return v == 0; });
      CHECK(b.divisors == (origin ? std::vector<int>{2} : std::vector<int>{}));
    }
  }
}

TEST_CASE("blockwise cohomology equals the assembled complex") {
  for (std::int64_t p : {2, 3}) {
    for (auto inv : std::vector<std::vector<bool>>{{false, false}, {true, false}}) {
      const int N = 2;
      auto R = make_ring(PrimeCtx(p, N), {"x", "y"}, inv);
      GradedComplex cx(R, 2);
      CohomReport rep = cohomology(cx);
      // Assembled basis across all blocks; d is computed on forms directly.
      std::vector<std::vector<std::pair<Exponent, BasisElem>>> basis(3);
      for (int q = 0; q <= 2; ++q)
        for (const auto& m : cx.blocks())
          for (auto& b : cx.basis(m, q)) basis[q].push_back({m, b});
      std::vector<std::vector<std::vector<std::int64_t>>> mats(2);
      for (int q = 0; q < 2; ++q) {
        mats[q].assign(basis[q + 1].size(), std::vector<std::int64_t>(basis[q].size(), 0));
        for (std::size_t c = 0; c < basis[q].size(); ++c) {
          const auto& b = basis[q][c].second;
          Form w = Form::monomial(LPoly::monomial(R, b.exponent, 1, N), b.idx);
          const Form dw = d(w);
          for (const auto& [idx, coeff] : dw.terms())
            for (const auto& [e, x] : coeff.terms()) {
              auto it = std::find_if(basis[q + 1].begin(), basis[q + 1].end(), [&](const auto& pb) {
                return pb.second.idx == idx && pb.second.exponent == e;
              });
              REQUIRE(it != basis[q + 1].end());
              // Signed integer entry: the derivative exponent is small.
              std::int64_t v = x > ipow(p, N) / 2 ? x - ipow(p, N) : x;
              mats[q][static_cast<std::size_t>(it - basis[q + 1].begin())][c] = v;
            }
        }
      }
      // Work modulo a large power so every divisor is resolved.
      const int K = N + 12;
      std::vector<std::vector<int>> exps(2);
      for (int q = 0; q < 2; ++q) {
        ModMatrix a(p, K, basis[q + 1].size(), basis[q].size());
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t j = 0; j < a.cols(); ++j) a.set(i, j, mats[q][i][j]);
        exps[q] = smith_normal_form(a).exponents;
      }
      for (int q = 0; q <= 2; ++q) {
        std::vector<int> assembled;
        int rank_q = 0, rank_prev = 0;
        if (q < 2)
          for (int e : exps[q]) rank_q += e < K;
        if (q > 0)
          for (int e : exps[q - 1]) {
            rank_prev += e < K;
            if (e > 0 && e < K) assembled.push_back(std::min(e, N));
          }
        const int free = static_cast<int>(basis[q].size()) - rank_q - rank_prev;
        for (int i = 0; i < free; ++i) assembled.push_back(N);
        std::sort(assembled.begin(), assembled.end());
        std::vector<int> blockwise;
        for (const auto& b : rep.blocks)
          if (b.degree == q) blockwise.insert(blockwise.end(), b.divisors.begin(), b.divisors.end());
        std::sort(blockwise.begin(), blockwise.end());
        CHECK(assembled == blockwise);
      }
    }
  }
}

TEST_CASE("exactness witnesses") {
  const std::int64_t p = 3;
  const int N = 3;
  auto A1 = make_ring(PrimeCtx(p, N), {"T"});
  GradedComplex a1(A1, 27);
  Form w = from_text(A1, "T^2", {0});
  ExactnessResult r = exactness_witness(a1, w);
  CHECK(!r.exact);
  CHECK(r.order_exponent == 1);
  CHECK(r.primitive == Form::function(parse_poly("T^3", A1)));
  CHECK(d(r.primitive) == w.scaled(PrecScalar(A1->ctx, p)));

  ExactnessResult e = exactness_witness(a1, from_text(A1, "2*T", {0}));
  CHECK(e.exact);
  CHECK(e.order_exponent == 0);
  CHECK(e.primitive == Form::function(parse_poly("T^2", A1)));

  auto Gm = make_ring(PrimeCtx(p, N), {"x"}, {true});
  ExactnessResult g = exactness_witness(GradedComplex(Gm, 4), from_text(Gm, "x^-1", {0}));
  CHECK(!g.exact);
  CHECK(g.order_exponent == N);
  CHECK(g.primitive.is_zero());

  auto A2 = make_ring(PrimeCtx(p, N), {"x", "y"});
  CHECK_THROWS_KIND(exactness_witness(GradedComplex(A2, 3), from_text(A2, "x", {1})), ErrorKind::NotClosed);
  CHECK_THROWS_KIND(exactness_witness(GradedComplex(A2, 1), from_text(A2, "x^3", {0})), ErrorKind::WindowOverflow);
}

TEST_CASE("exactness witnesses on random closed forms") {
  Rng rng(52);
  for (std::int64_t p : {2, 3, 5}) {
    const int N = 3;
    auto R = make_ring(PrimeCtx(p, N), {"x", "y"}, {true, false});
    GradedComplex cx(R, 4);
    for (int t = 0; t < 200; ++t) {
      const int q = static_cast<int>(rng.uniform(1, 2));
      Form eta = random_form(rng, R, q - 1, N, {3, 3});
      Form w = d(eta);
      ExactnessResult r = exactness_witness(cx, w);
      CHECK(r.exact);
      CHECK(d(r.primitive) == w);
      // Adding a multiple of dx/x makes it non-exact with a known order.
      if (q == 1) {
        const int k = static_cast<int>(rng.uniform(0, N - 1));
        Form log = from_text(R, std::to_string(ipow(p, k)) + "*x^-1", {0});
        ExactnessResult s = exactness_witness(cx, w + log);
        CHECK(s.order_exponent == N - k);
        CHECK(d(s.primitive) == (w + log).scaled(PrecScalar(R->ctx, ipow(p, N - k) % ipow(p, N))));
      }
    }
  }
}

TEST_CASE("cocycle generators are closed") {
  auto R = make_ring(PrimeCtx(3, 2), {"x", "y"}, {true, false});
  GradedComplex cx(R, 3);
  for (const auto& m : cx.blocks())
    for (int q = 0; q <= 2; ++q)
      for (const auto& c : cocycle_basis(cx, q, m)) {
        CHECK(d(c).is_zero());
        CHECK(!c.reduced(1).is_zero());
      }
}

TEST_CASE("lift independence on the affine line") {
  for (std::int64_t p : {2, 3}) {
    const int N = 4;
    auto A1 = make_ring(PrimeCtx(p, N), {"x"});
    LPoly x = LPoly::variable(A1, 0);
    RingMap phi1(A1, A1, {x.pow(2)});
    RingMap phi2(A1, A1, {x.pow(2) + x.pow(3).scaled(p)});
    const int D = static_cast<int>(p * p);
    GradedComplex src(A1, D), tgt(A1, 3 * D);
    LiftIndependenceReport rep = lift_independence_on_cohomology(phi1, phi2, src, tgt);
    CHECK(rep.prec == N - 1);
    CHECK(rep.all_verified());
    int h1 = 0;
    for (const auto& c : rep.cases) {
      if (c.degree != 1) continue;
      ++h1;
      CHECK(d(c.homotopy) == c.difference);
      CHECK(d(c.solve_primitive) == c.difference);
    }
    CHECK(h1 == D);

    LiftIndependenceReport same = lift_independence_on_cohomology(phi1, phi1, src, tgt);
    for (const auto& c : same.cases) CHECK(c.difference.is_zero());

    GradedComplex narrow(A1, D);
    CHECK_THROWS_KIND(lift_independence_on_cohomology(phi1, phi2, src, narrow), ErrorKind::WindowOverflow);
  }
}

TEST_CASE("lift independence on the multiplicative group") {
  const std::int64_t p = 3;
  const int N = 3;
  auto Gm = make_ring(PrimeCtx(p, N), {"x"}, {true});
  LPoly x = LPoly::variable(Gm, 0);
  RingMap id = RingMap::identity(Gm);
  RingMap shifted(Gm, Gm, {x + LPoly::constant(Gm, p)});
  LiftIndependenceReport rep = lift_independence_on_cohomology(id, shifted, GradedComplex(Gm, 4), GradedComplex(Gm, 8));
  CHECK(rep.all_verified());
  CHECK(!rep.cases.empty());
}
