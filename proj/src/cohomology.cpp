#include "mwc/cohomology.hpp"

#include <algorithm>
#include <cmath>

namespace mwc {

namespace {

// All q-subsets of {0..n-1} in lexicographic order.
std::vector<IndexSet> subsets(int n, int q) {
  std::vector<IndexSet> out;
  if (q < 0 || q > n) return out;
  IndexSet cur(q);
  for (int i = 0; i < q; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = q - 1;
    while (i >= 0 && cur[i] == n - q + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Guard digits so that every nonzero elementary divisor of the integer
// matrix has valuation below the guard (Hadamard bound on its minors).
int guard_digits(const std::vector<std::vector<std::int64_t>>& m, std::int64_t p) {
  if (m.empty()) return 1;
  double log_bound = 0;
  for (std::size_t j = 0; j < m[0].size(); ++j) {
    double sq = 0;
    for (const auto& row : m) sq += static_cast<double>(row[j]) * static_cast<double>(row[j]);
    if (sq > 0) log_bound += 0.5 * std::log(sq);
  }
  return static_cast<int>(std::floor(log_bound / std::log(static_cast<double>(p)) + 1e-9)) + 1;
}

ModMatrix to_mod(const std::vector<std::vector<std::int64_t>>& m, std::int64_t p, int K, std::size_t rows,
                 std::size_t cols) {
  ModMatrix out(p, K, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, m[i][j]);
  return out;
}

struct BlockSmith {
  SmithForm snf;
  int K;
  std::size_t rank;
  std::vector<int> torsion;  // 0 < e < K
};

BlockSmith integral_smith(const GradedComplex& cx, int q, const Exponent& m) {
  const std::size_t cols = cx.basis(m, q).size();
  const std::size_t rows = cx.basis(m, q + 1).size();
  auto integral = boundary_matrix_integral(cx, q, m);
  const int K = cx.N() + guard_digits(integral, cx.p());
  if (K > max_precision(cx.p())) fail(ErrorKind::InvalidArgument, "block too large for guarded Smith form");
  BlockSmith b{smith_normal_form(to_mod(integral, cx.p(), K, rows, cols)), K, 0, {}};
  for (int e : b.snf.exponents) {
    if (e < K) ++b.rank;
    if (e > 0 && e < K) b.torsion.push_back(e);
  }
  return b;
}

}  // namespace

GradedComplex::GradedComplex(RingPtr ring, int window) : ring_(std::move(ring)), window_(window) {
  if (window_ < 0) fail(ErrorKind::InvalidArgument, "window must be >= 0");
  for (int t : ring_->truncation)
    if (t >= 0) fail(ErrorKind::InvalidArgument, "graded complexes need untruncated variables");
}

bool GradedComplex::in_window(const Exponent& m) const {
  if (m.size() != ring_->nvars()) return false;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const int lo = ring_->invertible[j] ? -window_ : 0;
    if (m[j] < lo || m[j] > window_) return false;
  }
  return true;
}

std::vector<Exponent> GradedComplex::blocks() const {
  const std::size_t n = ring_->nvars();
  std::vector<Exponent> out;
  Exponent cur(n);
  for (std::size_t j = 0; j < n; ++j) cur[j] = ring_->invertible[j] ? -window_ : 0;
  while (true) {
    out.push_back(cur);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (cur[j] < window_) {
        ++cur[j];
        for (std::size_t k = j + 1; k < n; ++k) cur[k] = ring_->invertible[k] ? -window_ : 0;
        break;
      }
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<BasisElem> GradedComplex::basis(const Exponent& m, int q) const {
  std::vector<BasisElem> out;
  const int n = static_cast<int>(ring_->nvars());
  for (auto& idx : subsets(n, q)) {
    Exponent e = m;
    for (int i : idx) e[i] -= 1;
    bool ok = true;
    for (int j = 0; j < n; ++j)
      if (e[j] < 0 && !ring_->invertible[j]) ok = false;
    if (ok) out.push_back({std::move(idx), std::move(e)});
  }
  return out;
}

Exponent GradedComplex::multidegree(const Exponent& e, const IndexSet& idx) {
  Exponent m = e;
  for (int i : idx) m[i] += 1;
  return m;
}

std::map<Exponent, Form> GradedComplex::split_blocks(const Form& w) const {
  require_same_ring(w.ring(), ring_, "graded complex");
  std::map<Exponent, Form> out;
  for (const auto& [idx, c] : w.terms()) {
    for (const auto& [e, x] : c.terms()) {
      Exponent m = multidegree(e, idx);
      if (!in_window(m)) {
        std::string s;
        for (int v : m) s += (s.empty() ? "" : ",") + std::to_string(v);
        fail(ErrorKind::WindowOverflow, "term of multidegree (" + s + ") lies outside window " + std::to_string(window_));
      }
      auto it = out.try_emplace(m, ring_, w.degree(), w.prec()).first;
      it->second += Form::monomial(LPoly::monomial(ring_, e, x, w.prec()), idx);
    }
  }
  return out;
}

std::vector<std::int64_t> GradedComplex::coordinates(const Form& part, const Exponent& m) const {
  auto b = basis(m, part.degree());
  std::vector<std::int64_t> out(b.size(), 0);
  for (const auto& [idx, c] : part.terms()) {
    auto it = std::find_if(b.begin(), b.end(), [&](const BasisElem& be) { return be.idx == idx; });
    if (it == b.end()) fail(ErrorKind::WindowOverflow, "form term outside block basis");
    for (const auto& [e, x] : c.terms()) {
      if (e != it->exponent) fail(ErrorKind::InvalidArgument, "form is not homogeneous of the requested multidegree");
      out[static_cast<std::size_t>(it - b.begin())] = x;
    }
  }
  return out;
}

Form GradedComplex::from_coordinates(const Exponent& m, int q, const std::vector<std::int64_t>& coords, int prec) const {
  Form out(ring_, q, prec);
  auto b = basis(m, q);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (coords[i] != 0) out += Form::monomial(LPoly::monomial(ring_, b[i].exponent, coords[i], prec), b[i].idx);
  return out;
}

std::vector<std::vector<std::int64_t>> boundary_matrix_integral(const GradedComplex& cx, int q, const Exponent& m) {
  auto cols = cx.basis(m, q);
  auto rows = cx.basis(m, q + 1);
  std::vector<std::vector<std::int64_t>> out(rows.size(), std::vector<std::int64_t>(cols.size(), 0));
  const int n = cx.top_degree();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& [idx, e] = cols[c];
    for (int k = 0; k < n; ++k) {
      if (e[k] == 0 || std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
      int before = static_cast<int>(std::count_if(idx.begin(), idx.end(), [k](int j) { return j < k; }));
      IndexSet target = idx;
      target.insert(target.begin() + before, k);
      auto it = std::find_if(rows.begin(), rows.end(), [&](const BasisElem& be) { return be.idx == target; });
      if (it == rows.end()) fail(ErrorKind::WindowOverflow, "boundary leaves the block basis");
      out[static_cast<std::size_t>(it - rows.begin())][c] += (before % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(e[k]);
    }
  }
  return out;
}

ModMatrix boundary_matrix(const GradedComplex& cx, int q, const Exponent& m, int K) {
  auto integral = boundary_matrix_integral(cx, q, m);
  return to_mod(integral, cx.p(), K, cx.basis(m, q + 1).size(), cx.basis(m, q).size());
}

const CohomBlock* CohomReport::find(int degree, const Exponent& m) const {
  for (const auto& b : blocks)
    if (b.degree == degree && b.multidegree == m) return &b;
  return nullptr;
}

int CohomReport::order_exponent(int degree, const Exponent& m) const {
  const CohomBlock* b = find(degree, m);
  if (!b) return 0;
  int s = 0;
  for (int e : b->divisors) s += e;
  return s;
}

CohomReport cohomology(const GradedComplex& cx) {
  CohomReport report{cx.p(), cx.N(), {}};
  const int top = cx.top_degree();
  for (const auto& m : cx.blocks()) {
    std::vector<BlockSmith> smiths;
    for (int q = 0; q <= top; ++q) smiths.push_back(integral_smith(cx, q, m));
    for (int q = 0; q <= top; ++q) {
      CohomBlock b;
      b.degree = q;
      b.multidegree = m;
      const int cq = static_cast<int>(cx.basis(m, q).size());
      const int prev_rank = q > 0 ? static_cast<int>(smiths[q - 1].rank) : 0;
      b.free_rank = cq - static_cast<int>(smiths[q].rank) - prev_rank;
      if (q > 0)
        for (int e : smiths[q - 1].torsion) b.divisors.push_back(std::min(e, cx.N()));
      for (int i = 0; i < b.free_rank; ++i) b.divisors.push_back(cx.N());
      std::sort(b.divisors.begin(), b.divisors.end());
      report.blocks.push_back(std::move(b));
    }
  }
  return report;
}

std::vector<Form> cocycle_basis(const GradedComplex& cx, int q, const Exponent& m) {
  BlockSmith b = integral_smith(cx, q, m);
  const std::size_t cols = cx.basis(m, q).size();
  const std::int64_t mod = ipow(cx.p(), cx.N());
  std::vector<Form> out;
  for (std::size_t k = 0; k < cols; ++k) {
    if (k < b.snf.exponents.size() && b.snf.exponents[k] < b.K) continue;
    std::vector<std::int64_t> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = b.snf.V.at(i, k) % mod;
    out.push_back(cx.from_coordinates(m, q, v, cx.N()));
  }
  return out;
}

ExactnessResult exactness_witness(const GradedComplex& cx, const Form& w) {
  require_same_ring(w.ring(), cx.ring(), "exactness_witness");
  const int P = w.prec();
  const int q = w.degree();
  if (q < 0) fail(ErrorKind::InvalidArgument, "exactness of a degree -1 form");
  if (!d(w).is_zero()) fail(ErrorKind::NotClosed, "form " + w.to_string() + " is not closed");
  const std::int64_t p = cx.p();
  const std::int64_t mod = ipow(p, P);

  struct Solve {
    Exponent m;
    SmithForm snf;
    std::vector<std::int64_t> c;
  };
  std::vector<Solve> solves;
  int e = 0;
  for (const auto& [m, part] : cx.split_blocks(w)) {
    auto b = cx.coordinates(part, m);
    const std::size_t cols = q > 0 ? cx.basis(m, q - 1).size() : 0;
    ModMatrix a = q > 0 ? boundary_matrix(cx, q - 1, m, P) : ModMatrix(p, P, b.size(), 0);
    SmithForm snf = smith_normal_form(a);
    (void)cols;
    auto c = snf.U.apply(b);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int ek = k < snf.exponents.size() ? snf.exponents[k] : P;
      e = std::max(e, ek - valuation(p, c[k], P));
    }
    solves.push_back({m, std::move(snf), std::move(c)});
  }
  e = std::min(e, P);

  ExactnessResult r{e == 0, e, Form(cx.ring(), q - 1, P)};
  if (q == 0) return r;
  const std::int64_t pe = ipow(p, e) % mod;
  for (const auto& s : solves) {
    std::vector<std::int64_t> z(s.snf.V.rows(), 0);
    for (std::size_t k = 0; k < s.snf.exponents.size(); ++k) {
      const int ek = s.snf.exponents[k];
      if (ek >= P) continue;
      z[k] = mul_mod(pe, s.c[k], mod) / ipow(p, ek);
    }
    r.primitive += cx.from_coordinates(s.m, q - 1, s.snf.V.apply(z), P);
  }
  if (!(d(r.primitive) == w.scaled(PrecScalar(cx.ring()->ctx, pe, P))))
    fail(ErrorKind::IdentityViolation, "linear solve produced a wrong primitive for " + w.to_string());
  return r;
}

bool LiftIndependenceReport::all_verified() const {
  return std::all_of(cases.begin(), cases.end(),
                     [](const LiftIndependenceCase& c) { return c.homotopy_verified && c.solve_verified; });
}

LiftIndependenceReport lift_independence_on_cohomology(const RingMap& phi1, const RingMap& phi2,
                                                       const GradedComplex& src, const GradedComplex& tgt) {
  require_same_ring(phi1.source(), src.ring(), "lift independence source");
  require_same_ring(phi1.target(), tgt.ring(), "lift independence target");
  HomotopyCertificate cert = build_strong_homotopy(phi1, phi2);
  LiftIndependenceReport report;
  report.prec = cert.prec;
  for (int q = 0; q <= src.top_degree(); ++q) {
    for (const auto& m : src.blocks()) {
      for (auto& c : cocycle_basis(src, q, m)) {
        Form difference = (pullback(phi2, c) - pullback(phi1, c)).reduced(cert.prec);
        tgt.split_blocks(difference);
        ChainHomotopyResult h = chain_homotopy(cert, c);
        if (h.h.degree() >= 0) tgt.split_blocks(h.h);
        const bool homotopy_ok = h.verified && d(h.h) == difference;
        ExactnessResult ex = exactness_witness(tgt, difference);
        const bool solve_ok = ex.exact && (q == 0 ? difference.is_zero() : d(ex.primitive) == difference);
        LiftIndependenceCase lc{q, m, std::move(c), std::move(difference), std::move(h.h), std::move(ex.primitive),
                                homotopy_ok, solve_ok};
        report.cases.push_back(std::move(lc));
      }
    }
  }
  return report;
}

}  // namespace mwc
