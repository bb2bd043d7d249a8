#include "mwc/matrix.hpp"

#include <algorithm>

namespace mwc {

ModMatrix::ModMatrix(std::int64_t p, int K, std::size_t rows, std::size_t cols)
    : p_(p), K_(K), modulus_(ipow(p, K)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ModMatrix ModMatrix::identity(std::int64_t p, int K, std::size_t n) {
  ModMatrix m(p, K, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ModMatrix ModMatrix::from_rows(std::int64_t p, int K, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  ModMatrix m(p, K, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) fail(ErrorKind::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void ModMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
}

void ModMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
}

void ModMatrix::add_row_multiple(std::size_t dst, std::size_t src, std::int64_t c) {
  c = mod_reduce(c, modulus_);
  if (c == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    auto& x = data_[dst * cols_ + j];
    x = add_mod(x, mul_mod(c, data_[src * cols_ + j], modulus_), modulus_);
  }
}

void ModMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t c) {
  c = mod_reduce(c, modulus_);
  if (c == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    auto& x = data_[i * cols_ + dst];
    x = add_mod(x, mul_mod(c, data_[i * cols_ + src], modulus_), modulus_);
  }
}

void ModMatrix::scale_row(std::size_t r, std::int64_t c) {
  c = mod_reduce(c, modulus_);
  for (std::size_t j = 0; j < cols_; ++j) data_[r * cols_ + j] = mul_mod(c, data_[r * cols_ + j], modulus_);
}

std::vector<std::int64_t> ModMatrix::apply(const std::vector<std::int64_t>& x) const {
  if (x.size() != cols_) fail(ErrorKind::InvalidArgument, "matrix-vector size mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] = add_mod(y[i], mul_mod(at(i, j), mod_reduce(x[j], modulus_), modulus_), modulus_);
  return y;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  if (a.cols_ != b.rows_ || a.p_ != b.p_ || a.K_ != b.K_) fail(ErrorKind::InvalidArgument, "matrix product mismatch");
  ModMatrix c(a.p_, a.K_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c.data_[i * c.cols_ + j] = add_mod(c.data_[i * c.cols_ + j], mul_mod(x, b.at(k, j), a.modulus_), a.modulus_);
    }
  return c;
}

std::int64_t ModMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  // Column elimination with a minimal-valuation pivot; every other entry in
  // the column is a multiple of it, so only unit inverses are needed.
  ModMatrix m = *this;
  std::int64_t det = 1;
  for (std::size_t k = 0; k < rows_; ++k) {
    std::size_t best = rows_;
    int best_v = K_;
    for (std::size_t i = k; i < rows_; ++i) {
      int v = valuation(p_, m.at(i, k), K_);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == rows_) return 0;
    if (best != k) {
      m.swap_rows(best, k);
      det = mod_reduce(-det, modulus_);
    }
    const std::int64_t pivot = m.at(k, k);
    det = mul_mod(det, pivot, modulus_);
    const std::int64_t pv = ipow(p_, best_v);
    const std::int64_t unit_inv = inv_mod((pivot / pv) % modulus_, modulus_);
    for (std::size_t i = k + 1; i < rows_; ++i) {
      const std::int64_t x = m.at(i, k);
      if (x == 0) continue;
      // x has valuation >= best_v; x = (x / p^v) * p^v.
      std::int64_t factor = mul_mod(x / pv, unit_inv, modulus_);
      m.add_row_multiple(i, k, mod_reduce(-factor, modulus_));
    }
  }
  return det;
}

std::string ModMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? "," : "") + std::to_string(at(i, j));
    out += "]";
  }
  return out + "]";
}

std::size_t SmithForm::rank() const {
  return static_cast<std::size_t>(
      std::count_if(exponents.begin(), exponents.end(), [this](int e) { return e < D.K(); }));
}

SmithForm smith_normal_form(const ModMatrix& a) {
  const std::int64_t p = a.p();
  const int K = a.K();
  const std::int64_t mod = a.modulus();
  ModMatrix D = a;
  ModMatrix U = ModMatrix::identity(p, K, a.rows());
  ModMatrix V = ModMatrix::identity(p, K, a.cols());
  const std::size_t diag = std::min(a.rows(), a.cols());
  std::vector<int> exps(diag, K);
  for (std::size_t k = 0; k < diag; ++k) {
    std::size_t pr = 0, pc = 0;
    int best = K;
    for (std::size_t i = k; i < D.rows(); ++i)
      for (std::size_t j = k; j < D.cols(); ++j) {
        int v = valuation(p, D.at(i, j), K);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best == K) break;
    D.swap_rows(k, pr);
    U.swap_rows(k, pr);
    D.swap_cols(k, pc);
    V.swap_cols(k, pc);
    const std::int64_t pv = ipow(p, best);
    const std::int64_t unit_inv = inv_mod((D.at(k, k) / pv) % mod, mod);
    D.scale_row(k, unit_inv);
    U.scale_row(k, unit_inv);
    for (std::size_t i = 0; i < D.rows(); ++i) {
      if (i == k || D.at(i, k) == 0) continue;
      const std::int64_t factor = D.at(i, k) / pv;
      D.add_row_multiple(i, k, mod - factor % mod);
      U.add_row_multiple(i, k, mod - factor % mod);
    }
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (j == k || D.at(k, j) == 0) continue;
      const std::int64_t factor = D.at(k, j) / pv;
      D.add_col_multiple(j, k, mod - factor % mod);
      V.add_col_multiple(j, k, mod - factor % mod);
    }
    exps[k] = best;
  }
  return SmithForm{std::move(U), std::move(D), std::move(V), std::move(exps)};
}

}  // namespace mwc
