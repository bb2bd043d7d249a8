#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwc/scalar.hpp"

namespace mwc {

/// Dense matrix over Z/p^K, entries stored as residues in [0, p^K).
class ModMatrix {
 public:
  ModMatrix(std::int64_t p, int K, std::size_t rows, std::size_t cols);

  static ModMatrix identity(std::int64_t p, int K, std::size_t n);
  static ModMatrix from_rows(std::int64_t p, int K, const std::vector<std::vector<std::int64_t>>& rows);

  std::int64_t p() const { return p_; }
  int K() const { return K_; }
  std::int64_t modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = mod_reduce(v, modulus_); }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, std::int64_t c);
  void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t c);
  void scale_row(std::size_t r, std::int64_t c);

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) = default;

  /// Determinant over Z/p^K (square only) by fraction-free elimination on
  /// unit pivots; returns a residue.
  std::int64_t determinant() const;

  std::string to_string() const;

 private:
  std::int64_t p_;
  int K_;
  std::int64_t modulus_;
  std::size_t rows_, cols_;
  std::vector<std::int64_t> data_;
};

/// U·A·V = D with U, V invertible and D diagonal, diagonal entries p^{e_1},
/// p^{e_2}, ... with e ascending; e = K denotes a zero diagonal entry.
struct SmithForm {
  ModMatrix U;
  ModMatrix D;
  ModMatrix V;
  std::vector<int> exponents;  // length min(rows, cols)

  /// Number of diagonal entries that are nonzero modulo p^K.
  std::size_t rank() const;
};

/// Minimal-valuation pivoting, ties broken by lowest row then lowest column.
SmithForm smith_normal_form(const ModMatrix& a);

}  // namespace mwc
