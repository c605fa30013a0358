#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace farsa {

using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;

/// Sorted, duplicate-free set of variable indices below a fixed dimension.
class IndexSet {
public:
  IndexSet() = default;

  /// Validates that `indices` is strictly increasing with every entry < `dimension`.
  IndexSet(std::vector<std::size_t> indices, std::size_t dimension);

  static IndexSet all(std::size_t dimension);

  /// Indices i with `values[i] != 0`.
  static IndexSet nonzeros(ConstSpan values);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  std::span<const std::size_t> indices() const noexcept { return indices_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
  std::vector<std::size_t> indices_;
  std::size_t dimension_ = 0;
};

/// Compressed sparse row matrix. Immutable after construction.
class SparseMatrix {
public:
  SparseMatrix() : row_offsets_{0} {}

  /// Validates the CSR invariants: offsets of length rows+1 starting at 0,
  /// nondecreasing, ending at nnz; column indices in range and strictly
  /// increasing within each row.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices, std::vector<double> values);

  /// Builds from a row-major dense array, dropping exact zeros.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols, ConstSpan dense);

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  std::span<const std::size_t> row_indices(std::size_t r) const {
    return {col_indices_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
  }

  /// Row-major dense copy; meant for tests and small problems.
  Vector to_dense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// Ax, accumulating each row left to right.
Vector spmv(const SparseMatrix& a, ConstSpan x);

/// A^T x.
Vector spmv_transpose(const SparseMatrix& a, ConstSpan x);

/// [v]_I
Vector gather(ConstSpan v, const IndexSet& set);

/// Inverse of gather: places `reduced` at the positions of `set` in a vector
/// of length n whose remaining entries are exactly zero.
Vector scatter(ConstSpan reduced, const IndexSet& set, std::size_t n);

double dot(ConstSpan a, ConstSpan b);
double norm2(ConstSpan v);
double norm1(ConstSpan v);
double norm_inf(ConstSpan v);

/// y += alpha * x
void axpy(double alpha, ConstSpan x, std::span<double> y);

bool all_finite(ConstSpan v);

inline int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

/// Componentwise sgn(a) == sgn(b).
bool same_signs(ConstSpan a, ConstSpan b);

void require_same_size(std::size_t got, std::size_t expected, const char* what);

} // namespace farsa
