#include "farsa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "farsa/errors.hpp"

namespace farsa {

void require_same_size(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": got length " + std::to_string(got) +
                         ", expected " + std::to_string(expected));
  }
}

IndexSet::IndexSet(std::vector<std::size_t> indices, std::size_t dimension)
    : indices_(std::move(indices)), dimension_(dimension) {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] >= dimension_) {
      throw DimensionError("index " + std::to_string(indices_[k]) + " out of range for dimension " +
                           std::to_string(dimension_));
    }
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw std::invalid_argument("index set must be strictly increasing");
    }
  }
}

IndexSet IndexSet::all(std::size_t dimension) {
  std::vector<std::size_t> idx(dimension);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  IndexSet set;
  set.indices_ = std::move(idx);
  set.dimension_ = dimension;
  return set;
}

IndexSet IndexSet::nonzeros(ConstSpan values) {
  IndexSet set;
  set.dimension_ = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) set.indices_.push_back(i);
  }
  return set;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != rows_ + 1) {
    throw DimensionError("row_offsets has length " + std::to_string(row_offsets_.size()) +
                         ", expected " + std::to_string(rows_ + 1));
  }
  if (col_indices_.size() != values_.size()) {
    throw DimensionError("col_indices and values differ in length");
  }
  if (row_offsets_.front() != 0 || row_offsets_.back() != values_.size()) {
    throw std::invalid_argument("row_offsets must start at 0 and end at nnz");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (row_offsets_[r + 1] < row_offsets_[r]) {
      throw std::invalid_argument("row_offsets must be nondecreasing");
    }
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (col_indices_[k] >= cols_) {
        throw DimensionError("column index " + std::to_string(col_indices_[k]) +
                             " out of range for " + std::to_string(cols_) + " columns");
      }
      if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1]) {
        throw std::invalid_argument("column indices must be strictly increasing within row " +
                                    std::to_string(r));
      }
    }
  }
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols, ConstSpan dense) {
  require_same_size(dense.size(), rows * cols, "dense matrix");
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cidx;
  std::vector<double> vals;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double v = dense[r * cols + c];
      if (v != 0.0) {
        cidx.push_back(c);
        vals.push_back(v);
      }
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(rows, cols, std::move(offsets), std::move(cidx), std::move(vals));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  std::vector<std::size_t> cidx(n);
  std::iota(cidx.begin(), cidx.end(), std::size_t{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cidx), std::vector<double>(n, 1.0));
}

Vector SparseMatrix::to_dense() const {
  Vector dense(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      dense[r * cols_ + col_indices_[k]] = values_[k];
    }
  }
  return dense;
}

Vector spmv(const SparseMatrix& a, ConstSpan x) {
  if (x.size() != a.cols()) {
    throw DimensionError("spmv: matrix has " + std::to_string(a.cols()) +
                         " columns but x has length " + std::to_string(x.size()));
  }
  Vector y(a.rows(), 0.0);
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) sum += vals[k] * x[cols[k]];
    y[r] = sum;
  }
  return y;
}

Vector spmv_transpose(const SparseMatrix& a, ConstSpan x) {
  if (x.size() != a.rows()) {
    throw DimensionError("spmv_transpose: matrix has " + std::to_string(a.rows()) +
                         " rows but x has length " + std::to_string(x.size()));
  }
  Vector y(a.cols(), 0.0);
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) y[cols[k]] += vals[k] * xr;
  }
  return y;
}

Vector gather(ConstSpan v, const IndexSet& set) {
  require_same_size(v.size(), set.dimension(), "gather source");
  Vector out;
  out.reserve(set.size());
  for (std::size_t i : set) {
    if (i >= v.size()) {
      throw DimensionError("gather: index " + std::to_string(i) + " out of range for length " +
                           std::to_string(v.size()));
    }
    out.push_back(v[i]);
  }
  return out;
}

Vector scatter(ConstSpan reduced, const IndexSet& set, std::size_t n) {
  require_same_size(reduced.size(), set.size(), "scatter");
  Vector out(n, 0.0);
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] >= n) {
      throw DimensionError("scatter: index " + std::to_string(set[k]) +
                           " out of range for length " + std::to_string(n));
    }
    out[set[k]] = reduced[k];
  }
  return out;
}

double dot(ConstSpan a, ConstSpan b) {
  require_same_size(b.size(), a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(ConstSpan v) { return std::sqrt(dot(v, v)); }

double norm1(ConstSpan v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

double norm_inf(ConstSpan v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

void axpy(double alpha, ConstSpan x, std::span<double> y) {
  require_same_size(y.size(), x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

bool all_finite(ConstSpan v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

bool same_signs(ConstSpan a, ConstSpan b) {
  require_same_size(b.size(), a.size(), "same_signs");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sign(a[i]) != sign(b[i])) return false;
  }
  return true;
}

} // namespace farsa
