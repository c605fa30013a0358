#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "farsa/errors.hpp"
#include "farsa/linalg.hpp"
#include "support/problems.hpp"

namespace farsa {
namespace {

using testing::Rng;

// Dense triple-loop reference, row-major storage.
Vector dense_multiply(const Vector& dense, std::size_t rows, std::size_t cols, const Vector& x) {
  Vector y(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) y[r] += dense[r * cols + c] * x[c];
  }
  return y;
}

Vector dense_multiply_transpose(const Vector& dense, std::size_t rows, std::size_t cols, const Vector& x) {
  Vector y(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) y[c] += dense[r * cols + c] * x[r];
  }
  return y;
}

void expect_relative_close(const Vector& got, const Vector& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_LE(std::abs(got[i] - want[i]), tol * std::max(1.0, std::abs(want[i]))) << "at " << i;
  }
}

TEST(Spmv, IdentityLeavesVectorUnchanged) {
  const auto a = SparseMatrix::identity(2);
  EXPECT_EQ(spmv(a, Vector{3.0, -1.0}), (Vector{3.0, -1.0}));
  EXPECT_EQ(spmv_transpose(a, Vector{3.0, -1.0}), (Vector{3.0, -1.0}));
}

TEST(Spmv, HandExpansion) {
  const auto a = SparseMatrix::from_dense(2, 2, Vector{1, 2, 0, 3});
  EXPECT_EQ(a.nnz(), 3u);
  EXPECT_EQ(spmv(a, Vector{1, 1}), (Vector{3, 3}));
  EXPECT_EQ(spmv_transpose(a, Vector{1, 1}), (Vector{1, 5}));
}

TEST(Spmv, MatchesDenseReference) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_sparse(rng, 50, 30, 0.3);
    const Vector dense = a.to_dense();
    const Vector x = testing::random_vector(rng, 30);
    const Vector y = testing::random_vector(rng, 50);
    expect_relative_close(spmv(a, x), dense_multiply(dense, 50, 30, x), 1e-14);
    expect_relative_close(spmv_transpose(a, y), dense_multiply_transpose(dense, 50, 30, y), 1e-14);
  }
}

TEST(Spmv, AdjointIdentity) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_sparse(rng, 40, 25, 0.2);
    const Vector x = testing::random_vector(rng, 25);
    const Vector y = testing::random_vector(rng, 40);
    const double lhs = dot(spmv(a, x), y);
    const double rhs = dot(x, spmv_transpose(a, y));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Spmv, DimensionMismatchNamesBothSizes) {
  const auto a = SparseMatrix::identity(3);
  try {
    (void)spmv(a, Vector{1.0, 2.0});
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('2'), std::string::npos) << msg;
    EXPECT_NE(msg.find('3'), std::string::npos) << msg;
  }
  EXPECT_THROW((void)spmv_transpose(a, Vector{1.0}), DimensionError);
}

TEST(SparseMatrix, RejectsBrokenInvariants) {
  EXPECT_THROW(SparseMatrix(1, 2, {0, 2}, {1, 0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(SparseMatrix(1, 2, {0, 1}, {2}, {1.0}), std::invalid_argument);
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1}, {0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(SparseMatrix(1, 2, {0, 2}, {0}, {1.0}), std::invalid_argument);
  EXPECT_NO_THROW(SparseMatrix(2, 2, {0, 0, 1}, {1}, {4.0}));
}

TEST(IndexSet, ValidatesOrderAndRange) {
  EXPECT_THROW(IndexSet({2, 1}, 3), std::invalid_argument);
  EXPECT_THROW(IndexSet({1, 1}, 3), std::invalid_argument);
  EXPECT_THROW(IndexSet({3}, 3), std::invalid_argument);
  const IndexSet s({0, 2}, 3);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(IndexSet::all(3).size(), 3u);
  EXPECT_EQ(IndexSet::nonzeros(Vector{0, 1, 0, -2}), IndexSet({1, 3}, 4));
}

TEST(GatherScatter, Examples) {
  const IndexSet s({0, 2}, 3);
  EXPECT_EQ(gather(Vector{5, 6, 7}, s), (Vector{5, 7}));
  EXPECT_EQ(scatter(Vector{5, 7}, s, 3), (Vector{5, 0, 7}));
}

TEST(GatherScatter, RoundTripZeroesComplement) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector v = testing::random_vector(rng, 17);
    const IndexSet s = testing::random_index_set(rng, 17, 0.4);
    const Vector back = scatter(gather(v, s), s, 17);
    std::size_t k = 0;
    for (std::size_t i = 0; i < 17; ++i) {
      if (k < s.size() && s[k] == i) {
        EXPECT_EQ(back[i], v[i]);
        ++k;
      } else {
        EXPECT_EQ(back[i], 0.0);
        EXPECT_FALSE(std::signbit(back[i]));
      }
    }
  }
}

TEST(GatherScatter, LengthMismatchThrows) {
  EXPECT_THROW((void)gather(Vector{1, 2}, IndexSet({0}, 3)), DimensionError);
  EXPECT_THROW((void)scatter(Vector{1, 2}, IndexSet({0}, 3), 3), DimensionError);
}

TEST(Kernels, NormsAndSigns) {
  const Vector v{3.0, -4.0, 0.0};
  EXPECT_DOUBLE_EQ(norm2(v), 5.0);
  EXPECT_DOUBLE_EQ(norm1(v), 7.0);
  EXPECT_DOUBLE_EQ(norm_inf(v), 4.0);
  EXPECT_EQ(sign(-0.0), 0);
  EXPECT_EQ(sign(2.0), 1);
  EXPECT_TRUE(same_signs(Vector{1, 0, -1}, Vector{5, 0, -0.1}));
  EXPECT_FALSE(same_signs(Vector{1, 0}, Vector{1, 1e-300}));
  Vector y{1.0, 1.0, 1.0};
  axpy(2.0, v, y);
  EXPECT_EQ(y, (Vector{7.0, -7.0, 1.0}));
  EXPECT_FALSE(all_finite(Vector{1.0, std::nan("")}));
}

} // namespace
} // namespace farsa
