#include <gtest/gtest.h>

#include <cmath>

#include "farsa/optimality.hpp"
#include "support/problems.hpp"

namespace farsa {
namespace {

using testing::Rng;

// Second transcription of the case tables, one component at a time.
double beta_reference(double x, double g, double lambda) {
  if (x != 0.0) return 0.0;
  if (g + lambda < 0.0) return g + lambda;
  if (g - lambda > 0.0) return g - lambda;
  return 0.0;
}

double phi_reference(double x, double g, double lambda) {
  if (x == 0.0) return 0.0;
  const double plus = g + lambda;
  const double minus = g - lambda;
  if (x > 0.0 && plus > 0.0) return plus < (x > minus ? x : minus) ? plus : (x > minus ? x : minus);
  if (x < 0.0 && minus < 0.0) return minus > (x < plus ? x : plus) ? minus : (x < plus ? x : plus);
  return x > 0.0 ? plus : minus;
}

// Triples that hit every branch: exact zeros, g on the thresholds +-lambda,
// and x on the phi clipping boundaries.
struct Triple {
  Vector x;
  Vector g;
  double lambda;
};

Triple random_triple(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> lam(0.01, 3.0);
  std::uniform_int_distribution<int> pick(0, 9);
  Triple t{testing::random_vector_with_zeros(rng, n, 0.3, 5.0), testing::random_vector(rng, n, -6.0, 6.0),
           lam(rng)};
  for (std::size_t i = 0; i < n; ++i) {
    switch (pick(rng)) {
    case 0: t.g[i] = t.lambda; break;
    case 1: t.g[i] = -t.lambda; break;
    case 2: t.x[i] = t.g[i] + t.lambda; break;
    case 3: t.x[i] = t.g[i] - t.lambda; break;
    default: break;
    }
  }
  return t;
}

TEST(Partition, Examples) {
  const auto p = partition_indices(Vector{0.0, 2.0, -1.0});
  EXPECT_EQ(p.zero, IndexSet({0}, 3));
  EXPECT_EQ(p.positive, IndexSet({1}, 3));
  EXPECT_EQ(p.negative, IndexSet({2}, 3));
  EXPECT_EQ(partition_indices(Vector(4, 0.0)).zero, IndexSet::all(4));
}

TEST(Partition, ReconstructsSigns) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = testing::random_vector_with_zeros(rng, 20, 0.3, 1.0);
    const auto p = partition_indices(x);
    EXPECT_EQ(p.zero.size() + p.positive.size() + p.negative.size(), 20u);
    const Vector pos = scatter(Vector(p.positive.size(), 1.0), p.positive, 20);
    const Vector neg = scatter(Vector(p.negative.size(), -1.0), p.negative, 20);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(pos[i] + neg[i], static_cast<double>(sign(x[i])));
  }
}

TEST(Beta, Examples) {
  EXPECT_EQ(compute_beta(Vector{0.0}, Vector{-3.0}, 1.0)[0], -2.0);
  EXPECT_EQ(compute_beta(Vector{0.0}, Vector{3.0}, 1.0)[0], 2.0);
  EXPECT_EQ(compute_beta(Vector{0.0}, Vector{0.5}, 1.0)[0], 0.0);
  EXPECT_EQ(compute_beta(Vector{0.0}, Vector{-1.0}, 1.0)[0], 0.0);
  EXPECT_EQ(compute_beta(Vector{4.0}, Vector{-30.0}, 1.0)[0], 0.0);
}

TEST(Phi, Examples) {
  EXPECT_EQ(compute_phi(Vector{2.0}, Vector{-1.0}, 1.0)[0], 0.0);
  EXPECT_EQ(compute_phi(Vector{1.0}, Vector{3.0}, 1.0)[0], 2.0);
  EXPECT_EQ(compute_phi(Vector{-1.0}, Vector{3.0}, 1.0)[0], 2.0);
  EXPECT_EQ(compute_phi(Vector{0.0}, Vector{30.0}, 1.0)[0], 0.0);
  // x > 0 far from zero: the plain partial derivative
  EXPECT_EQ(compute_phi(Vector{10.0}, Vector{0.5}, 1.0)[0], 1.5);
  // x > 0 close to zero: capped by the distance to zero
  EXPECT_EQ(compute_phi(Vector{0.25}, Vector{0.0}, 1.0)[0], 0.25);
}

TEST(BetaPhi, AgreeWithSecondTranscription) {
  Rng rng(32);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto t = random_triple(rng, 12);
    const Vector beta = compute_beta(t.x, t.g, t.lambda);
    const Vector phi = compute_phi(t.x, t.g, t.lambda);
    for (std::size_t i = 0; i < 12; ++i) {
      EXPECT_EQ(beta[i], beta_reference(t.x[i], t.g[i], t.lambda));
      EXPECT_EQ(phi[i], phi_reference(t.x[i], t.g[i], t.lambda));
    }
  }
}

TEST(BetaPhi, DisjointSupports) {
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = random_triple(rng, 15);
    const auto pair = OptimalityPair::evaluate(t.x, t.g, t.lambda);
    for (std::size_t i = 0; i < 15; ++i) {
      EXPECT_TRUE(pair.beta[i] == 0.0 || pair.phi[i] == 0.0);
      if (t.x[i] != 0.0) EXPECT_EQ(pair.beta[i], 0.0);
      if (t.x[i] == 0.0) EXPECT_EQ(pair.phi[i], 0.0);
    }
    EXPECT_DOUBLE_EQ(pair.beta_norm, norm2(pair.beta));
    EXPECT_DOUBLE_EQ(pair.phi_norm, norm2(pair.phi));
  }
}

TEST(BetaPhi, PositivelyHomogeneous) {
  Rng rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = random_triple(rng, 10);
    Vector x2 = t.x, g2 = t.g;
    for (std::size_t i = 0; i < 10; ++i) {
      x2[i] *= 2.0;
      g2[i] *= 2.0;
    }
    const Vector b1 = compute_beta(t.x, t.g, t.lambda), b2 = compute_beta(x2, g2, 2.0 * t.lambda);
    const Vector p1 = compute_phi(t.x, t.g, t.lambda), p2 = compute_phi(x2, g2, 2.0 * t.lambda);
    for (std::size_t i = 0; i < 10; ++i) {
      EXPECT_EQ(b2[i], 2.0 * b1[i]);
      EXPECT_EQ(p2[i], 2.0 * p1[i]);
    }
  }
}

TEST(BetaPhi, VanishAtSoftThresholdSolution) {
  // Minimizer of 0.5||x - c||^2 + lambda ||x||_1 is shrink(c, lambda), gradient x - c.
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector c = testing::random_vector(rng, 10, -3.0, 3.0);
    const double lambda = 1.0;
    Vector x(10), g(10);
    for (std::size_t i = 0; i < 10; ++i) {
      x[i] = std::abs(c[i]) > lambda ? c[i] - lambda * sign(c[i]) : 0.0;
      g[i] = x[i] - c[i];
    }
    const auto pair = OptimalityPair::evaluate(x, g, lambda);
    EXPECT_LE(pair.beta_norm, 1e-15);
    EXPECT_LE(pair.phi_norm, 1e-15);
  }
}

TEST(IsOptimal, InequalityIsInclusive) {
  OptimalityPair p;
  EXPECT_TRUE(is_optimal(p, 1e-12));
  p.beta_norm = 2e-6;
  EXPECT_FALSE(is_optimal(p, 1e-6));
  p.beta_norm = 1e-6;
  EXPECT_TRUE(is_optimal(p, 1e-6));
  p.phi_norm = 1.5e-6;
  EXPECT_FALSE(is_optimal(p, 1e-6));
}

TEST(IstaStep, Examples) {
  EXPECT_EQ(ista_step(Vector{0.0}, Vector{0.0}, 1.0)[0], 0.0);
  EXPECT_EQ(ista_step(Vector{5.0}, Vector{0.0}, 1.0)[0], -1.0);
  EXPECT_EQ(ista_step(Vector{0.5}, Vector{0.0}, 1.0)[0], -0.5);
  EXPECT_EQ(ista_step(Vector{-5.0}, Vector{0.0}, 1.0)[0], 1.0);
}

TEST(IstaStep, EqualsMinusBetaPlusPhi) {
  Rng rng(36);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto t = random_triple(rng, 8);
    const Vector s = ista_step(t.x, t.g, t.lambda);
    const auto pair = OptimalityPair::evaluate(t.x, t.g, t.lambda);
    for (std::size_t i = 0; i < 8; ++i) worst = std::max(worst, std::abs(s[i] + pair.beta[i] + pair.phi[i]));
  }
  EXPECT_LE(worst, 1e-14);
}

TEST(OrthantGradient, AddsSignedWeight) {
  EXPECT_EQ(orthant_gradient(Vector{1.0, -2.0, 0.0}, Vector{0.5, 0.5, 0.5}, 2.0), (Vector{2.5, -1.5, 0.5}));
}

} // namespace
} // namespace farsa
