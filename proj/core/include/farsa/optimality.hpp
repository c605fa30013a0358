#pragma once

#include "farsa/linalg.hpp"

namespace farsa {

/// Split of {0, ..., n-1} by the exact sign of x.
struct IndexPartition {
  IndexSet zero;
  IndexSet positive;
  IndexSet negative;
};

IndexPartition partition_indices(ConstSpan x);

/// Optimality measure on the zero variables: the amount by which
/// |grad_i| <= lambda fails at each x_i == 0. Zero off I0(x).
Vector compute_beta(ConstSpan x, ConstSpan grad, double lambda);

/// Optimality measure on the nonzero variables. Zero on I0(x).
///
/// On x_i > 0 with g_i + lambda > 0 the value is min{g_i + lambda, max{x_i, g_i - lambda}},
/// which caps the measure by how far x_i can travel before reaching zero;
/// the x_i < 0 case is symmetric. Otherwise it is the plain partial derivative
/// g_i + lambda * sgn(x_i).
Vector compute_phi(ConstSpan x, ConstSpan grad, double lambda);

/// beta(x) and phi(x) together with their cached Euclidean norms.
struct OptimalityPair {
  Vector beta;
  Vector phi;
  double beta_norm = 0.0;
  double phi_norm = 0.0;

  static OptimalityPair evaluate(ConstSpan x, ConstSpan grad, double lambda);
};

/// max{||beta||, ||phi||} <= epsilon
bool is_optimal(const OptimalityPair& pair, double epsilon) noexcept;

/// Full unit-step proximal gradient step shrink(x - grad) - x with threshold lambda.
Vector ista_step(ConstSpan x, ConstSpan grad, double lambda);

/// grad + lambda * sgn(x): the gradient of F restricted to the orthant of x.
Vector orthant_gradient(ConstSpan x, ConstSpan grad, double lambda);

} // namespace farsa
