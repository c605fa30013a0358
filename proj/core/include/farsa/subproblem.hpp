#pragma once

#include <cstddef>
#include <limits>
#include <string_view>

#include "farsa/linalg.hpp"
#include "farsa/objective.hpp"

namespace farsa {

/// m(d) = g^T d + 0.5 d^T H d, with its two parts kept separately.
struct ModelEval {
  double value = 0.0;
  double g_dot_d = 0.0;
  double d_H_d = 0.0;
};

ModelEval evaluate_model(ConstSpan g, ConstSpan d, const HessianOperator& hessian);

/// m(d), one Hessian product.
double model_decrease(ConstSpan g, ConstSpan d, const HessianOperator& hessian);

/// Minimizer of the model along -g: d_R = -alpha g with alpha = ||g||^2 / g^T H g.
struct ReferenceDirection {
  Vector direction;
  double alpha = 0.0;
};

/// Throws NumericalError if g^T H g <= 0.
ReferenceDirection reference_direction(ConstSpan g, const HessianOperator& hessian);

/// g^T dbar <= g^T d_R and m(dbar) <= m(0) = 0, where `model` is m evaluated at dbar.
bool accept_direction(ConstSpan g, ConstSpan dbar, ConstSpan d_ref, const ModelEval& model);

enum class CgStop { ResidualReduced, OrthantViolations, StepTooLarge, MaxIterations };

std::string_view to_string(CgStop stop) noexcept;

/// Early-termination thresholds for the truncated CG solve.
struct CgLimits {
  /// Stop once ||d_j|| >= step_bound.
  double step_bound = std::numeric_limits<double>::infinity();
  /// r_j <= max{residual_fraction * r_0, residual_floor}
  double residual_fraction = 1e-1;
  double residual_floor = 1e-12;
  /// v_j >= max{violation_floor, violation_fraction * |I|}
  double violation_floor = 1e3;
  double violation_fraction = 1e-1;
  /// 0 means |I|.
  std::size_t max_iterations = 0;
};

struct CgOutcome {
  Vector direction;
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  std::size_t orthant_violations = 0;
  CgStop stop_reason = CgStop::MaxIterations;
};

/// Number of components where x + d has the strictly opposite sign of x.
/// Components landing exactly on zero are not counted.
std::size_t count_orthant_violations(ConstSpan x, ConstSpan d);

/// Conjugate gradients on H d = -g from d_0 = 0.
///
/// After each iterate the stop rules are tested in order: residual reduction,
/// orthant violations of `x_reduced + d_j`, then step length. The first rule
/// satisfied ends the solve. `g` must be nonzero.
CgOutcome cg_solve(const HessianOperator& hessian, ConstSpan g, ConstSpan x_reduced,
                   const CgLimits& limits);

} // namespace farsa
