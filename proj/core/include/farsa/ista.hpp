#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "farsa/linalg.hpp"
#include "farsa/objective.hpp"
#include "farsa/solver.hpp"

namespace farsa {

/// Proximal gradient baseline. Used as an independent reference solution.
struct IstaConfig {
  /// Fixed step t; nullopt selects backtracking.
  std::optional<double> step_size;
  double epsilon = 1e-10;
  std::size_t max_iterations = 1'000'000;
  std::chrono::duration<double> time_limit{600.0};
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double growth_factor = 1.1;
  std::size_t max_backtracks = 100;
  bool keep_trace = true;

  void validate() const;
};

/// Soft threshold of x - t g at t * lambda.
Vector proximal_gradient_point(ConstSpan x, ConstSpan grad, double step, double lambda);

/// Stops on the same max{||beta||, ||phi||} <= epsilon test as `solve`.
SolveReport ista_solve(const Objective& f, double lambda, const IstaConfig& config, Vector x0);

} // namespace farsa
