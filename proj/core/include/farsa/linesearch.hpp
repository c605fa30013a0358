#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "farsa/linalg.hpp"

namespace farsa {

/// Evaluates F on a full-space point.
using ValueFunction = std::function<double(ConstSpan)>;

struct LineSearchParams {
  double eta = 1e-2;               ///< sufficient-decrease constant in (0, 1/2]
  double xi = 0.5;                 ///< backtracking factor in (0, 1)
  std::size_t max_backtracks = 100;
};

/// Projection onto the closed orthant of `x_ref`: keeps y_i where it agrees in
/// sign with x_ref_i, writes an exact 0 elsewhere and wherever x_ref_i == 0.
Vector project_orthant(ConstSpan y, ConstSpan x_ref);

enum class PhiOutcome {
  Add,               ///< at least one nonzero of x_k became zero
  SufficientDecrease ///< Armijo decrease, orthant unchanged
};

std::string_view to_string(PhiOutcome outcome) noexcept;

struct PhiSearchResult {
  Vector next_x;
  double objective = 0.0;
  PhiOutcome outcome = PhiOutcome::SufficientDecrease;
  std::size_t backtracks = 0;
  double step_size = 0.0;
};

/// Largest step before some component of x + alpha d leaves the orthant of x
/// (the first zero crossing). Infinity if no component moves toward zero.
double boundary_step(ConstSpan x, ConstSpan d);

/// Projected backtracking search for support-preserving directions.
///
/// `d` must vanish off `set`, `orthant_grad` is [grad f(x) + lambda sgn(x)]_set
/// and `f_x` is F(x). Projected trial points that change the sign pattern are
/// accepted on plain decrease; when backtracking has already happened, the
/// step to the first zero crossing is tried under a sufficient-decrease test;
/// failing both, ordinary Armijo backtracking inside the orthant takes over.
/// Throws LineSearchError after `max_backtracks` reductions.
PhiSearchResult linesearch_phi(const ValueFunction& objective, ConstSpan x, double f_x, ConstSpan d,
                               const IndexSet& set, ConstSpan orthant_grad,
                               const LineSearchParams& params);

struct BetaSearchResult {
  Vector next_x;
  double objective = 0.0;
  std::size_t backtracks = 0;
  double step_size = 0.0;
};

/// Smallest j >= 0 with F(x + xi^j d) <= F(x) - eta xi^j ||d||^2.
BetaSearchResult linesearch_beta(const ValueFunction& objective, ConstSpan x, double f_x,
                                 ConstSpan d, const LineSearchParams& params);

} // namespace farsa
