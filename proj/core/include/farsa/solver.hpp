#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "farsa/linalg.hpp"
#include "farsa/linesearch.hpp"
#include "farsa/objective.hpp"
#include "farsa/optimality.hpp"
#include "farsa/subproblem.hpp"

namespace farsa {

/// Constants of the reduced-space method. Defaults are the values used for
/// the logistic regression experiments, except lambda which callers must set.
struct SolverConfig {
  double lambda = 0.0;
  double epsilon = 1e-6;
  double gamma = 1.0;   ///< phi-iteration when ||beta|| <= gamma ||phi||
  double eta = 1e-2;    ///< line-search sufficient decrease
  double xi = 0.5;      ///< line-search backtracking factor
  double eta_phi = 1.0; ///< fraction of ||phi|| the working set must capture
  double eta_beta = 1.0;
  std::size_t max_iterations = 1000;
  std::chrono::duration<double> time_limit{600.0};
  std::size_t max_backtracks = 100;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

enum class IterationType { PhiSD, PhiAdd, Beta, Proximal };

std::string_view to_string(IterationType type) noexcept;

struct IterationRecord {
  std::size_t k = 0;
  IterationType type = IterationType::PhiSD;
  double objective = 0.0; ///< F(x_{k+1})
  double beta_norm = 0.0; ///< at x_k
  double phi_norm = 0.0;  ///< at x_k
  std::size_t support_size = 0; ///< nonzeros of x_{k+1}
  std::size_t working_set_size = 0;
  std::size_t cg_iterations = 0;
  std::optional<CgStop> cg_stop;
  std::size_t backtracks = 0;
  double step_size = 0.0;
  double step_norm = 0.0; ///< ||x_{k+1} - x_k||
  double elapsed_seconds = 0.0;
};

enum class SolveStatus { Optimal, MaxIterations, TimeLimit, LineSearchFailure };

std::string_view to_string(SolveStatus status) noexcept;

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  Vector x;
  double objective = 0.0;
  double initial_objective = 0.0;
  double beta_norm = 0.0;
  double phi_norm = 0.0;
  double percent_zeros = 0.0;
  std::size_t iterations = 0;
  std::size_t phi_iterations = 0;
  std::size_t beta_iterations = 0;
  std::vector<IterationRecord> trace;
  double total_seconds = 0.0;
  std::string message;
};

/// Mutable state of one solve.
struct SolverState {
  Vector x;
  double objective = 0.0; ///< F(x)
  std::size_t k = 0;
  /// ||x_{j+1} - x_j|| for the most recent phi (resp. beta) iteration j.
  std::optional<double> last_phi_step_norm;
  std::optional<double> last_beta_step_norm;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

/// CG step bound max{1e-3, min{1e3, 10 * last}}; an absent norm counts as +inf.
double phi_step_bound(std::optional<double> last_phi_step_norm) noexcept;

/// Length of the beta direction max{1e-5, min{1, last}}; an absent norm counts as +inf.
double beta_step_length(std::optional<double> last_beta_step_norm) noexcept;

/// Working set {i : v_i != 0}; throws if it fails ||[v]_I|| >= fraction ||v||.
IndexSet select_working_set(ConstSpan measure, double fraction);

/// 100 * |{i : x_i == 0}| / n
double percent_zeros(ConstSpan x) noexcept;

/// One iteration on the current support: truncated Newton-CG on the
/// nonzero variables, then the projected search. Requires ||phi|| > 0.
IterationRecord phi_iteration(SolverState& state, const Objective& f, const SolverConfig& config,
                              ConstSpan grad, const OptimalityPair& pair);

/// One iteration that frees zero variables along the scaled -beta direction.
/// Requires ||beta|| > 0.
IterationRecord beta_iteration(SolverState& state, const Objective& f, const SolverConfig& config,
                               const OptimalityPair& pair);

/// Minimizes f(x) + lambda ||x||_1 from x0.
SolveReport solve(const Objective& f, const SolverConfig& config, Vector x0);

/// Same, starting from the zero vector.
SolveReport solve(const Objective& f, const SolverConfig& config);

} // namespace farsa
