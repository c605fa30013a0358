#include "farsa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "farsa/errors.hpp"

namespace farsa {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t count_nonzeros(ConstSpan x) {
  return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; }));
}

double distance(ConstSpan a, ConstSpan b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

LineSearchParams search_params(const SolverConfig& config) {
  return {config.eta, config.xi, config.max_backtracks};
}

ValueFunction composite(const Objective& f, double lambda) {
  return [&f, lambda](ConstSpan x) { return regularized_value(f, x, lambda); };
}

} // namespace

void SolverConfig::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(eta > 0.0 && eta <= 0.5)) throw std::invalid_argument("eta must lie in (0, 1/2]");
  if (!(xi > 0.0 && xi < 1.0)) throw std::invalid_argument("xi must lie in (0, 1)");
  if (!(eta_phi > 0.0 && eta_phi <= 1.0)) throw std::invalid_argument("eta_phi must lie in (0, 1]");
  if (!(eta_beta > 0.0 && eta_beta <= 1.0)) {
    throw std::invalid_argument("eta_beta must lie in (0, 1]");
  }
  if (!(time_limit.count() > 0.0)) throw std::invalid_argument("time limit must be positive");
}

std::string_view to_string(IterationType type) noexcept {
  switch (type) {
  case IterationType::PhiSD: return "phi_sd";
  case IterationType::PhiAdd: return "phi_add";
  case IterationType::Beta: return "beta";
  case IterationType::Proximal: return "proximal";
  }
  return "unknown";
}

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
  case SolveStatus::Optimal: return "optimal";
  case SolveStatus::MaxIterations: return "max_iterations";
  case SolveStatus::TimeLimit: return "time_limit";
  case SolveStatus::LineSearchFailure: return "line_search_failure";
  }
  return "unknown";
}

double phi_step_bound(std::optional<double> last_phi_step_norm) noexcept {
  const double last = last_phi_step_norm.value_or(std::numeric_limits<double>::infinity());
  return std::max(1e-3, std::min(1e3, 10.0 * last));
}

double beta_step_length(std::optional<double> last_beta_step_norm) noexcept {
  const double last = last_beta_step_norm.value_or(std::numeric_limits<double>::infinity());
  return std::max(1e-5, std::min(1.0, last));
}

IndexSet select_working_set(ConstSpan measure, double fraction) {
  IndexSet set = IndexSet::nonzeros(measure);
  // The full nonzero set captures the whole norm; the check guards future
  // partial selections.
  if (norm2(gather(measure, set)) < fraction * norm2(measure)) {
    throw std::logic_error("working set misses the required fraction of the optimality measure");
  }
  return set;
}

double percent_zeros(ConstSpan x) noexcept {
  if (x.empty()) return 0.0;
  const auto zeros = x.size() - count_nonzeros(x);
  return 100.0 * static_cast<double>(zeros) / static_cast<double>(x.size());
}

IterationRecord phi_iteration(SolverState& state, const Objective& f, const SolverConfig& config,
                              ConstSpan grad, const OptimalityPair& pair) {
  const std::size_t n = state.x.size();
  const IndexSet set = select_working_set(pair.phi, config.eta_phi);
  if (set.empty()) throw std::logic_error("phi iteration requires a nonzero phi");

  const Vector g = gather(orthant_gradient(state.x, grad, config.lambda), set);
  const HessianOperator hessian = f.reduced_hessian(state.x, set);

  CgLimits limits;
  limits.step_bound = phi_step_bound(state.last_phi_step_norm);
  const CgOutcome cg = cg_solve(hessian, g, gather(state.x, set), limits);
  const Vector d = scatter(cg.direction, set, n);

  const PhiSearchResult ls = linesearch_phi(composite(f, config.lambda), state.x, state.objective,
                                            d, set, g, search_params(config));

  IterationRecord rec;
  rec.k = state.k;
  rec.type = ls.outcome == PhiOutcome::Add ? IterationType::PhiAdd : IterationType::PhiSD;
  rec.beta_norm = pair.beta_norm;
  rec.phi_norm = pair.phi_norm;
  rec.working_set_size = set.size();
  rec.cg_iterations = cg.iterations;
  rec.cg_stop = cg.stop_reason;
  rec.backtracks = ls.backtracks;
  rec.step_size = ls.step_size;
  rec.step_norm = distance(ls.next_x, state.x);

  state.x = ls.next_x;
  state.objective = ls.objective;
  state.last_phi_step_norm = rec.step_norm;
  ++state.k;

  rec.objective = state.objective;
  rec.support_size = count_nonzeros(state.x);
  rec.elapsed_seconds = seconds_since(state.start);
  return rec;
}

IterationRecord beta_iteration(SolverState& state, const Objective& f, const SolverConfig& config,
                               const OptimalityPair& pair) {
  const std::size_t n = state.x.size();
  const IndexSet set = select_working_set(pair.beta, config.eta_beta);
  if (set.empty()) throw std::logic_error("beta iteration requires a nonzero beta");

  Vector d_reduced = gather(pair.beta, set);
  const double scale = -beta_step_length(state.last_beta_step_norm) / norm2(d_reduced);
  for (double& v : d_reduced) v *= scale;
  const Vector d = scatter(d_reduced, set, n);

  const BetaSearchResult ls =
      linesearch_beta(composite(f, config.lambda), state.x, state.objective, d, search_params(config));

  IterationRecord rec;
  rec.k = state.k;
  rec.type = IterationType::Beta;
  rec.beta_norm = pair.beta_norm;
  rec.phi_norm = pair.phi_norm;
  rec.working_set_size = set.size();
  rec.backtracks = ls.backtracks;
  rec.step_size = ls.step_size;
  rec.step_norm = distance(ls.next_x, state.x);

  state.x = ls.next_x;
  state.objective = ls.objective;
  state.last_beta_step_norm = rec.step_norm;
  ++state.k;

  rec.objective = state.objective;
  rec.support_size = count_nonzeros(state.x);
  rec.elapsed_seconds = seconds_since(state.start);
  return rec;
}

SolveReport solve(const Objective& f, const SolverConfig& config, Vector x0) {
  config.validate();
  require_same_size(x0.size(), f.dimension(), "initial point");
  if (!all_finite(x0)) throw std::invalid_argument("initial point must be finite");

  SolverState state;
  state.x = std::move(x0);
  state.objective = regularized_value(f, state.x, config.lambda);
  if (!std::isfinite(state.objective)) throw NumericalError("objective is not finite at x0");

  SolveReport report;
  report.initial_objective = state.objective;
  OptimalityPair pair;
  for (;;) {
    const Vector grad = f.gradient(state.x);
    pair = OptimalityPair::evaluate(state.x, grad, config.lambda);
    if (is_optimal(pair, config.epsilon)) {
      report.status = SolveStatus::Optimal;
      break;
    }
    if (state.k >= config.max_iterations) {
      report.status = SolveStatus::MaxIterations;
      break;
    }
    if (seconds_since(state.start) >= config.time_limit.count()) {
      report.status = SolveStatus::TimeLimit;
      break;
    }

    try {
      if (pair.beta_norm <= config.gamma * pair.phi_norm) {
        report.trace.push_back(phi_iteration(state, f, config, grad, pair));
        ++report.phi_iterations;
      } else {
        report.trace.push_back(beta_iteration(state, f, config, pair));
        ++report.beta_iterations;
      }
    } catch (const LineSearchError& e) {
      report.status = SolveStatus::LineSearchFailure;
      report.message = "iteration " + std::to_string(state.k) + ": " + e.what();
      break;
    }
    if (!std::isfinite(state.objective)) {
      throw NumericalError("objective is not finite after iteration " + std::to_string(state.k - 1));
    }
  }

  report.x = std::move(state.x);
  report.objective = state.objective;
  report.beta_norm = pair.beta_norm;
  report.phi_norm = pair.phi_norm;
  report.percent_zeros = percent_zeros(report.x);
  report.iterations = state.k;
  report.total_seconds = seconds_since(state.start);
  return report;
}

SolveReport solve(const Objective& f, const SolverConfig& config) {
  return solve(f, config, Vector(f.dimension(), 0.0));
}

} // namespace farsa
