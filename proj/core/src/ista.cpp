#include "farsa/ista.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "farsa/errors.hpp"
#include "farsa/optimality.hpp"

namespace farsa {

void IstaConfig::validate() const {
  if (step_size && !(*step_size > 0.0)) throw std::invalid_argument("ISTA step must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(initial_step > 0.0)) throw std::invalid_argument("initial step must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw std::invalid_argument("backtrack factor must lie in (0, 1)");
  }
  if (!(growth_factor >= 1.0)) throw std::invalid_argument("growth factor must be >= 1");
  if (!(time_limit.count() > 0.0)) throw std::invalid_argument("time limit must be positive");
}

Vector proximal_gradient_point(ConstSpan x, ConstSpan grad, double step, double lambda) {
  require_same_size(grad.size(), x.size(), "proximal gradient");
  const double threshold = step * lambda;
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] - step * grad[i];
    if (u > threshold) {
      out[i] = u - threshold;
    } else if (u < -threshold) {
      out[i] = u + threshold;
    } else {
      out[i] = 0.0;
    }
  }
  return out;
}

SolveReport ista_solve(const Objective& f, double lambda, const IstaConfig& config, Vector x0) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  config.validate();
  require_same_size(x0.size(), f.dimension(), "initial point");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  SolveReport report;
  Vector x = std::move(x0);
  double fx = f.value(x);
  report.initial_objective = fx + lambda * norm1(x);
  double step = config.step_size.value_or(config.initial_step);
  std::size_t k = 0;
  OptimalityPair pair;

  for (;; ++k) {
    const Vector grad = f.gradient(x);
    pair = OptimalityPair::evaluate(x, grad, lambda);
    if (is_optimal(pair, config.epsilon)) {
      report.status = SolveStatus::Optimal;
      break;
    }
    if (k >= config.max_iterations) {
      report.status = SolveStatus::MaxIterations;
      break;
    }
    if (elapsed() >= config.time_limit.count()) {
      report.status = SolveStatus::TimeLimit;
      break;
    }

    Vector next;
    double f_next = 0.0;
    std::size_t backtracks = 0;
    for (;;) {
      next = proximal_gradient_point(x, grad, step, lambda);
      f_next = f.value(next);
      if (config.step_size) break;
      // f(x+) <= f(x) + g^T (x+ - x) + ||x+ - x||^2 / (2t), up to rounding in f
      double lin = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = next[i] - x[i];
        lin += grad[i] * diff;
        sq += diff * diff;
      }
      const double roundoff = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(fx));
      if (f_next <= fx + lin + sq / (2.0 * step) + roundoff) break;
      if (++backtracks > config.max_backtracks) {
        report.status = SolveStatus::LineSearchFailure;
        report.message = "ISTA backtracking failed at iteration " + std::to_string(k);
        break;
      }
      step *= config.backtrack_factor;
    }
    if (report.status == SolveStatus::LineSearchFailure) break;
    if (!std::isfinite(f_next)) {
      throw NumericalError("objective is not finite after ISTA iteration " + std::to_string(k));
    }

    IterationRecord rec;
    rec.k = k;
    rec.type = IterationType::Proximal;
    rec.beta_norm = pair.beta_norm;
    rec.phi_norm = pair.phi_norm;
    rec.backtracks = backtracks;
    rec.step_size = step;
    double sq = 0.0;
    std::size_t support = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sq += (next[i] - x[i]) * (next[i] - x[i]);
      support += next[i] != 0.0;
    }
    rec.step_norm = std::sqrt(sq);
    rec.support_size = support;

    x = std::move(next);
    fx = f_next;
    rec.objective = fx + lambda * norm1(x);
    rec.elapsed_seconds = elapsed();
    if (config.keep_trace) report.trace.push_back(rec);

    if (!config.step_size) step *= config.growth_factor;
  }

  report.objective = fx + lambda * norm1(x);
  report.beta_norm = pair.beta_norm;
  report.phi_norm = pair.phi_norm;
  report.percent_zeros = percent_zeros(x);
  report.iterations = k;
  report.x = std::move(x);
  report.total_seconds = elapsed();
  return report;
}

} // namespace farsa
