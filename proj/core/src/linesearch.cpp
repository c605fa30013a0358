#include "farsa/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "farsa/errors.hpp"

namespace farsa {

namespace {

Vector step_point(ConstSpan x, double alpha, ConstSpan d) {
  Vector y(x.begin(), x.end());
  axpy(alpha, d, y);
  return y;
}

[[noreturn]] void fail(const char* which, std::size_t backtracks) {
  throw LineSearchError(std::string("line search failed: ") + which + " exceeded " +
                        std::to_string(backtracks) + " backtracks");
}

} // namespace

Vector project_orthant(ConstSpan y, ConstSpan x_ref) {
  require_same_size(y.size(), x_ref.size(), "project_orthant");
  Vector out(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x_ref[i] > 0.0) {
      out[i] = std::max(0.0, y[i]);
    } else if (x_ref[i] < 0.0) {
      out[i] = std::min(0.0, y[i]);
    }
  }
  return out;
}

std::string_view to_string(PhiOutcome outcome) noexcept {
  return outcome == PhiOutcome::Add ? "add" : "sufficient_decrease";
}

double boundary_step(ConstSpan x, ConstSpan d) {
  require_same_size(d.size(), x.size(), "boundary_step");
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0 && d[i] != 0.0 && sign(d[i]) != sign(x[i])) {
      alpha = std::min(alpha, -x[i] / d[i]);
    }
  }
  return alpha;
}

PhiSearchResult linesearch_phi(const ValueFunction& objective, ConstSpan x, double f_x, ConstSpan d,
                               const IndexSet& set, ConstSpan orthant_grad,
                               const LineSearchParams& params) {
  require_same_size(d.size(), x.size(), "linesearch_phi direction");
  require_same_size(orthant_grad.size(), set.size(), "linesearch_phi reduced gradient");
  const double slope = dot(orthant_grad, gather(d, set));

  PhiSearchResult result;
  std::size_t j = 0;
  double step = 1.0;
  Vector y = project_orthant(step_point(x, step, d), x);
  while (!same_signs(y, x)) {
    const double fy = objective(y);
    if (fy <= f_x) {
      result.next_x = std::move(y);
      result.objective = fy;
      result.outcome = PhiOutcome::Add;
      result.backtracks = j;
      result.step_size = step;
      return result;
    }
    if (++j > params.max_backtracks) fail("projected search", params.max_backtracks);
    step *= params.xi;
    y = project_orthant(step_point(x, step, d), x);
  }

  if (j != 0) {
    const double alpha_b = boundary_step(x, d);
    if (std::isfinite(alpha_b)) {
      Vector yb = step_point(x, alpha_b, d);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0.0 && d[i] != 0.0 && sign(d[i]) != sign(x[i]) && -x[i] / d[i] == alpha_b) {
          yb[i] = 0.0;
        }
      }
      yb = project_orthant(yb, x);
      const double fb = objective(yb);
      if (fb <= f_x + params.eta * alpha_b * slope) {
        result.next_x = std::move(yb);
        result.objective = fb;
        result.outcome = PhiOutcome::Add;
        result.backtracks = j;
        result.step_size = alpha_b;
        return result;
      }
    }
  }

  for (;;) {
    y = step_point(x, step, d);
    const double fy = objective(y);
    if (fy <= f_x + params.eta * step * slope) {
      result.next_x = std::move(y);
      result.objective = fy;
      result.outcome = PhiOutcome::SufficientDecrease;
      result.backtracks = j;
      result.step_size = step;
      return result;
    }
    if (++j > params.max_backtracks) fail("sufficient-decrease search", params.max_backtracks);
    step *= params.xi;
  }
}

BetaSearchResult linesearch_beta(const ValueFunction& objective, ConstSpan x, double f_x,
                                 ConstSpan d, const LineSearchParams& params) {
  require_same_size(d.size(), x.size(), "linesearch_beta direction");
  const double dd = dot(d, d);
  BetaSearchResult result;
  double step = 1.0;
  for (std::size_t j = 0;; ++j) {
    Vector y = step_point(x, step, d);
    const double fy = objective(y);
    if (fy <= f_x - params.eta * step * dd) {
      result.next_x = std::move(y);
      result.objective = fy;
      result.backtracks = j;
      result.step_size = step;
      return result;
    }
    if (j + 1 > params.max_backtracks) fail("beta search", params.max_backtracks);
    step *= params.xi;
  }
}

} // namespace farsa
