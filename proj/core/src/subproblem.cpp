#include "farsa/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "farsa/errors.hpp"

namespace farsa {

ModelEval evaluate_model(ConstSpan g, ConstSpan d, const HessianOperator& hessian) {
  require_same_size(d.size(), g.size(), "model direction");
  const Vector hd = hessian(d);
  require_same_size(hd.size(), d.size(), "Hessian product");
  ModelEval m;
  m.g_dot_d = dot(g, d);
  m.d_H_d = dot(d, hd);
  m.value = m.g_dot_d + 0.5 * m.d_H_d;
  return m;
}

double model_decrease(ConstSpan g, ConstSpan d, const HessianOperator& hessian) {
  return evaluate_model(g, d, hessian).value;
}

ReferenceDirection reference_direction(ConstSpan g, const HessianOperator& hessian) {
  const Vector hg = hessian(g);
  require_same_size(hg.size(), g.size(), "Hessian product");
  const double curvature = dot(g, hg);
  if (!(curvature > 0.0)) {
    throw NumericalError("oracle not positive definite: g^T H g = " + std::to_string(curvature));
  }
  ReferenceDirection ref;
  ref.alpha = dot(g, g) / curvature;
  ref.direction.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ref.direction[i] = -ref.alpha * g[i];
  return ref;
}

bool accept_direction(ConstSpan g, ConstSpan dbar, ConstSpan d_ref, const ModelEval& model) {
  return dot(g, dbar) <= dot(g, d_ref) && model.value <= 0.0;
}

std::string_view to_string(CgStop stop) noexcept {
  switch (stop) {
  case CgStop::ResidualReduced: return "residual_reduced";
  case CgStop::OrthantViolations: return "orthant_violations";
  case CgStop::StepTooLarge: return "step_too_large";
  case CgStop::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

std::size_t count_orthant_violations(ConstSpan x, ConstSpan d) {
  require_same_size(d.size(), x.size(), "orthant violation count");
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int s = sign(x[i] + d[i]);
    if (s != 0 && s != sign(x[i])) ++count;
  }
  return count;
}

CgOutcome cg_solve(const HessianOperator& hessian, ConstSpan g, ConstSpan x_reduced,
                   const CgLimits& limits) {
  const std::size_t n = g.size();
  require_same_size(x_reduced.size(), n, "cg_solve x");

  CgOutcome out;
  out.direction.assign(n, 0.0);
  Vector r(g.begin(), g.end()); // r = H d + g with d = 0
  Vector p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = -r[i];

  const double r0 = norm2(r);
  if (r0 == 0.0) throw std::invalid_argument("cg_solve requires a nonzero gradient");
  const double residual_target = std::max(limits.residual_fraction * r0, limits.residual_floor);
  const double violation_target =
      std::max(limits.violation_floor, limits.violation_fraction * static_cast<double>(n));
  const std::size_t cap = limits.max_iterations == 0 ? n : limits.max_iterations;

  double rr = dot(r, r);
  out.residual_norm = r0;
  for (std::size_t j = 1; j <= cap; ++j) {
    const Vector hp = hessian(p);
    require_same_size(hp.size(), n, "Hessian product");
    const double php = dot(p, hp);
    if (!(php > 0.0)) {
      throw NumericalError("CG iteration " + std::to_string(j) +
                           ": nonpositive curvature p^T H p = " + std::to_string(php));
    }
    const double step = rr / php;
    axpy(step, p, out.direction);
    axpy(step, hp, r);
    const double rr_next = dot(r, r);
    out.iterations = j;
    out.residual_norm = std::sqrt(rr_next);
    if (!std::isfinite(out.residual_norm)) {
      throw NumericalError("CG iteration " + std::to_string(j) + ": non-finite residual");
    }

    if (out.residual_norm <= residual_target) {
      out.stop_reason = CgStop::ResidualReduced;
      out.orthant_violations = count_orthant_violations(x_reduced, out.direction);
      return out;
    }
    out.orthant_violations = count_orthant_violations(x_reduced, out.direction);
    if (static_cast<double>(out.orthant_violations) >= violation_target) {
      out.stop_reason = CgStop::OrthantViolations;
      return out;
    }
    if (norm2(out.direction) >= limits.step_bound) {
      out.stop_reason = CgStop::StepTooLarge;
      return out;
    }

    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = -r[i] + beta * p[i];
  }
  out.stop_reason = CgStop::MaxIterations;
  return out;
}

} // namespace farsa
