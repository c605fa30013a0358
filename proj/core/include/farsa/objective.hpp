#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "farsa/linalg.hpp"

namespace farsa {

/// Linear map on a reduced space, v -> H v.
using HessianOperator = std::function<Vector(ConstSpan)>;

/// Smooth convex part f of F(x) = f(x) + lambda * ||x||_1.
///
/// Implementations are immutable after construction, so every method is safe
/// to call concurrently.
class Objective {
public:
  static constexpr double kDefaultHessianShift = 1e-8;

  explicit Objective(double hessian_shift = kDefaultHessianShift) : hessian_shift_(hessian_shift) {}
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(ConstSpan x) const = 0;
  virtual Vector gradient(ConstSpan x) const = 0;

  /// Operator applying [Hess f(x)]_{I,I} + shift * Id on vectors of length |I|.
  /// Quantities that depend only on x are computed once, here.
  virtual HessianOperator reduced_hessian(ConstSpan x, const IndexSet& set) const = 0;

  Vector reduced_hessian_apply(ConstSpan x, const IndexSet& set, ConstSpan v) const;

  /// Diagonal perturbation added to every reduced Hessian.
  double hessian_shift() const noexcept { return hessian_shift_; }

private:
  double hessian_shift_;
};

/// f(x) + lambda * ||x||_1
double regularized_value(const Objective& f, ConstSpan x, double lambda);

/// Logistic loss averaged over the m samples:
///   f(x) = (1/m) sum_i log(1 + exp(-y_i a_i^T x)).
/// The operator from reduced_hessian refers to the design matrix and must not
/// outlive the objective.
class LogisticObjective final : public Objective {
public:
  /// `labels` must have one entry per row of `design`, each exactly +1 or -1.
  LogisticObjective(SparseMatrix design, std::vector<double> labels,
                    double hessian_shift = kDefaultHessianShift);

  std::size_t dimension() const override { return design_.cols(); }
  std::size_t samples() const noexcept { return design_.rows(); }

  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  HessianOperator reduced_hessian(ConstSpan x, const IndexSet& set) const override;

  const SparseMatrix& design() const noexcept { return design_; }
  std::span<const double> labels() const noexcept { return labels_; }

private:
  Vector margins(ConstSpan x) const;

  SparseMatrix design_;
  std::vector<double> labels_;
  double inv_samples_;
};

/// f(x) = 0.5 * x^T diag(d) x + c^T x with every d_i > 0.
class QuadraticObjective final : public Objective {
public:
  QuadraticObjective(Vector diag, Vector linear, double hessian_shift = kDefaultHessianShift);

  std::size_t dimension() const override { return diag_.size(); }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  HessianOperator reduced_hessian(ConstSpan x, const IndexSet& set) const override;

  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> linear() const noexcept { return linear_; }

private:
  Vector diag_;
  Vector linear_;
};

/// log(1 + exp(-t)) without overflow for large |t|.
double log1p_exp_neg(double t) noexcept;

/// 1 / (1 + exp(-t))
double sigmoid(double t) noexcept;

} // namespace farsa
