#include "farsa/objective.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "farsa/errors.hpp"

namespace farsa {

Vector Objective::reduced_hessian_apply(ConstSpan x, const IndexSet& set, ConstSpan v) const {
  return reduced_hessian(x, set)(v);
}

double regularized_value(const Objective& f, ConstSpan x, double lambda) {
  return f.value(x) + lambda * norm1(x);
}

double log1p_exp_neg(double t) noexcept {
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

double sigmoid(double t) noexcept {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

LogisticObjective::LogisticObjective(SparseMatrix design, std::vector<double> labels,
                                     double hessian_shift)
    : Objective(hessian_shift), design_(std::move(design)), labels_(std::move(labels)) {
  require_same_size(labels_.size(), design_.rows(), "logistic labels");
  if (labels_.empty()) throw std::invalid_argument("logistic objective needs at least one sample");
  inv_samples_ = 1.0 / static_cast<double>(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1.0 && labels_[i] != -1.0) {
      throw std::invalid_argument("label " + std::to_string(i) + " is not +1 or -1");
    }
  }
}

Vector LogisticObjective::margins(ConstSpan x) const {
  require_same_size(x.size(), dimension(), "logistic x");
  Vector t = spmv(design_, x);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] *= labels_[i];
  return t;
}

double LogisticObjective::value(ConstSpan x) const {
  const Vector t = margins(x);
  double sum = 0.0;
  for (double ti : t) sum += log1p_exp_neg(ti);
  return inv_samples_ * sum;
}

Vector LogisticObjective::gradient(ConstSpan x) const {
  Vector t = margins(x);
  // grad = -(1/m) A^T (y .* sigma(-t))
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = -inv_samples_ * labels_[i] * sigmoid(-t[i]);
  return spmv_transpose(design_, t);
}

namespace {

struct LogisticHessianData {
  // Rows of the design restricted to the reduced columns, renumbered 0..|I|-1.
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  Vector curvature; // sigma(t_i) * (1 - sigma(t_i)) / m
  std::size_t reduced_size;
  double shift;
};

} // namespace

HessianOperator LogisticObjective::reduced_hessian(ConstSpan x, const IndexSet& set) const {
  if (set.dimension() != dimension()) {
    throw DimensionError("reduced_hessian: index set dimension " + std::to_string(set.dimension()) +
                         " does not match objective dimension " + std::to_string(dimension()));
  }
  auto data = std::make_shared<LogisticHessianData>();
  data->curvature = margins(x);
  for (double& t : data->curvature) {
    const double s = sigmoid(t);
    t = inv_samples_ * s * (1.0 - s);
  }
  std::vector<std::ptrdiff_t> slot(dimension(), -1);
  for (std::size_t k = 0; k < set.size(); ++k) slot[set[k]] = static_cast<std::ptrdiff_t>(k);
  const auto offsets = design_.row_offsets();
  const auto cols = design_.col_indices();
  const auto vals = design_.values();
  data->offsets.reserve(design_.rows() + 1);
  data->offsets.push_back(0);
  for (std::size_t r = 0; r < design_.rows(); ++r) {
    for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
      if (slot[cols[k]] < 0) continue;
      data->cols.push_back(static_cast<std::size_t>(slot[cols[k]]));
      data->vals.push_back(vals[k]);
    }
    data->offsets.push_back(data->cols.size());
  }
  data->reduced_size = set.size();
  data->shift = hessian_shift();

  return [data](ConstSpan v) -> Vector {
    require_same_size(v.size(), data->reduced_size, "reduced Hessian input");
    const auto& offsets = data->offsets;
    const auto& cols = data->cols;
    const auto& vals = data->vals;
    Vector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = data->shift * v[k];
    for (std::size_t r = 0; r + 1 < offsets.size(); ++r) {
      double av = 0.0;
      for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) av += vals[k] * v[cols[k]];
      const double w = data->curvature[r] * av;
      if (w == 0.0) continue;
      for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) out[cols[k]] += vals[k] * w;
    }
    return out;
  };
}

QuadraticObjective::QuadraticObjective(Vector diag, Vector linear, double hessian_shift)
    : Objective(hessian_shift), diag_(std::move(diag)), linear_(std::move(linear)) {
  require_same_size(linear_.size(), diag_.size(), "quadratic linear term");
  for (double d : diag_) {
    if (!(d > 0.0)) throw std::invalid_argument("quadratic diagonal entries must be positive");
  }
}

double QuadraticObjective::value(ConstSpan x) const {
  require_same_size(x.size(), dimension(), "quadratic x");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += 0.5 * diag_[i] * x[i] * x[i] + linear_[i] * x[i];
  return s;
}

Vector QuadraticObjective::gradient(ConstSpan x) const {
  require_same_size(x.size(), dimension(), "quadratic x");
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = diag_[i] * x[i] + linear_[i];
  return g;
}

HessianOperator QuadraticObjective::reduced_hessian(ConstSpan x, const IndexSet& set) const {
  require_same_size(x.size(), dimension(), "quadratic x");
  Vector d = gather(diag_, set);
  for (double& e : d) e += hessian_shift();
  return [d = std::move(d)](ConstSpan v) -> Vector {
    require_same_size(v.size(), d.size(), "reduced Hessian input");
    Vector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = d[k] * v[k];
    return out;
  };
}

} // namespace farsa
