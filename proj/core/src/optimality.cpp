#include "farsa/optimality.hpp"

#include <algorithm>

namespace farsa {

IndexPartition partition_indices(ConstSpan x) {
  std::vector<std::size_t> zero, positive, negative;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      positive.push_back(i);
    } else if (x[i] < 0.0) {
      negative.push_back(i);
    } else {
      zero.push_back(i);
    }
  }
  const std::size_t n = x.size();
  return {IndexSet(std::move(zero), n), IndexSet(std::move(positive), n),
          IndexSet(std::move(negative), n)};
}

Vector compute_beta(ConstSpan x, ConstSpan grad, double lambda) {
  require_same_size(grad.size(), x.size(), "compute_beta gradient");
  Vector beta(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) continue;
    if (grad[i] + lambda < 0.0) {
      beta[i] = grad[i] + lambda;
    } else if (grad[i] - lambda > 0.0) {
      beta[i] = grad[i] - lambda;
    }
  }
  return beta;
}

Vector compute_phi(ConstSpan x, ConstSpan grad, double lambda) {
  require_same_size(grad.size(), x.size(), "compute_phi gradient");
  Vector phi(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = grad[i];
    if (x[i] == 0.0) continue;
    if (x[i] > 0.0 && g + lambda > 0.0) {
      phi[i] = std::min(g + lambda, std::max(x[i], g - lambda));
    } else if (x[i] < 0.0 && g - lambda < 0.0) {
      phi[i] = std::max(g - lambda, std::min(x[i], g + lambda));
    } else {
      phi[i] = g + lambda * sign(x[i]);
    }
  }
  return phi;
}

OptimalityPair OptimalityPair::evaluate(ConstSpan x, ConstSpan grad, double lambda) {
  OptimalityPair pair;
  pair.beta = compute_beta(x, grad, lambda);
  pair.phi = compute_phi(x, grad, lambda);
  pair.beta_norm = norm2(pair.beta);
  pair.phi_norm = norm2(pair.phi);
  return pair;
}

bool is_optimal(const OptimalityPair& pair, double epsilon) noexcept {
  return std::max(pair.beta_norm, pair.phi_norm) <= epsilon;
}

Vector ista_step(ConstSpan x, ConstSpan grad, double lambda) {
  require_same_size(grad.size(), x.size(), "ista_step gradient");
  Vector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] - grad[i];
    if (u < -lambda) {
      s[i] = -grad[i] + lambda;
    } else if (u > lambda) {
      s[i] = -grad[i] - lambda;
    } else {
      s[i] = -x[i];
    }
  }
  return s;
}

Vector orthant_gradient(ConstSpan x, ConstSpan grad, double lambda) {
  require_same_size(grad.size(), x.size(), "orthant_gradient");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = grad[i] + lambda * sign(x[i]);
  return out;
}

} // namespace farsa
