#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "farsa/errors.hpp"
#include "farsa/libsvm.hpp"
#include "farsa/solver.hpp"
#include "support/problems.hpp"

namespace farsa {
namespace {

using testing::Rng;

SolverConfig config_with(double lambda, double epsilon = 1e-6) {
  SolverConfig c;
  c.lambda = lambda;
  c.epsilon = epsilon;
  return c;
}

// Reports the negated gradient, so every search direction points uphill.
class UphillObjective final : public Objective {
public:
  explicit UphillObjective(QuadraticObjective inner) : inner_(std::move(inner)) {}
  std::size_t dimension() const override { return inner_.dimension(); }
  double value(ConstSpan x) const override { return inner_.value(x); }
  Vector gradient(ConstSpan x) const override {
    Vector g = inner_.gradient(x);
    for (double& v : g) v = -v;
    return g;
  }
  HessianOperator reduced_hessian(ConstSpan x, const IndexSet& set) const override {
    return inner_.reduced_hessian(x, set);
  }

private:
  QuadraticObjective inner_;
};

void expect_monotone(const SolveReport& r) {
  double previous = r.initial_objective;
  for (const auto& rec : r.trace) {
    EXPECT_LE(rec.objective, previous) << "iteration " << rec.k;
    previous = rec.objective;
  }
}

TEST(Solve, SoftThresholdOfScalarQuadratic) {
  const QuadraticObjective f(Vector{1.0}, Vector{-3.0});
  const auto r = solve(f, config_with(1.0, 1e-12));
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_LE(r.iterations, 5u);
  EXPECT_NEAR(r.x[0], 2.0, 1e-7);
  EXPECT_LE(std::max(r.beta_norm, r.phi_norm), 1e-12);
  expect_monotone(r);
}

TEST(Solve, SeparableQuadraticMatchesClosedForm) {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 30;
    const Vector d = testing::random_vector(rng, n, 0.5, 4.0);
    const Vector c = testing::random_vector(rng, n, -3.0, 3.0);
    const double lambda = 1.0;
    const QuadraticObjective f(d, c, 0.0);
    const auto r = solve(f, config_with(lambda, 1e-7));
    ASSERT_EQ(r.status, SolveStatus::Optimal);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = std::abs(c[i]) > lambda ? -(c[i] - lambda * sign(c[i])) / d[i] : 0.0;
      EXPECT_NEAR(r.x[i], want, 2e-7);
      if (want == 0.0) EXPECT_EQ(r.x[i], 0.0);
    }
    expect_monotone(r);
  }
}

TEST(Solve, OptimalStartReturnsEmptyTrace) {
  const QuadraticObjective f(Vector{1.0, 1.0}, Vector{-3.0, 0.5});
  const auto r = solve(f, config_with(1.0), Vector{2.0, 0.0});
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.x, (Vector{2.0, 0.0}));
  EXPECT_EQ(r.percent_zeros, 50.0);
}

TEST(Solve, IterationBudget) {
  Rng rng(62);
  auto ds = testing::random_logistic_dataset(rng, 80, 40, 0.3);
  const LogisticObjective f(ds.matrix, ds.labels);
  auto c = config_with(1.0 / 80.0, 1e-12);
  c.max_iterations = 2;
  const auto r = solve(f, c);
  EXPECT_EQ(r.status, SolveStatus::MaxIterations);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST(Solve, TimeBudget) {
  Rng rng(63);
  auto ds = testing::random_logistic_dataset(rng, 80, 40, 0.3);
  const LogisticObjective f(ds.matrix, ds.labels);
  auto c = config_with(1.0 / 80.0, 1e-12);
  c.time_limit = std::chrono::duration<double>(1e-12);
  const auto r = solve(f, c);
  EXPECT_EQ(r.status, SolveStatus::TimeLimit);
  EXPECT_TRUE(r.trace.empty());
}

TEST(Solve, BrokenOracleReportsLineSearchFailure) {
  const UphillObjective f(QuadraticObjective(Vector{1.0}, Vector{-3.0}));
  const auto r = solve(f, config_with(1.0));
  EXPECT_EQ(r.status, SolveStatus::LineSearchFailure);
  EXPECT_NE(r.message.find("line search failed"), std::string::npos) << r.message;
  EXPECT_EQ(r.x, (Vector{0.0}));
}

TEST(Solve, RejectsInvalidInput) {
  const QuadraticObjective f(Vector{1.0}, Vector{-3.0});
  EXPECT_THROW((void)solve(f, config_with(0.0)), std::invalid_argument);
  try {
    (void)solve(f, config_with(1.0, 0.0));
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "epsilon must be positive");
  }
  auto c = config_with(1.0);
  c.eta = 0.75;
  EXPECT_THROW((void)solve(f, c), std::invalid_argument);
  c = config_with(1.0);
  c.xi = 1.0;
  EXPECT_THROW((void)solve(f, c), std::invalid_argument);
  EXPECT_THROW((void)solve(f, config_with(1.0), Vector{1.0, 2.0}), DimensionError);
  EXPECT_THROW((void)solve(f, config_with(1.0), Vector{std::nan("")}), std::invalid_argument);
}

TEST(Solve, RandomLogisticTracesDescendAndTerminate) {
  Rng rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    auto ds = testing::random_logistic_dataset(rng, 60 + 10 * static_cast<std::size_t>(trial), 40, 0.3);
    const LogisticObjective f(ds.matrix, ds.labels);
    const auto r = solve(f, config_with(1.0 / static_cast<double>(ds.samples())));
    EXPECT_EQ(r.status, SolveStatus::Optimal) << r.message;
    expect_monotone(r);
    EXPECT_EQ(r.phi_iterations + r.beta_iterations, r.iterations);
    for (const auto& rec : r.trace) {
      if (rec.type == IterationType::Beta) {
        EXPECT_FALSE(rec.cg_stop.has_value());
      } else {
        EXPECT_TRUE(rec.cg_stop.has_value());
        EXPECT_GE(rec.cg_iterations, 1u);
      }
    }
  }
}

TEST(StepScaling, PhiBoundClamps) {
  EXPECT_EQ(phi_step_bound(1e-9), 1e-3);
  EXPECT_EQ(phi_step_bound(1e9), 1e3);
  EXPECT_EQ(phi_step_bound(std::nullopt), 1e3);
  EXPECT_DOUBLE_EQ(phi_step_bound(0.5), 5.0);
}

TEST(StepScaling, BetaLengthClamps) {
  EXPECT_EQ(beta_step_length(std::nullopt), 1.0);
  EXPECT_EQ(beta_step_length(1e-9), 1e-5);
  EXPECT_EQ(beta_step_length(7.0), 1.0);
  EXPECT_EQ(beta_step_length(0.25), 0.25);
}

TEST(PhiIteration, NewtonStepOnQuadraticInOptimalOrthant) {
  // Identical curvature makes CG exact after one iteration.
  const QuadraticObjective f(Vector{2.0, 2.0, 2.0}, Vector{-5.0, 4.0, -3.0}, 0.0);
  const auto c = config_with(1.0);
  SolverState state;
  state.x = {0.5, -0.5, 0.5};
  state.objective = regularized_value(f, state.x, c.lambda);
  const Vector grad = f.gradient(state.x);
  const auto pair = OptimalityPair::evaluate(state.x, grad, c.lambda);
  const auto rec = phi_iteration(state, f, c, grad, pair);
  EXPECT_EQ(rec.type, IterationType::PhiSD);
  EXPECT_EQ(rec.step_size, 1.0);
  EXPECT_EQ(rec.cg_stop, CgStop::ResidualReduced);
  EXPECT_NEAR(state.x[0], 2.0, 1e-15);
  EXPECT_NEAR(state.x[1], -1.5, 1e-15);
  EXPECT_NEAR(state.x[2], 1.0, 1e-15);
  EXPECT_EQ(state.k, 1u);
  EXPECT_DOUBLE_EQ(*state.last_phi_step_norm, rec.step_norm);
}

TEST(BetaIteration, FreesOnlyViolatingZeros) {
  Rng rng(65);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 12;
    const QuadraticObjective f(testing::random_vector(rng, n, 0.5, 3.0), testing::random_vector(rng, n, -3.0, 3.0));
    const auto c = config_with(1.0);
    SolverState state;
    state.x.assign(n, 0.0);
    state.objective = 0.0;
    const auto pair = OptimalityPair::evaluate(state.x, f.gradient(state.x), c.lambda);
    if (pair.beta_norm == 0.0) continue;
    const auto rec = beta_iteration(state, f, c, pair);
    EXPECT_EQ(rec.type, IterationType::Beta);
    for (std::size_t i = 0; i < n; ++i) {
      if (pair.beta[i] == 0.0) EXPECT_EQ(state.x[i], 0.0);
      else EXPECT_EQ(sign(state.x[i]), -sign(pair.beta[i]));
    }
    // First beta iteration: unit-length direction scaled by the accepted step.
    EXPECT_NEAR(rec.step_norm, rec.step_size, 1e-15);
    EXPECT_LT(state.objective, 0.0);
  }
}

TEST(BetaIteration, DirectionLengthFollowsPreviousStep) {
  const QuadraticObjective f(Vector{1.0, 1.0}, Vector{-3.0, 2.0}, 0.0);
  const auto c = config_with(1.0);
  SolverState state;
  state.x = {0.0, 0.0};
  state.last_beta_step_norm = 0.01;
  const auto pair = OptimalityPair::evaluate(state.x, f.gradient(state.x), c.lambda);
  const auto rec = beta_iteration(state, f, c, pair);
  EXPECT_EQ(rec.step_size, 1.0);
  EXPECT_NEAR(rec.step_norm, 0.01, 1e-16);
}

TEST(WorkingSet, IsSupportOfMeasure) {
  EXPECT_EQ(select_working_set(Vector{0.0, 1.0, -2.0, 0.0}, 1.0), IndexSet({1, 2}, 4));
  EXPECT_DOUBLE_EQ(percent_zeros(Vector{0.0, 1.0, 0.0, 0.0}), 75.0);
}

TEST(Solve, HeartDatasetSparsity) {
  const std::filesystem::path path = std::filesystem::path(FARSA_DATA_DIR) / "heart_scale";
  if (!std::filesystem::exists(path)) GTEST_SKIP() << "heart_scale not present";
  const Dataset ds = load_libsvm(path);
  const LogisticObjective f(ds.matrix, ds.labels);
  const auto r = solve(f, config_with(1.0 / static_cast<double>(ds.samples())));
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(std::count(r.x.begin(), r.x.end(), 0.0), 1);
  EXPECT_NEAR(r.percent_zeros, 7.7, 0.05);
  expect_monotone(r);
}

} // namespace
} // namespace farsa
