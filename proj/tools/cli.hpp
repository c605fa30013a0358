#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "farsa/libsvm.hpp"
#include "farsa/solver.hpp"

namespace farsa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitSolverFailure = 2;

/// One solve as reported by the tool; times exclude data loading.
struct RunSummary {
  std::string solver;
  std::string dataset;
  std::size_t samples = 0;
  std::size_t features = 0;
  double lambda = 0.0;
  double epsilon = 0.0;
  std::vector<double> times;
  SolveReport report;

  double mean_time() const;
};

nlohmann::json to_json(const RunSummary& run);
std::string csv_header();
std::string to_csv_row(const RunSummary& run);
void write_trace_csv(std::ostream& out, const SolveReport& report);

/// Parses "none", "minus1-1", "max-abs" or "pixels:B" and applies it.
Dataset apply_scaling(Dataset ds, const std::string& scheme);

/// Entry point of the `farsa` tool. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace farsa::cli
