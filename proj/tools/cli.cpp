#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "farsa/errors.hpp"
#include "farsa/ista.hpp"
#include "farsa/objective.hpp"

namespace farsa::cli {

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string precise(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::size_t count_zeros(const Vector& x) {
  return static_cast<std::size_t>(std::count(x.begin(), x.end(), 0.0));
}

/// Flags shared by `solve` and `sweep`.
struct CommonOptions {
  std::string data;
  std::string scale = "none";
  std::string solver = "farsa";
  std::optional<double> lambda;
  double epsilon = 1e-6;
  std::optional<std::size_t> max_iter;
  double time_limit = 600.0;
  std::optional<std::size_t> features;
  bool mnist_labels = false;
};

void add_common(CLI::App& app, CommonOptions& o) {
  app.add_option("--data", o.data, "LIBSVM file (.gz accepted)")->required();
  app.add_option("--lambda", o.lambda, "l1 weight (default 1/#samples)");
  app.add_option("--max-iter", o.max_iter, "iteration limit (default 1000; ISTA 1000000)");
  app.add_option("--time-limit", o.time_limit, "time limit in seconds")->capture_default_str();
  app.add_option("--scale", o.scale, "none | minus1-1 | max-abs | pixels:B")->capture_default_str();
  app.add_option("--solver", o.solver, "farsa | ista")
      ->check(CLI::IsMember({"farsa", "ista"}))
      ->capture_default_str();
  app.add_option("--features", o.features, "feature count when trailing columns are empty");
  app.add_flag("--mnist-labels", o.mnist_labels, "map digit labels 0-4 to -1 and 5-9 to +1");
}

Dataset load(const CommonOptions& o) {
  ParseOptions parse;
  parse.features = o.features;
  parse.raw_labels = o.mnist_labels;
  Dataset ds = load_libsvm(o.data, parse);
  if (o.mnist_labels) ds.labels = relabel_binary_mnist(ds.labels);
  return apply_scaling(std::move(ds), o.scale);
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

RunSummary run_solver(const CommonOptions& o, const Dataset& ds, const LogisticObjective& f,
                      double epsilon, std::size_t repeat) {
  RunSummary run;
  run.solver = o.solver;
  run.dataset = ds.name;
  run.samples = ds.samples();
  run.features = ds.features();
  run.lambda = o.lambda.value_or(1.0 / static_cast<double>(ds.samples()));
  run.epsilon = epsilon;

  for (std::size_t r = 0; r < repeat; ++r) {
    if (o.solver == "ista") {
      IstaConfig config;
      config.epsilon = epsilon;
      config.max_iterations = o.max_iter.value_or(1'000'000);
      config.time_limit = std::chrono::duration<double>(o.time_limit);
      config.keep_trace = true;
      run.report = ista_solve(f, run.lambda, config, Vector(f.dimension(), 0.0));
    } else {
      SolverConfig config;
      config.lambda = run.lambda;
      config.epsilon = epsilon;
      config.max_iterations = o.max_iter.value_or(1000);
      config.time_limit = std::chrono::duration<double>(o.time_limit);
      run.report = solve(f, config);
    }
    run.times.push_back(run.report.total_seconds);
  }
  return run;
}

std::vector<double> parse_tolerances(const std::vector<std::string>& args) {
  std::vector<double> out;
  for (const std::string& a : args) {
    if (a.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(a, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != a.size()) throw std::invalid_argument("bad tolerance '" + a + "'");
    check_positive(v, "tolerance");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--tolerances needs at least one value");
  return out;
}

int exit_code_for(const SolveReport& report) {
  return report.status == SolveStatus::Optimal ? kExitOk : kExitSolverFailure;
}

void print_human(std::ostream& out, const RunSummary& run) {
  const SolveReport& r = run.report;
  out << "dataset        " << run.dataset << " (" << run.samples << " samples, " << run.features
      << " features)\n"
      << "solver         " << run.solver << "\n"
      << "lambda         " << precise(run.lambda) << "\n"
      << "status         " << to_string(r.status) << "\n"
      << "time (s)       " << run.mean_time() << " (mean of " << run.times.size() << ")\n"
      << "objective      " << precise(r.objective) << "\n"
      << "% of zeros     " << fixed(r.percent_zeros, 1) << " (" << count_zeros(r.x) << " of "
      << r.x.size() << ")\n"
      << "iterations     " << r.iterations;
  if (run.solver == "farsa") {
    out << " (phi " << r.phi_iterations << ", beta " << r.beta_iterations << ")";
  }
  out << "\n"
      << "optimality     beta " << r.beta_norm << ", phi " << r.phi_norm << "\n";
  if (!r.message.empty()) out << "message        " << r.message << "\n";
}

} // namespace

double RunSummary::mean_time() const {
  if (times.empty()) return 0.0;
  return std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
}

nlohmann::json to_json(const RunSummary& run) {
  const SolveReport& r = run.report;
  nlohmann::json j;
  j["solver"] = run.solver;
  j["dataset"] = run.dataset;
  j["samples"] = run.samples;
  j["features"] = run.features;
  j["lambda"] = run.lambda;
  j["epsilon"] = run.epsilon;
  j["status"] = std::string(to_string(r.status));
  j["time_seconds"] = run.mean_time();
  j["times"] = run.times;
  j["objective"] = r.objective;
  j["percent_zeros"] = r.percent_zeros;
  j["zeros"] = count_zeros(r.x);
  j["iterations"] = r.iterations;
  j["phi_iterations"] = r.phi_iterations;
  j["beta_iterations"] = r.beta_iterations;
  j["beta_norm"] = r.beta_norm;
  j["phi_norm"] = r.phi_norm;
  j["message"] = r.message;
  return j;
}

std::string csv_header() {
  return "dataset,solver,status,time_seconds,objective,percent_zeros,iterations,phi_iterations,"
         "beta_iterations";
}

std::string to_csv_row(const RunSummary& run) {
  const SolveReport& r = run.report;
  std::ostringstream os;
  os << run.dataset << ',' << run.solver << ',' << to_string(r.status) << ','
     << precise(run.mean_time()) << ',' << precise(r.objective) << ',' << fixed(r.percent_zeros, 1)
     << ',' << r.iterations << ',' << r.phi_iterations << ',' << r.beta_iterations;
  return os.str();
}

void write_trace_csv(std::ostream& out, const SolveReport& report) {
  out << "k,type,objective,beta_norm,phi_norm,support_size,working_set_size,cg_iterations,cg_stop,"
         "backtracks,step_size,step_norm,elapsed_seconds\n";
  for (const IterationRecord& rec : report.trace) {
    out << rec.k << ',' << to_string(rec.type) << ',' << precise(rec.objective) << ','
        << precise(rec.beta_norm) << ',' << precise(rec.phi_norm) << ',' << rec.support_size << ','
        << rec.working_set_size << ',' << rec.cg_iterations << ','
        << (rec.cg_stop ? to_string(*rec.cg_stop) : std::string_view{}) << ',' << rec.backtracks
        << ',' << precise(rec.step_size) << ',' << precise(rec.step_norm) << ','
        << precise(rec.elapsed_seconds) << '\n';
  }
}

Dataset apply_scaling(Dataset ds, const std::string& scheme) {
  if (scheme == "none") return ds;
  if (scheme == "minus1-1") return scale_minus1_1(ds);
  if (scheme == "max-abs") return scale_max_abs(ds);
  if (scheme.rfind("pixels:", 0) == 0) {
    const std::string bits = scheme.substr(7);
    std::size_t used = 0;
    unsigned long b = 0;
    try {
      b = std::stoul(bits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != bits.size()) throw std::invalid_argument("bad pixel bit depth '" + bits + "'");
    return scale_pixels(ds, static_cast<unsigned>(b));
  }
  throw std::invalid_argument("unknown scaling '" + scheme + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduced-space active-set solver for l1-regularized logistic regression"};
  app.require_subcommand(1);

  CommonOptions solve_opts;
  std::string output = "human";
  std::string trace_path;
  std::size_t repeat = 1;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one problem");
  add_common(*solve_cmd, solve_opts);
  solve_cmd->add_option("--epsilon", solve_opts.epsilon, "optimality tolerance")->capture_default_str();
  solve_cmd->add_option("--output", output, "human | json | csv")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  solve_cmd->add_option("--trace", trace_path, "write the per-iteration trace as CSV");
  solve_cmd->add_option("--repeat", repeat, "runs to average the time over")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CommonOptions sweep_opts;
  std::vector<std::string> tolerance_args{"1e-1", "1e-2", "1e-3", "1e-4", "1e-5", "1e-6"};
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "solve once per tolerance, CSV output");
  add_common(*sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--tolerances", tolerance_args, "comma-separated tolerances")
      ->delimiter(',')
      ->expected(0, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve_cmd) {
      check_positive(solve_opts.epsilon, "epsilon");
      check_positive(solve_opts.time_limit, "time limit");
      if (solve_opts.lambda) check_positive(*solve_opts.lambda, "lambda");
      const Dataset ds = load(solve_opts);
      const LogisticObjective f(ds.matrix, ds.labels);
      const RunSummary run = run_solver(solve_opts, ds, f, solve_opts.epsilon, repeat);

      if (output == "json") {
        out << to_json(run).dump(2) << "\n";
      } else if (output == "csv") {
        out << csv_header() << "\n" << to_csv_row(run) << "\n";
      } else {
        print_human(out, run);
      }
      if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        if (!trace) throw std::runtime_error("cannot write " + trace_path);
        write_trace_csv(trace, run.report);
      }
      if (run.report.status != SolveStatus::Optimal) {
        err << "solver stopped without reaching the tolerance: " << to_string(run.report.status);
        if (!run.report.message.empty()) err << " (" << run.report.message << ")";
        err << "\n";
      }
      return exit_code_for(run.report);
    }

    // sweep
    const std::vector<double> tolerances = parse_tolerances(tolerance_args);
    check_positive(sweep_opts.time_limit, "time limit");
    if (sweep_opts.lambda) check_positive(*sweep_opts.lambda, "lambda");
    const Dataset ds = load(sweep_opts);
    const LogisticObjective f(ds.matrix, ds.labels);

    out << "tolerance,status,time_seconds,objective,percent_zeros,iterations\n";
    int code = kExitOk;
    std::optional<std::size_t> last_iterations;
    double last_tolerance = 0.0;
    for (double tol : tolerances) {
      const RunSummary run = run_solver(sweep_opts, ds, f, tol, 1);
      const SolveReport& r = run.report;
      out << precise(tol) << ',' << to_string(r.status) << ',' << precise(run.mean_time()) << ','
          << precise(r.objective) << ',' << fixed(r.percent_zeros, 1) << ',' << r.iterations << "\n";
      if (last_iterations && tol < last_tolerance && r.iterations < *last_iterations) {
        err << "warning: iterations decreased when tightening the tolerance to " << tol << "\n";
      }
      last_iterations = r.iterations;
      last_tolerance = tol;
      if (r.status != SolveStatus::Optimal) code = kExitSolverFailure;
    }
    return code;
  } catch (const LineSearchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

} // namespace farsa::cli
