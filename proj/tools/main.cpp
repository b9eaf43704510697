#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvlasso/bounds.hpp"
#include "cvlasso/crossval.hpp"
#include "cvlasso/csvio.hpp"
#include "cvlasso/errors.hpp"
#include "cvlasso/jsonio.hpp"
#include "cvlasso/simlab.hpp"
#include "cvlasso/solver.hpp"
#include "cvlasso/version.hpp"

namespace {

using cvlasso::DataError;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw DataError(out_path + ": cannot open for writing");
  out << text;
  if (!out) throw DataError(out_path + ": write failed");
}

struct CommonOpts {
  std::string design_path;
  std::string response_path;
  double delta = 0.05;
  std::optional<std::uint64_t> n1;
  std::optional<std::uint64_t> n2;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::size_t max_iter = 50'000;
  std::string out_path;
  std::string format = "json-lines";
  bool strict = false;
};

json config_json(const CommonOpts& o) {
  json j{{"design", o.design_path}, {"response", o.response_path},
         {"delta", o.delta},        {"seed", o.seed},
         {"tol", o.tol},            {"max_iter", o.max_iter},
         {"format", o.format},      {"strict", o.strict}};
  if (o.n1) j["n1"] = *o.n1;
  if (o.n2) j["n2"] = *o.n2;
  return j;
}

int run_fit(const CommonOpts& o) {
  const cvlasso::Matrix x = cvlasso::load_csv_matrix(o.design_path);
  const auto y = cvlasso::load_csv_vector(o.response_path);
  if (y.size() != x.rows) {
    throw DataError("response has " + std::to_string(y.size()) +
                    " rows, design has " + std::to_string(x.rows));
  }
  std::optional<cvlasso::GridOverride> grid_ov;
  if (o.n1 || o.n2) {
    if (!(o.n1 && o.n2)) {
      throw CLI::ValidationError("--n1 and --n2 must be given together");
    }
    grid_ov = cvlasso::GridOverride{*o.n1, *o.n2};
  }
  cvlasso::SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  const cvlasso::CvEstimate est =
      cvlasso::cv_lasso(x, y, o.delta, grid_ov, o.seed, cfg);
  if (!est.all_converged) {
    if (o.strict) {
      throw cvlasso::ConvergenceError("solver did not converge within " +
                                      std::to_string(cfg.max_iter) +
                                      " iterations");
    }
    std::cerr << "warning: at least one solve hit the iteration cap\n";
  }
  emit(o.format == "csv" ? cvlasso::cv_estimate_csv(est, config_json(o))
                         : cvlasso::cv_estimate_jsonl(est, config_json(o)),
       o.out_path);
  return 0;
}

int run_path(const CommonOpts& o) {
  const cvlasso::Matrix x = cvlasso::load_csv_matrix(o.design_path);
  const auto y = cvlasso::load_csv_vector(o.response_path);
  if (y.size() != x.rows) {
    throw DataError("response has " + std::to_string(y.size()) +
                    " rows, design has " + std::to_string(x.rows));
  }
  const std::size_t n_points = o.n1.value_or(0);
  std::vector<double> grid(n_points + 1);
  for (std::size_t j = 0; j <= n_points; ++j) {
    grid[j] = static_cast<double>(j) * o.delta;
  }
  cvlasso::SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  const cvlasso::LassoPath path = cvlasso::fit_path(x, y, grid, cfg);
  bool all_converged = true;
  for (const auto& f : path.fits) all_converged = all_converged && f.converged;
  if (!all_converged) {
    if (o.strict) {
      throw cvlasso::ConvergenceError("solver did not converge within " +
                                      std::to_string(cfg.max_iter) +
                                      " iterations");
    }
    std::cerr << "warning: at least one solve hit the iteration cap\n";
  }
  emit(o.format == "csv" ? cvlasso::path_report_csv(path, o.seed, config_json(o))
                         : cvlasso::path_report_jsonl(path, o.seed, config_json(o)),
       o.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(cvlasso::kToolName) +
               " - cross-validated l1-constrained least squares"};
  app.set_version_flag("--version", std::string(cvlasso::kVersion));
  app.require_subcommand(1);

  const std::vector<std::string> formats{"csv", "json-lines"};

  // fit ----------------------------------------------------------------
  CommonOpts fit_opts;
  auto* fit = app.add_subcommand(
      "fit", "Cross-validated fit: K-hat, beta-CV and sigma2-hat from CSV data");
  fit->add_option("--design", fit_opts.design_path, "Design matrix CSV")
      ->required();
  fit->add_option("--response", fit_opts.response_path, "Response vector CSV")
      ->required();
  fit->add_option("--delta", fit_opts.delta, "Grid spacing")
      ->check(CLI::PositiveNumber);
  fit->add_option("--n1", fit_opts.n1, "Override grid length N1");
  fit->add_option("--n2", fit_opts.n2, "Override grid length N2");
  fit->add_option("--seed", fit_opts.seed, "Split seed");
  fit->add_option("--tol", fit_opts.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber);
  fit->add_option("--max-iter", fit_opts.max_iter, "Solver iteration cap");
  fit->add_option("--out", fit_opts.out_path, "Output path (default stdout)");
  fit->add_option("--format", fit_opts.format, "Output format")
      ->check(CLI::IsMember(formats));
  fit->add_flag("--strict", fit_opts.strict, "Fail on non-convergence");

  // path ---------------------------------------------------------------
  CommonOpts path_opts;
  auto* path_cmd = app.add_subcommand(
      "path", "Constrained-fit path over the grid {0, delta, ..., N1*delta}");
  path_cmd->add_option("--design", path_opts.design_path, "Design matrix CSV")
      ->required();
  path_cmd->add_option("--response", path_opts.response_path, "Response vector CSV")
      ->required();
  path_cmd->add_option("--delta", path_opts.delta, "Grid spacing")
      ->check(CLI::PositiveNumber);
  path_cmd->add_option("--n1", path_opts.n1, "Grid length N1")->required();
  path_cmd->add_option("--tol", path_opts.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber);
  path_cmd->add_option("--max-iter", path_opts.max_iter, "Solver iteration cap");
  path_cmd->add_option("--out", path_opts.out_path, "Output path (default stdout)");
  path_cmd->add_option("--format", path_opts.format, "Output format")
      ->check(CLI::IsMember(formats));
  path_cmd->add_flag("--strict", path_opts.strict, "Fail on non-convergence");

  // bound --------------------------------------------------------------
  cvlasso::BoundInputs bound_in;
  std::string bound_out, bound_format = "json-lines";
  auto* bound = app.add_subcommand(
      "bound", "Closed-form prediction-error and variance-error bounds");
  bound->add_option("--n", bound_in.n, "Sample count")->required();
  bound->add_option("--p", bound_in.p, "Predictor count")->required();
  bound->add_option("--sigma", bound_in.sigma, "Noise standard deviation")
      ->required();
  bound->add_option("--l-star", bound_in.l_star, "|beta*|_1")->required();
  bound->add_option("--delta", bound_in.delta, "Grid spacing")->required();
  bound->add_option("--m", bound_in.m_stat, "Design fourth-moment statistic M")
      ->required();
  bound->add_option("--l1", bound_in.l1, "E log(N1+1)")->required();
  bound->add_option("--l2", bound_in.l2, "E log(N2+1)")->required();
  bound->add_option("--out", bound_out, "Output path (default stdout)");
  bound->add_option("--format", bound_format, "Output format")
      ->check(CLI::IsMember(formats));

  // simulate -----------------------------------------------------------
  std::string sim_scenario, sim_out, sim_format = "json-lines";
  std::optional<std::size_t> sim_reps;
  std::optional<std::uint64_t> sim_seed;
  unsigned sim_threads = 1;
  bool sim_strict = false;
  auto* sim = app.add_subcommand(
      "simulate", "Monte Carlo verification of the closed-form bounds");
  sim->add_option("--scenario", sim_scenario, "Scenario JSON file")->required();
  sim->add_option("--reps", sim_reps, "Override replication count");
  sim->add_option("--seed", sim_seed, "Override master seed");
  sim->add_option("--threads", sim_threads, "Worker threads (default 1)");
  sim->add_option("--out", sim_out, "Output path (default stdout)");
  sim->add_option("--format", sim_format, "Output format")
      ->check(CLI::IsMember(formats));
  sim->add_flag("--strict", sim_strict, "Fail on non-convergence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (fit->parsed()) return run_fit(fit_opts);
    if (path_cmd->parsed()) return run_path(path_opts);
    if (bound->parsed()) {
      const cvlasso::BoundReport rep = cvlasso::bound_constants(bound_in);
      emit(bound_format == "csv" ? cvlasso::bound_report_csv(bound_in, rep)
                                 : cvlasso::bound_report_jsonl(bound_in, rep),
           bound_out);
      return 0;
    }
    if (sim->parsed()) {
      cvlasso::Scenario sc = cvlasso::load_scenario(sim_scenario);
      if (sim_reps) sc.replications = *sim_reps;
      if (sim_seed) sc.master_seed = *sim_seed;
      const cvlasso::SimulationReport rep =
          cvlasso::run_monte_carlo(sc, sim_threads);
      for (const auto& rec : rep.records) {
        if (!rec.converged) {
          if (sim_strict) {
            throw cvlasso::ConvergenceError(
                "replicate " + std::to_string(rec.index) +
                " hit the iteration cap");
          }
          std::cerr << "warning: replicate " << rec.index
                    << " hit the iteration cap\n";
        }
      }
      if (!rep.event_ever) {
        std::cerr << "warning: the event {N1*delta >= |beta*|_1, N2*delta >= "
                     "|beta*|_1} never occurred\n";
      }
      emit(sim_format == "csv" ? cvlasso::simulation_report_csv(rep)
                               : cvlasso::simulation_report_jsonl(rep),
           sim_out);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cvlasso::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {  // includes DataError
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
