#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvlasso/bounds.hpp"
#include "cvlasso/crossval.hpp"
#include "cvlasso/matrix.hpp"
#include "cvlasso/solver.hpp"

namespace cvlasso {

enum class DesignFamily { GaussianIid, Rademacher, FixedFromFile };

std::string to_string(DesignFamily f);
DesignFamily design_family_from_string(const std::string& s);

/// How the per-half grid lengths N1, N2 are chosen for each replicate.
struct GridRule {
  enum class Type {
    Ridge,  // default data-driven rule (see crossval::default_grid)
    Fixed,  // explicit n1, n2
    SqrtN,  // n1 = n2 = ceil(coeff * sqrt(n)); grows so N*delta -> infinity
  };
  Type type = Type::Ridge;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double coeff = 0.0;
};

struct Scenario {
  std::size_t n = 0;
  std::size_t p = 1;
  DesignFamily design = DesignFamily::GaussianIid;
  Matrix fixed_design;       // used when design == FixedFromFile
  std::string design_file;   // provenance only
  std::vector<double> beta_star;
  double sigma = 1.0;
  double delta = 0.05;
  std::size_t replications = 1;
  std::uint64_t master_seed = 1;
  GridRule grid_rule;
  SolverConfig solver;
};

struct Problem {
  Matrix x;
  std::vector<double> y;
  std::vector<double> beta_star;
};

struct ReplicateRecord {
  std::size_t index = 0;
  bool event = false;  // N1*delta >= |beta*|_1 and N2*delta >= |beta*|_1
  double mspe = 0.0;   // ||X beta* - X beta_cv||^2 / n
  double sigma2_hat = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double k_hat = 0.0;
  double m_stat = 0.0;  // M of this replicate's design
  bool converged = true;
};

struct Aggregates {
  std::size_t replications = 0;
  double event_frequency = 0.0;
  // E(X; A) convention: sum over event replicates divided by the total count.
  double mspe_event_mean = 0.0;
  double mspe_event_se = 0.0;
  double sigma2_err_event_mean = 0.0;
  double sigma2_err_event_se = 0.0;
  double l1_hat = 0.0;  // mean log(N1 + 1)
  double l2_hat = 0.0;
  double m_used = 0.0;  // max replicate M; what the bound is evaluated at
};

struct SimulationReport {
  Scenario scenario;
  std::vector<ReplicateRecord> records;
  Aggregates aggregates;
  BoundReport bound;
  bool mspe_dominated = false;    // mean + 2 SE <= bound.r
  bool sigma2_dominated = false;  // mean + 2 SE <= bound.sigma_bound
  bool event_ever = false;
};

/// Draws the design (per family) and y = X beta* + eps with eps iid
/// N(0, sigma^2), deterministically from (master_seed, replicate_index).
Problem generate_problem(const Scenario& scenario, std::size_t replicate_index);

/// ||X beta* - X beta_hat||^2 / n.
double mspe_sample(const Matrix& x, std::span<const double> beta_star,
                   std::span<const double> beta_hat);

/// Runs cv_lasso once per replicate and aggregates. Replicates draw from
/// per-index substreams, so any thread count produces identical reports.
SimulationReport run_monte_carlo(const Scenario& scenario, unsigned threads = 1);

/// One report per n, holding everything else fixed. The caller's scenario is
/// responsible for meeting the consistency conditions (bounded design,
/// bounded |beta*|_1, growing N*delta, log p = o(n)); the SqrtN grid rule
/// provides the growing-grid part.
std::vector<SimulationReport> consistency_sweep(const Scenario& base,
                                                std::span<const std::size_t> n_values,
                                                unsigned threads = 1);

}  // namespace cvlasso
