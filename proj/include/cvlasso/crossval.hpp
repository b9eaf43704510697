#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvlasso/matrix.hpp"
#include "cvlasso/solver.hpp"

namespace cvlasso {

/// Random half-split of {0, ..., n-1} by independent fair coin flips.
/// membership[i] == 1 means index i belongs to I.
struct SplitAssignment {
  std::vector<std::uint8_t> membership;
  std::uint64_t seed = 0;
  std::string generator;

  std::size_t size() const { return membership.size(); }
  std::size_t count_in_i() const;
};

/// Budget grids {0, delta, ..., n1*delta} and {0, delta, ..., n2*delta}.
struct GridSpec {
  double delta = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;

  std::vector<double> grid1() const;
  std::vector<double> grid2() const;
};

struct GridOverride {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

struct CvEstimate {
  double k_hat_1 = 0.0;
  double k_hat_2 = 0.0;
  std::vector<double> mu_prime;
  double k_hat = 0.0;
  std::vector<double> beta_cv;
  double sigma2_hat = 0.0;  // 0 for the degenerate n = 0 input
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::uint64_t seed = 0;
  std::string generator;
  std::size_t total_iterations = 0;
  bool all_converged = true;
};

/// Each index lands in I with probability 1/2, independently, using the
/// generator named in rng::kGeneratorId.
SplitAssignment random_split(std::size_t n, std::uint64_t seed);

/// Default grid-length rule: N = ceil(2 |ridge fit|_1 / delta) with the
/// unit-penalty ridge fit computed on the respective half; 0 on an empty
/// half. n1 is a function of the I^c rows only, n2 of the I rows only.
GridSpec default_grid(const Matrix& x, std::span<const double> y,
                      const SplitAssignment& split, double delta);

/// Grid budget minimizing holdout sum of squared errors; ties to smallest K.
double select_k(const LassoPath& path, const Matrix& holdout_x,
                std::span<const double> holdout_y);

/// mu'_i = x_i * beta(K_hat_1, trained on I^c) for i in I,
///         x_i * beta(K_hat_2, trained on I)   for i in I^c.
std::vector<double> combine_mu(const SplitAssignment& split,
                               const ConstrainedFit& fit_on_i2,
                               const ConstrainedFit& fit_on_i1,
                               const Matrix& x);

struct SolveDiagnostics {
  std::size_t total_iterations = 0;
  bool all_converged = true;
};

/// Full-data budget minimizing ||mu' - X beta(K)|| over the grid, ties to
/// smallest K. Returns the budget and the fit at that budget.
std::pair<double, ConstrainedFit> select_khat(const Matrix& x,
                                              std::span<const double> y,
                                              std::span<const double> mu_prime,
                                              std::span<const double> grid_full,
                                              const SolverConfig& cfg = {},
                                              SolveDiagnostics* diag = nullptr);

/// ||y - X beta||^2 / n. Undefined (invalid-argument) for n = 0.
double estimate_sigma2(std::span<const double> y, const Matrix& x,
                       std::span<const double> beta);

/// The whole pipeline: split, per-half paths, holdout selection, mu',
/// final budget, beta_cv and sigma2. Deterministic given (inputs, seed, cfg).
CvEstimate cv_lasso(const Matrix& x, std::span<const double> y, double delta,
                    std::optional<GridOverride> grid_override, std::uint64_t seed,
                    const SolverConfig& cfg = {});

}  // namespace cvlasso
