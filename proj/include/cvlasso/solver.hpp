#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cvlasso/matrix.hpp"

namespace cvlasso {

struct SolverConfig {
  double tol = 1e-8;                      // relative objective-decrease stop
  std::size_t max_iter = 50'000;
  std::size_t lipschitz_power_iters = 100;  // power-iteration steps for the step size
};

struct ConstrainedFit {
  double k = 0.0;
  std::vector<double> beta;
  double residual_ss = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

struct LassoPath {
  std::vector<double> grid;
  std::vector<ConstrainedFit> fits;
};

/// Euclidean projection of v onto {beta : |beta|_1 <= k}. Points already
/// inside the ball are returned unchanged.
std::vector<double> project_l1_ball(std::span<const double> v, double k);

/// Reusable solver state for many budgets over one (x, y) pair: Gram blocks
/// when n >= p, plus the power-iteration step size. Holds a reference to x;
/// keep x alive while the solver is in use.
class LassoSolver {
 public:
  LassoSolver(const Matrix& x, std::span<const double> y, SolverConfig cfg = {});

  /// Minimizes ||y - X beta||^2 over the l1 ball of radius k, starting from
  /// `warm` (projected onto the ball) or from zero. Fixed start and a fixed
  /// iteration order make the result deterministic in the inputs.
  ConstrainedFit solve(double k, std::span<const double> warm = {}) const;

  const SolverConfig& config() const { return cfg_; }

 private:
  double objective(std::span<const double> beta, std::span<double> scratch_n) const;
  void gradient(std::span<const double> beta, std::span<double> out,
                std::span<double> scratch_n) const;

  const Matrix& x_;
  std::vector<double> y_;
  SolverConfig cfg_;
  bool use_gram_ = false;
  Matrix gram_;              // X^T X when use_gram_
  std::vector<double> xty_;  // X^T y
  double yty_ = 0.0;
  double step_denom_ = 1.0;  // inflated estimate of sigma_max(X)^2
};

/// One-shot constrained fit with zero initialization.
ConstrainedFit solve_constrained_lasso(const Matrix& x, std::span<const double> y,
                                       double k, const SolverConfig& cfg = {});

/// Fits every budget in an ascending grid, warm-starting each point from the
/// previous one. An empty index set (n = 0) yields all-zero fits.
LassoPath fit_path(const Matrix& x, std::span<const double> y,
                   std::span<const double> grid, const SolverConfig& cfg = {});

}  // namespace cvlasso
