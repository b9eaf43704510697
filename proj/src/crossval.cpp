#include "cvlasso/crossval.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cvlasso/rng.hpp"

namespace cvlasso {

namespace {

std::vector<double> select_values(std::span<const double> y,
                                  const std::vector<std::uint8_t>& membership,
                                  bool keep) {
  std::vector<double> out;
  for (std::size_t i = 0; i < membership.size(); ++i) {
    if ((membership[i] != 0) == keep) out.push_back(y[i]);
  }
  return out;
}

// ceil with a relative guard so quotients that are integers up to roundoff
// (e.g. 3.0 / 0.1) do not spill into the next bucket.
std::size_t guarded_ceil(double v) {
  if (v <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(v * (1.0 - 1e-12)));
}

// |ridge fit|_1 with unit penalty on one half; the normal equations are
// solved in whichever of the primal/dual dimensions is smaller.
double ridge_l1_norm(const Matrix& xh, std::span<const double> yh) {
  if (xh.rows == 0) return 0.0;
  if (xh.cols <= xh.rows) {
    std::vector<double> xty(xh.cols);
    linalg::matvec_t(xh, yh, xty);
    const auto beta = linalg::solve_spd_plus_identity(linalg::gram(xh), xty);
    return linalg::l1_norm(beta);
  }
  // beta = X^T (X X^T + I)^{-1} y
  const auto alpha = linalg::solve_spd_plus_identity(linalg::gram_outer(xh), yh);
  std::vector<double> beta(xh.cols);
  linalg::matvec_t(xh, alpha, beta);
  return linalg::l1_norm(beta);
}

std::vector<double> make_grid(double delta, std::size_t n) {
  std::vector<double> grid(n + 1);
  for (std::size_t j = 0; j <= n; ++j) grid[j] = static_cast<double>(j) * delta;
  return grid;
}

}  // namespace

std::size_t SplitAssignment::count_in_i() const {
  std::size_t c = 0;
  for (std::uint8_t m : membership) c += (m != 0);
  return c;
}

std::vector<double> GridSpec::grid1() const { return make_grid(delta, n1); }
std::vector<double> GridSpec::grid2() const { return make_grid(delta, n2); }

SplitAssignment random_split(std::size_t n, std::uint64_t seed) {
  SplitAssignment split;
  split.seed = seed;
  split.generator = std::string(rng::kGeneratorId);
  split.membership.resize(n);
  rng::Xoshiro256pp gen(seed);
  for (std::size_t i = 0; i < n; ++i) {
    split.membership[i] = gen.next_coin() ? 1 : 0;
  }
  return split;
}

GridSpec default_grid(const Matrix& x, std::span<const double> y,
                      const SplitAssignment& split, double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("default_grid: delta must be > 0");
  }
  if (split.size() != x.rows || y.size() != x.rows) {
    throw std::invalid_argument("default_grid: dimension mismatch");
  }
  GridSpec spec;
  spec.delta = delta;
  // N1 from the I^c rows only; N2 from the I rows only.
  {
    const Matrix xc = x.select_rows(split.membership, false);
    const auto yc = select_values(y, split.membership, false);
    spec.n1 = guarded_ceil(2.0 * ridge_l1_norm(xc, yc) / delta);
  }
  {
    const Matrix xi = x.select_rows(split.membership, true);
    const auto yi = select_values(y, split.membership, true);
    spec.n2 = guarded_ceil(2.0 * ridge_l1_norm(xi, yi) / delta);
  }
  return spec;
}

double select_k(const LassoPath& path, const Matrix& holdout_x,
                std::span<const double> holdout_y) {
  if (path.fits.empty()) throw std::invalid_argument("select_k: empty path");
  double best_k = path.grid[0];
  double best_sse = 0.0;
  for (std::size_t i = 0; i < path.fits.size(); ++i) {
    const double sse =
        linalg::residual_ss(holdout_x, holdout_y, path.fits[i].beta);
    if (i == 0 || sse < best_sse) {  // strict: ties keep the smaller K
      best_sse = sse;
      best_k = path.grid[i];
    }
  }
  return best_k;
}

std::vector<double> combine_mu(const SplitAssignment& split,
                               const ConstrainedFit& fit_on_i2,
                               const ConstrainedFit& fit_on_i1,
                               const Matrix& x) {
  if (split.size() != x.rows) {
    throw std::invalid_argument("combine_mu: dimension mismatch");
  }
  std::vector<double> mu(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto& beta = split.membership[i] ? fit_on_i2.beta : fit_on_i1.beta;
    mu[i] = linalg::dot(x.row(i), beta);
  }
  return mu;
}

std::pair<double, ConstrainedFit> select_khat(const Matrix& x,
                                              std::span<const double> y,
                                              std::span<const double> mu_prime,
                                              std::span<const double> grid_full,
                                              const SolverConfig& cfg,
                                              SolveDiagnostics* diag) {
  if (grid_full.empty()) throw std::invalid_argument("select_khat: empty grid");
  if (mu_prime.size() != x.rows) {
    throw std::invalid_argument("select_khat: mu' length != row count");
  }
  LassoSolver solver(x, y, cfg);
  double best_k = grid_full[0];
  double best_crit = 0.0;
  ConstrainedFit best_fit;
  std::vector<double> prev_beta;
  for (std::size_t i = 0; i < grid_full.size(); ++i) {
    ConstrainedFit fit = solver.solve(grid_full[i], prev_beta);
    prev_beta = fit.beta;
    if (diag != nullptr) {
      diag->total_iterations += fit.iterations;
      diag->all_converged = diag->all_converged && fit.converged;
    }
    double crit = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
      const double d = mu_prime[r] - linalg::dot(x.row(r), fit.beta);
      crit += d * d;
    }
    if (i == 0 || crit < best_crit) {
      best_crit = crit;
      best_k = grid_full[i];
      best_fit = std::move(fit);
    }
  }
  return {best_k, std::move(best_fit)};
}

double estimate_sigma2(std::span<const double> y, const Matrix& x,
                       std::span<const double> beta) {
  if (x.rows == 0) {
    throw std::invalid_argument("estimate_sigma2: undefined for n = 0");
  }
  if (y.size() != x.rows) {
    throw std::invalid_argument("estimate_sigma2: dimension mismatch");
  }
  return linalg::residual_ss(x, y, beta) / static_cast<double>(x.rows);
}

CvEstimate cv_lasso(const Matrix& x, std::span<const double> y, double delta,
                    std::optional<GridOverride> grid_override, std::uint64_t seed,
                    const SolverConfig& cfg) {
  if (!(delta > 0.0)) throw std::invalid_argument("cv_lasso: delta must be > 0");
  if (y.size() != x.rows) {
    throw std::invalid_argument("cv_lasso: dimension mismatch");
  }
  const std::size_t n = x.rows;

  CvEstimate est;
  est.seed = seed;
  est.generator = std::string(rng::kGeneratorId);

  const SplitAssignment split = random_split(n, seed);

  GridSpec grid;
  if (grid_override) {
    grid.delta = delta;
    grid.n1 = grid_override->n1;
    grid.n2 = grid_override->n2;
  } else {
    grid = default_grid(x, y, split, delta);
  }
  est.n1 = grid.n1;
  est.n2 = grid.n2;

  const Matrix x_i = x.select_rows(split.membership, true);
  const Matrix x_ic = x.select_rows(split.membership, false);
  const auto y_i = select_values(y, split.membership, true);
  const auto y_ic = select_values(y, split.membership, false);

  // beta(K,2) trained on I^c over grid1, judged on I; symmetrically for (K,1).
  const auto grid1 = grid.grid1();
  const auto grid2 = grid.grid2();
  const LassoPath path2 = fit_path(x_ic, y_ic, grid1, cfg);
  const LassoPath path1 = fit_path(x_i, y_i, grid2, cfg);
  est.k_hat_1 = select_k(path2, x_i, y_i);
  est.k_hat_2 = select_k(path1, x_ic, y_ic);

  const auto grid1_pos = static_cast<std::size_t>(
      std::llround(est.k_hat_1 / delta));
  const auto grid2_pos = static_cast<std::size_t>(
      std::llround(est.k_hat_2 / delta));
  const ConstrainedFit& fit_on_i2 = path2.fits[grid1_pos];
  const ConstrainedFit& fit_on_i1 = path1.fits[grid2_pos];
  est.mu_prime = combine_mu(split, fit_on_i2, fit_on_i1, x);

  const auto grid_full = make_grid(delta, std::max(grid.n1, grid.n2));
  SolveDiagnostics diag;
  auto [k_hat, fit_cv] = select_khat(x, y, est.mu_prime, grid_full, cfg, &diag);
  est.k_hat = k_hat;
  est.beta_cv = fit_cv.beta;
  est.sigma2_hat = n > 0 ? linalg::residual_ss(x, y, est.beta_cv) /
                               static_cast<double>(n)
                         : 0.0;

  est.total_iterations = diag.total_iterations;
  est.all_converged = diag.all_converged;
  for (const auto& f : path1.fits) {
    est.total_iterations += f.iterations;
    est.all_converged = est.all_converged && f.converged;
  }
  for (const auto& f : path2.fits) {
    est.total_iterations += f.iterations;
    est.all_converged = est.all_converged && f.converged;
  }
  return est;
}

}  // namespace cvlasso
