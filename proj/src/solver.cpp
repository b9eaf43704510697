#include "cvlasso/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvlasso/rng.hpp"

namespace cvlasso {

namespace {

void check_dims(const Matrix& x, std::span<const double> y) {
  if (y.size() != x.rows) {
    throw std::invalid_argument("solver: response length != design row count");
  }
  if (x.cols < 1) {
    throw std::invalid_argument("solver: design must have at least one column");
  }
  if (!x.all_finite()) {
    throw std::invalid_argument("solver: non-finite design entry");
  }
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("solver: non-finite response entry");
    }
  }
}

// Largest eigenvalue of X^T X by power iteration from a fixed pseudorandom
// start vector, slightly inflated to keep the 1/L step on the safe side.
double estimate_step_denom(const Matrix& x, const Matrix* gram,
                           std::size_t iters) {
  const std::size_t p = x.cols;
  rng::SplitMix64 sm{0x5DEECE66DULL};
  std::vector<double> v(p), w(p), xn;
  if (gram == nullptr) xn.resize(x.rows);
  double norm = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    v[j] = static_cast<double>(sm.next() >> 11) * 0x1.0p-53 - 0.5;
    norm += v[j] * v[j];
  }
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;

  double lambda = 0.0;
  for (std::size_t it = 0; it < std::max<std::size_t>(iters, 1); ++it) {
    if (gram != nullptr) {
      linalg::matvec(*gram, v, w);
    } else {
      linalg::matvec(x, v, xn);
      linalg::matvec_t(x, xn, w);
    }
    lambda = linalg::dot(v, w);  // Rayleigh quotient; v is unit length
    const double wn = std::sqrt(linalg::norm2sq(w));
    if (wn == 0.0) return 0.0;   // X^T X annihilates the start vector
    for (std::size_t j = 0; j < p; ++j) v[j] = w[j] / wn;
  }
  return lambda * 1.02;
}

}  // namespace

std::vector<double> project_l1_ball(std::span<const double> v, double k) {
  if (!(k >= 0.0)) {
    throw std::invalid_argument("project_l1_ball: budget must be >= 0");
  }
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("project_l1_ball: non-finite input");
    }
  }
  const std::size_t p = v.size();
  std::vector<double> out(p, 0.0);
  if (k == 0.0 || p == 0) return out;

  double l1 = 0.0;
  for (double c : v) l1 += std::abs(c);
  if (l1 <= k) {
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }

  // Sorted-threshold rule: theta with sum max(|v_i| - theta, 0) = k.
  std::vector<double> u(p);
  for (std::size_t i = 0; i < p; ++i) u[i] = std::abs(v[i]);
  std::stable_sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    cumsum += u[j];
    const double t = (cumsum - k) / static_cast<double>(j + 1);
    if (u[j] > t) theta = t;
  }
  for (std::size_t i = 0; i < p; ++i) {
    const double mag = std::abs(v[i]) - theta;
    if (mag > 0.0) out[i] = std::copysign(mag, v[i]);
  }
  return out;
}

LassoSolver::LassoSolver(const Matrix& x, std::span<const double> y,
                         SolverConfig cfg)
    : x_(x), y_(y.begin(), y.end()), cfg_(cfg) {
  if (!(cfg_.tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
  if (cfg_.max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
  check_dims(x, y);
  use_gram_ = x_.cols <= x_.rows;
  if (use_gram_) {
    gram_ = linalg::gram(x_);
    xty_.resize(x_.cols);
    linalg::matvec_t(x_, y_, xty_);
    yty_ = linalg::norm2sq(y_);
  }
  step_denom_ = estimate_step_denom(x_, use_gram_ ? &gram_ : nullptr,
                                    cfg_.lipschitz_power_iters);
  if (!(step_denom_ > 0.0)) step_denom_ = 1.0;
}

double LassoSolver::objective(std::span<const double> beta,
                              std::span<double> scratch_n) const {
  if (use_gram_) {
    // ||y - X b||^2 = y'y - 2 b'X'y + b'(X'X)b
    double quad = 0.0;
    for (std::size_t j = 0; j < x_.cols; ++j) {
      if (beta[j] == 0.0) continue;
      quad += beta[j] * linalg::dot(gram_.row(j), beta);
    }
    return yty_ - 2.0 * linalg::dot(xty_, beta) + quad;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < x_.rows; ++i) {
    const double r = linalg::dot(x_.row(i), beta) - y_[i];
    scratch_n[i] = r;
    ss += r * r;
  }
  return ss;
}

void LassoSolver::gradient(std::span<const double> beta, std::span<double> out,
                           std::span<double> scratch_n) const {
  // g = X^T (X beta - y); pairs with the 1/sigma_max^2 step.
  if (use_gram_) {
    linalg::matvec(gram_, beta, out);
    for (std::size_t j = 0; j < x_.cols; ++j) out[j] -= xty_[j];
    return;
  }
  for (std::size_t i = 0; i < x_.rows; ++i) {
    scratch_n[i] = linalg::dot(x_.row(i), beta) - y_[i];
  }
  linalg::matvec_t(x_, scratch_n, out);
}

ConstrainedFit LassoSolver::solve(double k, std::span<const double> warm) const {
  if (!(k >= 0.0)) {
    throw std::invalid_argument("solver: budget must be >= 0");
  }
  const std::size_t p = x_.cols;
  ConstrainedFit fit;
  fit.k = k;
  fit.beta.assign(p, 0.0);

  // k = 0 or an empty index set admit only the zero fit.
  if (k == 0.0 || x_.rows == 0) {
    fit.residual_ss = linalg::norm2sq(y_);
    return fit;
  }

  std::vector<double> beta =
      warm.empty() ? std::vector<double>(p, 0.0) : project_l1_ball(warm, k);
  std::vector<double> z = beta;
  std::vector<double> g(p), next(p), scratch(use_gram_ ? 0 : x_.rows);

  double f_beta = objective(beta, scratch);
  double t = 1.0;
  double step = 1.0 / step_denom_;
  std::size_t quiet_iters = 0;

  for (std::size_t it = 1; it <= cfg_.max_iter; ++it) {
    fit.iterations = it;
    gradient(z, g, scratch);
    for (std::size_t j = 0; j < p; ++j) next[j] = z[j] - step * g[j];
    std::vector<double> cand = project_l1_ball(next, k);
    double f_cand = objective(cand, scratch);

    if (f_cand > f_beta) {
      // Momentum overshot; restart from the current best point. A plain
      // projected gradient step with step <= 1/L cannot increase the
      // objective, so halve the step until it holds.
      t = 1.0;
      gradient(beta, g, scratch);
      int backoffs = 0;
      do {
        for (std::size_t j = 0; j < p; ++j) next[j] = beta[j] - step * g[j];
        cand = project_l1_ball(next, k);
        f_cand = objective(cand, scratch);
        if (f_cand <= f_beta + 1e-12 * (1.0 + std::abs(f_beta))) break;
        step *= 0.5;
      } while (++backoffs < 60);
      if (f_cand > f_beta) {  // numerically stuck at the minimizer
        fit.converged = true;
        break;
      }
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double mom = (t - 1.0) / t_next;
    for (std::size_t j = 0; j < p; ++j) {
      z[j] = cand[j] + mom * (cand[j] - beta[j]);
    }

    // Quiet means both a tiny relative objective decrease and a tiny iterate
    // move; the objective alone cannot see coefficient error below its own
    // square root.
    double max_move = 0.0, max_coef = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      max_move = std::max(max_move, std::abs(cand[j] - beta[j]));
      max_coef = std::max(max_coef, std::abs(cand[j]));
    }
    const double decrease = f_beta - f_cand;
    const bool quiet = decrease <= cfg_.tol * (1.0 + std::abs(f_beta)) &&
                       max_move <= cfg_.tol * (1.0 + max_coef);
    beta.swap(cand);
    f_beta = f_cand;
    t = t_next;

    if (quiet) {
      if (++quiet_iters >= 2) {
        fit.converged = true;
        break;
      }
    } else {
      quiet_iters = 0;
    }
    fit.converged = false;
  }

  fit.beta = std::move(beta);
  fit.residual_ss = linalg::residual_ss(x_, y_, fit.beta);
  return fit;
}

ConstrainedFit solve_constrained_lasso(const Matrix& x, std::span<const double> y,
                                       double k, const SolverConfig& cfg) {
  return LassoSolver(x, y, cfg).solve(k);
}

LassoPath fit_path(const Matrix& x, std::span<const double> y,
                   std::span<const double> grid, const SolverConfig& cfg) {
  if (grid.empty()) throw std::invalid_argument("fit_path: empty grid");
  if (!(grid[0] >= 0.0)) {
    throw std::invalid_argument("fit_path: grid must start at a budget >= 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("fit_path: grid must be strictly increasing");
    }
  }
  LassoSolver solver(x, y, cfg);
  LassoPath path;
  path.grid.assign(grid.begin(), grid.end());
  path.fits.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::span<const double> warm =
        i == 0 ? std::span<const double>{} : std::span<const double>(path.fits.back().beta);
    path.fits.push_back(solver.solve(grid[i], warm));
  }
  return path;
}

}  // namespace cvlasso
