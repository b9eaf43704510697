#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "cvlasso/matrix.hpp"

namespace cvlasso {

struct BoundInputs {
  std::size_t n = 1;
  std::size_t p = 1;
  double sigma = 1.0;   // noise standard deviation
  double l_star = 0.0;  // |beta*|_1
  double delta = 0.0;
  double m_stat = 1.0;  // max over columns of mean fourth power
  double l1 = 0.0;      // E log(N1 + 1)
  double l2 = 0.0;      // E log(N2 + 1)
};

struct BoundReport {
  double big_l = 0.0;       // l_star + delta
  double c1 = 0.0;
  double c2 = 0.0;
  double e_n = 0.0;
  double r = 0.0;           // c1*(sqrt(l1)+sqrt(l2))/sqrt(n) + c2*sqrt(log(2p)/n) + e_n
  double sigma_bound = 0.0; // sigma^2*sqrt(2/n) + 2*sigma*sqrt(r) + r
};

/// max over columns of (1/n) sum_i x_ij^4. Requires n >= 1.
double compute_m(const Matrix& x);

/// Evaluates every closed-form constant for the given inputs:
///   c1  = 16 (4 sigma^4 + 2 L^2 M^{1/2} sigma^2)^{1/2}
///   c2  = 96 L^2 M^{1/2} + 57 L M^{1/4} sigma
///   e_n = 16 ((n+5) sigma^4 / n + (n+1) sigma^2 L^2 M^{1/2} / n)^{1/2}
///           * ((1 + 2^{-1/2}) / 2)^{n/2}
/// with L = l_star + delta; e_n is evaluated in log space.
BoundReport bound_constants(const BoundInputs& b);

/// The composed prediction-error bound (the `r` field of the report).
double prediction_error_bound(const BoundInputs& b);

/// sigma^2 sqrt(2/n) + 2 sigma sqrt(r) + r.
double variance_error_bound(double r, double sigma, std::size_t n);

/// E exp(Z^2 / (2 a sigma^2)) for Z ~ N(mu, sigma^2):
/// exp(mu^2 / (2 (a-1) sigma^2)) * sqrt(a / (a-1)). Requires a > 1.
double gaussian_square_mgf(double mu, double sigma, double a);

/// {sigma sqrt(2 log m), sigma sqrt(2 log 2m)}: expected-maximum bounds for
/// m sigma-subgaussian variables, one- and two-sided.
std::pair<double, double> subgaussian_max_bound(std::size_t m, double sigma);

/// exp(theta^2 sum gamma_i^2 / 2): MGF bound for a sum of independent mean-zero
/// variables with |xi_i| <= gamma_i.
double hoeffding_mgf_bound(std::span<const double> gammas, double theta);

}  // namespace cvlasso
