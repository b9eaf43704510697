#include "cvlasso/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace cvlasso {

namespace {

void validate(const BoundInputs& b) {
  if (b.n < 1) throw std::invalid_argument("bounds: n must be >= 1");
  if (b.p < 1) throw std::invalid_argument("bounds: p must be >= 1");
  if (!(b.sigma >= 0.0)) throw std::invalid_argument("bounds: sigma must be >= 0");
  if (!(b.l_star >= 0.0)) throw std::invalid_argument("bounds: |beta*|_1 must be >= 0");
  if (!(b.delta >= 0.0)) throw std::invalid_argument("bounds: delta must be >= 0");
  if (!(b.m_stat >= 0.0)) throw std::invalid_argument("bounds: M must be >= 0");
  if (!(b.l1 >= 0.0) || !(b.l2 >= 0.0)) {
    throw std::invalid_argument("bounds: l1, l2 must be >= 0");
  }
}

}  // namespace

double compute_m(const Matrix& x) {
  if (x.rows < 1) throw std::invalid_argument("compute_m: n must be >= 1");
  double m = 0.0;
  for (std::size_t j = 0; j < x.cols; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      const double v = x.at(i, j);
      col += (v * v) * (v * v);
    }
    col /= static_cast<double>(x.rows);
    if (col > m) m = col;
  }
  return m;
}

BoundReport bound_constants(const BoundInputs& b) {
  validate(b);
  BoundReport rep;
  const double n = static_cast<double>(b.n);
  const double big_l = b.l_star + b.delta;
  const double sig2 = b.sigma * b.sigma;
  const double sig4 = sig2 * sig2;
  const double m_half = std::sqrt(b.m_stat);
  const double m_quarter = std::sqrt(m_half);
  const double l2m = big_l * big_l * m_half;

  rep.big_l = big_l;
  rep.c1 = 16.0 * std::sqrt(4.0 * sig4 + 2.0 * l2m * sig2);
  rep.c2 = 96.0 * l2m + 57.0 * big_l * m_quarter * b.sigma;

  // e_n in log space; the ((1+2^{-1/2})/2)^{n/2} factor underflows long
  // before the leading factor matters.
  const double inner = (n + 5.0) * sig4 / n + (n + 1.0) * sig2 * l2m / n;
  if (inner > 0.0) {
    const double log_en = std::log(16.0) + 0.5 * std::log(inner) +
                          0.5 * n * std::log((1.0 + std::sqrt(0.5)) / 2.0);
    rep.e_n = std::exp(log_en);
  } else {
    rep.e_n = 0.0;  // sigma = 0 degenerates every term
  }

  rep.r = rep.c1 * (std::sqrt(b.l1) + std::sqrt(b.l2)) / std::sqrt(n) +
          rep.c2 * std::sqrt(std::log(2.0 * static_cast<double>(b.p)) / n) +
          rep.e_n;
  rep.sigma_bound = variance_error_bound(rep.r, b.sigma, b.n);
  return rep;
}

double prediction_error_bound(const BoundInputs& b) { return bound_constants(b).r; }

double variance_error_bound(double r, double sigma, std::size_t n) {
  if (!(r >= 0.0)) throw std::invalid_argument("variance_error_bound: r must be >= 0");
  if (n < 1) throw std::invalid_argument("variance_error_bound: n must be >= 1");
  const double nn = static_cast<double>(n);
  return sigma * sigma * std::sqrt(2.0 / nn) + 2.0 * sigma * std::sqrt(r) + r;
}

double gaussian_square_mgf(double mu, double sigma, double a) {
  if (!(a > 1.0)) {
    throw std::invalid_argument(
        "gaussian_square_mgf: requires a > 1 (the integral diverges otherwise)");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_square_mgf: sigma must be > 0");
  }
  return std::exp(mu * mu / (2.0 * (a - 1.0) * sigma * sigma)) *
         std::sqrt(a / (a - 1.0));
}

std::pair<double, double> subgaussian_max_bound(std::size_t m, double sigma) {
  if (m < 1) throw std::invalid_argument("subgaussian_max_bound: m must be >= 1");
  const double mm = static_cast<double>(m);
  return {sigma * std::sqrt(2.0 * std::log(mm)),
          sigma * std::sqrt(2.0 * std::log(2.0 * mm))};
}

double hoeffding_mgf_bound(std::span<const double> gammas, double theta) {
  double sumsq = 0.0;
  for (double g : gammas) {
    if (!(g >= 0.0)) {
      throw std::invalid_argument("hoeffding_mgf_bound: gamma must be >= 0");
    }
    sumsq += g * g;
  }
  return std::exp(0.5 * theta * theta * sumsq);
}

}  // namespace cvlasso
