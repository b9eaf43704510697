#include "cvlasso/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace cvlasso {

bool Matrix::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix Matrix::select_rows(const std::vector<std::uint8_t>& membership,
                           bool keep) const {
  if (membership.size() != rows) {
    throw std::invalid_argument("select_rows: membership length != row count");
  }
  std::size_t count = 0;
  for (std::uint8_t m : membership) {
    if ((m != 0) == keep) ++count;
  }
  Matrix out(count, cols);
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if ((membership[i] != 0) == keep) {
      auto src = row(i);
      auto dst = out.row(r++);
      for (std::size_t j = 0; j < cols; ++j) dst[j] = src[j];
    }
  }
  return out;
}

namespace linalg {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2sq(std::span<const double> v) { return dot(v, v); }

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

void matvec(const Matrix& a, std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < a.rows; ++i) out[i] = dot(a.row(i), x);
}

void matvec_t(const Matrix& a, std::span<const double> x, std::span<double> out) {
  for (std::size_t j = 0; j < a.cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double xi = x[i];
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols; ++j) out[j] += xi * r[j];
  }
}

Matrix gram(const Matrix& a) {
  Matrix g(a.cols, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols; ++j) {
      const double rj = r[j];
      if (rj == 0.0) continue;
      double* grow = g.data.data() + j * a.cols;
      for (std::size_t l = j; l < a.cols; ++l) grow[l] += rj * r[l];
    }
  }
  // mirror the upper triangle
  for (std::size_t j = 0; j < a.cols; ++j) {
    for (std::size_t l = j + 1; l < a.cols; ++l) g.at(l, j) = g.at(j, l);
  }
  return g;
}

Matrix gram_outer(const Matrix& a) {
  Matrix g(a.rows, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t l = i; l < a.rows; ++l) {
      const double v = dot(a.row(i), a.row(l));
      g.at(i, l) = v;
      g.at(l, i) = v;
    }
  }
  return g;
}

double residual_ss(const Matrix& x, std::span<const double> y,
                   std::span<const double> beta) {
  double ss = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double r = y[i] - dot(x.row(i), beta);
    ss += r * r;
  }
  return ss;
}

std::vector<double> solve_spd_plus_identity(const Matrix& a,
                                            std::span<const double> b) {
  const std::size_t m = a.rows;
  if (a.cols != m || b.size() != m) {
    throw std::invalid_argument("solve_spd_plus_identity: shape mismatch");
  }
  // Cholesky of (A + I); the +I keeps the factorization strictly positive.
  Matrix l(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a.at(i, j) + (i == j ? 1.0 : 0.0);
      for (std::size_t t = 0; t < j; ++t) s -= l.at(i, t) * l.at(j, t);
      if (i == j) {
        if (s <= 0.0) {
          throw std::invalid_argument(
              "solve_spd_plus_identity: matrix not positive definite");
        }
        l.at(i, j) = std::sqrt(s);
      } else {
        l.at(i, j) = s / l.at(j, j);
      }
    }
  }
  std::vector<double> z(b.begin(), b.end());
  for (std::size_t i = 0; i < m; ++i) {  // L z = b
    double s = z[i];
    for (std::size_t t = 0; t < i; ++t) s -= l.at(i, t) * z[t];
    z[i] = s / l.at(i, i);
  }
  for (std::size_t ii = m; ii-- > 0;) {  // L^T out = z
    double s = z[ii];
    for (std::size_t t = ii + 1; t < m; ++t) s -= l.at(t, ii) * z[t];
    z[ii] = s / l.at(ii, ii);
  }
  return z;
}

}  // namespace linalg
}  // namespace cvlasso
