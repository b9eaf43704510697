#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cvlasso {

/// Dense row-major matrix. Rows are observations, columns are predictors.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows*cols entries, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) {
    return {data.data() + i * cols, cols};
  }

  bool all_finite() const;

  /// Rows i with membership[i] == keep, in their original order.
  Matrix select_rows(const std::vector<std::uint8_t>& membership, bool keep) const;
};

namespace linalg {

double dot(std::span<const double> a, std::span<const double> b);
double norm2sq(std::span<const double> v);
double l1_norm(std::span<const double> v);

/// out = A x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> out);
/// out = A^T x
void matvec_t(const Matrix& a, std::span<const double> x, std::span<double> out);

/// A^T A, cols x cols.
Matrix gram(const Matrix& a);
/// A A^T, rows x rows.
Matrix gram_outer(const Matrix& a);

/// ||y - X beta||^2 computed directly from the residual vector.
double residual_ss(const Matrix& x, std::span<const double> y,
                   std::span<const double> beta);

/// Solves (A + I) z = b for symmetric positive semidefinite A via Cholesky.
std::vector<double> solve_spd_plus_identity(const Matrix& a,
                                            std::span<const double> b);

}  // namespace linalg
}  // namespace cvlasso
