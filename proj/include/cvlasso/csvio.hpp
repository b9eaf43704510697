#pragma once

#include <string>
#include <vector>

#include "cvlasso/matrix.hpp"

namespace cvlasso {

/// Strict CSV parse: comma-separated, LF or CRLF line endings, no ragged
/// rows, decimal-point floats. A non-numeric first row is treated as a
/// header and skipped. Throws DataError naming the offending line or cell.
Matrix load_csv_matrix(const std::string& path);

/// Single-column CSV as a vector.
std::vector<double> load_csv_vector(const std::string& path);

/// Doubles rendered with 17 significant digits so a written value reparses
/// to the identical bits.
std::string format_double(double v);

void write_matrix_csv(const std::string& path, const Matrix& m);

}  // namespace cvlasso
