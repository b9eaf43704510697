#include "cvlasso/csvio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cvlasso/errors.hpp"

namespace cvlasso {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

bool parse_field(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

}  // namespace

Matrix load_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t cols = 0;
  bool saw_any_line = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::ifstream::traits_type::eof() &&
        !rows.empty()) {
      break;  // trailing newline
    }
    saw_any_line = true;
    const auto fields = split_fields(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_field(fields[j], values[j])) {
        numeric = false;
        bad_col = j;
        break;
      }
      if (!std::isfinite(values[j])) {
        throw DataError(path + ":" + std::to_string(lineno) + ": column " +
                        std::to_string(j + 1) + ": non-finite value '" +
                        fields[j] + "'");
      }
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header row
      throw DataError(path + ":" + std::to_string(lineno) + ": column " +
                      std::to_string(bad_col + 1) + ": non-numeric cell '" +
                      fields[bad_col] + "'");
    }
    if (cols == 0) {
      cols = values.size();
    } else if (values.size() != cols) {
      throw DataError(path + ":" + std::to_string(lineno) + ": ragged row (" +
                      std::to_string(values.size()) + " fields, expected " +
                      std::to_string(cols) + ")");
    }
    rows.push_back(std::move(values));
  }
  if (!saw_any_line) throw DataError(path + ": empty file");
  if (rows.empty()) throw DataError(path + ": no data rows");

  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<double> load_csv_vector(const std::string& path) {
  const Matrix m = load_csv_matrix(path);
  if (m.cols != 1) {
    throw DataError(path + ": expected a single column, found " +
                    std::to_string(m.cols));
  }
  return m.data;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j > 0) out << ',';
      out << format_double(m.at(i, j));
    }
    out << '\n';
  }
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace cvlasso
