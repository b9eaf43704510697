#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "cvlasso/csvio.hpp"
#include "cvlasso/errors.hpp"
#include "cvlasso/rng.hpp"

using namespace cvlasso;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }

  void write(const std::string& contents) const {
    std::ofstream out(path, std::ios::binary);
    out << contents;
  }
};

}  // namespace

TEST_CASE("load_csv_matrix: plain numeric file") {
  TempFile f("cvlasso_csv_plain.csv");
  f.write("1,2\n3,4\n");
  const Matrix m = load_csv_matrix(f.path);
  CHECK(m.rows == 2);
  CHECK(m.cols == 2);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 2.0);
  CHECK(m.at(1, 0) == 3.0);
  CHECK(m.at(1, 1) == 4.0);
}

TEST_CASE("load_csv_matrix: header row is auto-detected") {
  TempFile f("cvlasso_csv_header.csv");
  f.write("a,b\n1,2\n");
  const Matrix m = load_csv_matrix(f.path);
  CHECK(m.rows == 1);
  CHECK(m.cols == 2);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 2.0);
}

TEST_CASE("load_csv_matrix: ragged row names the line") {
  TempFile f("cvlasso_csv_ragged.csv");
  f.write("1,2\n3\n");
  try {
    load_csv_matrix(f.path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("load_csv_matrix: non-numeric cell names the coordinates") {
  TempFile f("cvlasso_csv_cell.csv");
  f.write("1,2\n3,zap\n");
  try {
    load_csv_matrix(f.path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
    CHECK(msg.find("zap") != std::string::npos);
  }
}

TEST_CASE("load_csv_matrix: empty file is rejected") {
  TempFile f("cvlasso_csv_empty.csv");
  f.write("");
  CHECK_THROWS_AS(load_csv_matrix(f.path), DataError);
  CHECK_THROWS_AS(load_csv_matrix("/nonexistent/x.csv"), DataError);
}

TEST_CASE("load_csv_matrix: header-only file is rejected") {
  TempFile f("cvlasso_csv_header_only.csv");
  f.write("a,b\n");
  CHECK_THROWS_AS(load_csv_matrix(f.path), DataError);
}

TEST_CASE("load_csv_matrix: CRLF endings are accepted") {
  TempFile f("cvlasso_csv_crlf.csv");
  f.write("1,2\r\n3,4\r\n");
  const Matrix m = load_csv_matrix(f.path);
  CHECK(m.rows == 2);
  CHECK(m.at(1, 1) == 4.0);
}

TEST_CASE("load_csv_matrix: non-finite values are rejected") {
  TempFile f("cvlasso_csv_inf.csv");
  f.write("1,inf\n");
  CHECK_THROWS_AS(load_csv_matrix(f.path), DataError);
}

TEST_CASE("load_csv_vector: single column only") {
  TempFile f("cvlasso_csv_vec.csv");
  f.write("1.5\n-2.5\n");
  const auto v = load_csv_vector(f.path);
  CHECK(v == std::vector<double>{1.5, -2.5});

  TempFile g("cvlasso_csv_vec2.csv");
  g.write("1,2\n");
  CHECK_THROWS_AS(load_csv_vector(g.path), DataError);
}

TEST_CASE("write_matrix_csv: round trip is bitwise exact") {
  rng::Xoshiro256pp gen(616161);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen.next() % 8;
    const std::size_t p = 1 + gen.next() % 8;
    Matrix m(n, p);
    for (auto& v : m.data) {
      // mix magnitudes, including subnormal-ish and large values
      const double mag = std::exp(40.0 * (gen.next_unit() - 0.5));
      v = (gen.next_coin() ? 1.0 : -1.0) * mag * gen.next_unit();
    }
    TempFile f("cvlasso_csv_roundtrip.csv");
    write_matrix_csv(f.path, m);
    const Matrix back = load_csv_matrix(f.path);
    REQUIRE(back.rows == m.rows);
    REQUIRE(back.cols == m.cols);
    CHECK(back.data == m.data);
  }
}

TEST_CASE("format_double: 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
}
