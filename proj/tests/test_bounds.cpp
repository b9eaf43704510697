#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "cvlasso/bounds.hpp"
#include "cvlasso/rng.hpp"

using namespace cvlasso;

namespace {

BoundInputs inputs(std::size_t n, std::size_t p, double sigma, double l_star,
                   double delta, double m, double l1, double l2) {
  return BoundInputs{n, p, sigma, l_star, delta, m, l1, l2};
}

}  // namespace

TEST_CASE("compute_m: examples") {
  SUBCASE("all entries +-1") {
    Matrix x(3, 2);
    x.data = {1, -1, -1, 1, 1, -1};
    CHECK(compute_m(x) == 1.0);
  }
  SUBCASE("hand arithmetic") {
    Matrix x(2, 2);
    x.data = {1, 2, 0, 0};
    CHECK(compute_m(x) == doctest::Approx(8.0).epsilon(1e-15));
  }
  SUBCASE("zero matrix") {
    const Matrix x(4, 3);
    CHECK(compute_m(x) == 0.0);
  }
  SUBCASE("n = 0 rejected") {
    const Matrix x(0, 2);
    CHECK_THROWS_AS(compute_m(x), std::invalid_argument);
  }
}

TEST_CASE("bound_constants: closed-form fixtures at sigma=1, L=1, M=1") {
  const auto rep = bound_constants(inputs(100, 10, 1.0, 1.0, 0.0, 1.0, 0, 0));
  CHECK(rep.big_l == 1.0);
  // 16 sqrt(6)
  CHECK(rep.c1 ==
        doctest::Approx(39.191835884530849571).epsilon(1e-12));
  CHECK(rep.c2 == doctest::Approx(153.0).epsilon(1e-12));
  // frozen from a high-precision evaluation of the printed formula
  CHECK(rep.e_n ==
        doctest::Approx(0.0083673548042207911615).epsilon(1e-9));
}

TEST_CASE("prediction_error_bound: first term vanishes when l1 = l2 = 0") {
  const auto b = inputs(50, 1, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0);
  const auto rep = bound_constants(b);
  const double want =
      rep.e_n + rep.c2 * std::sqrt(std::log(2.0) / 50.0);
  CHECK(prediction_error_bound(b) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("prediction_error_bound: frozen composite value") {
  // sigma=1, L=1, M=1, n=100, p=10, l1=l2=log(101); high-precision oracle
  // gives 16.839032... + 26.481521... + 0.008367... = 43.328920782551481.
  const double l = std::log(101.0);
  const auto b = inputs(100, 10, 1.0, 1.0, 0.0, 1.0, l, l);
  CHECK(prediction_error_bound(b) ==
        doctest::Approx(43.328920782551481).epsilon(1e-12));
}

TEST_CASE("prediction_error_bound: strictly decreasing in n") {
  double prev = 0.0;
  bool first = true;
  for (std::size_t n : {10, 31, 100, 316, 1000, 3162, 10000, 31623, 100000}) {
    const double r = prediction_error_bound(inputs(n, 20, 1.0, 1.5, 0.05, 2.0,
                                         std::log(41.0), std::log(61.0)));
    CHECK(r >= 0.0);
    if (!first) CHECK(r < prev);
    prev = r;
    first = false;
  }
}

TEST_CASE("e_n: recomputed numeric guard against exponent-sign bugs") {
  // The ((1+2^{-1/2})/2)^{n/2} factor must shrink fast: recomputed values
  // are 3.03e-6 at (n=200, L=M=1), 5.50e-6 at (n=200, L=M=2), and below
  // 1e-6 for every L <= 2, M <= 2 once n >= 240.
  CHECK(bound_constants(inputs(200, 10, 1.0, 1.0, 0.0, 1.0, 0, 0)).e_n ==
        doctest::Approx(3.026475662025383e-6).epsilon(1e-9));
  CHECK(bound_constants(inputs(200, 10, 1.0, 2.0, 0.0, 2.0, 0, 0)).e_n ==
        doctest::Approx(5.502434856816716e-6).epsilon(1e-9));
  for (std::size_t n : {240, 300, 500, 1000, 5000}) {
    for (double big_l : {0.5, 1.0, 2.0}) {
      for (double m : {0.5, 1.0, 2.0}) {
        const double e_n =
            bound_constants(inputs(n, 10, 1.0, big_l, 0.0, m, 0, 0)).e_n;
        CHECK(e_n < 1e-6);
        CHECK(e_n >= 0.0);
      }
    }
  }
  // no underflow blowup at large n
  CHECK(bound_constants(inputs(100000, 10, 1.0, 1.0, 0.0, 1.0, 0, 0)).e_n ==
        0.0);
}

TEST_CASE("variance_error_bound: examples") {
  CHECK(variance_error_bound(0.0, 1.0, 50) ==
        doctest::Approx(std::sqrt(2.0 / 50.0)).epsilon(1e-15));
  CHECK(variance_error_bound(0.25, 1.0, 100) ==
        doctest::Approx(1.3914213562373095).epsilon(1e-15));
  double prev = -1.0;
  for (double r : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double v = variance_error_bound(r, 2.0, 30);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(variance_error_bound(-0.1, 1.0, 10), std::invalid_argument);
}

TEST_CASE("gaussian_square_mgf: closed-form fixtures") {
  // mu=0, a=2: sqrt(2), the factor appearing in the variance-term analysis
  CHECK(gaussian_square_mgf(0.0, 1.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // mu=1, sigma=1, a=3: e^{1/4} sqrt(3/2)
  CHECK(gaussian_square_mgf(1.0, 1.0, 3.0) ==
        doctest::Approx(1.5726035438247595).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_square_mgf(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_square_mgf(0.0, 1.0, 0.5), std::invalid_argument);

  // a -> infinity decreases to 1
  double prev = gaussian_square_mgf(0.0, 1.0, 10.0);
  for (double a : {100.0, 1000.0}) {
    const double v = gaussian_square_mgf(0.0, 1.0, a);
    CHECK(v < prev);
    CHECK(v > 1.0);
    prev = v;
  }
}

namespace {

// Monte Carlo oracle for E exp(Z^2 / 2 a sigma^2), Z ~ N(mu, sigma^2).
// The plain-sampling estimator has infinite variance for a <= 2 (its second
// moment needs a > 2), so draws come from N(mu, s^2) with
// s^2 = sigma^2 * max(2, a/(a-1)) and are importance-weighted back; that
// keeps the variance finite on the whole test grid.
struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
};

McEstimate mgf_mc(double mu, double sigma, double a, std::size_t draws,
                  rng::Xoshiro256pp& gen) {
  const double s2 = sigma * sigma * std::max(2.0, a / (a - 1.0));
  const double s = std::sqrt(s2);
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double z = mu + s * gen.next_gaussian();
    const double d = z - mu;
    const double log_w = std::log(s / sigma) -
                         d * d / (2.0 * sigma * sigma) + d * d / (2.0 * s2);
    const double v = std::exp(z * z / (2.0 * a * sigma * sigma) + log_w);
    sum += v;
    sumsq += v * v;
  }
  McEstimate out;
  out.mean = sum / static_cast<double>(draws);
  // the proposal is exact for (mu=0, a=2); clamp the cancellation residue
  const double var = std::max(
      0.0, sumsq / static_cast<double>(draws) - out.mean * out.mean);
  out.se = std::sqrt(var / static_cast<double>(draws));
  return out;
}

}  // namespace

TEST_CASE("gaussian_square_mgf: Monte Carlo agreement on a parameter grid") {
  rng::Xoshiro256pp gen(31337);
  for (double a : {1.5, 2.0, 4.0}) {
    for (double mu : {0.0, 1.0}) {
      for (double sigma : {0.5, 1.0}) {
        const auto mc = mgf_mc(mu, sigma, a, 1'000'000, gen);
        const double want = gaussian_square_mgf(mu, sigma, a);
        CHECK(std::abs(mc.mean - want) <= 3.0 * mc.se + 1e-9 * want);
      }
    }
  }
}

TEST_CASE("subgaussian_max_bound: examples") {
  CHECK(subgaussian_max_bound(1, 3.0).first == 0.0);
  CHECK(subgaussian_max_bound(2, 1.0).first ==
        doctest::Approx(1.1774100225154747).epsilon(1e-12));
  CHECK(subgaussian_max_bound(1000, 2.0).first ==
        doctest::Approx(7.4338443776996769).epsilon(1e-12));
  CHECK(subgaussian_max_bound(2, 1.0).second ==
        doctest::Approx(std::sqrt(2.0 * std::log(4.0))).epsilon(1e-12));
  CHECK_THROWS_AS(subgaussian_max_bound(0, 1.0), std::invalid_argument);
}

TEST_CASE("subgaussian_max_bound: dominates empirical Gaussian maxima") {
  rng::Xoshiro256pp gen(424242);
  for (std::size_t m : {1, 10, 100}) {
    const std::size_t reps = 100'000;
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      double mx = -INFINITY;
      for (std::size_t i = 0; i < m; ++i) {
        mx = std::max(mx, gen.next_gaussian());
      }
      sum += mx;
    }
    const double empirical = sum / reps;
    CHECK(empirical <= subgaussian_max_bound(m, 1.0).first);
  }
}

TEST_CASE("hoeffding_mgf_bound: examples and Rademacher MC domination") {
  CHECK(hoeffding_mgf_bound(std::vector<double>{1.0, 2.0}, 0.0) == 1.0);
  CHECK(hoeffding_mgf_bound(std::vector<double>{1.0, 1.0}, 1.0) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(hoeffding_mgf_bound(std::vector<double>{-1.0}, 1.0),
                  std::invalid_argument);

  rng::Xoshiro256pp gen(515151);
  const double theta = 0.7;
  const std::vector<double> gammas{1.0, 1.0, 1.0};
  const std::size_t draws = 1'000'000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < gammas.size(); ++j) {
      s += gen.next_coin() ? 1.0 : -1.0;
    }
    const double v = std::exp(theta * s);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sumsq / draws - mean * mean) / draws);
  CHECK(mean <= hoeffding_mgf_bound(gammas, theta) * (1.0 + 3.0 * se));
}

TEST_CASE("bounds: input validation") {
  CHECK_THROWS_AS(bound_constants(inputs(0, 10, 1, 1, 0, 1, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bound_constants(inputs(10, 0, 1, 1, 0, 1, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bound_constants(inputs(10, 10, -1, 1, 0, 1, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bound_constants(inputs(10, 10, 1, -1, 0, 1, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bound_constants(inputs(10, 10, 1, 1, 0, -1, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("bound report: fields compose exactly") {
  const auto b = inputs(321, 17, 0.8, 1.2, 0.05, 2.5, 1.1, 0.7);
  const auto rep = bound_constants(b);
  const double composed =
      rep.c1 * (std::sqrt(b.l1) + std::sqrt(b.l2)) / std::sqrt(321.0) +
      rep.c2 * std::sqrt(std::log(34.0) / 321.0) + rep.e_n;
  CHECK(rep.r == composed);
  CHECK(rep.sigma_bound == variance_error_bound(rep.r, b.sigma, b.n));
  CHECK(rep.big_l == doctest::Approx(1.25).epsilon(1e-15));
}
