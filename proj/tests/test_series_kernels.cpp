#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/series_kernels.hpp"
#include "qdarwin/spectral.hpp"

using namespace qdarwin;

// Frozen with a 30-digit mpmath evaluation of the series.
constexpr double kHHalf = 0.276651649860257858685;
constexpr double kBinary06 = 0.500402423538187879533;
constexpr double kE3InvE = 0.972845928040481538999;

TEST_CASE("h kernel: endpoints and frozen value") {
  CHECK(h_kernel(0.0) == 0.0);
  CHECK(h_kernel(1.0) == kLn2);
  CHECK(h_kernel(0.5) == doctest::Approx(kHHalf).epsilon(1e-14));
  CHECK_THROWS_AS((void)h_kernel(-1e-9), std::domain_error);
  CHECK_THROWS_AS((void)h_kernel(1.0 + 1e-9), std::domain_error);
  CHECK_THROWS_AS((void)h_kernel(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("h kernel: bounds, monotonicity and small-argument slope") {
  double prev = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = i / 2000.0;
    const double v = h_kernel(x);
    CHECK(v >= 0.5 * x - 1e-16);
    CHECK(v <= x * kLn2 + 1e-16);
    CHECK(v >= prev);
    prev = v;
  }
  for (double x : {1e-12, 1e-8, 1e-5, 1e-4}) CHECK(std::abs(h_kernel(x) / (0.5 * x) - 1.0) < 0.01);
}

TEST_CASE("h kernel: continuous across the series switch") {
  const double below = std::nextafter(kHSeriesThreshold, 0.0);
  CHECK(std::abs(h_kernel(below) - h_kernel(kHSeriesThreshold)) < 1e-17);
}

TEST_CASE("h series bracket contains the closed form") {
  for (double x : {0.001, 0.01, 0.2, 0.5, 0.9, 0.99}) {
    for (int n : {1, 3, 10, 40}) {
      const SeriesBracket b = h_series(x, n);
      CHECK(h_kernel(x) >= b.partial - 1e-15);
      CHECK(h_kernel(x) <= b.partial + b.tail_bound + 1e-15);
    }
  }
}

TEST_CASE("deficit near one keeps precision where 1 - eps rounds to 1") {
  CHECK(h_deficit_near_one(0.0) == 0.0);
  CHECK(h_deficit_near_one(1.0) == doctest::Approx(kLn2));
  // ln 2 - h(1 - e) ~ (e/4) ln(4/e) + e/4 for small e
  const double eps = 1e-20;
  const double leading = 0.25 * eps * (std::log(4.0 / eps) + 1.0);
  CHECK(h_deficit_near_one(eps) == doctest::Approx(leading).epsilon(1e-6));
  for (double e : {0.3, 0.05, 1e-4}) CHECK(h_deficit_near_one(e) == doctest::Approx(kLn2 - h_kernel(1.0 - e)).epsilon(1e-10));
}

TEST_CASE("binary entropy from gap matches the h identity") {
  CHECK(binary_entropy_from_gap(0.0) == doctest::Approx(kLn2));
  CHECK(binary_entropy_from_gap(1.0) == 0.0);
  CHECK(binary_entropy_from_gap(0.6) == doctest::Approx(kBinary06).epsilon(1e-13));
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(std::abs(binary_entropy_from_gap(x) - (kLn2 - h_kernel(x * x))) < 1e-12);
  }
  CHECK_THROWS_AS((void)binary_entropy_from_gap(1.5), std::domain_error);
}

TEST_CASE("M-spectrum entropy: limits, M = 2 reduction and diagonalisation") {
  CHECK(m_spectrum_entropy(0.0, 5) == doctest::Approx(std::log(5.0)));
  CHECK(m_spectrum_entropy(1.0, 3) == doctest::Approx(0.0));
  CHECK(m_spectrum_entropy(std::exp(-1.0), 3) == doctest::Approx(kE3InvE).epsilon(1e-13));
  for (int i = 0; i <= 50; ++i) {
    const double x = i / 50.0;
    CHECK(std::abs(m_spectrum_entropy(x, 2) - binary_entropy_from_gap(x)) < 1e-12);
  }
  for (int m : {3, 4, 7}) {
    for (double x : {0.0, 0.2, 0.77, 1.0}) {
      Eigen::MatrixXd rho = Eigen::MatrixXd::Constant(m, m, x / m);
      rho.diagonal().setConstant(1.0 / m);
      CHECK(std::abs(symmetric_matrix_entropy(rho) - m_spectrum_entropy(x, m)) < 1e-12);
    }
  }
  CHECK_THROWS_AS((void)m_spectrum_entropy(0.5, 1), std::domain_error);
}

TEST_CASE("spectrum entropy conventions") {
  const std::vector<double> uniform(4, 0.25);
  CHECK(spectrum_entropy(uniform) == doctest::Approx(std::log(4.0)));
  const std::vector<double> pure{1.0, 0.0, 0.0};
  CHECK(spectrum_entropy(pure) == 0.0);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS((void)symmetric_matrix_entropy(bad), std::domain_error);
}
