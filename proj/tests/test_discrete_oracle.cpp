#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/discrete_oracle.hpp"
#include "qdarwin/receptivity.hpp"
#include "qdarwin/spectral.hpp"

using namespace qdarwin;

namespace {
constexpr double kPi = std::numbers::pi;

double total_weight(const FragmentSpectrum& s) {
  double t = 0.0;
  for (const auto& l : s) t += l.value * l.multiplicity;
  return t;
}

// Explicit enumeration over every index vector, for small D and fN.
double brute_force_entropy(const std::vector<double>& b, int fN) {
  const int d = static_cast<int>(b.size());
  int count = 1;
  for (int i = 0; i < fN; ++i) count *= d;
  double h = 0.0;
  for (int code = 0; code < count; ++code) {
    double prod = 1.0;
    for (int i = 0, c = code; i < fN; ++i, c /= d) prod *= std::sqrt(1.0 + b[c % d]);
    for (double sign : {1.0, -1.0}) h += neg_x_log_x((1.0 + sign * prod) / (2.0 * count));
  }
  return h;
}
}  // namespace

TEST_CASE("fragment spectrum: normalisation and simple cases") {
  const std::vector<double> zero(4, 0.0);
  const FragmentSpectrum s0 = fragment_eigenvalues(zero, 3);
  CHECK(std::abs(total_weight(s0) - 1.0) < 1e-12);
  CHECK(fragment_entropy_exact(s0) == doctest::Approx(3.0 * std::log(4.0)).epsilon(1e-13));
  CHECK(fragment_entropy_change_exact(zero, 3) == 0.0);

  const std::vector<double> one{-0.3};
  const FragmentSpectrum s1 = fragment_eigenvalues(one, 1);
  const double r = std::sqrt(0.7);
  std::vector<double> vals;
  for (const auto& l : s1) vals.push_back(l.value);
  std::sort(vals.begin(), vals.end());
  CHECK(vals.front() == doctest::Approx(0.5 * (1.0 - r)));
  CHECK(vals.back() == doctest::Approx(0.5 * (1.0 + r)));

  for (int fN : {1, 2, 4, 6}) {
    const std::vector<double> b{-0.02, -0.01, -0.005, -0.3, 0.0, -1.0, -0.5, -0.07};
    CHECK(std::abs(total_weight(fragment_eigenvalues(b, fN)) - 1.0) < 1e-12);
  }
}

TEST_CASE("grouped spectrum matches explicit enumeration") {
  const std::vector<double> b{-0.02, -0.01, -0.005};
  for (int fN : {1, 2, 3, 5}) {
    const double brute = brute_force_entropy(b, fN);
    CHECK(fragment_entropy_exact(fragment_eigenvalues(b, fN)) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(fragment_entropy_change_exact(b, fN) ==
          doctest::Approx(brute - fN * std::log(3.0)).epsilon(1e-9));
  }
}

TEST_CASE("first-order form is close for small b") {
  const std::vector<double> b{-0.02, -0.01, -0.005};
  const double exact = fragment_entropy_change_exact(b, 2);
  const double approx = fragment_entropy_change_analytic(b, 2);
  CHECK(std::abs(exact - approx) < 1e-3);
  // m-series form of the first-order entropy change
  const double z = (b[0] + b[1] + b[2]) / 3.0;
  double series = kLn2;
  for (int m = 1; m < 2000; ++m) series -= std::exp(m * z * 2.0) / (2.0 * m * (2.0 * m - 1.0));
  CHECK(approx == doctest::Approx(series).epsilon(1e-6));
}

TEST_CASE("degenerate spectra converge at second order") {
  const std::vector<double> b(3, -0.01);
  std::vector<double> gaps;
  for (double scale : {1.0, 0.5, 0.25, 0.125}) {
    std::vector<double> s = b;
    for (double& v : s) v *= scale;
    gaps.push_back(std::abs(fragment_entropy_change_exact(s, 2) - fragment_entropy_change_analytic(s, 2)));
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i - 1] / gaps[i] > 3.0);
}

TEST_CASE("resource cap and input validation") {
  const std::vector<double> b(10, -0.01);
  CHECK_THROWS_AS((void)fragment_eigenvalues(b, 8), ResourceCapExceeded);
  CHECK_THROWS_AS((void)fragment_eigenvalues(b, 3, 100.0), ResourceCapExceeded);
  const std::vector<double> positive{0.1};
  CHECK_THROWS((void)fragment_eigenvalues(positive, 1));
  const FragmentSpectrum bad{{0.3, 2.0}};
  CHECK_THROWS_AS((void)fragment_entropy_exact(bad), std::domain_error);
}

TEST_CASE("perturbation matrix from a scattering block") {
  const ScatteringGrid grid = make_scattering_grid(kPi / 2.0, 0.0, 4, 8);
  const Eigen::MatrixXcd u = scattering_unitary(grid, 0.05);
  CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm() < 1e-12);
  std::vector<Eigen::Index> inside;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (grid.in_region[n]) inside.push_back(static_cast<Eigen::Index>(n));
  }
  const Eigen::MatrixXcd w = u(inside, inside);
  const DiscreteEnv env = DiscreteEnv::from_matrix(perturbation_matrix(w), 2);
  for (double v : env.b) {
    CHECK(v <= 1e-12);
    CHECK(v >= -1.0 - 1e-12);
  }
  CHECK_THROWS((void)DiscreteEnv::from_matrix(Eigen::MatrixXcd::Identity(2, 2), 1));
}

TEST_CASE("discrete gamma") {
  const std::vector<std::complex<double>> ones(5, 1.0);
  const std::vector<double> w(5, 0.2);
  CHECK(discrete_gamma(ones, w) == 1.0);
  const std::vector<std::complex<double>> damped(5, 1.0 - 1e-4);
  CHECK(discrete_gamma(damped, w) == doctest::Approx((1.0 - 1e-4) * (1.0 - 1e-4)).epsilon(1e-15));
  const std::vector<std::complex<double>> big{1.5};
  const std::vector<double> w1{1.0};
  CHECK_THROWS((void)discrete_gamma(big, w1));
}

TEST_CASE("first-order overlap") {
  Scenario s;
  s.radius_m = 1e-7;
  s.permittivity = 4.0;
  s.dx_m = 1e-7;
  s.temperature_K = 300.0;
  const double k = 1e-27;
  const double side = 1.0 - matrix_element_diag(k, kPi / 2.0, s, 1.0, 1.0);
  const double axis = 1.0 - matrix_element_diag(k, 0.0, s, 1.0, 1.0);
  CHECK(side / axis == doctest::Approx(3.0 / 14.0));
  CHECK(1.0 - matrix_element_diag(k, 0.4, s, 1.0, 2.0) == doctest::Approx(2.0 * (1.0 - matrix_element_diag(k, 0.4, s, 1.0, 1.0))));
  CHECK(matrix_element_diag(k, 0.4, s, 1e300, 1.0) == 1.0);
}

TEST_CASE("Planck quadrature") {
  const PlanckQuadrature q = PlanckQuadrature::make();
  CHECK(q.x.size() == 32);
  double total = 0.0;
  for (double w : q.weights) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  // <x^p> = Gamma(p + 3) zeta(p + 3) / (2 zeta(3))
  CHECK(q.moment(1.0) == doctest::Approx(6.0 * constants::zeta4 / (2.0 * constants::zeta3)).epsilon(1e-10));
  CHECK(q.moment(6.0) ==
        doctest::Approx(constants::factorial8 * constants::zeta9 / (2.0 * constants::zeta3)).epsilon(1e-8));
}

TEST_CASE("discrete receptivity: full sky, single direction and disk refinement") {
  const SpectralSlice slice{1.0, 1e-4};
  const auto full = discrete_alpha(make_scattering_grid(kPi, 0.0, 4, 8), std::span(&slice, 1));
  REQUIRE(full.alpha.has_value());
  CHECK(std::abs(*full.alpha) < 1e-12);

  ScatteringGrid one = make_scattering_grid(kPi, 0.0, 4, 8);
  std::fill(one.in_region.begin(), one.in_region.end(), 0);
  one.in_region[3] = 1;
  const auto single = discrete_alpha(one, std::span(&slice, 1));
  REQUIRE(single.alpha.has_value());
  CHECK(*single.alpha == doctest::Approx(1.0).epsilon(1e-6));

  std::vector<double> errors;
  for (int n : {8, 16}) {
    const auto r = discrete_alpha(make_scattering_grid(kPi / 2.0, 0.0, n, 2 * n), std::span(&slice, 1));
    errors.push_back(std::abs(*r.alpha - alpha_disk(kPi / 2.0, 0.0)));
  }
  CHECK(errors[0] / errors[1] > 3.5);

  ScatteringGrid empty = make_scattering_grid(kPi / 2.0, 0.0, 4, 8);
  std::fill(empty.in_region.begin(), empty.in_region.end(), 0);
  CHECK_THROWS((void)discrete_alpha(empty, std::span(&slice, 1)));
  const SpectralSlice idle{1.0, 0.0};
  CHECK_FALSE(discrete_alpha(make_scattering_grid(kPi / 2.0, 0.0, 4, 8), std::span(&idle, 1)).alpha.has_value());
}

TEST_CASE("general mutual information reproduces the closed forms") {
  const std::vector<double> p2{0.5, 0.5};
  const std::vector<double> p3(3, 1.0 / 3.0);
  for (double t : {0.5, 5.0, 40.0}) {
    const auto g = DecoherenceFactor::from_time(t);
    for (double f : {0.1, 0.3, 0.5, 0.8}) {
      CHECK(std::abs(mi_exact_general(DecoherenceMatrix::uniform(2, g.value()), p2, f) -
                     mutual_information(g, 1.0, f)) < 1e-10);
      CHECK(std::abs(mi_exact_general(DecoherenceMatrix::uniform(3, g.value()), p3, f) - mi_mway(g, f, 3)) < 1e-10);
    }
  }
  const std::vector<double> pure{1.0, 0.0};
  CHECK(std::abs(mi_exact_general(DecoherenceMatrix::uniform(2, 0.1), pure, 0.3)) < 1e-15);
  const std::vector<double> unbalanced{0.8, 0.2};
  const auto g = DecoherenceFactor::from_time(3.0);
  CHECK(std::abs(mi_exact_general(DecoherenceMatrix::uniform(2, g.value()), unbalanced, 0.3) -
                 mi_unbalanced(g, 0.3, Imbalance::from_probabilities(0.8, 0.2))) < 1e-10);
}
