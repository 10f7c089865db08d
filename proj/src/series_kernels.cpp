#include "qdarwin/series_kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdarwin {
namespace {

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + ": argument " + std::to_string(x) +
                            " outside [0, 1]");
  }
}

// Binary entropy of {q, 1 - q} for q in [0, 1/2], stable for tiny q.
double binary_entropy_small_side(double q) {
  if (q <= 0.0) return 0.0;
  return -q * std::log(q) - (1.0 - q) * std::log1p(-q);
}

}  // namespace

SeriesBracket h_series(double x, int terms) {
  require_unit_interval(x, "h_series");
  if (terms < 1) throw std::invalid_argument("h_series: need at least one term");
  SeriesBracket out;
  double power = 1.0;
  // Summed smallest-last so the partial sum is rounded once per term.
  for (int n = 1; n <= terms; ++n) {
    power *= x;
    const double two_n = 2.0 * n;
    out.partial += power / (two_n * (two_n - 1.0));
  }
  if (x < 1.0) {
    const double big_n = terms;
    out.tail_bound = power * x / ((2.0 * big_n + 1.0) * (2.0 * big_n + 2.0) * (1.0 - x));
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

Nats h_kernel(double x) {
  require_unit_interval(x, "h_kernel");
  if (x < kHSeriesThreshold) {
    // x^11 / 462 < 1e-35 here, far below double resolution of h ~ x/2.
    double sum = 0.0;
    double power = x;
    double terms[10];
    for (int n = 1; n <= 10; ++n) {
      const double two_n = 2.0 * n;
      terms[n - 1] = power / (two_n * (two_n - 1.0));
      power *= x;
    }
    for (int n = 9; n >= 0; --n) sum += terms[n];
    return sum;
  }
  const double y = std::sqrt(x);
  if (y >= 1.0) return kLn2;
  // sqrt(x) artanh(sqrt(x)) + ln sqrt(1-x) regrouped so that the two
  // logarithmic singularities at x = 1 cancel analytically.
  return 0.5 * ((1.0 + y) * std::log1p(y) + (1.0 - y) * std::log1p(-y));
}

Nats h_deficit_near_one(double eps) {
  require_unit_interval(eps, "h_deficit_near_one");
  const double y = std::sqrt(1.0 - eps);
  // (1 - y) / 2 without forming 1 - y.
  const double q = eps / (2.0 * (1.0 + y));
  return binary_entropy_small_side(q);
}

Nats binary_entropy_from_gap(double x) {
  require_unit_interval(x, "binary_entropy_from_gap");
  return binary_entropy_small_side(0.5 * (1.0 - x));
}

Nats m_spectrum_entropy(double x, std::uint64_t m) {
  require_unit_interval(x, "m_spectrum_entropy");
  if (m < 2) throw std::domain_error("m_spectrum_entropy: need M >= 2");
  const double md = static_cast<double>(m);
  const double top = x + (1.0 - x) / md;
  double entropy = neg_x_log_x(top);
  if (x < 1.0) {
    // (M-1) * l ln l with l = (1-x)/M, arranged to stay finite for huge M.
    entropy += (1.0 - x) * ((md - 1.0) / md) * (std::log(md) - std::log1p(-x));
  }
  return entropy;
}

}  // namespace qdarwin
