#pragma once

// Entropy kernels shared by the information-theoretic layers.
//
// Everything here is expressed in nats. The central object is
//
//     h(x) = sqrt(x) * artanh(sqrt(x)) + ln sqrt(1 - x) = sum_{n>=1} x^n / (2n(2n-1)),
//
// which is the entropy deficit ln 2 - H of a two-level state whose
// eigenvalues are (1 +- sqrt(x)) / 2.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qdarwin {

/// Information measured with natural logarithms.
using Nats = double;

inline constexpr double kLn2 = std::numbers::ln2;

/// Below this argument h() switches from the closed form to its power series.
inline constexpr double kHSeriesThreshold = 1e-3;

/// h(x) on [0, 1]. Monotone, with x/2 <= h(x) <= x ln 2 and h(1) = ln 2.
/// Throws std::domain_error outside [0, 1].
[[nodiscard]] Nats h_kernel(double x);

/// ln 2 - h(1 - eps), accurate even when eps underflows 1 - eps to 1.
[[nodiscard]] Nats h_deficit_near_one(double eps);

/// Partial sum of the h series and a bound on the omitted tail.
struct SeriesBracket {
  double partial = 0.0;
  double tail_bound = 0.0;  // sum_{n>N} x^n/(2n(2n-1)) <= x^(N+1) / ((2N+1)(2N+2)(1-x))
};

/// First `terms` terms of the h series. For x < 1 the closed form lies in
/// [partial, partial + tail_bound].
[[nodiscard]] SeriesBracket h_series(double x, int terms);

/// Entropy of the spectrum {(1 + x)/2, (1 - x)/2}; equals ln 2 - h(x^2).
[[nodiscard]] Nats binary_entropy_from_gap(double x);

/// Entropy of the M x M matrix with diagonal 1/M and uniform off-diagonal x/M,
/// i.e. of the spectrum {(1 + (M-1)x)/M, (1 - x)/M with multiplicity M-1}.
[[nodiscard]] Nats m_spectrum_entropy(double x, std::uint64_t m);

/// -p ln p with the 0 ln 0 = 0 convention.
[[nodiscard]] inline double neg_x_log_x(double p) {
  return p > 0.0 ? -p * std::log(p) : 0.0;
}

}  // namespace qdarwin
