#pragma once

// Entropies, mutual information and redundancy for a balanced two-branch
// superposition decohered by the photon environment.

#include <optional>
#include <span>
#include <vector>

#include "qdarwin/series_kernels.hpp"

namespace qdarwin {

/// Decoherence factor Gamma in [0, 1], stored through its logarithm so that
/// factors such as exp(-1000) and their fractional powers stay representable.
class DecoherenceFactor {
 public:
  /// Throws std::domain_error outside [0, 1].
  static DecoherenceFactor from_value(double gamma);
  /// Gamma = exp(-t / tau_D); t_over_tauD >= 0 (may be +inf).
  static DecoherenceFactor from_time(double t_over_tauD);
  /// log_gamma <= 0 (may be -inf).
  static DecoherenceFactor from_log(double log_gamma);

  [[nodiscard]] double value() const;
  [[nodiscard]] double log() const { return log_; }
  /// Gamma^s for s >= 0, with Gamma^0 = 1 even when Gamma = 0.
  [[nodiscard]] double pow(double s) const;
  /// 1 - Gamma^s without cancellation.
  [[nodiscard]] double one_minus_pow(double s) const;

 private:
  explicit DecoherenceFactor(double log_gamma) : log_(log_gamma) {}
  double log_ = 0.0;
};

/// H_S = ln 2 - h(Gamma).
[[nodiscard]] Nats system_entropy(DecoherenceFactor gamma);

/// ln 2 - h(Gamma^(alpha f)).
[[nodiscard]] Nats fragment_entropy_change(DecoherenceFactor gamma, double alpha, double f);

/// ln 2 + h(Gamma^(1-f)) - h(Gamma^(alpha f)) - h(Gamma).
[[nodiscard]] Nats mutual_information(DecoherenceFactor gamma, double alpha, double f);

/// ln 2 - Gamma^(alpha f) / 2, valid for 0 < f < 1/2 and alpha > 0 (otherwise
/// std::domain_error).
[[nodiscard]] Nats mutual_information_approx(DecoherenceFactor gamma, double alpha, double f);

/// Tolerance on the fragment fraction used by redundancy_exact.
inline constexpr double kRedundancyFractionTolerance = 1e-12;

/// 1 / f_delta with f_delta the smallest fraction in (0, 1/2] reaching
/// (1 - delta) ln 2; empty when f = 1/2 still falls short.
[[nodiscard]] std::optional<double> redundancy_exact(DecoherenceFactor gamma, double alpha, double delta);

/// alpha t / ln(1 / (2 delta ln 2)). Throws for delta outside (0, 1/(2 ln 2)).
[[nodiscard]] double redundancy_estimate(double t_over_tauD, double alpha, double delta);

/// The long-time regime t >= 10 tau_D where the estimate is meant to hold.
[[nodiscard]] inline bool redundancy_estimate_in_regime(double t_over_tauD) { return t_over_tauD >= 10.0; }

/// alpha t / ln(1 / (delta - Gamma)), a lower bound on redundancy_exact.
/// Requires t > ln(2 / delta); alpha = 1 gives the point-source form.
[[nodiscard]] double redundancy_lower_bound(double t_over_tauD, double delta, double alpha = 1.0);

struct PipSample {
  double f = 0.0;
  Nats mi = 0.0;
};

struct PipCurve {
  double log_gamma = 0.0;
  double alpha = 0.0;
  std::vector<PipSample> samples;
};

/// Mutual information over a sorted grid of fractions in [0, 1].
[[nodiscard]] PipCurve pip_curve(DecoherenceFactor gamma, double alpha, std::span<const double> f_grid);

}  // namespace qdarwin
