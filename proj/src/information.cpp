#include "qdarwin/information.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdarwin {
namespace {

void require_fraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error(std::string(name) + " outside [0, 1]");
}

// ln 2 - h(Gamma^s), accurate when Gamma^s is close to 1.
Nats deficit(DecoherenceFactor gamma, double s) { return h_deficit_near_one(gamma.one_minus_pow(s)); }

}  // namespace

DecoherenceFactor DecoherenceFactor::from_value(double gamma) {
  require_fraction(gamma, "decoherence factor");
  return DecoherenceFactor(gamma > 0.0 ? std::log(gamma) : -std::numeric_limits<double>::infinity());
}

DecoherenceFactor DecoherenceFactor::from_time(double t_over_tauD) {
  if (!(t_over_tauD >= 0.0)) throw std::domain_error("t / tau_D must be non-negative");
  return DecoherenceFactor(-t_over_tauD);
}

DecoherenceFactor DecoherenceFactor::from_log(double log_gamma) {
  if (!(log_gamma <= 0.0)) throw std::domain_error("log of decoherence factor must be <= 0");
  return DecoherenceFactor(log_gamma);
}

double DecoherenceFactor::value() const { return std::exp(log_); }

double DecoherenceFactor::pow(double s) const {
  if (s == 0.0) return 1.0;
  return std::exp(s * log_);
}

double DecoherenceFactor::one_minus_pow(double s) const {
  if (s == 0.0) return 0.0;
  return -std::expm1(s * log_);
}

Nats system_entropy(DecoherenceFactor gamma) { return deficit(gamma, 1.0); }

Nats fragment_entropy_change(DecoherenceFactor gamma, double alpha, double f) {
  require_fraction(alpha, "alpha");
  require_fraction(f, "f");
  return deficit(gamma, alpha * f);
}

Nats mutual_information(DecoherenceFactor gamma, double alpha, double f) {
  require_fraction(alpha, "alpha");
  require_fraction(f, "f");
  const Nats environment_part = h_kernel(gamma.pow(1.0 - f)) - h_kernel(gamma.value());
  return environment_part + deficit(gamma, alpha * f);
}

Nats mutual_information_approx(DecoherenceFactor gamma, double alpha, double f) {
  if (!(f > 0.0 && f < 0.5)) throw std::domain_error("mutual_information_approx: need 0 < f < 1/2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("mutual_information_approx: need 0 < alpha <= 1");
  return kLn2 - 0.5 * gamma.pow(alpha * f);
}

std::optional<double> redundancy_exact(DecoherenceFactor gamma, double alpha, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("redundancy_exact: delta outside (0, 1)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("redundancy_exact: alpha outside (0, 1]");
  const double target = (1.0 - delta) * kLn2;
  if (mutual_information(gamma, alpha, 0.5) < target) return std::nullopt;
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > kRedundancyFractionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mutual_information(gamma, alpha, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 1.0 / hi;
}

double redundancy_estimate(double t_over_tauD, double alpha, double delta) {
  if (!(delta > 0.0 && delta < 1.0 / (2.0 * kLn2))) {
    throw std::domain_error("redundancy_estimate: delta must lie in (0, 1/(2 ln 2))");
  }
  if (!(t_over_tauD >= 0.0)) throw std::domain_error("redundancy_estimate: t must be non-negative");
  require_fraction(alpha, "alpha");
  return alpha * t_over_tauD / std::log(1.0 / (2.0 * delta * kLn2));
}

double redundancy_lower_bound(double t_over_tauD, double delta, double alpha) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("redundancy_lower_bound: delta outside (0, 1)");
  if (!(t_over_tauD > std::log(2.0 / delta))) {
    throw std::domain_error("redundancy_lower_bound: need t / tau_D > ln(2 / delta)");
  }
  require_fraction(alpha, "alpha");
  const double gamma = std::exp(-t_over_tauD);
  return alpha * t_over_tauD / -std::log(delta - gamma);
}

PipCurve pip_curve(DecoherenceFactor gamma, double alpha, std::span<const double> f_grid) {
  require_fraction(alpha, "alpha");
  PipCurve curve;
  curve.log_gamma = gamma.log();
  curve.alpha = alpha;
  curve.samples.reserve(f_grid.size());
  double previous = -std::numeric_limits<double>::infinity();
  for (const double f : f_grid) {
    require_fraction(f, "f");
    if (f < previous) throw std::invalid_argument("pip_curve: f grid must be sorted");
    previous = f;
    const Nats mi = alpha == 0.0 ? h_kernel(gamma.pow(1.0 - f)) - h_kernel(gamma.value())
                                 : mutual_information(gamma, alpha, f);
    curve.samples.push_back({f, mi});
  }
  return curve;
}

}  // namespace qdarwin
