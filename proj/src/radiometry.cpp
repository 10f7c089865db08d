#include "qdarwin/radiometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

// (k_B T / hbar c), the thermal wavenumber in m^-1.
double thermal_wavenumber(double temperature_K) {
  return constants::k_B * temperature_K / (constants::hbar * constants::c);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

double effective_radius(double radius_m, double permittivity, RadiusModel model) {
  require_positive(radius_m, "radius_m");
  if (!(permittivity > 1.0)) throw std::domain_error("permittivity must exceed 1");
  if (std::isinf(permittivity)) return radius_m;
  double ratio = 0.0;
  if (model == RadiusModel::minus_two_denominator) {
    if (!(permittivity > 2.0)) throw std::domain_error("(eps - 2) radius formula needs permittivity > 2");
    ratio = (permittivity - 1.0) / (permittivity - 2.0);
  } else {
    ratio = (permittivity - 1.0) / (permittivity + 2.0);
  }
  return radius_m * std::cbrt(ratio);
}

double photon_number_density(double temperature_K, double omega) {
  require_positive(temperature_K, "temperature_K");
  if (!(omega >= 0.0 && omega <= 4.0 * kPi * (1.0 + 1e-12))) {
    throw std::invalid_argument("solid angle must lie in [0, 4 pi]");
  }
  const double kt = thermal_wavenumber(temperature_K);
  return omega * constants::zeta3 * kt * kt * kt / (2.0 * kPi * kPi * kPi);
}

double photon_number_density_from_irradiance(double irradiance_W_m2, double temperature_K) {
  require_positive(temperature_K, "temperature_K");
  if (!(irradiance_W_m2 >= 0.0)) throw std::invalid_argument("irradiance must be non-negative");
  // (I / c k_B T) 2! zeta(3) / (3! zeta(4))
  return irradiance_W_m2 / (constants::c * constants::k_B * temperature_K) * (2.0 * constants::zeta3) /
         (6.0 * constants::zeta4);
}

double blackbody_irradiance(double temperature_K, double omega) {
  require_positive(temperature_K, "temperature_K");
  const double t2 = temperature_K * temperature_K;
  return constants::stefan_boltzmann * t2 * t2 * omega / kPi;
}

void Scenario::validate() const {
  require_positive(radius_m, "radius_m");
  require_positive(dx_m, "dx_m");
  require_positive(temperature_K, "temperature_K");
  if (!(permittivity > 1.0)) throw std::invalid_argument("permittivity must exceed 1");
  if (radius_model == RadiusModel::minus_two_denominator && !(permittivity > 2.0)) {
    throw std::invalid_argument("permittivity must exceed 2 for the (eps - 2) radius formula");
  }
  if (irradiance_W_m2 && !(*irradiance_W_m2 > 0.0)) throw std::invalid_argument("irradiance_W_m2 must be positive");
}

double Scenario::effective_radius() const { return qdarwin::effective_radius(radius_m, permittivity, radius_model); }

double Scenario::thermal_wavelength() const { return 2.0 * kPi / thermal_wavenumber(temperature_K); }

std::vector<std::string> Scenario::regime_warnings() const {
  std::vector<std::string> out;
  const double lambda = thermal_wavelength();
  auto check = [&](double length, const char* name) {
    if (length > 0.1 * lambda) {
      std::ostringstream msg;
      msg << name << " = " << length << " m is not small against the thermal wavelength " << lambda << " m";
      out.push_back(msg.str());
    }
  };
  check(radius_m, "radius_m");
  check(dx_m, "dx_m");
  return out;
}

double isotropic_rate(const Scenario& s) {
  s.validate();
  const double at = s.effective_radius();
  const double kt = thermal_wavenumber(s.temperature_K);
  const double prefactor = 16.0 * constants::factorial8 * constants::zeta9 / (9.0 * kPi);
  // Grouped as (a k)^6 (dx k)^2 k c to stay inside double range.
  return prefactor * std::pow(at * kt, 6) * std::pow(s.dx_m * kt, 2) * kt * constants::c;
}

double angular_weight_integral(const SkyRegion& region, QuadratureOrder order) {
  return integrate(region.nodes(order), [](const Vec3& n) { return 3.0 + 11.0 * n.z * n.z; });
}

RateResult decoherence_rate(const Scenario& s, QuadratureOrder order) {
  s.validate();
  if (s.region.kind() == RegionKind::point) {
    throw std::invalid_argument("decoherence_rate: point regions need point_source_rate");
  }
  RateResult r;
  r.T_D_inv = isotropic_rate(s);
  const double omega = s.region.solid_angle();
  r.photon_density = photon_number_density(s.temperature_K, std::min(omega, 4.0 * kPi));
  if (omega <= 0.0) {
    r.diagnostic = "empty region: no illumination, rate is zero";
    return r;
  }
  r.ratio = angular_weight_integral(s.region, order) / (80.0 * kPi / 3.0);
  r.tau_D_inv = r.ratio * r.T_D_inv;
  return r;
}

double disk_rate(double theta0, double chi) {
  if (!(theta0 >= 0.0 && theta0 <= kPi)) throw std::domain_error("disk_rate: theta0 outside [0, pi]");
  const double ct = std::cos(theta0);
  const double cc2 = std::cos(chi) * std::cos(chi);
  return (40.0 - ct * (51.0 - 33.0 * cc2) + ct * ct * ct * (11.0 - 33.0 * cc2)) / 80.0;
}

double point_source_rate(const Scenario& s, double theta) {
  s.validate();
  if (!s.irradiance_W_m2) throw std::invalid_argument("point_source_rate: irradiance_W_m2 is required");
  const double at = s.effective_radius();
  const double kt = thermal_wavenumber(s.temperature_K);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double prefactor =
      (4.0 * kPi / 15.0) * (constants::factorial8 * constants::zeta9 / (6.0 * constants::zeta4)) * (3.0 + 11.0 * c2);
  return prefactor * *s.irradiance_W_m2 * std::pow(at * kt, 6) * std::pow(s.dx_m * kt, 2) /
         (kt * kt * kt * constants::hbar * constants::c);
}

double decoherence_factor(double t_s, double tau_D_inv) {
  if (!(t_s >= 0.0)) throw std::domain_error("decoherence_factor: t must be non-negative");
  if (t_s == 0.0) return 1.0;
  return std::exp(-t_s * tau_D_inv);
}

}  // namespace qdarwin
