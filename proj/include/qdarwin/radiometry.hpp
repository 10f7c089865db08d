#pragma once

// Physical-unit layer: thermal photon density, effective radius and
// decoherence rates for a dielectric sphere under blackbody illumination.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qdarwin/sky_geometry.hpp"

namespace qdarwin {

namespace constants {
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double zeta3 = 1.2020569031595942;
inline constexpr double zeta4 = std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi / 90.0;
inline constexpr double zeta9 = 1.0020083928260822;
inline constexpr double factorial8 = 40320.0;
// W m^-2 K^-4, derived from the values above rather than quoted separately.
inline constexpr double stefan_boltzmann =
    std::numbers::pi * std::numbers::pi * k_B * k_B * k_B * k_B / (60.0 * hbar * hbar * hbar * c * c);
}  // namespace constants

enum class RadiusModel {
  clausius_mossotti,  // a ((eps - 1) / (eps + 2))^(1/3)
  minus_two_denominator,    // a ((eps - 1) / (eps - 2))^(1/3), only defined for eps > 2
};

/// Effective scattering radius. Throws std::domain_error for eps <= 1 (or
/// eps <= 2 under RadiusModel::minus_two_denominator).
[[nodiscard]] double effective_radius(double radius_m, double permittivity,
                                      RadiusModel model = RadiusModel::clausius_mossotti);

/// Blackbody photon number density (m^-3) arriving from solid angle omega.
[[nodiscard]] double photon_number_density(double temperature_K, double omega);

/// Photon number density (m^-3) of a collimated thermal beam of irradiance I.
[[nodiscard]] double photon_number_density_from_irradiance(double irradiance_W_m2, double temperature_K);

/// Irradiance (W/m^2) of a blackbody patch of small solid angle omega seen face on.
[[nodiscard]] double blackbody_irradiance(double temperature_K, double omega);

struct Scenario {
  double radius_m = 0.0;
  double permittivity = 0.0;
  double dx_m = 0.0;
  double temperature_K = 0.0;
  SkyRegion region = SkyRegion::isotropic();
  std::optional<double> irradiance_W_m2;
  RadiusModel radius_model = RadiusModel::clausius_mossotti;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Human-readable notes when the dipole or short-separation regime is doubtful.
  [[nodiscard]] std::vector<std::string> regime_warnings() const;
  [[nodiscard]] double effective_radius() const;
  /// 2 pi hbar c / (k_B T)
  [[nodiscard]] double thermal_wavelength() const;
};

/// Isotropic reference rate T_D^{-1} in s^-1.
[[nodiscard]] double isotropic_rate(const Scenario& s);

struct RateResult {
  double tau_D_inv = 0.0;  // s^-1
  double T_D_inv = 0.0;    // s^-1
  double ratio = 0.0;      // tau_D_inv / T_D_inv
  double photon_density = 0.0;
  std::string diagnostic;
};

/// Integral over the region of (3 + 11 cos^2 theta), theta measured from the
/// separation axis. Equals 80 pi / 3 on the full sphere.
[[nodiscard]] double angular_weight_integral(const SkyRegion& region, QuadratureOrder order = {});

/// Decoherence rate for an extended region by quadrature. Point regions throw
/// std::invalid_argument (use point_source_rate); empty regions give 0 and a diagnostic.
[[nodiscard]] RateResult decoherence_rate(const Scenario& s, QuadratureOrder order = {});

/// Closed-form disk rate in units of T_D^{-1}.
[[nodiscard]] double disk_rate(double theta0, double chi);

/// Point-source rate (s^-1) at polar angle theta; needs s.irradiance_W_m2 > 0.
[[nodiscard]] double point_source_rate(const Scenario& s, double theta);

/// exp(-t tau_D_inv). Throws for t < 0.
[[nodiscard]] double decoherence_factor(double t_s, double tau_D_inv);

}  // namespace qdarwin
