#pragma once

// Receptivity: the fraction of the angular decoherence weight that couples
// the illuminated region to the dark remainder of the sky.

#include "qdarwin/sky_geometry.hpp"

namespace qdarwin {

struct ReceptivityResult {
  double alpha = 0.0;
  /// Integrals of g2_weight over region x complement and region x sphere.
  double numerator = 0.0;
  double denominator = 0.0;
  /// Decoherence and redundancy rates in units of the isotropic rate T_D^{-1}.
  /// Both are zero for point regions, whose rate depends on irradiance.
  double tau_D_ratio = 0.0;
  double tau_R_ratio = 0.0;
};

/// Receptivity by product quadrature over the region and its complement.
/// Empty and point regions give alpha = 1, full-sky regions alpha = 0.
[[nodiscard]] ReceptivityResult alpha_numeric(const SkyRegion& region, QuadratureOrder order = {});

/// Closed-form receptivity of a disk of half-angle theta0 tilted by chi.
[[nodiscard]] double alpha_disk(double theta0, double chi);

/// tau_R^{-1} = alpha tau_D^{-1}. Throws std::domain_error for alpha outside [0, 1].
[[nodiscard]] double redundancy_rate(double alpha, double tau_D_inv);

}  // namespace qdarwin
