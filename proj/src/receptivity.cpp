#include "qdarwin/receptivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;
// Integral of g2_weight over sphere x sphere.
constexpr double kFullSkyG2 = 128.0 * kPi * kPi / 9.0;

G2Moments add(const G2Moments& a, const G2Moments& b) {
  G2Moments s;
  s.w = a.w + b.w;
  s.a1 = a.a1 + b.a1;
  s.a2 = a.a2 + b.a2;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      s.t0[i][j] = a.t0[i][j] + b.t0[i][j];
      s.t1[i][j] = a.t1[i][j] + b.t1[i][j];
      s.t2[i][j] = a.t2[i][j] + b.t2[i][j];
    }
  }
  return s;
}

}  // namespace

ReceptivityResult alpha_numeric(const SkyRegion& region, QuadratureOrder order) {
  order.validate();
  ReceptivityResult r;
  const double omega = region.solid_angle();
  if (region.kind() == RegionKind::point || omega <= 0.0) {
    r.alpha = 1.0;
    return r;
  }
  const G2Moments inside = g2_moments(region.nodes(order));
  if (region.kind() == RegionKind::isotropic || omega >= 4.0 * kPi) {
    r.denominator = g2_product_integral(inside, inside);
    r.tau_D_ratio = r.denominator / kFullSkyG2;
    return r;
  }
  // The sky is discretised as region plus complement so both halves of the
  // split use the same nodes.
  const G2Moments outside = g2_moments(region.complement().nodes(order));
  const G2Moments sky = add(inside, outside);
  r.denominator = g2_product_integral(inside, sky);
  r.numerator = r.denominator - g2_product_integral(inside, inside);
  r.numerator = std::clamp(r.numerator, 0.0, r.denominator);
  r.alpha = r.denominator > 0.0 ? r.numerator / r.denominator : 1.0;
  r.tau_D_ratio = r.denominator / kFullSkyG2;
  r.tau_R_ratio = r.numerator / kFullSkyG2;
  return r;
}

double alpha_disk(double theta0, double chi) {
  if (!(theta0 >= 0.0 && theta0 <= kPi)) throw std::domain_error("alpha_disk: theta0 outside [0, pi]");
  const double c = std::cos(theta0);
  const double c2 = c * c;
  const double c4 = c2 * c2;
  const double c6 = c4 * c2;
  const double x2 = std::cos(chi) * std::cos(chi);
  const double top = -117.0 * c6 + 295.0 * c4 - 575.0 * c2 + 685.0 + 6.0 * x2 * (21.0 * c6 - 55.0 * c4 + 135.0 * c2 + 75.0);
  const double bottom = 32.0 * (40.0 + 11.0 * c * (1.0 + c) * (3.0 * x2 - 1.0));
  return (c + 1.0) * top / bottom;
}

double redundancy_rate(double alpha, double tau_D_inv) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("redundancy_rate: alpha outside [0, 1]");
  return alpha * tau_D_inv;
}

}  // namespace qdarwin
