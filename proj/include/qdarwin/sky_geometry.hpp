#pragma once

// Sky regions and spherical quadrature.
//
// All directions live in the "separation frame": the polar axis +z is the
// direction of the superposition separation. A disk of half-angle theta0 whose
// centre is tilted by chi from +z is generated in its own polar frame (so the
// boundary is a coordinate line) and rotated into the separation frame.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

namespace qdarwin {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] double norm() const;
};

/// Unit vector on the sphere.
class Direction {
 public:
  /// Polar coordinates about +z. cos_theta is clamped to [-1, 1].
  static Direction from_polar(double cos_theta, double phi);
  /// Normalises v; throws std::invalid_argument for a zero vector.
  static Direction from_vector(const Vec3& v);
  static Direction axis() { return from_polar(1.0, 0.0); }

  [[nodiscard]] const Vec3& vector() const { return v_; }
  [[nodiscard]] double cos_theta() const { return v_.z; }
  [[nodiscard]] double phi() const;
  [[nodiscard]] double dot(const Direction& o) const { return v_.dot(o.v_); }

 private:
  explicit Direction(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

/// (1 + cos^2 theta_nm) (cos theta_dx,n - cos theta_dx,m)^2: the angular part of
/// the squared off-diagonal scattering amplitude between incoming directions.
[[nodiscard]] double g2_weight(const Direction& n, const Direction& m, const Direction& dx);

struct QuadratureOrder {
  int cos_points = 64;
  int phi_points = 128;

  /// cos_points = n, phi_points = 2n. Throws for n < 2.
  static QuadratureOrder from_cos_points(int n);
  void validate() const;
};

struct WeightedDirection {
  Vec3 n;
  double weight = 0.0;
};
using QuadratureRule = std::vector<WeightedDirection>;

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
[[nodiscard]] GaussLegendre gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Product rule on the whole sphere: Gauss-Legendre in cos theta, trapezoid in phi.
[[nodiscard]] QuadratureRule sphere_rule(QuadratureOrder order);

template <class F>
[[nodiscard]] double integrate(const QuadratureRule& rule, F&& f) {
  // Neumaier compensated sum.
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& node : rule) {
    const double term = node.weight * f(node.n);
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

/// Integral of f over the whole sphere.
template <class F>
[[nodiscard]] double integrate_sphere(F&& f, QuadratureOrder order) {
  order.validate();
  return integrate(sphere_rule(order), [&](const Vec3& n) { return f(Direction::from_vector(n)); });
}

/// Indicator sampled on an equal-area grid: `rows` cells uniform in cos theta
/// times `cols` cells uniform in phi, polar axis along the separation. Each
/// cell carries solid angle 4 pi / (rows * cols); boundary accuracy is first
/// order in the cell size.
struct IndicatorGrid {
  int rows = 0;
  int cols = 0;
  std::vector<double> cos_theta;  // cell centres, row-major
  std::vector<double> phi;
  std::vector<std::uint8_t> inside;

  [[nodiscard]] double cell_solid_angle() const;
  [[nodiscard]] std::size_t count_inside() const;
};

/// Parses `# rows cols` followed by rows*cols lines `cos_theta phi value`.
/// Throws std::runtime_error naming the offending line.
[[nodiscard]] IndicatorGrid read_indicator_grid(std::istream& in);
[[nodiscard]] IndicatorGrid load_indicator_grid(const std::filesystem::path& path);
void write_indicator_grid(std::ostream& out, const IndicatorGrid& grid);

/// Samples `inside(direction)` at the cell centres of a rows x cols grid.
[[nodiscard]] IndicatorGrid sample_indicator_grid(int rows, int cols,
                                                  const std::function<bool(const Direction&)>& inside);

enum class RegionKind { point, disk, isotropic, custom };

/// Patch of sky covered by the source, described relative to the separation axis.
class SkyRegion {
 public:
  /// Point source at polar angle theta from the separation axis.
  static SkyRegion point(double theta);
  /// Cap of half-angle theta0 in [0, pi] whose centre makes angle chi in [0, pi]
  /// with the separation axis; the centre sits at the given azimuth about it.
  static SkyRegion disk(double theta0, double chi, double azimuth = 0.0);
  static SkyRegion isotropic();
  /// Cells of the grid with inside == 1 (or == 0 when inverted).
  static SkyRegion custom(std::shared_ptr<const IndicatorGrid> grid, bool inverted = false);

  [[nodiscard]] RegionKind kind() const { return kind_; }
  [[nodiscard]] double theta0() const { return theta0_; }
  [[nodiscard]] double chi() const { return chi_; }
  [[nodiscard]] double azimuth() const { return azimuth_; }
  /// Point-source direction (point regions only).
  [[nodiscard]] Direction point_direction() const;
  [[nodiscard]] const IndicatorGrid* grid() const { return grid_.get(); }
  [[nodiscard]] bool inverted() const { return inverted_; }

  [[nodiscard]] double solid_angle() const;
  /// Sky minus this region (up to measure zero). The complement of a point is
  /// the full sphere; the complement of the full sphere is the empty disk(0, 0).
  [[nodiscard]] SkyRegion complement() const;
  /// Quadrature nodes covering the region in the separation frame. Point
  /// regions and empty disks have no nodes.
  [[nodiscard]] QuadratureRule nodes(QuadratureOrder order) const;

 private:
  SkyRegion() = default;

  RegionKind kind_ = RegionKind::isotropic;
  double theta0_ = 0.0;
  double chi_ = 0.0;
  double azimuth_ = 0.0;
  std::shared_ptr<const IndicatorGrid> grid_;
  bool inverted_ = false;
};

/// Solid angle in steradians.
[[nodiscard]] double solid_angle(const SkyRegion& region);

/// Product rule for the band cos theta' in [lo, hi] about an axis tilted by chi
/// from +z (at the given azimuth), rotated into the separation frame.
[[nodiscard]] QuadratureRule tilted_band_rule(double cos_lo, double cos_hi, double chi, double azimuth,
                                              QuadratureOrder order);

/// Low-order moments of a rule with respect to the separation axis +z, enough
/// to evaluate double integrals of g2_weight in O(nodes) rather than O(nodes^2).
struct G2Moments {
  double w = 0.0;    // sum w
  double a1 = 0.0;   // sum w a, a = n_z
  double a2 = 0.0;   // sum w a^2
  double t0[3][3]{};  // sum w n_i n_j
  double t1[3][3]{};  // sum w n_i n_j a
  double t2[3][3]{};  // sum w n_i n_j a^2
};
[[nodiscard]] G2Moments g2_moments(const QuadratureRule& rule);

/// sum_{n in X} sum_{m in Y} w_n w_m g2_weight(n, m, +z), exactly the
/// tensor-product quadrature of the double integral, evaluated through moments.
[[nodiscard]] double g2_product_integral(const G2Moments& x, const G2Moments& y);

}  // namespace qdarwin
