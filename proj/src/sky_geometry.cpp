#include "qdarwin/sky_geometry.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

// Running Neumaier sum.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double term) {
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

Vec3 polar_vector(double cos_theta, double phi) {
  const double c = std::clamp(cos_theta, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
  return {s * std::cos(phi), s * std::sin(phi), c};
}

void require_angle(double value, const char* name) {
  if (!(value >= 0.0 && value <= kPi)) {
    throw std::invalid_argument(std::string("SkyRegion: ") + name + " must lie in [0, pi]");
  }
}

}  // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Direction Direction::from_polar(double cos_theta, double phi) { return Direction(polar_vector(cos_theta, phi)); }

Direction Direction::from_vector(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("Direction: zero or non-finite vector");
  return Direction({v.x / n, v.y / n, v.z / n});
}

double Direction::phi() const {
  const double p = std::atan2(v_.y, v_.x);
  return p < 0.0 ? p + 2.0 * kPi : p;
}

double g2_weight(const Direction& n, const Direction& m, const Direction& dx) {
  const double c = n.dot(m);
  const double d = n.dot(dx) - m.dot(dx);
  return (1.0 + c * c) * d * d;
}

QuadratureOrder QuadratureOrder::from_cos_points(int n) {
  QuadratureOrder order{n, 2 * n};
  order.validate();
  return order;
}

void QuadratureOrder::validate() const {
  if (cos_points < 2 || phi_points < 2) throw std::invalid_argument("quadrature order must be at least 2");
}

GaussLegendre gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = b - a;
  }
  return rule;
}

QuadratureRule tilted_band_rule(double cos_lo, double cos_hi, double chi, double azimuth, QuadratureOrder order) {
  order.validate();
  QuadratureRule rule;
  if (!(cos_hi > cos_lo)) return rule;
  const GaussLegendre gl = gauss_legendre(order.cos_points, cos_lo, cos_hi);
  const double dphi = 2.0 * kPi / order.phi_points;
  const double cchi = std::cos(chi);
  const double schi = std::sin(chi);
  const double caz = std::cos(azimuth);
  const double saz = std::sin(azimuth);
  rule.reserve(static_cast<std::size_t>(order.cos_points) * order.phi_points);
  for (int i = 0; i < order.cos_points; ++i) {
    for (int j = 0; j < order.phi_points; ++j) {
      const Vec3 local = polar_vector(gl.nodes[i], (j + 0.5) * dphi);
      // R_z(azimuth) R_y(chi): the band axis +z maps to the disk centre.
      const Vec3 tilted{local.x * cchi + local.z * schi, local.y, -local.x * schi + local.z * cchi};
      const Vec3 n{tilted.x * caz - tilted.y * saz, tilted.x * saz + tilted.y * caz, tilted.z};
      rule.push_back({n, gl.weights[i] * dphi});
    }
  }
  return rule;
}

QuadratureRule sphere_rule(QuadratureOrder order) { return tilted_band_rule(-1.0, 1.0, 0.0, 0.0, order); }

double IndicatorGrid::cell_solid_angle() const {
  if (rows <= 0 || cols <= 0) return 0.0;
  return 4.0 * kPi / (static_cast<double>(rows) * cols);
}

std::size_t IndicatorGrid::count_inside() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), std::uint8_t{1}));
}

IndicatorGrid read_indicator_grid(std::istream& in) {
  IndicatorGrid grid;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("indicator grid line " + std::to_string(line_no) + ": " + why);
  };
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!have_header) {
      char hash = 0;
      if (!(fields >> hash) || hash != '#' || !(fields >> grid.rows >> grid.cols)) fail("expected header '# rows cols'");
      if (grid.rows < 1 || grid.cols < 1) fail("grid dimensions must be positive");
      have_header = true;
      continue;
    }
    if (line.find('#') != std::string::npos && line.find_first_not_of(" \t") == line.find('#')) continue;
    double c = 0.0;
    double p = 0.0;
    int v = 0;
    if (!(fields >> c >> p >> v)) fail("expected 'cos_theta phi value'");
    if (c < -1.0 || c > 1.0) fail("cos_theta outside [-1, 1]");
    if (v != 0 && v != 1) fail("value must be 0 or 1");
    grid.cos_theta.push_back(c);
    grid.phi.push_back(p);
    grid.inside.push_back(static_cast<std::uint8_t>(v));
  }
  if (!have_header) throw std::runtime_error("indicator grid: missing header");
  const auto expected = static_cast<std::size_t>(grid.rows) * grid.cols;
  if (grid.inside.size() != expected) {
    throw std::runtime_error("indicator grid: expected " + std::to_string(expected) + " cells, found " +
                             std::to_string(grid.inside.size()));
  }
  return grid;
}

IndicatorGrid load_indicator_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open indicator grid " + path.string());
  return read_indicator_grid(in);
}

void write_indicator_grid(std::ostream& out, const IndicatorGrid& grid) {
  out << "# " << grid.rows << ' ' << grid.cols << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < grid.inside.size(); ++k) {
    out << grid.cos_theta[k] << ' ' << grid.phi[k] << ' ' << int(grid.inside[k]) << '\n';
  }
  out.precision(old_precision);
}

IndicatorGrid sample_indicator_grid(int rows, int cols, const std::function<bool(const Direction&)>& inside) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("sample_indicator_grid: dimensions must be positive");
  IndicatorGrid grid;
  grid.rows = rows;
  grid.cols = cols;
  for (int i = 0; i < rows; ++i) {
    const double c = -1.0 + 2.0 * (i + 0.5) / rows;
    for (int j = 0; j < cols; ++j) {
      const double p = 2.0 * kPi * (j + 0.5) / cols;
      grid.cos_theta.push_back(c);
      grid.phi.push_back(p);
      grid.inside.push_back(inside(Direction::from_polar(c, p)) ? 1 : 0);
    }
  }
  return grid;
}

SkyRegion SkyRegion::point(double theta) {
  require_angle(theta, "theta");
  SkyRegion r;
  r.kind_ = RegionKind::point;
  r.theta0_ = theta;
  return r;
}

SkyRegion SkyRegion::disk(double theta0, double chi, double azimuth) {
  require_angle(theta0, "theta0");
  require_angle(chi, "chi");
  SkyRegion r;
  r.kind_ = RegionKind::disk;
  r.theta0_ = theta0;
  r.chi_ = chi;
  r.azimuth_ = azimuth;
  return r;
}

SkyRegion SkyRegion::isotropic() { return SkyRegion{}; }

SkyRegion SkyRegion::custom(std::shared_ptr<const IndicatorGrid> grid, bool inverted) {
  if (!grid) throw std::invalid_argument("SkyRegion::custom: null grid");
  SkyRegion r;
  r.kind_ = RegionKind::custom;
  r.grid_ = std::move(grid);
  r.inverted_ = inverted;
  return r;
}

Direction SkyRegion::point_direction() const {
  if (kind_ != RegionKind::point) throw std::logic_error("point_direction: not a point region");
  return Direction::from_polar(std::cos(theta0_), 0.0);
}

double SkyRegion::solid_angle() const {
  switch (kind_) {
    case RegionKind::point:
      return 0.0;
    case RegionKind::isotropic:
      return 4.0 * kPi;
    case RegionKind::disk:
      // 2 pi (1 - cos theta0) = 4 pi sin^2(theta0/2), exact at both ends.
      return 4.0 * kPi * std::pow(std::sin(0.5 * theta0_), 2);
    case RegionKind::custom: {
      const std::size_t in = grid_->count_inside();
      const std::size_t n = inverted_ ? grid_->inside.size() - in : in;
      return static_cast<double>(n) * grid_->cell_solid_angle();
    }
  }
  return 0.0;
}

SkyRegion SkyRegion::complement() const {
  switch (kind_) {
    case RegionKind::point:
      return isotropic();
    case RegionKind::isotropic:
      return disk(0.0, 0.0);
    case RegionKind::disk:
      return disk(kPi - theta0_, kPi - chi_, azimuth_ + kPi);
    case RegionKind::custom:
      return custom(grid_, !inverted_);
  }
  return *this;
}

QuadratureRule SkyRegion::nodes(QuadratureOrder order) const {
  order.validate();
  switch (kind_) {
    case RegionKind::point:
      return {};
    case RegionKind::isotropic:
      return sphere_rule(order);
    case RegionKind::disk:
      if (theta0_ <= 0.0) return {};
      return tilted_band_rule(std::cos(theta0_), 1.0, chi_, azimuth_, order);
    case RegionKind::custom: {
      QuadratureRule rule;
      const double w = grid_->cell_solid_angle();
      const std::uint8_t want = inverted_ ? 0 : 1;
      for (std::size_t k = 0; k < grid_->inside.size(); ++k) {
        if (grid_->inside[k] == want) {
          rule.push_back({polar_vector(grid_->cos_theta[k], grid_->phi[k]), w});
        }
      }
      return rule;
    }
  }
  return {};
}

double solid_angle(const SkyRegion& region) { return region.solid_angle(); }

G2Moments g2_moments(const QuadratureRule& rule) {
  Accumulator w, a1, a2;
  Accumulator t0[3][3], t1[3][3], t2[3][3];
  for (const auto& node : rule) {
    const double n[3] = {node.n.x, node.n.y, node.n.z};
    const double a = node.n.z;
    w.add(node.weight);
    a1.add(node.weight * a);
    a2.add(node.weight * a * a);
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const double base = node.weight * n[i] * n[j];
        t0[i][j].add(base);
        t1[i][j].add(base * a);
        t2[i][j].add(base * a * a);
      }
    }
  }
  G2Moments m;
  m.w = w.value();
  m.a1 = a1.value();
  m.a2 = a2.value();
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      m.t0[i][j] = m.t0[j][i] = t0[i][j].value();
      m.t1[i][j] = m.t1[j][i] = t1[i][j].value();
      m.t2[i][j] = m.t2[j][i] = t2[i][j].value();
    }
  }
  return m;
}

double g2_product_integral(const G2Moments& x, const G2Moments& y) {
  // (1 + (n.m)^2)(a - b)^2 expanded; the (n.m)^2 part contracts the tensors.
  Accumulator acc;
  acc.add(y.w * x.a2);
  acc.add(-2.0 * x.a1 * y.a1);
  acc.add(x.w * y.a2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      acc.add(x.t2[i][j] * y.t0[i][j]);
      acc.add(-2.0 * x.t1[i][j] * y.t1[i][j]);
      acc.add(x.t0[i][j] * y.t2[i][j]);
    }
  }
  return acc.value();
}

}  // namespace qdarwin
