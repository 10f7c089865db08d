#include "qdarwin/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qdarwin/information.hpp"
#include "qdarwin/spectral.hpp"

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

// Scale of the x = s u / (1 - u) map; puts the Planck peak mid-interval.
constexpr double kPlanckMapScale = 8.0;

void check_b(std::span<const double> b, int fN, double cap) {
  if (b.empty()) throw std::invalid_argument("empty b spectrum");
  if (fN < 1) throw std::invalid_argument("fN must be at least 1");
  for (double v : b) {
    if (!(v >= -1.0 && v <= 0.0)) throw std::domain_error("b eigenvalues must lie in [-1, 0]");
  }
  const double log_dim = fN * std::log(static_cast<double>(b.size()));
  if (log_dim > std::log(cap)) {
    throw ResourceCapExceeded("fragment dimension " + std::to_string(b.size()) + "^" + std::to_string(fN) +
                              " exceeds cap " + std::to_string(cap));
  }
}

// Calls visit(counts, multiplicity) for every composition of fN into b.size() parts.
template <class Visit>
void for_each_composition(std::size_t parts, int fN, Visit&& visit) {
  std::vector<int> counts(parts, 0);
  auto rec = [&](auto&& self, std::size_t j, int remaining, double mult) -> void {
    if (j + 1 == parts) {
      counts[j] = remaining;
      visit(counts, mult);
      return;
    }
    double binom = 1.0;
    for (int c = 0; c <= remaining; ++c) {
      counts[j] = c;
      self(self, j + 1, remaining - c, mult * binom);
      binom = binom * (remaining - c) / (c + 1);
    }
  };
  rec(rec, 0, fN, 1.0);
}

double log_product(std::span<const double> b, const std::vector<int>& counts) {
  double s = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (counts[j] == 0) continue;
    s += counts[j] * std::log1p(b[j]);
  }
  return s;
}

}  // namespace

std::vector<double> b_eigenvalues(const Eigen::MatrixXcd& B) {
  if (B.rows() != B.cols()) throw std::invalid_argument("B must be square");
  if ((B - B.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("B must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(B, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("b_eigenvalues: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Eigen::MatrixXcd perturbation_matrix(const Eigen::MatrixXcd& region_block) {
  const Eigen::Index n = region_block.rows();
  Eigen::MatrixXcd B = region_block * region_block.adjoint() - Eigen::MatrixXcd::Identity(n, n);
  // Symmetrise away rounding so the Hermitian check downstream is exact.
  return 0.5 * (B + B.adjoint());
}

DiscreteEnv DiscreteEnv::from_matrix(const Eigen::MatrixXcd& B, int fN) {
  if (fN < 1) throw std::invalid_argument("fN must be at least 1");
  DiscreteEnv env;
  env.B = B;
  env.b = b_eigenvalues(B);
  env.fN = fN;
  for (double& v : env.b) {
    if (v > 0.0 && v < 1e-14) v = 0.0;
    if (!(v >= -1.0 && v <= 0.0)) throw std::invalid_argument("B eigenvalues must lie in [-1, 0]");
  }
  return env;
}

FragmentSpectrum fragment_eigenvalues(std::span<const double> b, int fN, double cap) {
  check_b(b, fN, cap);
  const double scale = 0.5 / std::pow(static_cast<double>(b.size()), fN);
  FragmentSpectrum out;
  for_each_composition(b.size(), fN, [&](const std::vector<int>& counts, double mult) {
    const double gap = std::exp(0.5 * log_product(b, counts));
    out.push_back({(1.0 + gap) * scale, mult});
    out.push_back({(1.0 - gap) * scale, mult});
  });
  return out;
}

Nats fragment_entropy_exact(const FragmentSpectrum& spectrum) {
  long double total = 0.0L;
  long double entropy = 0.0L;
  for (const auto& level : spectrum) {
    if (level.value < 0.0 || level.multiplicity < 0.0) throw std::domain_error("negative spectrum entry");
    total += static_cast<long double>(level.value) * level.multiplicity;
    if (level.value > 0.0) {
      entropy -= static_cast<long double>(level.multiplicity) * level.value * std::log(static_cast<long double>(level.value));
    }
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-10) throw std::domain_error("spectrum is not normalised");
  return static_cast<double>(entropy);
}

Nats fragment_entropy_change_exact(std::span<const double> b, int fN, double cap) {
  check_b(b, fN, cap);
  const long double dim = std::pow(static_cast<long double>(b.size()), fN);
  long double sum = 0.0L;
  for_each_composition(b.size(), fN, [&](const std::vector<int>& counts, double mult) {
    // Each index vector contributes binary_entropy(gap) = ln 2 - h(gap^2).
    const double eps = -std::expm1(log_product(b, counts));
    sum += static_cast<long double>(mult) * h_deficit_near_one(eps);
  });
  return static_cast<double>(sum / dim);
}

Nats fragment_entropy_change_analytic(std::span<const double> b, int fN) {
  if (b.empty()) throw std::invalid_argument("empty b spectrum");
  const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
  return h_deficit_near_one(-std::expm1(fN * mean));
}

double discrete_gamma(std::span<const std::complex<double>> s, std::span<const double> weights) {
  if (s.size() != weights.size() || s.empty()) throw std::invalid_argument("discrete_gamma: size mismatch");
  std::complex<double> acc = 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (std::abs(s[n]) > 1.0 + 1e-12) throw std::domain_error("discrete_gamma: |s_n| > 1");
    if (weights[n] < 0.0) throw std::domain_error("discrete_gamma: negative weight");
    acc += weights[n] * s[n];
    total += weights[n];
  }
  if (!(total > 0.0)) throw std::domain_error("discrete_gamma: zero total weight");
  return std::norm(acc / total);
}

double matrix_element_diag(double k_momentum, double theta, const Scenario& s, double volume_m3, double t_s) {
  s.validate();
  if (!(volume_m3 > 0.0)) throw std::invalid_argument("volume must be positive");
  const double kappa = k_momentum / constants::hbar;
  const double at = s.effective_radius();
  const double c2 = std::cos(theta) * std::cos(theta);
  const double deficit = (2.0 * kPi / 15.0) * (3.0 + 11.0 * c2) * std::pow(at * kappa, 6) *
                         (s.dx_m * s.dx_m) * t_s * constants::c / volume_m3;
  return 1.0 - deficit;
}

PlanckQuadrature PlanckQuadrature::make(int nodes) {
  const GaussLegendre gl = gauss_legendre(nodes, 0.0, 1.0);
  PlanckQuadrature q;
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = gl.nodes[i];
    const double x = kPlanckMapScale * u / (1.0 - u);
    const double jac = kPlanckMapScale / ((1.0 - u) * (1.0 - u));
    const double w = gl.weights[i] * jac * x * x / std::expm1(x);
    q.x.push_back(x);
    q.weights.push_back(std::isfinite(w) ? w : 0.0);
    total += q.weights.back();
  }
  for (double& w : q.weights) w /= total;
  return q;
}

double PlanckQuadrature::moment(double power) const {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m += weights[i] * std::pow(x[i], power);
  return m;
}

std::size_t ScatteringGrid::region_size() const {
  return static_cast<std::size_t>(std::count(in_region.begin(), in_region.end(), std::uint8_t{1}));
}

ScatteringGrid make_scattering_grid(double theta0, double chi, int cos_points, int phi_points) {
  if (cos_points < 1 || phi_points < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (!(theta0 >= 0.0 && theta0 <= kPi) || !(chi >= 0.0 && chi <= kPi)) {
    throw std::invalid_argument("theta0 and chi must lie in [0, pi]");
  }
  ScatteringGrid grid;
  grid.cell_solid_angle = 4.0 * kPi / (static_cast<double>(cos_points) * phi_points);
  const double boundary = std::cos(theta0);
  const double cchi = std::cos(chi);
  const double schi = std::sin(chi);
  for (int i = 0; i < cos_points; ++i) {
    const double c = 1.0 - 2.0 * (i + 0.5) / cos_points;
    const double s = std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
    for (int j = 0; j < phi_points; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / phi_points;
      const double lx = s * std::cos(phi);
      const double ly = s * std::sin(phi);
      grid.directions.push_back({lx * cchi + c * schi, ly, -lx * schi + c * cchi});
      grid.in_region.push_back(c >= boundary ? 1 : 0);
    }
  }
  return grid;
}

Eigen::MatrixXd scattering_generator(const ScatteringGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  const Direction axis = Direction::axis();
  std::vector<Direction> dirs;
  dirs.reserve(grid.size());
  for (const auto& v : grid.directions) dirs.push_back(Direction::from_vector(v));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double k = std::sqrt(g2_weight(dirs[a], dirs[b], axis)) * grid.cell_solid_angle;
      K(a, b) = k;
      K(b, a) = k;
    }
  }
  return K;
}

Eigen::MatrixXcd scattering_unitary(const ScatteringGrid& grid, double coupling) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scattering_generator(grid));
  if (solver.info() != Eigen::Success) throw std::runtime_error("scattering_unitary: eigensolver failed");
  const Eigen::MatrixXd& V = solver.eigenvectors();
  Eigen::VectorXcd phases(V.cols());
  for (Eigen::Index j = 0; j < V.cols(); ++j) phases(j) = std::polar(1.0, coupling * solver.eigenvalues()(j));
  return V.cast<std::complex<double>>() * phases.asDiagonal() * V.transpose().cast<std::complex<double>>();
}

DiscreteAlphaResult discrete_alpha(const ScatteringGrid& grid, std::span<const SpectralSlice> slices) {
  if (slices.empty()) throw std::invalid_argument("discrete_alpha: no spectral slices");
  double weight_total = 0.0;
  for (const auto& s : slices) {
    if (s.weight < 0.0) throw std::invalid_argument("discrete_alpha: negative slice weight");
    weight_total += s.weight;
  }
  if (!(weight_total > 0.0)) throw std::invalid_argument("discrete_alpha: zero total slice weight");

  DiscreteAlphaResult out;
  out.sky_size = grid.size();
  out.region_size = grid.region_size();
  if (out.region_size == 0) throw std::invalid_argument("discrete_alpha: empty region");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scattering_generator(grid));
  if (solver.info() != Eigen::Success) throw std::runtime_error("discrete_alpha: eigensolver failed");
  const Eigen::MatrixXd& V = solver.eigenvectors();
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const auto ns = static_cast<Eigen::Index>(grid.size());
  const auto nb = static_cast<Eigen::Index>(out.region_size);

  std::vector<Eigen::Index> inside;
  std::vector<Eigen::Index> outside;
  for (Eigen::Index n = 0; n < ns; ++n) (grid.in_region[n] ? inside : outside).push_back(n);
  const Eigen::MatrixXd VB = V(inside, Eigen::all);
  const Eigen::MatrixXd VC = V(outside, Eigen::all);

  double numerator = 0.0;
  std::complex<double> delta = 0.0;
  for (const auto& slice : slices) {
    const double w = slice.weight / weight_total;
    // exp(i e l) - 1 = -2 sin^2(e l / 2) + i sin(e l), free of cancellation.
    Eigen::VectorXd re(ns);
    Eigen::VectorXd im(ns);
    for (Eigen::Index j = 0; j < ns; ++j) {
      const double half = std::sin(0.5 * slice.coupling * lambda(j));
      re(j) = -2.0 * half * half;
      im(j) = std::sin(slice.coupling * lambda(j));
    }
    std::complex<double> mean_diag = 0.0;
    for (Eigen::Index n = 0; n < nb; ++n) {
      const auto row = VB.row(n).array();
      mean_diag += std::complex<double>((row * row * re.transpose().array()).sum(),
                                        (row * row * im.transpose().array()).sum());
    }
    mean_diag /= static_cast<double>(nb);
    delta += w * mean_diag;
    if (!outside.empty()) {
      // Unitarity turns sum_{n,m in B} |U_nm|^2 - D_B into minus the
      // region-to-complement block norm.
      Eigen::MatrixXd stacked(2 * nb, ns);
      stacked.topRows(nb) = VB * re.asDiagonal();
      stacked.bottomRows(nb) = VB * im.asDiagonal();
      const Eigen::MatrixXd block = stacked * VC.transpose();
      numerator -= w * block.squaredNorm() / static_cast<double>(nb);
    }
  }
  out.numerator = numerator;
  out.denominator = std::log1p(2.0 * delta.real() + std::norm(delta));
  if (out.denominator != 0.0) out.alpha = out.numerator / out.denominator;
  return out;
}

Nats mi_exact_general(const DecoherenceMatrix& gamma, std::span<const double> p, double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("f outside [0, 1]");
  const std::size_t m = gamma.size();
  if (p.size() != m) throw std::invalid_argument("mi_exact_general: size mismatch");
  (void)max_entropy(p);
  auto entropy = [&](double w) {
    Eigen::MatrixXd rho(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        rho(a, b) = a == b ? p[a]
                           : std::sqrt(p[a] * p[b]) * DecoherenceFactor::from_value(gamma(a, b)).pow(0.5 * w);
      }
    }
    return symmetric_matrix_entropy(rho);
  };
  return entropy(f) + entropy(1.0) - entropy(1.0 - f);
}

}  // namespace qdarwin
