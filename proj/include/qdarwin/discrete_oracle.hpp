#pragma once

// Finite model of the photon environment: discrete directions, the exact
// fragment spectrum built from the per-photon perturbation matrix B, and
// discrete versions of the decoherence factor and receptivity. Used as ground
// truth for the closed forms elsewhere in the library.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/radiometry.hpp"
#include "qdarwin/series_kernels.hpp"
#include "qdarwin/sky_geometry.hpp"
#include "qdarwin/superpositions.hpp"

namespace qdarwin {

/// Raised when an oracle computation would exceed its size cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultSpectrumCap = 1e7;

struct SpectrumLevel {
  double value = 0.0;
  double multiplicity = 0.0;
};
using FragmentSpectrum = std::vector<SpectrumLevel>;

/// Per-photon perturbation matrix together with its eigenvalues.
struct DiscreteEnv {
  Eigen::MatrixXcd B;
  std::vector<double> b;
  int fN = 1;

  /// Throws std::invalid_argument unless B is Hermitian with eigenvalues in [-1, 0].
  static DiscreteEnv from_matrix(const Eigen::MatrixXcd& B, int fN);
};

/// Eigenvalues of a Hermitian matrix (tolerance 1e-12 on the asymmetry).
[[nodiscard]] std::vector<double> b_eigenvalues(const Eigen::MatrixXcd& B);

/// B = W W^dagger - I for the region block W of a scattering unitary.
[[nodiscard]] Eigen::MatrixXcd perturbation_matrix(const Eigen::MatrixXcd& region_block);

/// Levels (1 +- prod sqrt(1 + b_j)) / (2 D^fN) over all index vectors, grouped
/// by composition. b_j must lie in [-1, 0]. Throws ResourceCapExceeded when
/// D^fN exceeds `cap`.
[[nodiscard]] FragmentSpectrum fragment_eigenvalues(std::span<const double> b, int fN,
                                                    double cap = kDefaultSpectrumCap);

/// -sum lambda ln lambda weighted by multiplicity. Throws std::domain_error
/// unless the spectrum sums to 1 within 1e-10.
[[nodiscard]] Nats fragment_entropy_exact(const FragmentSpectrum& spectrum);

/// H - fN ln D for the exact spectrum, evaluated as ln 2 - mean_J h(prod (1 + b_j)).
[[nodiscard]] Nats fragment_entropy_change_exact(std::span<const double> b, int fN,
                                                 double cap = kDefaultSpectrumCap);

/// First-order form ln 2 - h(exp(fN mean b)).
[[nodiscard]] Nats fragment_entropy_change_analytic(std::span<const double> b, int fN);

/// |sum w_n s_n / sum w_n|^2. Throws for |s_n| > 1 or non-positive total weight.
[[nodiscard]] double discrete_gamma(std::span<const std::complex<double>> s, std::span<const double> weights);

/// First-order diagonal overlap for a photon of momentum k (kg m/s) at polar
/// angle theta, box volume V (m^3) and elapsed time t (s).
[[nodiscard]] double matrix_element_diag(double k_momentum, double theta, const Scenario& s, double volume_m3,
                                         double t_s);

/// Planck number spectrum p(x) ~ x^2 / (e^x - 1), x = hbar c k / (k_B T),
/// discretised with Gauss-Legendre nodes on a mapped half line. Weights sum to 1.
struct PlanckQuadrature {
  std::vector<double> x;
  std::vector<double> weights;

  static PlanckQuadrature make(int nodes = 32);
  /// Mean of x^power.
  [[nodiscard]] double moment(double power) const;
};

/// Equal-area direction grid: rings uniform in cos theta' about a disk axis
/// tilted by chi, cells whose centre lies inside the disk of half-angle theta0
/// form the region. The disk boundary is a ring boundary when
/// cos_points (1 - cos theta0) / 2 is an integer.
struct ScatteringGrid {
  std::vector<Vec3> directions;
  std::vector<std::uint8_t> in_region;
  double cell_solid_angle = 0.0;

  [[nodiscard]] std::size_t size() const { return directions.size(); }
  [[nodiscard]] std::size_t region_size() const;
};
[[nodiscard]] ScatteringGrid make_scattering_grid(double theta0, double chi, int cos_points, int phi_points);

/// Real symmetric generator K_nm = sqrt(g2_weight(n, m, +z)) dOmega.
[[nodiscard]] Eigen::MatrixXd scattering_generator(const ScatteringGrid& grid);

/// exp(i coupling K).
[[nodiscard]] Eigen::MatrixXcd scattering_unitary(const ScatteringGrid& grid, double coupling);

/// A photon-energy slice: probability weight and coupling strength.
struct SpectralSlice {
  double weight = 1.0;
  double coupling = 1e-3;
};

struct DiscreteAlphaResult {
  std::optional<double> alpha;  // empty when gamma = 1
  double numerator = 0.0;       // D_B^-1 sum_{n,m in B} |U_nm|^2 - 1, spectrum averaged
  double denominator = 0.0;     // ln gamma
  std::size_t region_size = 0;
  std::size_t sky_size = 0;
};

/// Discrete receptivity Z / ln gamma for the unitary exp(i coupling K) on the grid.
[[nodiscard]] DiscreteAlphaResult discrete_alpha(const ScatteringGrid& grid,
                                                 std::span<const SpectralSlice> slices);

/// E(f) + E(1) - E(1 - f) with E(w) the entropy of [sqrt(p_a p_b) Gamma_ab^(w/2)].
/// Throws std::domain_error when a matrix is not positive semidefinite.
[[nodiscard]] Nats mi_exact_general(const DecoherenceMatrix& gamma, std::span<const double> p, double f);

}  // namespace qdarwin
