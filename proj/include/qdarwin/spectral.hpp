#pragma once

// Von Neumann entropy of small dense density matrices.

#include <span>

#include <Eigen/Dense>

#include "qdarwin/series_kernels.hpp"

namespace qdarwin {

/// -sum lambda ln lambda over an explicit spectrum (0 ln 0 = 0).
[[nodiscard]] Nats spectrum_entropy(std::span<const double> eigenvalues);

/// Entropy of a real symmetric density matrix. Eigenvalues below
/// -psd_tolerance raise std::domain_error; smaller negative rounding noise is
/// clamped to zero.
[[nodiscard]] Nats symmetric_matrix_entropy(const Eigen::MatrixXd& rho, double psd_tolerance = 1e-12);

}  // namespace qdarwin
