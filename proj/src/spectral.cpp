#include "qdarwin/spectral.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdarwin {

Nats spectrum_entropy(std::span<const double> eigenvalues) {
  std::vector<double> terms;
  terms.reserve(eigenvalues.size());
  for (double lambda : eigenvalues) terms.push_back(neg_x_log_x(lambda));
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

Nats symmetric_matrix_entropy(const Eigen::MatrixXd& rho, double psd_tolerance) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("symmetric_matrix_entropy: matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric_matrix_entropy: eigensolver failed");
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + rho.rows());
  for (double& v : values) {
    if (v < -psd_tolerance) {
      throw std::domain_error("symmetric_matrix_entropy: matrix not positive semidefinite (eigenvalue " +
                              std::to_string(v) + ")");
    }
    v = std::max(v, 0.0);
  }
  return spectrum_entropy(values);
}

}  // namespace qdarwin
