#include "qdarwin/superpositions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qdarwin/spectral.hpp"

namespace qdarwin {
namespace {

void require_fraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error(std::string(name) + " outside [0, 1]");
}

void require_distribution(std::span<const double> p) {
  if (p.empty()) throw std::domain_error("empty probability vector");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::domain_error("negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::domain_error("probabilities do not sum to 1");
}

// Entropy of [sqrt(p_a p_b) g^(w/2)] with g on every off-diagonal entry.
Nats uniform_cat_entropy(std::span<const double> p, DecoherenceFactor g, double w) {
  const auto m = static_cast<Eigen::Index>(p.size());
  const double off = g.pow(0.5 * w);
  Eigen::MatrixXd rho(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      rho(a, b) = a == b ? p[a] : std::sqrt(p[a] * p[b]) * off;
    }
  }
  return symmetric_matrix_entropy(rho);
}

Nats uniform_cat_mi(std::span<const double> p, DecoherenceFactor g, double f) {
  const bool balanced = std::all_of(p.begin(), p.end(), [&](double v) { return std::abs(v - p[0]) < 1e-15; });
  if (balanced) return mi_mway(g, f, p.size());
  return uniform_cat_entropy(p, g, f) + uniform_cat_entropy(p, g, 1.0) - uniform_cat_entropy(p, g, 1.0 - f);
}

}  // namespace

Nats max_entropy(std::span<const double> p) {
  require_distribution(p);
  double sum = 0.0;
  for (double v : p) sum += neg_x_log_x(v);
  return sum;
}

Imbalance Imbalance::from_mu(double mu) {
  require_fraction(mu, "mu");
  return Imbalance(1.0 - mu);
}

Imbalance Imbalance::from_one_minus_mu(double nu) {
  require_fraction(nu, "1 - mu");
  return Imbalance(nu);
}

Imbalance Imbalance::from_probabilities(double p1, double p2) {
  const double p[2] = {p1, p2};
  require_distribution(p);
  return Imbalance(std::min(1.0, 4.0 * p1 * p2));
}

Nats Imbalance::plateau() const { return h_deficit_near_one(nu_); }

Nats mi_unbalanced(DecoherenceFactor gamma, double f, Imbalance imbalance) {
  require_fraction(f, "f");
  const double nu = imbalance.one_minus_mu();
  // h(mu + (1-mu) x) = ln 2 - deficit((1-mu)(1-x)), so the ln 2 terms cancel.
  auto d = [&](double s) { return h_deficit_near_one(nu * gamma.one_minus_pow(s)); };
  return d(f) + d(1.0) - d(1.0 - f);
}

double mi_unbalanced_renormalized(DecoherenceFactor gamma, double f, Imbalance imbalance) {
  const Nats plateau = imbalance.plateau();
  if (!(plateau > 0.0)) throw std::domain_error("mi_unbalanced_renormalized: undefined for a single branch");
  return mi_unbalanced(gamma, f, imbalance) / plateau;
}

double mi_unbalanced_limit(DecoherenceFactor gamma, double f) {
  require_fraction(f, "f");
  return 1.0 + gamma.pow(1.0 - f) - gamma.pow(f) - gamma.value();
}

Nats mi_mway(DecoherenceFactor gamma, double f, std::uint64_t m) {
  require_fraction(f, "f");
  if (m < 2) throw std::domain_error("mi_mway: need M >= 2");
  return m_spectrum_entropy(gamma.pow(0.5 * f), m) + m_spectrum_entropy(gamma.pow(0.5), m) -
         m_spectrum_entropy(gamma.pow(0.5 * (1.0 - f)), m);
}

double mi_mway_renormalized(DecoherenceFactor gamma, double f, std::uint64_t m) {
  return mi_mway(gamma, f, m) / std::log(static_cast<double>(m));
}

double mi_mway_limit(DecoherenceFactor gamma, double f) {
  require_fraction(f, "f");
  return 1.0 + gamma.pow(0.5 * (1.0 - f)) - gamma.pow(0.5 * f) - gamma.pow(0.5);
}

DecoherenceMatrix::DecoherenceMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  const std::size_t m = rows_.size();
  if (m < 2) throw std::invalid_argument("decoherence matrix must be at least 2 x 2");
  for (std::size_t a = 0; a < m; ++a) {
    if (rows_[a].size() != m) throw std::invalid_argument("decoherence matrix is not square");
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (std::abs(rows_[a][a] - 1.0) > 1e-12) throw std::invalid_argument("decoherence matrix diagonal must be 1");
    for (std::size_t b = 0; b < m; ++b) {
      const double v = rows_[a][b];
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("decoherence factors must lie in [0, 1]");
      if (std::abs(v - rows_[b][a]) > 1e-12) throw std::invalid_argument("decoherence matrix is not symmetric");
    }
  }
}

DecoherenceMatrix DecoherenceMatrix::uniform(std::size_t m, double gamma) {
  std::vector<std::vector<double>> rows(m, std::vector<double>(m, gamma));
  for (std::size_t a = 0; a < m; ++a) rows[a][a] = 1.0;
  return DecoherenceMatrix(std::move(rows));
}

double DecoherenceMatrix::weakest() const {
  double w = 0.0;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) w = std::max(w, rows_[a][b]);
  }
  return w;
}

double DecoherenceMatrix::strongest() const {
  double s = 1.0;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) s = std::min(s, rows_[a][b]);
  }
  return s;
}

DecoherenceMatrix read_decoherence_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("decoherence matrix line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  try {
    return DecoherenceMatrix(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("decoherence matrix: ") + e.what());
  }
}

IntervalBounds mi_interval_bounds(const CatSpec& cat, double f) {
  require_fraction(f, "f");
  require_distribution(cat.p);
  if (cat.p.size() != cat.gamma.size()) throw std::invalid_argument("mi_interval_bounds: size mismatch");
  IntervalBounds out;
  out.gamma_weak = cat.gamma.weakest();
  out.gamma_strong = cat.gamma.strongest();
  const auto weak = DecoherenceFactor::from_value(out.gamma_weak);
  const auto strong = DecoherenceFactor::from_value(out.gamma_strong);
  out.in_regime = weak.log() <= kIntervalRegimeLogGamma + 1e-12;
  out.weak = uniform_cat_mi(cat.p, weak, f);
  out.strong = uniform_cat_mi(cat.p, strong, f);
  return out;
}

}  // namespace qdarwin
