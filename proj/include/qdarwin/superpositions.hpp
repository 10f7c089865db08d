#pragma once

// Mutual information for unbalanced two-branch and balanced M-branch
// superpositions, their large-imbalance / large-M limits, and interval
// bounds for unequal pairwise decoherence factors.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qdarwin/information.hpp"
#include "qdarwin/series_kernels.hpp"

namespace qdarwin {

/// Shannon entropy (nats) of a probability vector. Throws std::domain_error
/// for negative entries or a sum differing from 1 by more than 1e-12.
[[nodiscard]] Nats max_entropy(std::span<const double> p);

/// Branch imbalance mu = (p1 - p2)^2 of a two-branch state, held as
/// nu = 1 - mu = 4 p1 p2 so that nearly pure states keep full precision.
class Imbalance {
 public:
  static Imbalance from_mu(double mu);
  static Imbalance from_one_minus_mu(double nu);
  static Imbalance from_probabilities(double p1, double p2);

  [[nodiscard]] double mu() const { return 1.0 - nu_; }
  [[nodiscard]] double one_minus_mu() const { return nu_; }
  /// -p1 ln p1 - p2 ln p2 = ln 2 - h(mu).
  [[nodiscard]] Nats plateau() const;

 private:
  explicit Imbalance(double nu) : nu_(nu) {}
  double nu_ = 1.0;
};

/// Point-source mutual information of the unbalanced two-branch state.
[[nodiscard]] Nats mi_unbalanced(DecoherenceFactor gamma, double f, Imbalance imbalance);

/// mi_unbalanced / plateau. Throws std::domain_error at mu = 1, where it is 0/0.
[[nodiscard]] double mi_unbalanced_renormalized(DecoherenceFactor gamma, double f, Imbalance imbalance);

/// Limit of the renormalized value as mu -> 1: 1 + Gamma^(1-f) - Gamma^f - Gamma.
[[nodiscard]] double mi_unbalanced_limit(DecoherenceFactor gamma, double f);

/// Mutual information of the balanced M-branch state with equal pairwise factors.
[[nodiscard]] Nats mi_mway(DecoherenceFactor gamma, double f, std::uint64_t m);

/// mi_mway / ln M.
[[nodiscard]] double mi_mway_renormalized(DecoherenceFactor gamma, double f, std::uint64_t m);

/// Limit of the renormalized value as M -> infinity:
/// 1 + Gamma^((1-f)/2) - Gamma^(f/2) - Gamma^(1/2).
[[nodiscard]] double mi_mway_limit(DecoherenceFactor gamma, double f);

/// Symmetric matrix of pairwise decoherence factors Gamma_ab with unit diagonal.
class DecoherenceMatrix {
 public:
  /// Throws std::invalid_argument if not square, not symmetric (1e-12), not
  /// unit-diagonal or with entries outside [0, 1].
  explicit DecoherenceMatrix(std::vector<std::vector<double>> rows);
  static DecoherenceMatrix uniform(std::size_t m, double gamma);

  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] double operator()(std::size_t a, std::size_t b) const { return rows_[a][b]; }
  /// Largest and smallest off-diagonal entries.
  [[nodiscard]] double weakest() const;
  [[nodiscard]] double strongest() const;

 private:
  std::vector<std::vector<double>> rows_;
};

/// Parses comma-separated rows. Throws std::runtime_error naming the line.
[[nodiscard]] DecoherenceMatrix read_decoherence_matrix(std::istream& in);

struct CatSpec {
  std::vector<double> p;
  DecoherenceMatrix gamma;
};

/// Threshold above which the weak factor leaves the regime where the interval
/// bounds are expected to hold.
inline constexpr double kIntervalRegimeLogGamma = -5.0;

struct IntervalBounds {
  Nats weak = 0.0;    // all factors set to the largest one
  Nats strong = 0.0;  // all factors set to the smallest one
  double gamma_weak = 1.0;
  double gamma_strong = 1.0;
  bool in_regime = false;
};

/// Mutual information with every pairwise factor replaced by the weakest and
/// by the strongest one.
[[nodiscard]] IntervalBounds mi_interval_bounds(const CatSpec& cat, double f);

}  // namespace qdarwin
