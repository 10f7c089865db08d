// End-to-end acceptance run: one PASS/FAIL line per criterion, with the
// measured figure of merit and the tolerance it was held to.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cli/oracle_battery.hpp"
#include "qdarwin/discrete_oracle.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/radiometry.hpp"
#include "qdarwin/receptivity.hpp"
#include "qdarwin/superpositions.hpp"

using namespace qdarwin;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr std::uint64_t kSeed = 1;

struct Line {
  int id;
  bool pass;
  std::string summary;
  std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<std::pair<double, double>> disk_grid() {
  std::vector<std::pair<double, double>> g;
  for (int th = 10; th <= 170; th += 20) {
    for (int ch : {0, 45, 90}) g.emplace_back(th * kDeg, ch * kDeg);
  }
  return g;
}

Scenario bead(SkyRegion region) {
  Scenario s;
  s.radius_m = 1e-7;
  s.permittivity = 4.0;
  s.dx_m = 1e-7;
  s.temperature_K = 300.0;
  s.region = region;
  return s;
}

Line criterion1() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto [th, ch] : disk_grid()) {
    worst = std::max(worst, std::abs(alpha_numeric(SkyRegion::disk(th, ch)).alpha - alpha_disk(th, ch)));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst < 1e-6 && secs < 10.0;
  return {1, pass, "receptivity quadrature vs closed form",
          {fmt("max |alpha_numeric - alpha_disk| = %.3e (tol 1e-6) over 27 disks", worst),
           fmt("runtime %.3f s (limit 10 s) at default order", secs)}};
}

Line criterion2() {
  double worst = 0.0;
  for (auto [th, ch] : disk_grid()) {
    const RateResult r = decoherence_rate(bead(SkyRegion::disk(th, ch)));
    worst = std::max(worst, std::abs(r.ratio / disk_rate(th, ch) - 1.0));
  }
  const RateResult full = decoherence_rate(bead(SkyRegion::disk(kPi, 0.0)));
  const RateResult iso = decoherence_rate(bead(SkyRegion::isotropic()));
  const double full_gap = std::max(std::abs(full.tau_D_inv / full.T_D_inv - 1.0), std::abs(iso.tau_D_inv / iso.T_D_inv - 1.0));
  return {2, worst < 1e-8 && full_gap < 1e-10, "decoherence rate quadrature vs closed form",
          {fmt("max relative gap = %.3e (tol 1e-8)", worst),
           fmt("full sphere vs T_D^-1 relative gap = %.3e (tol 1e-10)", full_gap)}};
}

Line criterion3() {
  double closed = 0.0;
  double quad = 0.0;
  double tau_r = 0.0;
  for (auto [th, ch] : disk_grid()) {
    closed = std::max(closed, std::abs(disk_rate(th, ch) + disk_rate(kPi - th, kPi - ch) - 1.0));
    const double a = decoherence_rate(bead(SkyRegion::disk(th, ch))).ratio;
    const double b = decoherence_rate(bead(SkyRegion::disk(kPi - th, kPi - ch))).ratio;
    quad = std::max(quad, std::abs(a + b - 1.0));
    const SkyRegion r = SkyRegion::disk(th, ch);
    const double x = alpha_numeric(r).tau_R_ratio;
    const double y = alpha_numeric(r.complement()).tau_R_ratio;
    tau_r = std::max(tau_r, std::abs(x / y - 1.0));
  }
  // "exactly" in floating point: a few ulps of 1
  const bool pass = closed <= 4.0 * std::numeric_limits<double>::epsilon() && quad < 1e-8 && tau_r < 1e-8;
  return {3, pass, "complement identities",
          {fmt("closed-form rate sum: max |sum - 1| = %.3e (tol 4 ulp)", closed),
           fmt("quadrature rate sum: max |sum - 1| = %.3e (tol 1e-8)", quad),
           fmt("tau_R region vs complement: max relative gap = %.3e (tol 1e-8)", tau_r)}};
}

Line criterion4() {
  double ends = 0.0;
  double anti = 0.0;
  for (double t : {0.0, 0.01, 0.5, 2.0, 10.0, 50.0, 100.0, 1000.0}) {
    const auto g = DecoherenceFactor::from_time(t);
    const double hs = system_entropy(g);
    for (double a : {0.0, 0.5, 1.0}) ends = std::max(ends, std::abs(mutual_information(g, a, 0.0)));
    ends = std::max(ends, std::abs(mutual_information(g, 1.0, 1.0) - 2.0 * hs));
    for (int i = 0; i <= 100; ++i) {
      const double f = i / 100.0;
      anti = std::max(anti, std::abs(mutual_information(g, 1.0, f) + mutual_information(g, 1.0, 1.0 - f) - 2.0 * hs));
    }
  }
  const double plateau = mutual_information(DecoherenceFactor::from_time(100.0), 1.0, 0.1);
  const double oven = mutual_information(DecoherenceFactor::from_time(1000.0), 0.0, 0.4);
  const bool pass = ends < 1e-12 && anti < 1e-12 && plateau >= 0.99 * kLn2 && oven < 1e-3;
  return {4, pass, "partial information curve properties",
          {fmt("I(0) = 0 and I(1) = 2 H_S: max gap %.3e (tol 1e-12)", ends),
           fmt("I(f) + I(1-f) = 2 H_S at alpha = 1: max gap %.3e (tol 1e-12)", anti),
           fmt("plateau I(0.1) at Gamma = e^-100: %.9f (need >= %.9f)", plateau, 0.99 * kLn2),
           fmt("alpha = 0 decay I(0.4) at Gamma = e^-1000: %.3e (need < 1e-3)", oven)}};
}

Line criterion5() {
  double worst = 0.0;
  double bound_excess = -INFINITY;
  int points = 0;
  for (double a : {0.25, 0.5, 1.0}) {
    for (int i = 0; i <= 90; ++i) {
      const double t = 50.0 + 5.0 * i;
      const auto r = redundancy_exact(DecoherenceFactor::from_time(t), a, 0.01);
      if (!r) {
        worst = INFINITY;
        continue;
      }
      ++points;
      worst = std::max(worst, std::abs(*r / redundancy_estimate(t, a, 0.01) - 1.0));
      bound_excess = std::max(bound_excess, redundancy_lower_bound(t, 0.01, a) - *r);
    }
  }
  return {5, worst <= 0.05 && bound_excess <= 0.0, "redundancy against the linear estimate",
          {fmt("max |R_exact / R_estimate - 1| = %.4f (tol 0.05) over %d points, t in [50, 500]", worst, points),
           fmt("max (R_lower - R_exact) = %.4f (must be <= 0; alpha-scaled bound)", bound_excess)}};
}

// Term-by-term summation of the m-series until terms drop below 1e-18.
double series_oracle(double gamma, double alpha, double f) {
  auto s = [](double x) {
    double acc = 0.0;
    for (int m = 1; m < 100000; ++m) {
      const double term = std::pow(x, m) / (2.0 * m * (2.0 * m - 1.0));
      acc += term;
      if (term < 1e-18) break;
    }
    return acc;
  };
  return kLn2 + s(std::pow(gamma, 1.0 - f)) - s(std::pow(gamma, alpha * f)) - s(gamma);
}

Line criterion6() {
  const auto g = DecoherenceFactor::from_time(10.0);
  const double mi = mutual_information(g, 1.0, 0.2);
  const double oracle = series_oracle(g.value(), 1.0, 0.2);
  constexpr double kQuoted = 0.624037;
  const auto r = redundancy_exact(DecoherenceFactor::from_time(100.0), 1.0, 0.01);
  const double rv = r ? *r : NAN;
  const bool pass = std::abs(mi - oracle) <= 1e-5 && r && std::abs(rv - 23.4) <= 0.5;
  return {6, pass, "spot values",
          {fmt("I(e^-10, 1, 0.2) = %.7f, series oracle %.7f, gap %.2e (tol 1e-5)", mi, oracle, std::abs(mi - oracle)),
           fmt("quoted literal %.6f sits %.2e from the oracle, which is authoritative here", kQuoted,
               std::abs(kQuoted - oracle)),
           fmt("R(e^-100, 1, 0.01) = %.5f (target 23.4 +- 0.5)", rv)}};
}

// Two-point Richardson extrapolation for values v = L + K u.
double extrapolate(double u1, double v1, double u2, double v2) { return (v2 * u1 - v1 * u2) / (u1 - u2); }

Line criterion7() {
  double m2 = 0.0;
  double mu0 = 0.0;
  for (double t : {0.01, 0.3, 1.0, 4.0, 10.0, 40.0, 100.0, 700.0}) {
    const auto g = DecoherenceFactor::from_time(t);
    for (int i = 0; i <= 20; ++i) {
      const double f = i / 20.0;
      m2 = std::max(m2, std::abs(mi_mway(g, f, 2) - mutual_information(g, 1.0, f)));
      mu0 = std::max(mu0, std::abs(mi_unbalanced(g, f, Imbalance::from_mu(0.0)) - mutual_information(g, 1.0, f)));
    }
  }

  // mu -> 1: ratio = L + K / (ln(4/nu) + 1) + O(nu).  M -> inf: ratio = L + K / ln M + O(1/M).
  double mu_lim = 0.0;
  double m_lim = 0.0;
  for (double t : {1.0, 10.0, 100.0}) {
    for (double f : {0.1, 0.2, 0.4, 0.7}) {
      const auto g = DecoherenceFactor::from_time(t);
      const double n1 = 1e-200;
      const double n2 = 1e-280;
      const double u1 = 1.0 / (std::log(4.0 / n1) + 1.0);
      const double u2 = 1.0 / (std::log(4.0 / n2) + 1.0);
      const double lim_mu =
          extrapolate(u1, mi_unbalanced_renormalized(g, f, Imbalance::from_one_minus_mu(n1)), u2,
                      mi_unbalanced_renormalized(g, f, Imbalance::from_one_minus_mu(n2)));
      mu_lim = std::max(mu_lim, std::abs(lim_mu - mi_unbalanced_limit(g, f)));
      const std::uint64_t ma = 1ull << 50;
      const std::uint64_t mb = 1ull << 62;
      const double lim_m = extrapolate(1.0 / std::log(double(ma)), mi_mway_renormalized(g, f, ma),
                                       1.0 / std::log(double(mb)), mi_mway_renormalized(g, f, mb));
      m_lim = std::max(m_lim, std::abs(lim_m - mi_mway_limit(g, f)));
    }
  }

  double ident = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double p = (i + 0.5) / 100.0;
    const double lhs = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
    ident = std::max(ident, std::abs(lhs - (kLn2 - h_kernel((2.0 * p - 1.0) * (2.0 * p - 1.0)))));
    ident = std::max(ident, std::abs(binary_entropy_from_gap(std::abs(2.0 * p - 1.0)) - lhs));
  }
  const bool pass = m2 < 1e-10 && mu0 < 1e-12 && mu_lim < 1e-10 && m_lim < 1e-10 && ident < 1e-12;
  return {7, pass, "superposition identities and limits",
          {fmt("mi_mway(M = 2) vs two-branch MI: max gap %.3e (tol 1e-10)", m2),
           fmt("mi_unbalanced(mu = 0) vs balanced MI: max gap %.3e (tol 1e-12)", mu0),
           fmt("mu -> 1 renormalized limit (extrapolated in 1/ln): max gap %.3e (tol 1e-10)", mu_lim),
           fmt("M -> inf renormalized limit (extrapolated in 1/ln M): max gap %.3e (tol 1e-10)", m_lim),
           fmt("binary entropy / h identity on 100 points: max gap %.3e (tol 1e-12)", ident)}};
}

Line criterion8() {
  int violations = 0;
  double tightest = INFINITY;
  const auto trials = cli::make_interval_trials(kSeed, 100);
  for (const auto& trial : trials) {
    const IntervalBounds b = mi_interval_bounds({trial.p, trial.gamma}, trial.f);
    const double exact = mi_exact_general(trial.gamma, trial.p, trial.f);
    if (!(b.weak <= exact && exact <= b.strong)) ++violations;
    tightest = std::min({tightest, exact - b.weak, b.strong - exact});
  }
  return {8, violations == 0, "interval bounds for unequal decoherence factors",
          {fmt("%d violations of I_W <= I_exact <= I_S in %zu trials (seed %llu)", violations, trials.size(),
               static_cast<unsigned long long>(kSeed)),
           fmt("smallest margin %.3e", tightest)}};
}

// Region block of exp(i eps K) on a hemisphere grid with D_B = 8, scaled so
// that max |b| = target.
std::vector<double> physical_b(double target) {
  const ScatteringGrid grid = make_scattering_grid(kPi / 2.0, 0.0, 4, 4);
  const Eigen::MatrixXcd u = scattering_unitary(grid, 0.05);
  std::vector<Eigen::Index> inside;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (grid.in_region[n]) inside.push_back(static_cast<Eigen::Index>(n));
  }
  const Eigen::MatrixXcd w = u(inside, inside);
  std::vector<double> b = b_eigenvalues(perturbation_matrix(w));
  double big = 0.0;
  for (double v : b) big = std::max(big, std::abs(v));
  for (double& v : b) v = std::min(0.0, v * target / big);
  return b;
}

Line criterion9() {
  struct Case {
    std::string name;
    std::vector<double> b;
    int fN;
  };
  const std::vector<Case> cases = {
      {"b = {-0.02, -0.01, -0.005}, fN = 2", {-0.02, -0.01, -0.005}, 2},
      {"scattering-derived B, D_B = 8, fN = 6", physical_b(0.02), 6},
      {"degenerate b = -0.01 x 4, fN = 3", std::vector<double>(4, -0.01), 3},
  };
  bool order_pass = true;
  std::vector<std::string> details;
  for (const auto& c : cases) {
    const cli::FragmentStudy s = cli::fragment_study(c.b, c.fN, 4, kDefaultSpectrumCap);
    std::string ratios;
    for (double r : s.halving_ratios) ratios += fmt("%.3f ", r);
    const double last = s.halving_ratios.back();
    const bool ok = last >= 3.5 && last <= 4.5;
    order_pass = order_pass && ok;
    details.push_back(fmt("(a) %s: halving ratios %s-> %s (need 3.5-4.5)", c.name.c_str(), ratios.c_str(),
                          ok ? "ok" : "out of range"));
  }

  const SpectralSlice slice{1.0, 1e-3};
  std::vector<double> sizes;
  std::vector<double> errors;
  for (int n : {8, 16, 32}) {
    const auto grid = make_scattering_grid(kPi / 2.0, 0.0, n, 2 * n);
    const auto r = discrete_alpha(grid, std::span(&slice, 1));
    sizes.push_back(static_cast<double>(grid.size()));
    errors.push_back(std::abs(*r.alpha - alpha_disk(kPi / 2.0, 0.0)));
  }
  double min_order = INFINITY;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    min_order = std::min(min_order, std::log(errors[i - 1] / errors[i]) / std::log(sizes[i] / sizes[i - 1]));
  }
  const bool alpha_pass = min_order >= 1.0;
  details.push_back(fmt("(b) discrete alpha, disk 90/0, D_S = %.0f/%.0f/%.0f: errors %.3e %.3e %.3e, observed order %.3f "
                        "(need >= 1) -> %s",
                        sizes[0], sizes[1], sizes[2], errors[0], errors[1], errors[2], min_order,
                        alpha_pass ? "ok" : "too slow"));
  if (!order_pass) {
    details.push_back(
        "(a) the Jensen gap over index vectors is first order in |b| for non-degenerate spectra, so ratios tend to 2");
  }
  return {9, order_pass && alpha_pass, "finite-model oracle convergence", details};
}

Line criterion10() {
  const double n = photon_number_density(2.725, 4.0 * kPi);
  const double rel = std::abs(n / 4.11e8 - 1.0);
  double worst = 0.0;
  for (double chi : {0.0, 30.0 * kDeg, 60.0 * kDeg, 90.0 * kDeg}) {
    const Scenario disk = bead(SkyRegion::disk(1.0 * kDeg, chi));
    Scenario point = bead(SkyRegion::point(chi));
    point.irradiance_W_m2 = blackbody_irradiance(disk.temperature_K, disk.region.solid_angle());
    worst = std::max(worst, std::abs(decoherence_rate(disk).tau_D_inv / point_source_rate(point, chi) - 1.0));
  }
  return {10, rel <= 0.01 && worst < 1e-3, "radiometry sanity",
          {fmt("photon density at 2.725 K, 4 pi: %.6e m^-3, %.3f%% from 4.11e8 (tol 1%%)", n, 100.0 * rel),
           fmt("1 degree disk vs point source at matched irradiance: max relative gap %.3e (tol 1e-3)", worst)}};
}

}  // namespace

int main() {
  const std::vector<Line (*)()> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                            criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (auto run : criteria) {
    const Line l = run();
    std::printf("[%s] criterion %d: %s\n", l.pass ? "PASS" : "FAIL", l.id, l.summary.c_str());
    for (const auto& d : l.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    if (!l.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
