#pragma once

// Numerical checks of the inequalities and constants relating the measures.
// Each check returns BoundReports; the suite is deterministic given a seed.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infotopo {

struct BoundReport {
  std::string name;
  double claimed_lo = 0;
  double claimed_hi = 0;
  double observed_min = 0;
  double observed_max = 0;
  std::size_t samples = 0;
  double tolerance = 0;
  bool pass = false;
  /// Named side results: limits, witnesses, thresholds.
  std::vector<std::pair<std::string, double>> details;
};

/// JS(1, t^2) / d^2(1, t^2) for the Fisher orthant metric d. Decreases from
/// 1/4 at t = 1 to ln 2 / 4 as t grows; f(t) = f(1/t). Throws
/// NearSingularity for |t - 1| <= 1e-8 and DomainError for t <= 0.
double ratio_f(double t);

/// BR(1, t) / burg^2(1, t) as a function of u = ln t, valid far beyond the
/// double range of t. Tends to 1/4 as u -> 0 and to 0 as |u| grows.
double burbea_rao_ratio(double log_t);

/// ln t of the first t = 2^k with burg^2(1, t) > C * BR(1, t), found by
/// doubling. The witness pair is (t^-1/2, t^1/2); throws
/// WitnessSearchExceeded once its coordinates would pass 1e300.
double burbea_rao_witness_log_t(double C);

struct VerifyConfig {
  std::uint64_t seed = 20240607;
  std::size_t samples = 100000;          // random pairs and ball probes
  std::size_t isometry_samples = 10000;  // closed-form identity pairs
  std::size_t geodesic_pairs = 20;       // per metric
  int geodesic_steps = 10000;
  std::size_t ratio_grid = 1000;
  std::vector<double> burbea_rao_constants{10.0, 100.0, 1000.0};
};

/// 4 JS <= d^2 <= (4 / ln 2) JS in the orthant and 4 JS <= d^2 <=
/// (pi^2 / (2 ln 2)) JS on the simplex; the orthant report also covers the
/// ratio grid, its limits and its monotonicity. The simplex report counts
/// the pairs above sqrt(2) pi / ln 2.
std::pair<BoundReport, BoundReport> check_js_fisher_bounds(const VerifyConfig &config);
/// 4 BR <= burg^2 and unboundedness witnesses for each configured C.
BoundReport check_burbea_rao(const VerifyConfig &config);
/// No convexity violation below ln 2 - 1/2, explicit witnesses above 2 ln 2 - 1.
BoundReport check_is_ball_window(const VerifyConfig &config);
/// Closed forms against Euclidean images and numeric geodesic lengths.
BoundReport check_isometries(const VerifyConfig &config);

/// Names accepted by run_check, in suite order.
std::span<const std::string_view> check_names();
/// Throws DomainError for an unknown name.
std::vector<BoundReport> run_check(std::string_view name, const VerifyConfig &config);
std::vector<BoundReport> run_all(const VerifyConfig &config);

/// Pretty-printed JSON array, one object per report.
std::string to_json(std::span<const BoundReport> reports);

} // namespace infotopo
