#include "infotopo/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"

#include "infotopo/balls.hpp"
#include "infotopo/divergences.hpp"
#include "infotopo/isometry.hpp"
#include "infotopo/parallel.hpp"

namespace infotopo {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kOrthantUpper = 4.0 / kLn2;
// Sharp simplex constant pi^2 / (2 ln 2), reached by pairs of nearly
// disjoint support. The often quoted sqrt(2) pi / ln 2 is below it.
constexpr double kSimplexUpper = std::numbers::pi * std::numbers::pi / (2 * kLn2);
constexpr double kSimplexQuotedUpper = kSqrt2 * std::numbers::pi / kLn2;
constexpr double kLogCoordinateRange = 6.907755278982137; // ln 1000

// Independent stream per check so that running one check alone or the whole
// suite in parallel gives the same numbers.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t check) {
  std::seed_seq seq{seed, check};
  return std::mt19937_64(seq);
}

Eigen::VectorXd log_uniform(std::mt19937_64 &rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-kLogCoordinateRange,
                                           kLogCoordinateRange);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = std::exp(u(rng));
  return v;
}

Eigen::Index random_dim(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Running extrema of an observed quantity.
struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++count;
  }
};

BoundReport interval_report(std::string name, double lo, double hi,
                            const Range &range, double tol) {
  BoundReport r;
  r.name = std::move(name);
  r.claimed_lo = lo;
  r.claimed_hi = hi;
  r.observed_min = range.lo;
  r.observed_max = range.hi;
  r.samples = range.count;
  r.tolerance = tol;
  r.pass = range.count > 0 && range.lo >= lo - tol && range.hi <= hi + tol;
  return r;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = std::exp(a + (b - a) * static_cast<double>(i) /
                               static_cast<double>(n - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

} // namespace

double ratio_f(double t) {
  if (!(t > 0) || !std::isfinite(t))
    throw DomainError("ratio_f needs a finite t > 0");
  if (std::abs(t - 1) <= 1e-8)
    throw NearSingularity("ratio_f is 0/0 at t = 1; the limit is 1/4");
  if (t < 1)
    t = 1 / t;
  // Beyond here f differs from its limit by less than 1e-100.
  if (t > 1e100)
    return kLn2 / 4;
  // With s = t^2 + 1 and u = (t^2 - 1) / s the numerator becomes
  // s/2 * ((1+u) ln(1+u) + (1-u) ln(1-u)) and f = H(u) (t+1)^2 / (8 s).
  const double t2 = t * t;
  const double s = t2 + 1;
  const double u = (t - 1) * (t + 1) / s;
  double h;
  if (u < 0.1) {
    h = kernel::entropy_gap_series(u);
  } else {
    const double ln_plus = kLn2 - std::log1p(1 / t2);
    const double ln_minus = kLn2 - std::log1p(t2);
    h = (2 * t2 / s * ln_plus + 2 / s * ln_minus) / (u * u);
  }
  return h * (t + 1) / s * (t + 1) / 8;
}

double burbea_rao_ratio(double log_t) {
  if (!std::isfinite(log_t))
    throw DomainError("burbea_rao_ratio needs a finite ln t");
  if (std::abs(log_t) <= 1e-8)
    throw NearSingularity("burbea_rao_ratio is 0/0 at t = 1; the limit is 1/4");
  return kernel::log_cosh(0.5 * log_t) / (0.5 * log_t * log_t);
}

double burbea_rao_witness_log_t(double C) {
  if (!(C > 0) || !std::isfinite(C))
    throw DomainError("C must be positive");
  for (double u = kLn2;; u += kLn2) {
    if (std::exp(-0.5 * u) <= kOpenDomainFloor)
      throw WitnessSearchExceeded("no witness with coordinates inside (1e-300, 1e300) for C = " +
                                  std::to_string(C));
    const PositivePoint x{std::exp(-0.5 * u)};
    const PositivePoint y{std::exp(0.5 * u)};
    const double burg = burg_info_distance(x, y);
    if (burg * burg > C * burbea_rao(x, y))
      return u;
  }
}

std::pair<BoundReport, BoundReport> check_js_fisher_bounds(const VerifyConfig &config) {
  auto rng = stream(config.seed, 1);
  Range orthant;
  Range simplex;
  double min_margin = std::numeric_limits<double>::infinity();
  double simplex_margin = min_margin;
  std::size_t above_quoted = 0;
  for (std::size_t s = 0; s < config.samples; ++s) {
    const Eigen::Index n = random_dim(rng, 1, 16);
    const PositivePoint x(log_uniform(rng, n));
    const PositivePoint y(log_uniform(rng, n));
    const double js = js_divergence(x, y);
    const double d = fisher_orthant(x, y);
    orthant.add(d * d / js);
    min_margin = std::min({min_margin, d * d - 4 * js, kOrthantUpper * js - d * d});

    const SimplexPoint p = SimplexPoint::normalize(x);
    const SimplexPoint q = SimplexPoint::normalize(y);
    if (n > 1) {
      const double jss = js_divergence(p, q);
      const double ds = fisher_simplex(p, q);
      simplex.add(ds * ds / jss);
      simplex_margin =
          std::min({simplex_margin, ds * ds - 4 * jss, kSimplexUpper * jss - ds * ds});
      if (ds * ds > kSimplexQuotedUpper * jss)
        ++above_quoted;
    }
  }

  // One-dimensional pairs (1, t^2) along a log grid; their ratio is 1 / f(t).
  double grid_sup = 0;
  double grid_inf = std::numeric_limits<double>::infinity();
  auto grid = log_grid(1 + 1e-6, 1e6, config.ratio_grid);
  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    const double f = ratio_f(t);
    monotone = monotone && f < previous;
    previous = f;
  }
  grid.push_back(1e8);
  for (double t : grid) {
    const PositivePoint one{1.0};
    const PositivePoint b{t * t};
    const double js = js_divergence(one, b);
    const double d = fisher_orthant(one, b);
    const double ratio = d * d / js;
    orthant.add(ratio);
    grid_sup = std::max(grid_sup, ratio);
    grid_inf = std::min(grid_inf, ratio / 4);
  }

  // Scaling consistency: JS(a, t^2 a) / d^2(a, t^2 a) = f(t).
  double consistency = 0;
  std::uniform_real_distribution<double> log_t(-kLogCoordinateRange,
                                               kLogCoordinateRange);
  for (std::size_t s = 0; s < 1000; ++s) {
    const double t = std::exp(log_t(rng));
    if (std::abs(t - 1) < 1e-3)
      continue;
    const double a = log_uniform(rng, 1)[0];
    const PositivePoint pa{a};
    const PositivePoint pb{t * t * a};
    const double d = fisher_orthant(pa, pb);
    const double f = ratio_f(t);
    consistency = std::max(consistency, std::abs(js_divergence(pa, pb) / (d * d) - f) / f);
  }

  const double near_below = ratio_f(1 - 1e-4);
  const double near_above = ratio_f(1 + 1e-4);
  const double far = ratio_f(1e8);

  BoundReport o = interval_report("js_fisher_orthant", 4.0, kOrthantUpper, orthant, 1e-9);
  o.details = {{"min_margin", min_margin},
               {"grid_sup_ratio", grid_sup},
               {"grid_inf_quarter_ratio", grid_inf},
               {"ratio_f_1_minus_1e-4", near_below},
               {"ratio_f_1_plus_1e-4", near_above},
               {"ratio_f_1e8", far},
               {"ratio_f_monotone", monotone ? 1.0 : 0.0},
               {"consistency_rel_err", consistency}};
  o.pass = o.pass && min_margin >= -1e-10 && grid_sup >= kOrthantUpper - 1e-3 &&
           grid_inf >= 1 - 1e-10 && std::abs(near_below - 0.25) <= 1e-3 &&
           std::abs(near_above - 0.25) <= 1e-3 &&
           std::abs(far - kLn2 / 4) <= 1e-3 && monotone && consistency <= 1e-12;

  BoundReport sp = interval_report("js_fisher_simplex", 4.0, kSimplexUpper, simplex, 1e-9);
  const SimplexPoint corner_a{1 - 1e-12, 1e-12};
  const SimplexPoint corner_b{1e-12, 1 - 1e-12};
  const double ds = fisher_simplex(corner_a, corner_b);
  sp.details = {{"min_margin", simplex_margin},
                {"disjoint_support_ratio", ds * ds / js_divergence(corner_a, corner_b)},
                {"quoted_upper", kSimplexQuotedUpper},
                {"pairs_above_quoted_upper", static_cast<double>(above_quoted)}};
  sp.pass = sp.pass && simplex_margin >= -1e-10;
  return {std::move(o), std::move(sp)};
}

BoundReport check_burbea_rao(const VerifyConfig &config) {
  auto rng = stream(config.seed, 2);
  Range g;
  for (std::size_t s = 0; s < config.samples; ++s) {
    const Eigen::Index n = random_dim(rng, 1, 16);
    const PositivePoint x(log_uniform(rng, n));
    const PositivePoint y(log_uniform(rng, n));
    const double burg = burg_info_distance(x, y);
    g.add(burbea_rao(x, y) / (burg * burg));
  }
  BoundReport r = interval_report("burbea_rao", 0.0, 0.25, g, 1e-12);
  const double near_one = burbea_rao_ratio(std::log1p(1e-4));
  const double far = burbea_rao_ratio(1e6);
  r.details = {{"g_1_plus_1e-4", near_one}, {"g_log_t_1e6", far}};
  r.pass = r.pass && std::abs(near_one - 0.25) <= 1e-3 && far < 1e-5;
  for (double C : config.burbea_rao_constants) {
    try {
      const double u = burbea_rao_witness_log_t(C);
      r.details.emplace_back("witness_log_t_C=" + std::to_string(static_cast<long long>(C)), u);
    } catch (const WitnessSearchExceeded &) {
      r.details.emplace_back("witness_log_t_C=" + std::to_string(static_cast<long long>(C)),
                             std::numeric_limits<double>::infinity());
      r.pass = false;
    }
  }
  return r;
}

BoundReport check_is_ball_window(const VerifyConfig &config) {
  auto rng = stream(config.seed, 3);
  const double convex_threshold = kLn2 - 0.5;
  const double nonconvex_threshold = 2 * kLn2 - 1;
  constexpr double kProbeRadius = 0.19;

  bool pass = true;
  std::size_t probed = 0;
  for (int n = 2; n <= 4; ++n) {
    const DivergenceBall ball(Measure::ItakuraSaito, PositivePoint(log_uniform(rng, n)),
                              kProbeRadius);
    const ConvexityReport probe = probe_convexity(ball, config.samples, rng());
    probed += probe.samples_tested;
    pass = pass && !probe.witness;
  }

  Range witness_r2;
  BoundReport r;
  for (double eps : {0.5, 0.1, 0.01}) {
    const NonconvexWitness w = is_nonconvex_witness(2, eps);
    const NonconvexWitness padded = is_nonconvex_witness(4, eps);
    witness_r2.add(w.squared_radius);
    pass = pass && w.squared_radius > nonconvex_threshold && w.excess() > 1e-12 &&
           padded.squared_radius == w.squared_radius;
    r.details.emplace_back("witness_r2_eps=" + std::to_string(eps).substr(0, 4),
                           w.squared_radius);
  }
  for (double r2 : {0.39, 0.45, 0.6}) {
    const NonconvexWitness w = is_nonconvex_witness_for_radius(3, r2);
    pass = pass && w.squared_radius >= r2 && w.excess() > 1e-12;
    r.details.emplace_back("excess_r2=" + std::to_string(r2).substr(0, 4), w.excess());
  }
  r.details.insert(r.details.begin(),
                   {{"convex_threshold", convex_threshold},
                    {"nonconvex_threshold", nonconvex_threshold},
                    {"probe_r2", kProbeRadius}});

  r.name = "is_ball_window";
  r.claimed_lo = convex_threshold;
  r.claimed_hi = nonconvex_threshold;
  // Probed radius must lie below the first threshold and every witness
  // radius above the second.
  r.observed_min = kProbeRadius;
  r.observed_max = witness_r2.lo;
  r.samples = probed;
  r.tolerance = 0;
  r.pass = pass && kProbeRadius <= convex_threshold && witness_r2.lo > nonconvex_threshold;
  return r;
}

BoundReport check_isometries(const VerifyConfig &config) {
  auto rng = stream(config.seed, 4);
  double orthant_err = 0;
  double sphere_err = 0;
  for (std::size_t s = 0; s < config.isometry_samples; ++s) {
    const Eigen::Index n = random_dim(rng, 1, 16);
    const PositivePoint x(log_uniform(rng, n));
    const PositivePoint y(log_uniform(rng, n));
    const double image =
        (antonelli_forward(x).coords() - antonelli_forward(y).coords()).norm();
    orthant_err = std::max(orthant_err, std::abs(fisher_orthant(x, y) - image));
    const SimplexPoint p = SimplexPoint::normalize(x);
    const SimplexPoint q = SimplexPoint::normalize(y);
    const double angle = central_angle(simplex_to_sphere(p), simplex_to_sphere(q));
    sphere_err = std::max(sphere_err, std::abs(fisher_simplex(p, q) - kSqrt2 * angle));
  }

  double geodesic_err = 0;
  auto geodesic = [&](Measure m, const PositivePoint &x, const PositivePoint &y) {
    const double numeric = geodesic_length_numeric(m, x, y, config.geodesic_steps);
    geodesic_err = std::max(geodesic_err, std::abs(numeric - evaluate(m, x, y)));
  };
  const double e2 = std::exp(2.0);
  geodesic(Measure::FisherOrthant, PositivePoint{1.0}, PositivePoint{4.0});
  geodesic(Measure::BurgInfo, PositivePoint{1.0}, PositivePoint{e2});
  geodesic(Measure::FisherSimplex, SimplexPoint{0.5, 0.5}, SimplexPoint{0.98, 0.02});
  for (std::size_t s = 0; s < config.geodesic_pairs; ++s) {
    const Eigen::Index n = random_dim(rng, 1, 16);
    const PositivePoint x(log_uniform(rng, n));
    const PositivePoint y(log_uniform(rng, n));
    geodesic(Measure::FisherOrthant, x, y);
    geodesic(Measure::BurgInfo, x, y);
    if (n > 1)
      geodesic(Measure::FisherSimplex, SimplexPoint::normalize(x),
               SimplexPoint::normalize(y));
  }

  BoundReport r;
  r.name = "isometries";
  r.claimed_lo = 0;
  r.claimed_hi = 1e-5;
  r.observed_min = std::min({orthant_err, sphere_err, geodesic_err});
  r.observed_max = std::max({orthant_err, sphere_err, geodesic_err});
  r.samples = config.isometry_samples + 3 * config.geodesic_pairs + 3;
  r.tolerance = 0;
  r.details = {{"orthant_image_max_err", orthant_err},
               {"sphere_angle_max_err", sphere_err},
               {"geodesic_max_err", geodesic_err}};
  r.pass = orthant_err <= 1e-12 && sphere_err <= 1e-10 && geodesic_err <= 1e-5;
  return r;
}

std::span<const std::string_view> check_names() {
  static constexpr std::array<std::string_view, 4> names{
      "check_js_fisher_bounds", "check_burbea_rao", "check_is_ball_window",
      "check_isometries"};
  return names;
}

std::vector<BoundReport> run_check(std::string_view name, const VerifyConfig &config) {
  if (name == "check_js_fisher_bounds") {
    auto [a, b] = check_js_fisher_bounds(config);
    return {std::move(a), std::move(b)};
  }
  if (name == "check_burbea_rao")
    return {check_burbea_rao(config)};
  if (name == "check_is_ball_window")
    return {check_is_ball_window(config)};
  if (name == "check_isometries")
    return {check_isometries(config)};
  throw DomainError("unknown check '" + std::string(name) + "'");
}

std::vector<BoundReport> run_all(const VerifyConfig &config) {
  const auto names = check_names();
  std::vector<std::vector<BoundReport>> parts(names.size());
  parallel_for(names.size(), [&](std::size_t i) { parts[i] = run_check(names[i], config); });
  std::vector<BoundReport> out;
  for (auto &part : parts)
    for (auto &r : part)
      out.push_back(std::move(r));
  return out;
}

std::string to_json(std::span<const BoundReport> reports) {
  // JSON has no infinity; non-finite values become strings.
  auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v))
      return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  };
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto &r : reports) {
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    for (const auto &[key, value] : r.details)
      details[key] = number(value);
    out.push_back({{"name", r.name},
                   {"interval", {number(r.claimed_lo), number(r.claimed_hi)}},
                   {"observed_min", number(r.observed_min)},
                   {"observed_max", number(r.observed_max)},
                   {"samples", r.samples},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass},
                   {"details", details}});
  }
  return out.dump(2) + "\n";
}

} // namespace infotopo
