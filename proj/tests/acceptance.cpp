// Acceptance criteria. `acceptance N` runs criterion N and prints one
// PASS/FAIL line; with no argument every criterion runs in turn.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"
#include "infotopo/balls.hpp"
#include "infotopo/isometry.hpp"
#include "infotopo/persistence.hpp"
#include "infotopo/verify.hpp"
#include "oracles.hpp"

using namespace infotopo;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

constexpr double kLn2 = std::numbers::ln2;

Outcome isometry_identities() {
  Outcome o;
  std::mt19937_64 rng(1001);
  double orthant_err = 0, sphere_err = 0;
  for (int s = 0; s < 10000; ++s) {
    const int n = testing::random_int(rng, 1, 16);
    const PositivePoint x = testing::random_point(rng, n);
    const PositivePoint y = testing::random_point(rng, n);
    orthant_err = std::max(
        orthant_err,
        std::abs(fisher_orthant(x, y) -
                 (antonelli_forward(x).coords() - antonelli_forward(y).coords()).norm()));
    const SimplexPoint p = SimplexPoint::normalize(x);
    const SimplexPoint q = SimplexPoint::normalize(y);
    sphere_err = std::max(sphere_err, std::abs(fisher_simplex(p, q) -
                                               std::numbers::sqrt2 *
                                                   central_angle(simplex_to_sphere(p),
                                                                 simplex_to_sphere(q))));
  }
  double geodesic_err = 0;
  for (int s = 0; s < 10; ++s) {
    const int n = testing::random_int(rng, 1, 6);
    const PositivePoint x = testing::random_point(rng, n);
    const PositivePoint y = testing::random_point(rng, n);
    geodesic_err = std::max(geodesic_err,
                            std::abs(geodesic_length_numeric(Measure::FisherOrthant, x, y, 10000) -
                                     fisher_orthant(x, y)));
    geodesic_err = std::max(geodesic_err,
                            std::abs(geodesic_length_numeric(Measure::BurgInfo, x, y, 10000) -
                                     burg_info_distance(x, y)));
    if (n >= 2) {
      const SimplexPoint p = SimplexPoint::normalize(x);
      const SimplexPoint q = SimplexPoint::normalize(y);
      geodesic_err = std::max(geodesic_err,
                              std::abs(geodesic_length_numeric(Measure::FisherSimplex, p, q, 10000) -
                                       fisher_simplex(p, q)));
    }
  }
  o.note << "orthant_err=" << orthant_err << " sphere_err=" << sphere_err
         << " geodesic_err=" << geodesic_err;
  o.require(orthant_err <= 1e-12, "orthant image identity");
  o.require(sphere_err <= 1e-10, "sphere angle identity");
  o.require(geodesic_err <= 1e-5, "numeric geodesics");
  return o;
}

Outcome js_fisher_sandwich() {
  Outcome o;
  const double orthant_upper = 5.7708;
  const double simplex_upper = 6.4097;
  std::mt19937_64 rng(1002);
  double orthant_margin = 1e300, simplex_margin = 1e300;
  double worst_ratio = 0;
  std::pair<SimplexPoint, SimplexPoint> worst{SimplexPoint{0.5, 0.5}, SimplexPoint{0.5, 0.5}};
  for (int s = 0; s < 100000; ++s) {
    const int n = testing::random_int(rng, 1, 16);
    const PositivePoint x = testing::random_point(rng, n);
    const PositivePoint y = testing::random_point(rng, n);
    const double js = js_divergence(x, y);
    const double d = fisher_orthant(x, y);
    orthant_margin = std::min({orthant_margin, d * d - 4 * js, orthant_upper * js - d * d});
    if (n < 2)
      continue;
    const SimplexPoint p = SimplexPoint::normalize(x);
    const SimplexPoint q = SimplexPoint::normalize(y);
    const double jss = js_divergence(p, q);
    const double ds = fisher_simplex(p, q);
    simplex_margin = std::min({simplex_margin, ds * ds - 4 * jss, simplex_upper * jss - ds * ds});
    if (ds * ds / jss > worst_ratio) {
      worst_ratio = ds * ds / jss;
      worst = {p, q};
    }
  }
  // One-dimensional ratios JS(1, t^2) / d^2(1, t^2) on a log grid.
  double grid_sup = 0, grid_inf_quarter = 1e300, prev = 0.25;
  bool monotone = true;
  for (int k = 0; k <= 1000; ++k) {
    const double t = std::exp(1e-4 + (std::log(1e8) - 1e-4) * k / 1000);
    const double r = ratio_f(t);
    monotone = monotone && r <= prev + 1e-15;
    prev = r;
    grid_sup = std::max(grid_sup, 1 / r);
    grid_inf_quarter = std::min(grid_inf_quarter, 1 / (4 * r));
  }
  o.note << "orthant_margin=" << orthant_margin << " simplex_margin=" << simplex_margin
         << " grid_sup=" << grid_sup << " grid_inf_quarter=" << grid_inf_quarter
         << " f(1+1e-4)=" << ratio_f(1 + 1e-4) << " f(1-1e-4)=" << ratio_f(1 - 1e-4)
         << " f(1e8)=" << ratio_f(1e8) << " simplex_max_ratio=" << worst_ratio;
  if (simplex_margin < -1e-10) {
    o.note.precision(17);
    o.note << " counterexample p=(" << worst.first.coords().transpose() << ") q=("
           << worst.second.coords().transpose() << ")";
  }
  o.require(orthant_margin >= -1e-10, "orthant sandwich");
  o.require(simplex_margin >= -1e-10, "simplex sandwich with upper constant 6.4097");
  o.require(grid_sup >= orthant_upper - 1e-3, "grid supremum");
  o.require(grid_inf_quarter >= 1 - 1e-10, "grid infimum");
  o.require(std::abs(ratio_f(1 + 1e-4) - 0.25) <= 1e-3 && std::abs(ratio_f(1 - 1e-4) - 0.25) <= 1e-3,
            "limit at t = 1");
  o.require(std::abs(ratio_f(1e8) - kLn2 / 4) <= 1e-3, "limit at t = 1e8");
  o.require(monotone, "monotone decrease");
  return o;
}

Outcome itakura_saito_window() {
  Outcome o;
  std::mt19937_64 rng(1003);
  for (int n = 2; n <= 4; ++n) {
    const DivergenceBall ball(Measure::ItakuraSaito, testing::random_point(rng, n), 0.19);
    const ConvexityReport r = probe_convexity(ball, 100000, rng());
    o.require(!r.witness && r.samples_tested == 100000, "probe in dim " + std::to_string(n));
  }
  for (double r2 : {0.39, 0.45, 0.6}) {
    const NonconvexWitness w = is_nonconvex_witness_for_radius(2, r2);
    o.note << "excess(" << r2 << ")=" << w.excess() << " ";
    const PositivePoint one(Eigen::VectorXd::Ones(2));
    const PositivePoint mid(Eigen::VectorXd(0.5 * (w.x.coords() + w.y.coords())));
    o.require(w.excess() > 1e-12 && w.squared_radius >= r2 - 1e-12 &&
                  itakura_saito(one, w.x) <= w.squared_radius &&
                  itakura_saito(one, w.y) <= w.squared_radius &&
                  itakura_saito(one, mid) > w.squared_radius + 1e-12,
              "witness at r^2 = " + std::to_string(r2));
  }
  o.note << "thresholds " << kLn2 - 0.5 << " " << 2 * kLn2 - 1;
  return o;
}

Outcome convex_balls() {
  Outcome o;
  std::mt19937_64 rng(1004);
  std::size_t probes = 0;
  for (int n : {2, 3}) {
    const PositivePoint c = testing::random_point(rng, n);
    for (double r2 : {1e-3, 1e-2, 1e-1, 1.0}) {
      for (const DivergenceBall &ball :
           {DivergenceBall(Measure::KL, c, r2), DivergenceBall(Measure::SquaredFisherOrthant, c, r2),
            DivergenceBall(Measure::SquaredFisherSimplex, SimplexPoint::normalize(c), r2)}) {
        const ConvexityReport r = probe_convexity(ball, 100000, rng());
        ++probes;
        o.require(!r.witness, std::string(measure_name(ball.measure())) + " r^2=" +
                                  std::to_string(r2) + " dim " + std::to_string(n));
      }
    }
  }
  o.note << probes << " probes of 1e5 samples";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(1005);
  int compared = 0;
  for (int s = 0; s < 50; ++s) {
    const std::size_t n = testing::random_int(rng, 1, 7);
    const bool simplex = s % 2 == 1;
    const PointCloud cloud = testing::random_cloud(rng, n, testing::random_int(rng, 2, 4), simplex);
    for (Measure m : {Measure::JSMetric, simplex ? Measure::FisherSimplex : Measure::FisherOrthant}) {
      const Filtration f = rips_filtration(pairwise(m, cloud), 2);
      const PersistenceDiagram d = compute_diagram(f, 1);
      for (int p = 0; p <= 1; ++p) {
        ++compared;
        o.require(d.points(p) == oracle::brute_force_pairs(f, p),
                  "cloud " + std::to_string(s) + " H" + std::to_string(p));
      }
    }
  }
  o.note << compared << " diagrams compared";
  return o;
}

// Moves every Antonelli image by a random vector of length at most delta.
PointCloud perturb_in_image(const PointCloud &c, double delta, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<PositivePoint> out;
  for (const auto &x : c) {
    Eigen::VectorXd img = antonelli_forward(x).coords();
    Eigen::VectorXd dir(img.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i)
      dir[i] = g(rng);
    img += dir.normalized() * delta * u(rng);
    out.push_back(antonelli_inverse(PositivePoint(img.cwiseAbs())));
  }
  return PointCloud(std::move(out));
}

Outcome stability() {
  Outcome o;
  std::mt19937_64 rng(1006);
  double worst_slack = 1e300;
  for (int s = 0; s < 20; ++s) {
    const std::size_t n = testing::random_int(rng, 4, 10);
    const PointCloud a = testing::random_cloud(rng, n, 3, false, 0.5, 10);
    const PointCloud b = perturb_in_image(a, 0.05 + 0.1 * (s % 4), rng);
    for (Measure m : {Measure::FisherOrthant, Measure::JSMetric}) {
      const double eps = hausdorff(m, a, b);
      const auto da = compute_diagram(rips_filtration(pairwise(m, a), 2), 1);
      const auto db = compute_diagram(rips_filtration(pairwise(m, b), 2), 1);
      for (int k = 0; k <= 1; ++k) {
        const double bn = bottleneck(da, db, k);
        worst_slack = std::min(worst_slack, eps + 1e-9 - bn);
        o.require(bn <= eps + 1e-9, "cloud " + std::to_string(s) + " H" + std::to_string(k));
      }
    }
  }
  o.note << "min(eps - bottleneck)=" << worst_slack;
  return o;
}

Outcome factor_bounds() {
  Outcome o;
  std::mt19937_64 rng(1007);
  const double js_orthant = 0.1833, js_simplex = 0.2358, cech_orthant = 0.3466, cech_simplex = 0.6932;
  double m_jo = 0, m_js = 0, m_co = 0, m_cs = 0;
  for (int s = 0; s < 20; ++s) {
    for (bool simplex : {false, true}) {
      const std::size_t n = testing::random_int(rng, 3, 10);
      const PointCloud c = testing::random_cloud(rng, n, testing::random_int(rng, 2, 4), simplex);
      const Measure fisher = simplex ? Measure::FisherSimplex : Measure::FisherOrthant;
      for (double v : compare_measures(c, {Measure::JSMetric, 1.0}, {fisher, 0.5}, 2))
        (simplex ? m_js : m_jo) = std::max(simplex ? m_js : m_jo, v);
      for (double v : compare_constructions(c, fisher, 2))
        (simplex ? m_cs : m_co) = std::max(simplex ? m_cs : m_co, v);
    }
  }
  o.note << "js_vs_half_fisher orthant=" << m_jo << " simplex=" << m_js
         << " rips_vs_cech orthant=" << m_co << " simplex=" << m_cs;
  o.require(m_jo <= js_orthant, "JS vs half Fisher, orthant");
  o.require(m_js <= js_simplex, "JS vs half Fisher, simplex");
  o.require(m_co <= cech_orthant, "Rips vs Cech, orthant");
  o.require(m_cs <= cech_simplex, "Rips vs Cech, simplex");
  return o;
}

Outcome simplexwise_bounds() {
  Outcome o;
  std::mt19937_64 rng(1008);
  std::size_t checked = 0;
  double worst_orthant = 0, worst_simplex = 0;
  for (int s = 0; s < 40; ++s) {
    const bool simplex = s % 2 == 1;
    const Measure m = simplex ? Measure::FisherSimplex : Measure::FisherOrthant;
    const PointCloud c = testing::random_cloud(rng, testing::random_int(rng, 2, 9),
                                               testing::random_int(rng, 2, 6), simplex);
    const auto matrix = pairwise(m, c);
    for (const auto &x : cech_filtration(c, m, 3).simplices) {
      const double hd = half_diameter(matrix, x.vertices);
      ++checked;
      if (hd == 0) {
        o.require(x.value == 0, "vertex value");
        continue;
      }
      const double q = x.value / hd;
      (simplex ? worst_simplex : worst_orthant) = std::max(simplex ? worst_simplex : worst_orthant, q);
      o.require(x.value >= hd * (1 - 1e-12), "radius below half-diameter");
      o.require(q <= (simplex ? 2.0 : std::numbers::sqrt2) * (1 + 1e-12), "radius above bound");
    }
  }
  o.note << checked << " simplices, max radius/half-diameter orthant=" << worst_orthant
         << " simplex=" << worst_simplex;
  return o;
}

Outcome burbea_rao_bounds() {
  Outcome o;
  std::mt19937_64 rng(1009);
  double margin = 1e300;
  for (int s = 0; s < 100000; ++s) {
    const int n = testing::random_int(rng, 1, 16);
    const PositivePoint x = testing::random_point(rng, n);
    const PositivePoint y = testing::random_point(rng, n);
    const double b = burg_info_distance(x, y);
    margin = std::min(margin, b * b - 4 * burbea_rao(x, y));
  }
  o.note << "min(burg^2 - 4 BR)=" << margin;
  o.require(margin >= -1e-12, "lower bound");
  for (double C : {10.0, 100.0, 1000.0}) {
    try {
      const double u = burbea_rao_witness_log_t(C);
      o.note << " C=" << C << ":ln t=" << u;
      o.require(1 / burbea_rao_ratio(u) > C, "witness ratio");
    } catch (const WitnessSearchExceeded &) {
      o.require(false, "witness for C = " + std::to_string(C));
    }
  }
  return o;
}

struct Captured {
  int code;
  std::string out;
};

Captured capture(const std::string &args) {
  const std::string cmd = std::string("\"") + INFOTOPO_CLI + "\" " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p))
    out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_determinism() {
  Outcome o;
  const std::string data = std::string("\"") + INFOTOPO_DATA + "/counts.csv\"";
  const std::string diagram_args = "diagram " + data + " --normalize --measure fisher-simplex --seed 7";
  const Captured d1 = capture(diagram_args), d2 = capture(diagram_args);
  const Captured v1 = capture("verify all --seed 7"), v2 = capture("verify all --seed 7");
  o.note << "diagram " << d1.out.size() << " bytes, verify " << v1.out.size()
         << " bytes, verify exit " << v1.code;
  o.require(d1.code == 0 && !d1.out.empty() && d1.out == d2.out, "diagram output identical");
  o.require(v1.out == v2.out && !v1.out.empty(), "verify output identical");
  o.require(v1.code == 0 && v2.code == 0, "verify all exits 0");
  return o;
}

const std::array<std::pair<const char *, std::function<Outcome()>>, 10> kCriteria{{
    {"isometry identities and numeric geodesics", isometry_identities},
    {"JS-Fisher sandwich constants", js_fisher_sandwich},
    {"Itakura-Saito convexity window", itakura_saito_window},
    {"entropy and Fisher balls convex", convex_balls},
    {"persistence oracle equivalence", oracle_equivalence},
    {"Rips stability under perturbation", stability},
    {"log-scale comparison bounds", factor_bounds},
    {"Rips-Cech simplexwise bounds", simplexwise_bounds},
    {"Burbea-Rao bound and unboundedness", burbea_rao_bounds},
    {"CLI determinism", cli_determinism},
}};

bool run(int k) {
  Outcome o;
  try {
    o = kCriteria[k - 1].second();
  } catch (const std::exception &e) {
    o.pass = false;
    o.note << "exception: " << e.what();
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << kCriteria[k - 1].first
            << " | " << o.note.str() << std::endl;
  return o.pass;
}

} // namespace

int main(int argc, char **argv) {
  if (argc > 2) {
    std::cerr << "usage: acceptance [1-10]\n";
    return 2;
  }
  if (argc == 2) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 10) {
      std::cerr << "criterion must be 1..10\n";
      return 2;
    }
    return run(k) ? 0 : 1;
  }
  bool all = true;
  for (int k = 1; k <= 10; ++k)
    all = run(k) && all;
  return all ? 0 : 1;
}
