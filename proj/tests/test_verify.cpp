#include "doctest.h"

#include <cmath>
#include <numbers>

#include "infotopo/errors.hpp"
#include "infotopo/verify.hpp"
#include "json.hpp"

using namespace infotopo;
using doctest::Approx;

namespace {

VerifyConfig small_config() {
  VerifyConfig c;
  c.samples = 3000;
  c.isometry_samples = 500;
  c.geodesic_pairs = 3;
  c.geodesic_steps = 2000;
  c.ratio_grid = 200;
  return c;
}

double detail(const BoundReport &r, const std::string &name) {
  for (const auto &[k, v] : r.details)
    if (k == name)
      return v;
  FAIL("missing detail " << name);
  return 0;
}

} // namespace

TEST_SUITE("verify") {

TEST_CASE("ratio function values") {
  CHECK(ratio_f(2.0) == Approx(0.2409309462771968).epsilon(1e-13));
  CHECK(ratio_f(0.5) == Approx(ratio_f(2.0)).epsilon(1e-14));
  CHECK(ratio_f(1 + 1e-4) == Approx(0.2499999997916875).epsilon(1e-13));
  CHECK(ratio_f(1e8) == Approx(0.1732867986057214).epsilon(1e-12));
  CHECK(ratio_f(1e150) == Approx(std::numbers::ln2 / 4).epsilon(1e-12));
  CHECK(ratio_f(1e300) == std::numbers::ln2 / 4);
  CHECK(ratio_f(1e-300) == std::numbers::ln2 / 4);
  CHECK_THROWS_AS(ratio_f(1.0), NearSingularity);
  CHECK_THROWS_AS(ratio_f(1 + 5e-9), NearSingularity);
  CHECK_THROWS_AS(ratio_f(0.0), DomainError);
  CHECK_THROWS_AS(ratio_f(-2.0), DomainError);
}

TEST_CASE("ratio function is monotone on a grid") {
  double prev = ratio_f(1 + 1e-6);
  for (int k = 1; k <= 2000; ++k) {
    const double t = std::exp(1e-6 + 40.0 * k / 2000);
    const double v = ratio_f(t);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("burbea-rao ratio and witnesses") {
  CHECK(burbea_rao_ratio(1e-6) == Approx(0.25).epsilon(1e-9));
  CHECK(burbea_rao_ratio(std::log(3.0)) ==
        Approx(0.1438410362258905 / std::pow(std::log(3.0) / std::numbers::sqrt2, 2))
            .epsilon(1e-12));
  CHECK(burbea_rao_ratio(-5.0) == burbea_rao_ratio(5.0));
  CHECK(burbea_rao_ratio(1e6) < 1e-5);
  CHECK_THROWS_AS(burbea_rao_ratio(0.0), NearSingularity);
  CHECK(burbea_rao_witness_log_t(10) == Approx(9.0109).epsilon(1e-4));
  CHECK(burbea_rao_witness_log_t(100) == Approx(99.12).epsilon(1e-4));
  CHECK(burbea_rao_witness_log_t(1000) == Approx(998.83).epsilon(1e-4));
  for (double c : {10.0, 100.0, 1000.0}) {
    const double u = burbea_rao_witness_log_t(c);
    CHECK(1 / burbea_rao_ratio(u) > c);
    CHECK(1 / burbea_rao_ratio(u - std::numbers::ln2) <= c);
  }
  CHECK_THROWS_AS(burbea_rao_witness_log_t(1e6), WitnessSearchExceeded);
  CHECK_THROWS_AS(burbea_rao_witness_log_t(0.0), DomainError);
}

TEST_CASE("bound checks pass with small budgets") {
  const VerifyConfig c = small_config();
  const auto [orthant, simplex] = check_js_fisher_bounds(c);
  CHECK(orthant.pass);
  CHECK(orthant.observed_min >= 4 - 1e-9);
  CHECK(orthant.observed_max <= 4 / std::numbers::ln2 + 1e-9);
  CHECK(detail(orthant, "ratio_f_monotone") == 1);
  CHECK(simplex.pass);
  CHECK(simplex.claimed_hi == Approx(std::numbers::pi * std::numbers::pi / (2 * std::numbers::ln2)));
  CHECK(detail(simplex, "pairs_above_quoted_upper") > 0);
  CHECK(detail(simplex, "quoted_upper") == Approx(std::numbers::sqrt2 * std::numbers::pi / std::numbers::ln2));

  const BoundReport br = check_burbea_rao(c);
  CHECK(br.pass);
  CHECK(br.observed_max <= 0.25);
  CHECK(detail(br, "witness_log_t_C=1000") == Approx(998.83).epsilon(1e-4));

  const BoundReport is = check_is_ball_window(c);
  CHECK(is.pass);
  CHECK(detail(is, "convex_threshold") == Approx(std::numbers::ln2 - 0.5));
  CHECK(detail(is, "nonconvex_threshold") == Approx(2 * std::numbers::ln2 - 1));

  const BoundReport iso = check_isometries(c);
  CHECK(iso.pass);
}

TEST_CASE("suite plumbing") {
  VerifyConfig c = small_config();
  CHECK(check_names().size() == 4);
  CHECK_THROWS_AS(run_check("check_nothing", c), DomainError);
  const auto a = run_all(c);
  const auto b = run_all(c);
  REQUIRE(a.size() == 5);
  CHECK(to_json(a) == to_json(b));
  c.seed += 1;
  CHECK(to_json(run_all(c)) != to_json(a));

  const auto parsed = nlohmann::json::parse(to_json(a));
  REQUIRE(parsed.is_array());
  CHECK(parsed.size() == 5);
  CHECK(parsed[0]["name"] == "js_fisher_orthant");
  CHECK(parsed[0]["interval"].size() == 2);
  CHECK(parsed[0].contains("details"));
  CHECK(run_check("check_js_fisher_bounds", c).size() == 2);
  CHECK(run_check("check_isometries", c).size() == 1);
}

} // TEST_SUITE
