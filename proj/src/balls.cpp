#include "infotopo/balls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace infotopo {

namespace {

constexpr double kLogSearchWidth = 50.0;

// Measure used for the one-dimensional extent of the ball along a coordinate.
// Simplex-restricted Fisher balls sit inside the orthant ones.
Measure orthant_counterpart(Measure m) {
  switch (m) {
  case Measure::FisherSimplex:
    return Measure::FisherOrthant;
  case Measure::SquaredFisherSimplex:
    return Measure::SquaredFisherOrthant;
  default:
    return m;
  }
}

double one_dim(Measure m, double c, double t) {
  return evaluate(m, PositivePoint{c}, PositivePoint{t});
}

// Log-coordinate interval in which D(c || t) <= r^2 on one axis. Bisection on
// each side of c; capped at kLogSearchWidth when the divergence stays bounded.
std::pair<double, double> log_extent(Measure m, double c, double r2) {
  const double lc = std::log(c);
  auto edge = [&](double direction) {
    double inside = 0.0;
    double outside = kLogSearchWidth;
    if (one_dim(m, c, std::exp(lc + direction * outside)) <= r2)
      return lc + direction * outside;
    for (int it = 0; it < 200 && outside - inside > 1e-12; ++it) {
      const double mid = 0.5 * (inside + outside);
      if (one_dim(m, c, std::exp(lc + direction * mid)) <= r2)
        inside = mid;
      else
        outside = mid;
    }
    return lc + direction * outside;
  };
  return {edge(-1.0), edge(1.0)};
}

class BallSampler {
public:
  BallSampler(const DivergenceBall &ball, std::mt19937_64 &rng)
      : ball_(ball), rng_(rng), simplex_(requires_simplex(ball.measure())) {
    const Measure axis = orthant_counterpart(ball.measure());
    const auto &c = ball.center().coords();
    for (Eigen::Index i = 0; i < c.size(); ++i)
      boxes_.push_back(log_extent(axis, c[i], ball.squared_radius()));
  }

  PositivePoint draw_member() {
    const auto n = static_cast<Eigen::Index>(boxes_.size());
    Eigen::VectorXd v(n);
    for (std::size_t attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
      for (Eigen::Index i = 0; i < n; ++i) {
        std::uniform_real_distribution<double> u(boxes_[i].first,
                                                 boxes_[i].second);
        v[i] = std::exp(u(rng_));
      }
      if (simplex_)
        v /= v.sum();
      PositivePoint p(v);
      if (contains(ball_, p))
        return p;
    }
    throw SamplingFailure("no ball member found in " +
                          std::to_string(kMaxSamplingAttempts) + " attempts");
  }

private:
  const DivergenceBall &ball_;
  std::mt19937_64 &rng_;
  bool simplex_;
  std::vector<std::pair<double, double>> boxes_;
};

double burg_component_divergence(double t) { return std::log(t) + 1.0 / t - 1.0; }

} // namespace

DivergenceBall::DivergenceBall(Measure measure, PositivePoint center,
                               double squared_radius)
    : measure_(measure), center_(std::move(center)),
      squared_radius_(squared_radius) {
  if (!(squared_radius_ >= 0) || !std::isfinite(squared_radius_))
    throw DomainError("squared radius must be finite and non-negative");
  if (requires_simplex(measure_) && !on_simplex(center_))
    throw DomainError("simplex ball needs a simplex center");
}

bool contains(const DivergenceBall &ball, const PositivePoint &y) {
  return evaluate(ball.measure(), ball.center(), y) <= ball.squared_radius();
}

ConvexityReport probe_convexity(const DivergenceBall &ball, std::size_t samples,
                                std::uint64_t seed) {
  if (samples < 1)
    throw DomainError("at least one sample is required");
  std::mt19937_64 rng(seed);
  BallSampler sampler(ball, rng);
  std::uniform_real_distribution<double> weight(0.0, 1.0);

  ConvexityReport report;
  for (std::size_t s = 0; s < samples; ++s) {
    PositivePoint y = sampler.draw_member();
    PositivePoint z = sampler.draw_member();
    ++report.samples_tested;
    const double lambdas[] = {0.5, weight(rng), weight(rng), weight(rng)};
    for (double lambda : lambdas) {
      PositivePoint w(Eigen::VectorXd(lambda * y.coords() +
                                      (1 - lambda) * z.coords()));
      const double value = evaluate(ball.measure(), ball.center(), w);
      if (value > ball.squared_radius() + kWitnessMargin) {
        const double vy = evaluate(ball.measure(), ball.center(), y);
        const double vz = evaluate(ball.measure(), ball.center(), z);
        report.witness = ConvexityWitness{std::move(y), std::move(z),
                                          std::move(w), vy, vz, value};
        return report;
      }
    }
  }
  return report;
}

NonconvexWitness is_nonconvex_witness(int n, double epsilon) {
  if (n < 2)
    throw DomainError("the construction needs at least two dimensions");
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw DomainError("epsilon must be positive");
  const double a = 2.0 + epsilon;
  const double b = 2.0 + 2.0 * epsilon;
  Eigen::VectorXd xs = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd ys = Eigen::VectorXd::Ones(n);
  xs[0] = a;
  xs[1] = b;
  ys[0] = b;
  ys[1] = a;
  PositivePoint x(xs);
  PositivePoint y(ys);
  const PositivePoint one(Eigen::VectorXd::Ones(n));
  const PositivePoint mid(Eigen::VectorXd(0.5 * (xs + ys)));
  const double r2 = std::max(itakura_saito(one, x), itakura_saito(one, y));
  return NonconvexWitness{std::move(x), std::move(y), epsilon, r2,
                          itakura_saito(one, mid)};
}

NonconvexWitness is_nonconvex_witness_for_radius(int n, double squared_radius) {
  const double threshold = 2.0 * std::numbers::ln2 - 1.0;
  if (!(squared_radius > threshold))
    throw DomainError("the construction only reaches r^2 > 2 ln 2 - 1");
  auto r2_of = [](double eps) {
    return burg_component_divergence(2.0 + eps) +
           burg_component_divergence(2.0 + 2.0 * eps);
  };
  double lo = 0.0;
  double hi = 1.0;
  while (r2_of(hi) < squared_radius)
    hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (r2_of(mid) < squared_radius ? lo : hi) = mid;
  }
  return is_nonconvex_witness(n, hi);
}

bool stretch_check(const PositivePoint &x, const PositivePoint &y) {
  const double direct = itakura_saito(x, y);
  const PositivePoint one(Eigen::VectorXd::Ones(x.size()));
  const PositivePoint ratio(Eigen::VectorXd(y.coords().array() / x.coords().array()));
  const double stretched = itakura_saito(one, ratio);
  return std::abs(direct - stretched) <= 1e-12 * std::max(1.0, std::abs(direct));
}

} // namespace infotopo
