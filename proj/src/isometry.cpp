#include "infotopo/isometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace infotopo {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Path through the Euclidean image, evaluated at parameter t in [0, 1].
using ImagePath = std::function<Eigen::VectorXd(double)>;

double discretized_length(const ImagePath &path,
                          const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &pull_back,
                          const std::function<double(double)> &half_hessian,
                          int steps) {
  double length = 0;
  Eigen::VectorXd prev = pull_back(path(0.0));
  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    Eigen::VectorXd next = pull_back(path(t));
    // Midpoint rule: metric at the path midpoint, velocity from the chord.
    const Eigen::VectorXd mid = pull_back(path(t - 0.5 / steps));
    const Eigen::VectorXd delta = next - prev;
    double q = 0;
    for (Eigen::Index i = 0; i < delta.size(); ++i)
      q += half_hessian(mid[i]) * delta[i] * delta[i];
    length += std::sqrt(q);
    prev = std::move(next);
  }
  return length;
}

} // namespace

SpherePoint::SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1)
    throw DomainError("sphere point needs at least one coordinate");
  if ((coords_.array() <= 0).any())
    throw DomainError("sphere point must lie in the open positive orthant");
  if (std::abs(coords_.squaredNorm() - 2.0) > kNormTol * 2.0)
    throw DomainError("sphere point must have squared norm 2");
}

double central_angle(const SpherePoint &u, const SpherePoint &v) {
  if (u.size() != v.size())
    throw DimensionMismatch("sphere points of different dimension");
  const Eigen::VectorXd a = u.coords().normalized();
  const Eigen::VectorXd b = v.coords().normalized();
  // atan2 form stays accurate for both tiny and large angles
  const double sine = (a - b * a.dot(b)).norm();
  return std::atan2(sine, a.dot(b));
}

PositivePoint antonelli_forward(const PositivePoint &x) {
  return PositivePoint(Eigen::VectorXd((2.0 * x.coords().array()).sqrt()));
}

PositivePoint antonelli_inverse(const PositivePoint &u) {
  return PositivePoint(Eigen::VectorXd(0.5 * u.coords().array().square()));
}

SpherePoint simplex_to_sphere(const SimplexPoint &x) {
  return SpherePoint(antonelli_forward(x.point()).coords());
}

SimplexPoint sphere_to_simplex(const SpherePoint &u) {
  return SimplexPoint(Eigen::VectorXd(0.5 * u.coords().array().square()));
}

Eigen::VectorXd burg_forward(const PositivePoint &x) {
  return x.coords().array().log() / kSqrt2;
}

DecomposableLegendre::DecomposableLegendre(ScalarFn second_derivative,
                                           std::optional<ScalarFn> p,
                                           double anchor, double lo, double hi)
    : second_derivative_(std::move(second_derivative)),
      closed_form_(std::move(p)), anchor_(anchor), lo_(lo), hi_(hi) {
  if (!(lo_ < hi_))
    throw DomainError("empty component domain");
  if (anchor_ < lo_ || anchor_ > hi_)
    throw DomainError("anchor outside the closure of the component domain");
}

DecomposableLegendre DecomposableLegendre::shannon() {
  return {[](double t) { return 1.0 / t; },
          [](double t) { return std::sqrt(2.0 * t); }, 0.0, 0.0,
          std::numeric_limits<double>::infinity()};
}

DecomposableLegendre DecomposableLegendre::burg() {
  return {[](double t) { return 1.0 / (t * t); },
          [](double t) { return std::log(t) / kSqrt2; }, 1.0, 0.0,
          std::numeric_limits<double>::infinity()};
}

DecomposableLegendre DecomposableLegendre::squared_euclidean() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {[](double) { return 2.0; }, [](double t) { return t; }, 0.0, -inf,
          inf};
}

DecomposableLegendre DecomposableLegendre::numeric(ScalarFn second_derivative,
                                                   double anchor, double lo,
                                                   double hi) {
  return {std::move(second_derivative), std::nullopt, anchor, lo, hi};
}

DecomposableLegendre DecomposableLegendre::numeric_copy(double anchor) const {
  return {second_derivative_, std::nullopt, anchor, lo_, hi_};
}

double DecomposableLegendre::second_derivative(double t) const {
  if (!(t > lo_ && t < hi_))
    throw DomainError(std::to_string(t) + " outside the component domain");
  const double v = second_derivative_(t);
  if (!(v > 0) || !std::isfinite(v))
    throw DomainError("second derivative is not positive at " +
                      std::to_string(t));
  return v;
}

double DecomposableLegendre::component_isometry(double t) const {
  if (!(t > lo_ && t < hi_))
    throw DomainError(std::to_string(t) + " outside the component domain");
  if (closed_form_)
    return (*closed_form_)(t);
  if (t == anchor_)
    return 0.0;

  const double a = std::min(t, anchor_);
  const double b = std::max(t, anchor_);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0;
  double l1 = 0;
  const double value = integrator.integrate(
      [this](double s) { return std::sqrt(0.5 * second_derivative(s)); }, a, b,
      1e-13, &error, &l1);
  if (!std::isfinite(value) || error > kQuadratureTol)
    throw QuadratureFailure("error estimate " + std::to_string(error) +
                            " above tolerance");
  return t < anchor_ ? -value : value;
}

Eigen::VectorXd general_isometry(const DecomposableLegendre &f,
                                 const PositivePoint &x) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = f.component_isometry(x[i]);
  return out;
}

double geodesic_length_numeric(Measure m, const PositivePoint &x,
                               const PositivePoint &y, int steps) {
  if (steps < 2)
    throw DomainError("at least two steps are required");
  if (x.size() != y.size())
    throw DimensionMismatch("path endpoints of different dimension");

  const auto fisher_half_hessian = [](double t) { return 0.5 / t; };
  const auto antonelli_pull_back = [](const Eigen::VectorXd &u) {
    return Eigen::VectorXd(0.5 * u.array().square());
  };

  switch (m) {
  case Measure::FisherOrthant: {
    const Eigen::VectorXd a = antonelli_forward(x).coords();
    const Eigen::VectorXd b = antonelli_forward(y).coords();
    return discretized_length(
        [&](double t) { return Eigen::VectorXd((1 - t) * a + t * b); },
        antonelli_pull_back, fisher_half_hessian, steps);
  }
  case Measure::FisherSimplex: {
    if (!on_simplex(x) || !on_simplex(y))
      throw DomainError("simplex geodesic needs simplex endpoints");
    const SpherePoint su = simplex_to_sphere(SimplexPoint(x));
    const SpherePoint sv = simplex_to_sphere(SimplexPoint(y));
    const double theta = central_angle(su, sv);
    const Eigen::VectorXd a = su.coords();
    const Eigen::VectorXd b = sv.coords();
    if (theta == 0)
      return 0.0;
    const double s = std::sin(theta);
    return discretized_length(
        [&](double t) {
          return Eigen::VectorXd((std::sin((1 - t) * theta) * a +
                                  std::sin(t * theta) * b) /
                                 s);
        },
        antonelli_pull_back, fisher_half_hessian, steps);
  }
  case Measure::BurgInfo: {
    const Eigen::VectorXd a = burg_forward(x);
    const Eigen::VectorXd b = burg_forward(y);
    return discretized_length(
        [&](double t) { return Eigen::VectorXd((1 - t) * a + t * b); },
        [](const Eigen::VectorXd &u) {
          return Eigen::VectorXd((kSqrt2 * u.array()).exp());
        },
        [](double t) { return 0.5 / (t * t); }, steps);
  }
  default:
    throw DomainError("no geodesic model for measure " +
                      std::string(measure_name(m)));
  }
}

} // namespace infotopo
