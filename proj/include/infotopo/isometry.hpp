#pragma once

// Coordinate-wise isometries from Hessian metrics of decomposable Legendre
// functions to Euclidean space, and numeric path lengths for checking them.

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "infotopo/divergences.hpp"

namespace infotopo {

/// A point of the positive orthant of the sphere of radius sqrt(2) centred at
/// the origin, i.e. the image of the probability simplex under the Antonelli
/// map.
class SpherePoint {
public:
  static constexpr double kNormTol = 1e-12;

  explicit SpherePoint(Eigen::VectorXd coords);

  const Eigen::VectorXd &coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }

private:
  Eigen::VectorXd coords_;
};

/// Central angle between two sphere points, in radians.
double central_angle(const SpherePoint &u, const SpherePoint &v);

/// x_i -> sqrt(2 x_i). Carries the Fisher metric to the Euclidean metric.
PositivePoint antonelli_forward(const PositivePoint &x);
/// u_i -> u_i^2 / 2.
PositivePoint antonelli_inverse(const PositivePoint &u);
/// Restriction of antonelli_forward to the simplex.
SpherePoint simplex_to_sphere(const SimplexPoint &x);
/// Inverse of simplex_to_sphere.
SimplexPoint sphere_to_simplex(const SpherePoint &u);
/// x_i -> ln(x_i) / sqrt(2). Carries the Burg metric to the Euclidean metric.
Eigen::VectorXd burg_forward(const PositivePoint &x);

/// One component F_i of a strongly decomposable Legendre function, described
/// by its second derivative on an open interval. The component isometry p
/// satisfies p' = sqrt(F''/2); it is either registered in closed form or
/// integrated numerically from `anchor`.
class DecomposableLegendre {
public:
  using ScalarFn = std::function<double(double)>;

  /// Shannon component t ln t - t: F'' = 1/t, p(t) = sqrt(2t).
  static DecomposableLegendre shannon();
  /// Burg component 1 - ln t: F'' = 1/t^2, p(t) = ln(t)/sqrt(2).
  static DecomposableLegendre burg();
  /// t^2 on the whole line: F'' = 2, p(t) = t.
  static DecomposableLegendre squared_euclidean();
  /// No closed form; p is integrated from `anchor`, which may sit on the
  /// closure of (lo, hi).
  static DecomposableLegendre numeric(ScalarFn second_derivative, double anchor,
                                      double lo, double hi);

  /// Throws DomainError outside (lo, hi) or where F'' is not finite and positive.
  double second_derivative(double t) const;
  /// p(t); throws DomainError outside (lo, hi), QuadratureFailure when the
  /// numeric antiderivative misses kQuadratureTol.
  double component_isometry(double t) const;
  bool has_closed_form() const { return closed_form_.has_value(); }
  /// Same F'' with the closed form dropped, so p is integrated from `anchor`.
  DecomposableLegendre numeric_copy(double anchor) const;

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double anchor() const { return anchor_; }

  static constexpr double kQuadratureTol = 1e-10;

private:
  DecomposableLegendre(ScalarFn second_derivative, std::optional<ScalarFn> p,
                       double anchor, double lo, double hi);

  ScalarFn second_derivative_;
  std::optional<ScalarFn> closed_form_;
  double anchor_;
  double lo_;
  double hi_;
};

/// Applies the component isometry of `f` to every coordinate of `x`.
Eigen::VectorXd general_isometry(const DecomposableLegendre &f,
                                 const PositivePoint &x);

/// Length of the known shortest path from x to y, measured by summing
/// Hessian-metric steps along a discretization with `steps` segments. The
/// path is a segment (FisherOrthant, BurgInfo) or a great-circle arc
/// (FisherSimplex) in the Euclidean image, pulled back to the domain; the
/// metric of each step is evaluated at the path midpoint of the step
/// (midpoint rule).
double geodesic_length_numeric(Measure m, const PositivePoint &x,
                               const PositivePoint &y, int steps);

} // namespace infotopo
