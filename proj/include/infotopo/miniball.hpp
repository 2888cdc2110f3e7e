#pragma once

// Smallest enclosing Euclidean ball of a finite point set: Welzl's recursion
// with the move-to-front heuristic for small sets, the Fischer-Gaertner-Kutz
// walk for larger ones.

#include <vector>

#include <Eigen/Dense>

namespace infotopo {

struct EuclideanBall {
  Eigen::VectorXd center;
  /// Maximum distance from the center to the input points.
  double radius = 0;
  /// Indices of the points spanning the final ball.
  std::vector<int> support;
};

/// Throws DomainError for an empty set or points of mixed dimension.
EuclideanBall minimal_enclosing_ball(const std::vector<Eigen::VectorXd> &points);

} // namespace infotopo
