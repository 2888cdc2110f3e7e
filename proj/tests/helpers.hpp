#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "infotopo/divergences.hpp"
#include "infotopo/filtration.hpp"

namespace testing {

inline Eigen::VectorXd log_uniform(std::mt19937_64 &rng, Eigen::Index n, double lo = 1e-3,
                                   double hi = 1e3) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = std::exp(u(rng));
  return v;
}

inline infotopo::PositivePoint random_point(std::mt19937_64 &rng, Eigen::Index n) {
  return infotopo::PositivePoint(log_uniform(rng, n));
}

inline infotopo::SimplexPoint random_simplex(std::mt19937_64 &rng, Eigen::Index n) {
  return infotopo::SimplexPoint::normalize(random_point(rng, n));
}

inline int random_int(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline infotopo::PointCloud random_cloud(std::mt19937_64 &rng, std::size_t n, Eigen::Index dim,
                                         bool simplex, double lo = 0.05, double hi = 20) {
  std::vector<infotopo::PositivePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd v = log_uniform(rng, dim, lo, hi);
    if (simplex)
      v /= v.sum();
    pts.emplace_back(v);
  }
  return infotopo::PointCloud(std::move(pts));
}

} // namespace testing
