#pragma once

// Entropies, divergences and information metrics on the positive orthant and
// the open probability simplex.
//
// Every measure comes in two layers: an expression-friendly kernel templated
// on Eigen dense expressions (no validation beyond sizes), and a checked
// overload taking PositivePoint arguments.

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "infotopo/errors.hpp"

namespace infotopo {

/// Coordinates at or below this value are outside the open domain.
inline constexpr double kOpenDomainFloor = 1e-300;
/// Maximum deviation of a coordinate sum from 1 that SimplexPoint repairs.
inline constexpr double kSimplexRenormalizeTol = 1e-6;
/// Tolerance used when deciding whether a PositivePoint lies on the simplex.
inline constexpr double kOnSimplexTol = 1e-9;

/// A point of the open positive orthant. Every coordinate is strictly
/// positive and the dimension is at least one.
template <typename Scalar>
class BasicPositivePoint {
public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicPositivePoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1)
      throw DomainError("point must have at least one coordinate");
    for (Eigen::Index i = 0; i < coords_.size(); ++i) {
      const Scalar c = coords_[i];
      if (!(c > Scalar(kOpenDomainFloor)) || !std::isfinite(double(c)))
        throw DomainError("coordinate " + std::to_string(i) +
                          " is not a finite positive number");
    }
  }
  BasicPositivePoint(std::initializer_list<Scalar> values)
      : BasicPositivePoint(from_list(values)) {}

  const Vector &coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }
  Scalar operator[](Eigen::Index i) const { return coords_[i]; }
  Scalar sum() const { return coords_.sum(); }

  friend bool operator==(const BasicPositivePoint &a,
                         const BasicPositivePoint &b) {
    return a.coords_ == b.coords_;
  }

private:
  static Vector from_list(std::initializer_list<Scalar> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (Scalar s : values)
      v[i++] = s;
    return v;
  }

  Vector coords_;
};

/// A discrete probability distribution with full support. Construction
/// renormalizes sums within kSimplexRenormalizeTol of one and rejects the
/// rest.
template <typename Scalar>
class BasicSimplexPoint {
public:
  using Vector = typename BasicPositivePoint<Scalar>::Vector;

  explicit BasicSimplexPoint(const Vector &coords)
      : point_(normalized(coords)) {}
  BasicSimplexPoint(std::initializer_list<Scalar> values)
      : BasicSimplexPoint(BasicPositivePoint<Scalar>(values).coords()) {}
  explicit BasicSimplexPoint(const BasicPositivePoint<Scalar> &p)
      : BasicSimplexPoint(p.coords()) {}

  /// Divides by the coordinate sum, whatever it is.
  static BasicSimplexPoint normalize(const BasicPositivePoint<Scalar> &p) {
    return BasicSimplexPoint(Vector(p.coords() / p.sum()));
  }

  const BasicPositivePoint<Scalar> &point() const { return point_; }
  operator const BasicPositivePoint<Scalar> &() const { return point_; }
  const Vector &coords() const { return point_.coords(); }
  Eigen::Index size() const { return point_.size(); }
  Scalar operator[](Eigen::Index i) const { return point_[i]; }

private:
  static BasicPositivePoint<Scalar> normalized(const Vector &coords) {
    BasicPositivePoint<Scalar> p(coords);
    const Scalar s = p.sum();
    if (std::abs(double(s) - 1.0) > kSimplexRenormalizeTol)
      throw DomainError("coordinates sum to " + std::to_string(double(s)) +
                        ", not 1");
    return BasicPositivePoint<Scalar>(Vector(coords / s));
  }

  BasicPositivePoint<Scalar> point_;
};

using PositivePoint = BasicPositivePoint<double>;
using SimplexPoint = BasicSimplexPoint<double>;

/// True when the coordinates of `p` sum to one within `tol`.
template <typename Scalar>
bool on_simplex(const BasicPositivePoint<Scalar> &p,
                double tol = kOnSimplexTol) {
  return std::abs(double(p.sum()) - 1.0) <= tol;
}

enum class Measure {
  KL,
  ItakuraSaito,
  JensenShannon,
  JSMetric,
  FisherOrthant,
  FisherSimplex,
  BurgInfo,
  BurbeaRao,
  SquaredFisherOrthant,
  SquaredFisherSimplex,
};

inline constexpr Measure kAllMeasures[] = {
    Measure::KL,           Measure::ItakuraSaito,
    Measure::JensenShannon, Measure::JSMetric,
    Measure::FisherOrthant, Measure::FisherSimplex,
    Measure::BurgInfo,     Measure::BurbeaRao,
    Measure::SquaredFisherOrthant, Measure::SquaredFisherSimplex};

/// Satisfies the triangle inequality.
bool is_metric(Measure m);
bool is_symmetric(Measure m);
/// Arguments must be simplex points.
bool requires_simplex(Measure m);

/// Short command-line name, e.g. "js-metric".
std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

namespace kernel {

// Rounding can push a vanishing divergence a few ulps below zero.
template <typename Scalar> Scalar clamp_nonnegative(Scalar v) {
  return v < Scalar(0) ? Scalar(0) : v;
}

template <typename D>
typename D::Scalar shannon_entropy(const Eigen::MatrixBase<D> &x) {
  const auto a = x.array();
  return (a * a.log() - a).sum();
}

template <typename D>
typename D::Scalar burg_entropy(const Eigen::MatrixBase<D> &x) {
  return (1 - x.array().log()).sum();
}

template <typename DX, typename DY>
typename DX::Scalar kl_divergence(const Eigen::MatrixBase<DX> &x,
                                  const Eigen::MatrixBase<DY> &y) {
  const auto a = x.array();
  const auto b = y.array();
  return clamp_nonnegative((a * (a / b).log() - a + b).sum());
}

template <typename DX, typename DY>
typename DX::Scalar itakura_saito(const Eigen::MatrixBase<DX> &x,
                                  const Eigen::MatrixBase<DY> &y) {
  // With s = x/y - 1 each term is s - ln(1 + s).
  const auto s = x.array() / y.array() - 1;
  return clamp_nonnegative((s - s.log1p()).sum());
}

/// (1+s) ln(1+s) + (1-s) ln(1-s) divided by s^2, as its power series
/// sum_k s^(2k-2) / (k (2k-1)); accurate to rounding for |s| < 0.1.
template <typename Scalar> Scalar entropy_gap_series(Scalar s) {
  const Scalar s2 = s * s;
  Scalar term(1);
  Scalar sum(0);
  for (int k = 1; k <= 12; ++k) {
    sum += term / Scalar(k * (2 * k - 1));
    term *= s2;
  }
  return sum;
}

/// a ln(2a/(a+b)) + b ln(2b/(a+b)). Close arguments go through the series in
/// s = (a-b)/(a+b), which avoids cancelling first-order terms.
template <typename Scalar> Scalar js_term(Scalar a, Scalar b) {
  using std::abs;
  using std::log;
  const Scalar m = a + b;
  const Scalar s = (a - b) / m;
  if (abs(s) < Scalar(0.1))
    return m / 2 * s * s * entropy_gap_series(s);
  const Scalar ln2m = std::numbers::ln2_v<Scalar> - log(m);
  return a * (log(a) + ln2m) + b * (log(b) + ln2m);
}

template <typename DX, typename DY>
typename DX::Scalar js_divergence(const Eigen::MatrixBase<DX> &x,
                                  const Eigen::MatrixBase<DY> &y) {
  using Scalar = typename DX::Scalar;
  return clamp_nonnegative(
      Scalar(0.5) *
      x.array()
          .binaryExpr(y.array(), [](Scalar a, Scalar b) { return js_term(a, b); })
          .sum());
}

// sqrt(x) - sqrt(y) written as (x - y) / (sqrt(x) + sqrt(y)), which keeps
// full relative accuracy when x and y are close.
template <typename DX, typename DY>
auto sqrt_difference(const Eigen::MatrixBase<DX> &x,
                     const Eigen::MatrixBase<DY> &y) {
  return (x.array() - y.array()) / (x.array().sqrt() + y.array().sqrt());
}

template <typename DX, typename DY>
typename DX::Scalar fisher_orthant(const Eigen::MatrixBase<DX> &x,
                                   const Eigen::MatrixBase<DY> &y) {
  using std::sqrt;
  return sqrt(2 * sqrt_difference(x, y).square().sum());
}

/// Great-circle form of the simplex-restricted Fisher metric. The central
/// angle between the unit vectors sqrt(x) and sqrt(y) is computed from the
/// chord, which equals arccos(sum sqrt(x_i y_i)) but stays exact at x == y.
template <typename DX, typename DY>
typename DX::Scalar fisher_simplex(const Eigen::MatrixBase<DX> &x,
                                   const Eigen::MatrixBase<DY> &y) {
  using Scalar = typename DX::Scalar;
  using std::asin;
  using std::min;
  using std::sqrt;
  const Scalar chord = sqrt_difference(x, y).matrix().norm();
  return std::numbers::sqrt2_v<Scalar> * 2 * asin(min(Scalar(1), chord / 2));
}

template <typename DX, typename DY>
typename DX::Scalar burg_info_distance(const Eigen::MatrixBase<DX> &x,
                                       const Eigen::MatrixBase<DY> &y) {
  using std::sqrt;
  return sqrt(0.5 * (x.array().log() - y.array().log()).square().sum());
}

template <typename Scalar> Scalar log_cosh(Scalar z) {
  using std::abs;
  using std::exp;
  using std::log1p;
  using std::sinh;
  z = abs(z);
  if (z < 1)
    return Scalar(0.5) * log1p(sinh(z) * sinh(z));
  return z - std::numbers::ln2_v<Scalar> + log1p(exp(-2 * z));
}

/// Each term ln((a+b)^2 / 4ab) / 2 equals ln cosh((ln a - ln b) / 2); the
/// latter never overflows, even for ratios a/b beyond the double range.
template <typename DX, typename DY>
typename DX::Scalar burbea_rao(const Eigen::MatrixBase<DX> &x,
                               const Eigen::MatrixBase<DY> &y) {
  using Scalar = typename DX::Scalar;
  return (0.5 * (x.array().log() - y.array().log()))
      .unaryExpr([](Scalar z) { return log_cosh(z); })
      .sum();
}

} // namespace kernel

double shannon_entropy(const PositivePoint &x);
double burg_entropy(const PositivePoint &x);
double kl_divergence(const PositivePoint &x, const PositivePoint &y);
double itakura_saito(const PositivePoint &x, const PositivePoint &y);
double js_divergence(const PositivePoint &x, const PositivePoint &y);
double js_metric(const PositivePoint &x, const PositivePoint &y);
double fisher_orthant(const PositivePoint &x, const PositivePoint &y);
double fisher_simplex(const SimplexPoint &x, const SimplexPoint &y);
double burg_info_distance(const PositivePoint &x, const PositivePoint &y);
double burbea_rao(const PositivePoint &x, const PositivePoint &y);

/// Uniform dispatch over all measures. Throws DomainError when a simplex
/// measure receives points off the simplex.
double evaluate(Measure m, const PositivePoint &x, const PositivePoint &y);

} // namespace infotopo
