#pragma once

#include <cstdint>
#include <optional>

#include "infotopo/divergences.hpp"

namespace infotopo {

/// Sublevel set {y : D(center || y) <= r^2}. The center is always the first
/// argument of the measure.
class DivergenceBall {
public:
  DivergenceBall(Measure measure, PositivePoint center, double squared_radius);

  Measure measure() const { return measure_; }
  const PositivePoint &center() const { return center_; }
  double squared_radius() const { return squared_radius_; }

private:
  Measure measure_;
  PositivePoint center_;
  double squared_radius_;
};

bool contains(const DivergenceBall &ball, const PositivePoint &y);

/// Two members of a ball and a convex combination of them that is not.
struct ConvexityWitness {
  PositivePoint y;
  PositivePoint z;
  PositivePoint combination;
  double value_y;
  double value_z;
  double value_combination;
};

struct ConvexityReport {
  std::optional<ConvexityWitness> witness;
  std::size_t samples_tested = 0;

  bool violation_found() const { return witness.has_value(); }
};

/// Margin by which a convex combination must exceed r^2 to count as outside.
inline constexpr double kWitnessMargin = 1e-12;
/// Rejection-sampling budget per drawn member.
inline constexpr std::size_t kMaxSamplingAttempts = 100000;

/// Randomized search for a convexity violation: draws `samples` member pairs
/// by rejection sampling from a log-uniform bounding box and tests their
/// midpoint plus three random convex combinations. A witness refutes
/// convexity; its absence is only evidence. Deterministic for a given seed.
ConvexityReport probe_convexity(const DivergenceBall &ball, std::size_t samples,
                                std::uint64_t seed);

/// Construction of a nonconvex Itakura-Saito ball around the all-ones point:
/// x = (a, b, 1, ...), y = (b, a, 1, ...) with a = 2 + eps, b = 2 + 2 eps both
/// on the boundary of B(1; r) with r^2 = d(a) + d(b), while their midpoint is
/// outside.
struct NonconvexWitness {
  PositivePoint x;
  PositivePoint y;
  double epsilon;
  double squared_radius;
  double midpoint_value;

  double excess() const { return midpoint_value - squared_radius; }
};

NonconvexWitness is_nonconvex_witness(int n, double epsilon);

/// Same construction with eps solved so that r^2 reaches `squared_radius`,
/// which must exceed 2 ln 2 - 1.
NonconvexWitness is_nonconvex_witness_for_radius(int n, double squared_radius);

/// Checks IS(x, y) == IS(1, y/x) within 1e-12 (relative for large values).
bool stretch_check(const PositivePoint &x, const PositivePoint &y);

} // namespace infotopo
