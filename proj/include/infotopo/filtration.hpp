#pragma once

// Vietoris-Rips filtrations from the half-diameter function and Cech
// filtrations from the radius function of the Fisher metric.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infotopo/divergences.hpp"

namespace infotopo {

/// Finite, non-empty point set of uniform dimension. Duplicates are kept.
class PointCloud {
public:
  explicit PointCloud(std::vector<PositivePoint> points);

  std::size_t size() const { return points_.size(); }
  Eigen::Index dimension() const { return points_.front().size(); }
  const PositivePoint &operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  /// All points lie on the probability simplex.
  bool on_simplex() const;

private:
  std::vector<PositivePoint> points_;
};

/// Square table of pairwise measurements with a zero diagonal. `factor`
/// records a constant multiplier applied to the measure (0.5 for half the
/// Fisher metric, say).
struct DissimilarityMatrix {
  Eigen::MatrixXd values;
  std::optional<Measure> measure;
  double factor = 1.0;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
  bool symmetric(double tol = 1e-12) const;
};

enum class Flavor { Rips, Cech };

struct Simplex {
  std::vector<int> vertices; // strictly increasing
  double value = 0;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Simplices sorted by (value, dimension, lexicographic vertices), so every
/// face precedes its cofaces.
struct Filtration {
  std::vector<Simplex> simplices;
  Flavor flavor = Flavor::Rips;
  int max_dim = 0;
  std::size_t vertex_count = 0;
};

/// Sorts simplices into filtration order.
void sort_filtration(std::vector<Simplex> &simplices);

/// First violation of "every face is listed, with value no larger than its
/// coface", or nullopt for a valid filtration.
std::optional<std::string> audit_filtration(const Filtration &f);

/// factor * evaluate(m, x_i, x_j) for all pairs; the diagonal is exactly 0.
DissimilarityMatrix pairwise(Measure m, const PointCloud &cloud,
                             double factor = 1.0);

/// Half the largest entry among the given vertices; 0 for a singleton.
double half_diameter(const DissimilarityMatrix &matrix,
                     std::span<const int> vertices);

/// All simplices up to `max_dim` valued by half-diameter. Throws
/// NonSymmetric for matrices asymmetric beyond 1e-12.
Filtration rips_filtration(const DissimilarityMatrix &matrix, int max_dim);

/// Minimax center of a vertex set under the Fisher metric (orthant or
/// simplex), found as the smallest enclosing ball in the Antonelli image.
struct CechBall {
  PositivePoint center;
  double radius;
  /// Some center coordinate is within 1e-9 of the domain boundary.
  bool near_boundary;
};

CechBall cech_ball(const PointCloud &cloud, Measure m,
                   std::span<const int> vertices, double factor = 1.0);
double cech_radius(const PointCloud &cloud, Measure m,
                   std::span<const int> vertices, double factor = 1.0);

/// Simplices up to `max_dim` valued by the radius function. Values are
/// closed upward over facets so that rounding never breaks monotonicity.
Filtration cech_filtration(const PointCloud &cloud, Measure m, int max_dim,
                           double factor = 1.0);

/// Larger of the two directed max-min distances; metric measures only.
double hausdorff(Measure m, const PointCloud &a, const PointCloud &b);

/// Lower-triangular text: line i (1-based) holds d(i, 0..i-1), comma
/// separated, 17 significant digits. A single point produces no lines.
void write_lower_triangular(std::ostream &out, const DissimilarityMatrix &m);
/// Full n x n table, one row per line.
void write_full_matrix(std::ostream &out, const DissimilarityMatrix &m);
/// Reads the lower-triangular format (blank lines ignored, commas or
/// whitespace as separators). Throws ParseError with a line number.
DissimilarityMatrix read_lower_triangular(std::istream &in);

} // namespace infotopo
