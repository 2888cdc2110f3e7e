#pragma once

// Persistent homology over Z/2, bottleneck distances, and the log-scale
// comparisons between Rips filtrations of different metrics and between Rips
// and Cech filtrations.

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "infotopo/filtration.hpp"

namespace infotopo {

enum class Scale { Linear, Log };

/// One point of a diagram. `death` may be +inf (essential class); after log
/// re-indexing `birth` may be -inf (class born at value 0).
struct PersistencePair {
  double birth;
  double death;

  double persistence() const { return death - birth; }
  friend bool operator==(const PersistencePair &, const PersistencePair &) = default;
};

class PersistenceDiagram {
public:
  PersistenceDiagram() = default;
  PersistenceDiagram(std::vector<std::vector<PersistencePair>> pairs,
                     Scale scale = Scale::Linear);

  /// Points of dimension `dim`, sorted by (birth, death). Zero-persistence
  /// pairs are hidden unless requested.
  std::vector<PersistencePair> points(int dim,
                                      bool include_zero_persistence = false) const;
  /// Highest dimension with a slot (possibly empty); -1 for an empty diagram.
  int max_dim() const { return static_cast<int>(pairs_.size()) - 1; }
  /// Number of classes of dimension `dim` alive at r: birth <= r < death.
  int betti(int dim, double r) const;

  Scale scale = Scale::Linear;
  std::optional<Measure> measure;
  Flavor flavor = Flavor::Rips;

private:
  std::vector<std::vector<PersistencePair>> pairs_;
};

/// Column reduction with clearing. Homology of dimensions 0..max_homology_dim;
/// deaths in the top dimension of the filtration are never detected. Throws
/// InvalidFiltration when the monotonicity audit fails.
PersistenceDiagram compute_diagram(const Filtration &filtration,
                                   int max_homology_dim);

/// Exact bottleneck distance between two point multisets with diagonal
/// augmentation. Essential points match essential points only; points born
/// at -inf match each other by death. Unmatched infinite points give +inf.
double bottleneck(std::span<const PersistencePair> a,
                  std::span<const PersistencePair> b);
/// Throws ScaleMismatch when the diagrams use different scales.
double bottleneck(const PersistenceDiagram &a, const PersistenceDiagram &b,
                  int dim);

/// Substitutes ln r for every finite coordinate (0 maps to -inf). Throws
/// ScaleMismatch for a diagram that is already on the log scale.
PersistenceDiagram log_reindex(const PersistenceDiagram &diagram);

/// A measure times a positive constant, e.g. half the Fisher metric.
struct ScaledMeasure {
  Measure measure;
  double factor = 1.0;
};

/// Log-scale bottleneck distances, per homology dimension 0..max_dim-1,
/// between the Rips diagrams of the cloud under two metrics.
std::vector<double> compare_measures(const PointCloud &cloud, ScaledMeasure a,
                                     ScaledMeasure b, int max_dim);

/// Log-scale bottleneck distances, per homology dimension 0..max_dim-1,
/// between the Rips and Cech diagrams of a Fisher metric.
std::vector<double> compare_constructions(const PointCloud &cloud,
                                          Measure fisher, int max_dim,
                                          double factor = 1.0);

/// Text lines `dim birth death`, 17 significant digits, `inf`/`-inf` for
/// infinite coordinates; zero-persistence pairs omitted.
void write_diagram(std::ostream &out, const PersistenceDiagram &diagram);
/// Reads the same format; `#` starts a comment. Throws ParseError.
PersistenceDiagram read_diagram(std::istream &in, Scale scale = Scale::Linear);

} // namespace infotopo
