#include "infotopo/filtration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "infotopo/isometry.hpp"
#include "infotopo/miniball.hpp"
#include "infotopo/parallel.hpp"

namespace infotopo {

namespace {

constexpr int kMaxVertices = 64;
constexpr double kBoundaryFlag = 1e-9;

std::uint64_t mask_of(const std::vector<int> &vertices) {
  std::uint64_t m = 0;
  for (int v : vertices)
    m |= std::uint64_t{1} << v;
  return m;
}

// All subsets of {0..n-1} with 1..max_dim+1 elements, each sorted.
std::vector<std::vector<int>> enumerate_simplices(int n, int max_dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  for (int k = 1; k <= std::min(n, max_dim + 1); ++k) {
    current.resize(k);
    for (int i = 0; i < k; ++i)
      current[i] = i;
    while (true) {
      out.push_back(current);
      int i = k - 1;
      while (i >= 0 && current[i] == n - k + i)
        --i;
      if (i < 0)
        break;
      ++current[i];
      for (int j = i + 1; j < k; ++j)
        current[j] = current[j - 1] + 1;
    }
  }
  return out;
}

void check_vertex_count(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxVertices))
    throw DomainError("filtrations are limited to " +
                      std::to_string(kMaxVertices) + " points");
}

void check_fisher(const PointCloud &cloud, Measure m) {
  if (m == Measure::FisherOrthant)
    return;
  if (m == Measure::FisherSimplex) {
    if (!cloud.on_simplex())
      throw DomainError("simplex radius needs points on the simplex");
    return;
  }
  throw DomainError("the radius function is defined for Fisher metrics only");
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  return std::string(buf, end);
}

} // namespace

PointCloud::PointCloud(std::vector<PositivePoint> points)
    : points_(std::move(points)) {
  if (points_.empty())
    throw DomainError("a point cloud needs at least one point");
  for (const auto &p : points_)
    if (p.size() != points_.front().size())
      throw DimensionMismatch("point cloud of mixed dimension");
}

bool PointCloud::on_simplex() const {
  return std::all_of(points_.begin(), points_.end(),
                     [](const PositivePoint &p) { return infotopo::on_simplex(p); });
}

bool DissimilarityMatrix::symmetric(double tol) const {
  return (values - values.transpose()).cwiseAbs().maxCoeff() <= tol;
}

void sort_filtration(std::vector<Simplex> &simplices) {
  std::sort(simplices.begin(), simplices.end(),
            [](const Simplex &a, const Simplex &b) {
              if (a.value != b.value)
                return a.value < b.value;
              if (a.vertices.size() != b.vertices.size())
                return a.vertices.size() < b.vertices.size();
              return a.vertices < b.vertices;
            });
}

std::optional<std::string> audit_filtration(const Filtration &f) {
  std::unordered_map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < f.simplices.size(); ++i) {
    const Simplex &s = f.simplices[i];
    if (s.vertices.empty())
      return "empty simplex at position " + std::to_string(i);
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) !=
            s.vertices.end())
      return "vertices not strictly increasing at position " +
             std::to_string(i);
    if (s.vertices.back() >= kMaxVertices || s.vertices.front() < 0)
      return "vertex index out of range at position " + std::to_string(i);
    if (!(s.value >= 0) || std::isnan(s.value))
      return "negative or NaN value at position " + std::to_string(i);
    position[mask_of(s.vertices)] = i;
  }
  for (std::size_t i = 0; i < f.simplices.size(); ++i) {
    const Simplex &s = f.simplices[i];
    if (s.vertices.size() < 2)
      continue;
    const std::uint64_t mask = mask_of(s.vertices);
    for (int v : s.vertices) {
      const auto it = position.find(mask & ~(std::uint64_t{1} << v));
      if (it == position.end())
        return "missing face of simplex at position " + std::to_string(i);
      if (it->second > i || f.simplices[it->second].value > s.value)
        return "face after coface at position " + std::to_string(i);
    }
  }
  return std::nullopt;
}

DissimilarityMatrix pairwise(Measure m, const PointCloud &cloud, double factor) {
  const auto n = cloud.size();
  if (requires_simplex(m) && !cloud.on_simplex())
    throw DomainError(std::string(measure_name(m)) +
                      " needs points on the simplex");
  DissimilarityMatrix out;
  out.measure = m;
  out.factor = factor;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(n));
  parallel_for(n * n, [&](std::size_t k) {
    const std::size_t i = k / n;
    const std::size_t j = k % n;
    if (i != j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          factor * evaluate(m, cloud[i], cloud[j]);
  });
  return out;
}

double half_diameter(const DissimilarityMatrix &matrix,
                     std::span<const int> vertices) {
  const auto n = static_cast<int>(matrix.size());
  double best = 0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] < 0 || vertices[a] >= n)
      throw IndexOutOfRange("vertex " + std::to_string(vertices[a]));
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[b] < 0 || vertices[b] >= n)
        throw IndexOutOfRange("vertex " + std::to_string(vertices[b]));
      best = std::max(best, matrix.values(vertices[a], vertices[b]));
    }
  }
  return 0.5 * best;
}

Filtration rips_filtration(const DissimilarityMatrix &matrix, int max_dim) {
  if (max_dim < 0)
    throw DomainError("max_dim must be non-negative");
  if (!matrix.symmetric())
    throw NonSymmetric("Rips filtrations need a symmetric matrix");
  check_vertex_count(matrix.size());
  const int n = static_cast<int>(matrix.size());
  Filtration f;
  f.flavor = Flavor::Rips;
  f.max_dim = max_dim;
  f.vertex_count = matrix.size();
  for (auto &vertices : enumerate_simplices(n, max_dim)) {
    const double value = half_diameter(matrix, vertices);
    f.simplices.push_back({std::move(vertices), value});
  }
  sort_filtration(f.simplices);
  return f;
}

CechBall cech_ball(const PointCloud &cloud, Measure m,
                   std::span<const int> vertices, double factor) {
  check_fisher(cloud, m);
  if (vertices.empty())
    throw DomainError("radius of an empty set");
  for (int v : vertices)
    if (v < 0 || static_cast<std::size_t>(v) >= cloud.size())
      throw IndexOutOfRange("vertex " + std::to_string(v));

  const bool simplex = m == Measure::FisherSimplex;
  std::vector<Eigen::VectorXd> images;
  for (int v : vertices)
    images.push_back(antonelli_forward(cloud[v]).coords());

  Eigen::VectorXd image_center;
  if (images.size() == 2)
    image_center = 0.5 * (images[0] + images[1]);
  else
    image_center = minimal_enclosing_ball(images).center;
  if (simplex)
    image_center *= std::numbers::sqrt2 / image_center.norm();

  // The miniball center lies in the convex hull of positive points.
  image_center = image_center.cwiseMax(1e-150);
  PositivePoint center = antonelli_inverse(PositivePoint(image_center));
  if (simplex)
    center = SimplexPoint::normalize(center).point();

  double radius = 0;
  double diameter = 0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    radius = std::max(radius, evaluate(m, center, cloud[vertices[a]]));
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      diameter = std::max(diameter,
                          evaluate(m, cloud[vertices[a]], cloud[vertices[b]]));
  }
  // The radius is never below the half-diameter. When the ball is spanned by
  // the farthest pair the two agree up to rounding; snap so that the simplex
  // enters together with that edge.
  if (vertices.size() == 2 || radius <= 0.5 * diameter * (1 + 1e-12))
    radius = 0.5 * diameter;
  if (vertices.size() == 1)
    radius = 0;
  return CechBall{center, factor * radius,
                  center.coords().minCoeff() < kBoundaryFlag};
}

double cech_radius(const PointCloud &cloud, Measure m,
                   std::span<const int> vertices, double factor) {
  return cech_ball(cloud, m, vertices, factor).radius;
}

Filtration cech_filtration(const PointCloud &cloud, Measure m, int max_dim,
                           double factor) {
  if (max_dim < 0)
    throw DomainError("max_dim must be non-negative");
  check_fisher(cloud, m);
  check_vertex_count(cloud.size());
  const int n = static_cast<int>(cloud.size());
  std::vector<std::vector<int>> sets = enumerate_simplices(n, max_dim);
  std::vector<double> values(sets.size());
  parallel_for(sets.size(), [&](std::size_t i) {
    values[i] = cech_radius(cloud, m, sets[i], factor);
  });

  // enumerate_simplices lists all facets before their cofaces.
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < sets.size(); ++i)
    index[mask_of(sets[i])] = i;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() < 2)
      continue;
    const std::uint64_t mask = mask_of(sets[i]);
    for (int v : sets[i])
      values[i] = std::max(values[i],
                           values[index.at(mask & ~(std::uint64_t{1} << v))]);
  }

  Filtration f;
  f.flavor = Flavor::Cech;
  f.max_dim = max_dim;
  f.vertex_count = cloud.size();
  for (std::size_t i = 0; i < sets.size(); ++i)
    f.simplices.push_back({std::move(sets[i]), values[i]});
  sort_filtration(f.simplices);
  return f;
}

double hausdorff(Measure m, const PointCloud &a, const PointCloud &b) {
  if (!is_metric(m))
    throw DomainError("Hausdorff distance needs a metric");
  if (a.dimension() != b.dimension())
    throw DimensionMismatch("clouds of different dimension");
  auto directed = [m](const PointCloud &p, const PointCloud &q) {
    double worst = 0;
    for (const auto &x : p) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto &y : q)
        nearest = std::min(nearest, evaluate(m, x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

void write_lower_triangular(std::ostream &out, const DissimilarityMatrix &m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (j > 0)
        out << ',';
      out << format_double(m.values(i, j));
    }
    out << '\n';
  }
}

void write_full_matrix(std::ostream &out, const DissimilarityMatrix &m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j > 0)
        out << ',';
      out << format_double(m.values(i, j));
    }
    out << '\n';
  }
}

DissimilarityMatrix read_lower_triangular(std::istream &in) {
  std::vector<double> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    for (char &c : line)
      if (c == ',' || c == '\t' || c == '\r')
        c = ' ';
    const char *p = line.data();
    const char *end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ')
        ++p;
      if (p == end)
        break;
      double v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next < end && *next != ' '))
        throw ParseError("line " + std::to_string(line_number) +
                         ": not a number");
      if (!(v >= 0) || !std::isfinite(v))
        throw ParseError("line " + std::to_string(line_number) +
                         ": distances must be finite and non-negative");
      entries.push_back(v);
      p = next;
    }
  }
  // n (n - 1) / 2 entries
  const auto count = entries.size();
  const auto n = static_cast<std::size_t>(
      std::llround((1.0 + std::sqrt(1.0 + 8.0 * double(count))) / 2.0));
  if (n * (n - 1) / 2 != count)
    throw ParseError("entry count " + std::to_string(count) +
                     " is not triangular");
  DissimilarityMatrix m;
  m.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n));
  std::size_t k = 0;
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(n); ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      m.values(i, j) = entries[k];
      m.values(j, i) = entries[k];
      ++k;
    }
  return m;
}

} // namespace infotopo
