#include "infotopo/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace infotopo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Column = std::vector<std::size_t>;

// Symmetric difference of two sorted columns: addition over Z/2.
void add_column(Column &target, const Column &source) {
  Column out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(),
                                source.end(), std::back_inserter(out));
  target.swap(out);
}

std::uint64_t mask_of(const std::vector<int> &vertices) {
  std::uint64_t m = 0;
  for (int v : vertices)
    m |= std::uint64_t{1} << v;
  return m;
}

// Feasibility of a perfect matching at threshold delta between
// left = A + diag(B) and right = B + diag(A), via augmenting paths.
class ThresholdMatcher {
public:
  ThresholdMatcher(std::span<const PersistencePair> a,
                   std::span<const PersistencePair> b)
      : a_(a), b_(b) {}

  bool feasible(double delta) {
    delta_ = delta;
    const std::size_t n = a_.size() + b_.size();
    match_right_.assign(n, npos);
    for (std::size_t left = 0; left < n; ++left) {
      visited_.assign(n, false);
      if (!augment(left))
        return false;
    }
    return true;
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool edge(std::size_t left, std::size_t right) const {
    const std::size_t na = a_.size();
    const std::size_t nb = b_.size();
    if (left < na && right < nb)
      return linf(a_[left], b_[right]) <= delta_;
    if (left < na)
      return right - nb == left && half_persistence(a_[left]) <= delta_;
    if (right < nb)
      return left - na == right && half_persistence(b_[right]) <= delta_;
    return true; // diagonal to diagonal
  }

  bool augment(std::size_t left) {
    const std::size_t n = a_.size() + b_.size();
    for (std::size_t right = 0; right < n; ++right) {
      if (visited_[right] || !edge(left, right))
        continue;
      visited_[right] = true;
      if (match_right_[right] == npos || augment(match_right_[right])) {
        match_right_[right] = left;
        return true;
      }
    }
    return false;
  }

  static double linf(const PersistencePair &p, const PersistencePair &q) {
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
  }
  static double half_persistence(const PersistencePair &p) {
    return 0.5 * (p.death - p.birth);
  }

  std::span<const PersistencePair> a_;
  std::span<const PersistencePair> b_;
  double delta_ = 0;
  std::vector<std::size_t> match_right_;
  std::vector<bool> visited_;
};

double finite_bottleneck(std::span<const PersistencePair> a,
                         std::span<const PersistencePair> b) {
  if (a.empty() && b.empty())
    return 0.0;
  std::vector<double> candidates{0.0};
  for (const auto &p : a)
    candidates.push_back(0.5 * (p.death - p.birth));
  for (const auto &q : b)
    candidates.push_back(0.5 * (q.death - q.birth));
  for (const auto &p : a)
    for (const auto &q : b)
      candidates.push_back(
          std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death)));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  ThresholdMatcher matcher(a, b);
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1; // matching everything to the diagonal
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (matcher.feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

// Sorted one-dimensional matching; optimal for the bottleneck cost.
double sorted_matching(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size())
    return kInf;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

struct Split {
  std::vector<PersistencePair> finite;
  std::vector<double> essential_births;
  std::vector<double> open_deaths;
  std::size_t unbounded = 0;
};

Split split(std::span<const PersistencePair> pairs) {
  Split s;
  for (const auto &p : pairs) {
    const bool left = std::isinf(p.birth);
    const bool right = std::isinf(p.death);
    if (left && right)
      ++s.unbounded;
    else if (left)
      s.open_deaths.push_back(p.death);
    else if (right)
      s.essential_births.push_back(p.birth);
    else
      s.finite.push_back(p);
  }
  return s;
}

std::string format_double(double v) {
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  return std::string(buf, end);
}

PersistenceDiagram rips_diagram(const PointCloud &cloud, ScaledMeasure m,
                                int max_dim) {
  if (!is_metric(m.measure))
    throw DomainError(std::string(measure_name(m.measure)) +
                      " is not a metric");
  const Filtration f =
      rips_filtration(pairwise(m.measure, cloud, m.factor), max_dim);
  PersistenceDiagram d = compute_diagram(f, std::max(0, max_dim - 1));
  d.measure = m.measure;
  return d;
}

std::vector<double> log_bottlenecks(const PersistenceDiagram &a,
                                    const PersistenceDiagram &b, int max_dim) {
  const PersistenceDiagram la = log_reindex(a);
  const PersistenceDiagram lb = log_reindex(b);
  std::vector<double> out;
  for (int dim = 0; dim <= std::max(0, max_dim - 1); ++dim)
    out.push_back(bottleneck(la, lb, dim));
  return out;
}

} // namespace

PersistenceDiagram::PersistenceDiagram(
    std::vector<std::vector<PersistencePair>> pairs, Scale s)
    : scale(s), pairs_(std::move(pairs)) {
  for (const auto &dim : pairs_)
    for (const auto &p : dim)
      if (std::isnan(p.birth) || std::isnan(p.death) || p.birth > p.death)
        throw DomainError("diagram pair with birth after death");
}

std::vector<PersistencePair>
PersistenceDiagram::points(int dim, bool include_zero_persistence) const {
  std::vector<PersistencePair> out;
  if (dim < 0 || dim > max_dim())
    return out;
  for (const auto &p : pairs_[dim])
    if (include_zero_persistence || p.birth != p.death)
      out.push_back(p);
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) {
    return x.birth != y.birth ? x.birth < y.birth : x.death < y.death;
  });
  return out;
}

int PersistenceDiagram::betti(int dim, double r) const {
  int count = 0;
  for (const auto &p : points(dim))
    if (p.birth <= r && r < p.death)
      ++count;
  return count;
}

PersistenceDiagram compute_diagram(const Filtration &filtration,
                                   int max_homology_dim) {
  if (max_homology_dim < 0)
    throw DomainError("max_homology_dim must be non-negative");
  if (auto problem = audit_filtration(filtration))
    throw InvalidFiltration(*problem);

  const auto &simplices = filtration.simplices;
  const std::size_t n = simplices.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  int top_dim = 0;
  for (std::size_t i = 0; i < n; ++i) {
    index[mask_of(simplices[i].vertices)] = i;
    top_dim = std::max(top_dim, simplices[i].dim());
  }

  std::vector<Column> columns(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto &s = simplices[j];
    if (s.dim() < 1 || s.dim() > max_homology_dim + 1)
      continue;
    const std::uint64_t mask = mask_of(s.vertices);
    for (int v : s.vertices)
      columns[j].push_back(index.at(mask & ~(std::uint64_t{1} << v)));
    std::sort(columns[j].begin(), columns[j].end());
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_owner(n, none); // row -> reducing column
  std::vector<bool> negative(n, false);
  std::vector<bool> cleared(n, false);
  std::vector<std::vector<PersistencePair>> pairs(max_homology_dim + 1);

  // Highest dimension first so that pivots clear the columns of their rows.
  for (int dim = std::min(top_dim, max_homology_dim + 1); dim >= 1; --dim) {
    for (std::size_t j = 0; j < n; ++j) {
      if (simplices[j].dim() != dim || cleared[j])
        continue;
      Column &col = columns[j];
      while (!col.empty() && pivot_owner[col.back()] != none)
        add_column(col, columns[pivot_owner[col.back()]]);
      if (col.empty())
        continue;
      const std::size_t low = col.back();
      pivot_owner[low] = j;
      negative[j] = true;
      cleared[low] = true;
      columns[low].clear();
      if (dim - 1 <= max_homology_dim)
        pairs[dim - 1].push_back({simplices[low].value, simplices[j].value});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const int dim = simplices[i].dim();
    if (dim > max_homology_dim || negative[i] || pivot_owner[i] != none)
      continue;
    pairs[dim].push_back({simplices[i].value, kInf});
  }

  PersistenceDiagram diagram(std::move(pairs), Scale::Linear);
  diagram.flavor = filtration.flavor;
  return diagram;
}

double bottleneck(std::span<const PersistencePair> a,
                  std::span<const PersistencePair> b) {
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.unbounded != sb.unbounded)
    return kInf;
  double result = sorted_matching(sa.essential_births, sb.essential_births);
  result = std::max(result, sorted_matching(sa.open_deaths, sb.open_deaths));
  if (std::isinf(result))
    return result;
  return std::max(result, finite_bottleneck(sa.finite, sb.finite));
}

double bottleneck(const PersistenceDiagram &a, const PersistenceDiagram &b,
                  int dim) {
  if (a.scale != b.scale)
    throw ScaleMismatch("cannot compare linear and log diagrams");
  const auto pa = a.points(dim);
  const auto pb = b.points(dim);
  return bottleneck(pa, pb);
}

PersistenceDiagram log_reindex(const PersistenceDiagram &diagram) {
  if (diagram.scale == Scale::Log)
    throw ScaleMismatch("diagram is already on the log scale");
  auto ln = [](double v) { return std::isinf(v) ? v : std::log(v); };
  std::vector<std::vector<PersistencePair>> pairs;
  for (int dim = 0; dim <= diagram.max_dim(); ++dim) {
    pairs.emplace_back();
    for (const auto &p : diagram.points(dim, true))
      pairs.back().push_back({ln(p.birth), ln(p.death)});
  }
  PersistenceDiagram out(std::move(pairs), Scale::Log);
  out.measure = diagram.measure;
  out.flavor = diagram.flavor;
  return out;
}

std::vector<double> compare_measures(const PointCloud &cloud, ScaledMeasure a,
                                     ScaledMeasure b, int max_dim) {
  return log_bottlenecks(rips_diagram(cloud, a, max_dim),
                         rips_diagram(cloud, b, max_dim), max_dim);
}

std::vector<double> compare_constructions(const PointCloud &cloud,
                                          Measure fisher, int max_dim,
                                          double factor) {
  const PersistenceDiagram rips =
      rips_diagram(cloud, {fisher, factor}, max_dim);
  PersistenceDiagram cech = compute_diagram(
      cech_filtration(cloud, fisher, max_dim, factor), std::max(0, max_dim - 1));
  cech.measure = fisher;
  return log_bottlenecks(rips, cech, max_dim);
}

void write_diagram(std::ostream &out, const PersistenceDiagram &diagram) {
  for (int dim = 0; dim <= diagram.max_dim(); ++dim)
    for (const auto &p : diagram.points(dim))
      out << dim << ' ' << format_double(p.birth) << ' '
          << format_double(p.death) << '\n';
}

PersistenceDiagram read_diagram(std::istream &in, Scale scale) {
  std::vector<std::vector<PersistencePair>> pairs;
  std::string line;
  int line_number = 0;
  auto parse = [&](const std::string &token) {
    if (token == "inf" || token == "+inf")
      return kInf;
    if (token == "-inf")
      return -kInf;
    double v = 0;
    auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || end != token.data() + token.size())
      throw ParseError("line " + std::to_string(line_number) + ": bad number '" +
                       token + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string d, b, e, extra;
    if (!(fields >> d))
      continue;
    if (!(fields >> b >> e) || (fields >> extra))
      throw ParseError("line " + std::to_string(line_number) +
                       ": expected `dim birth death`");
    int dim = 0;
    auto [end, ec] = std::from_chars(d.data(), d.data() + d.size(), dim);
    if (ec != std::errc() || end != d.data() + d.size() || dim < 0)
      throw ParseError("line " + std::to_string(line_number) + ": bad dimension");
    const PersistencePair p{parse(b), parse(e)};
    if (p.birth > p.death)
      throw ParseError("line " + std::to_string(line_number) +
                       ": birth after death");
    if (static_cast<int>(pairs.size()) <= dim)
      pairs.resize(dim + 1);
    pairs[dim].push_back(p);
  }
  return PersistenceDiagram(std::move(pairs), scale);
}

} // namespace infotopo
