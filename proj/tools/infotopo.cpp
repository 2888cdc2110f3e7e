// infotopo: distance matrices, persistence diagrams, diagram comparisons and
// the verification suite from the command line.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "infotopo/filtration.hpp"
#include "infotopo/io.hpp"
#include "infotopo/persistence.hpp"
#include "infotopo/verify.hpp"

using namespace infotopo;

namespace {

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string real(double v) {
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

struct DataOptions {
  std::string input = "-";
  std::string format;
  std::string measure = "js-metric";
  double factor = 1.0;
  IngestOptions ingest;
  std::string output = "-";
  std::uint64_t seed = 20240607;
};

void add_data_options(CLI::App &cmd, DataOptions &o) {
  cmd.add_option("input", o.input, "CSV, JSON or lower-distance file ('-' for stdin)");
  cmd.add_option("--format", o.format, "csv | json | lower (default: from extension)");
  cmd.add_option("--measure", o.measure, "measure name");
  cmd.add_option("--factor", o.factor, "constant multiplier applied to the measure")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--normalize", o.ingest.normalize, "divide each row by its sum");
  cmd.add_option("--smoothing", o.ingest.smoothing,
                 "added to every entry when some entry is zero (0 disables)");
  cmd.add_flag("--drop-zero-columns", o.ingest.drop_zero_columns,
               "remove columns holding zeros instead of smoothing");
  cmd.add_option("-o,--output", o.output, "output file ('-' for stdout)");
  cmd.add_option("--seed", o.seed, "master seed");
}

Measure measure_or_throw(const std::string &name) {
  if (auto m = parse_measure(name))
    return *m;
  std::string known;
  for (Measure m : kAllMeasures)
    known += (known.empty() ? "" : ", ") + std::string(measure_name(m));
  throw UsageError("unknown measure '" + name + "'; expected one of " + known);
}

Flavor flavor_or_throw(const std::string &name) {
  if (name == "rips")
    return Flavor::Rips;
  if (name == "cech")
    return Flavor::Cech;
  throw UsageError("unknown flavor '" + name + "'; expected rips or cech");
}

Scale scale_or_throw(const std::string &name) {
  if (name == "linear")
    return Scale::Linear;
  if (name == "log")
    return Scale::Log;
  throw UsageError("unknown scale '" + name + "'; expected linear or log");
}

// Raw rows are kept so the cloud can be rebuilt with another smoothing.
struct Loaded {
  std::optional<Rows> rows;
  std::optional<DissimilarityMatrix> matrix;
};

Loaded load(const DataOptions &o) {
  InputFormat format = guess_input_format(o.input);
  if (!o.format.empty()) {
    auto f = parse_input_format(o.format);
    if (!f)
      throw UsageError("unknown format '" + o.format + "'; expected csv, json or lower");
    format = *f;
  }
  std::ifstream file;
  std::istream *in = &std::cin;
  if (o.input != "-") {
    file.open(o.input);
    if (!file)
      throw ParseError("cannot open '" + o.input + "'");
    in = &file;
  }
  Loaded loaded;
  switch (format) {
  case InputFormat::LowerDistance:
    loaded.matrix = read_lower_triangular(*in);
    break;
  case InputFormat::Json:
    loaded.rows = read_json_rows(*in);
    break;
  case InputFormat::Csv:
    loaded.rows = read_csv_rows(*in);
    break;
  }
  return loaded;
}

template <typename Fn> void write_to(const std::string &path, Fn &&fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write '" + path + "'");
  fn(out);
}

PersistenceDiagram diagram_of(const Loaded &data, const PointCloud *cloud, Measure m,
                              double factor, Flavor flavor, int max_dim, int homology_dim) {
  if (data.matrix) {
    if (flavor == Flavor::Cech)
      throw UsageError("cech filtrations need point data, not a distance matrix");
    return compute_diagram(rips_filtration(*data.matrix, max_dim), homology_dim);
  }
  const Filtration f = flavor == Flavor::Rips
                           ? rips_filtration(pairwise(m, *cloud, factor), max_dim)
                           : cech_filtration(*cloud, m, max_dim, factor);
  PersistenceDiagram d = compute_diagram(f, homology_dim);
  d.measure = m;
  return d;
}

void write_plot_data(std::ostream &out, const PersistenceDiagram &d) {
  out << "# scatter: dim birth death\n";
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int dim = 0; dim <= d.max_dim(); ++dim)
    for (const auto &p : d.points(dim)) {
      out << dim << ' ' << real(p.birth) << ' ' << real(p.death) << '\n';
      for (double v : {p.birth, p.death})
        if (std::isfinite(v)) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
    }
  out << "# betti: r";
  for (int dim = 0; dim <= d.max_dim(); ++dim)
    out << " beta_" << dim;
  out << '\n';
  if (!std::isfinite(lo))
    lo = hi = 0;
  constexpr int kSamples = 64;
  for (int i = 0; i < kSamples; ++i) {
    const double r = hi == lo ? lo : lo + (hi - lo) * i / (kSamples - 1);
    out << real(r);
    for (int dim = 0; dim <= d.max_dim(); ++dim)
      out << ' ' << d.betti(dim, r);
    out << '\n';
  }
}

int cmd_dist(const DataOptions &o, bool full) {
  const Loaded data = load(o);
  DissimilarityMatrix matrix;
  if (data.matrix) {
    matrix = *data.matrix;
  } else {
    const PointCloud cloud = make_cloud(*data.rows, o.ingest);
    matrix = pairwise(measure_or_throw(o.measure), cloud, o.factor);
  }
  if (!full && !matrix.symmetric())
    std::cerr << "warning: " << (matrix.measure ? measure_name(*matrix.measure) : "input")
              << " is asymmetric; only d(i, j) for j < i is written, use --full\n";
  write_to(o.output, [&](std::ostream &out) {
    full ? write_full_matrix(out, matrix) : write_lower_triangular(out, matrix);
  });
  return 0;
}

struct DiagramOptions {
  std::string flavor = "rips";
  std::string scale = "linear";
  int max_dim = 2;
  int homology_dim = -1;
  std::string plot_data;
};

int cmd_diagram(const DataOptions &o, const DiagramOptions &d) {
  if (d.max_dim < 0)
    throw UsageError("--max-dim must be non-negative");
  const int hdim = d.homology_dim < 0 ? std::max(0, d.max_dim - 1) : d.homology_dim;
  if (hdim > d.max_dim - 1)
    std::cerr << "warning: deaths of " << hdim << "-dimensional classes need --max-dim "
              << hdim + 1 << "; some bars may be reported as infinite\n";
  const Flavor flavor = flavor_or_throw(d.flavor);
  const Scale scale = scale_or_throw(d.scale);
  const Measure m = measure_or_throw(o.measure);

  const Loaded data = load(o);
  IngestSummary summary;
  std::optional<PointCloud> cloud;
  if (data.rows)
    cloud = make_cloud(*data.rows, o.ingest, &summary);
  PersistenceDiagram diagram =
      diagram_of(data, cloud ? &*cloud : nullptr, m, o.factor, flavor, d.max_dim, hdim);

  if (summary.smoothed) {
    IngestOptions finer = o.ingest;
    finer.smoothing /= 10;
    const PointCloud other = make_cloud(*data.rows, finer);
    const PersistenceDiagram alt =
        diagram_of(data, &other, m, o.factor, flavor, d.max_dim, hdim);
    std::cerr << "smoothing sensitivity (bottleneck, eps vs eps/10; " << summary.zero_entries
              << " zero entries):";
    for (int dim = 0; dim <= hdim; ++dim)
      std::cerr << " H" << dim << '=' << real(bottleneck(diagram, alt, dim));
    std::cerr << '\n';
  }

  if (scale == Scale::Log)
    diagram = log_reindex(diagram);
  write_to(o.output, [&](std::ostream &out) { write_diagram(out, diagram); });
  if (!d.plot_data.empty())
    write_to(d.plot_data, [&](std::ostream &out) { write_plot_data(out, diagram); });
  return 0;
}

struct CompareOptions {
  std::string measure_b;
  double factor_b = 1.0;
  std::string flavor_b = "rips";
  std::string scale = "log";
  int max_dim = 2;
  std::string against;
};

// Known bound on the log-scale bottleneck distance for a pair of settings.
std::optional<double> known_bound(Measure a, double fa, Measure b, double fb, bool cech) {
  if (cech) {
    if (a == Measure::FisherOrthant)
      return std::log(std::numbers::sqrt2);
    if (a == Measure::FisherSimplex)
      return std::numbers::ln2;
    return std::nullopt;
  }
  if (a == b && fa == fb)
    return 0.0;
  if (b == Measure::JSMetric) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  if (a != Measure::JSMetric || fb != 0.5 * fa)
    return std::nullopt;
  if (b == Measure::FisherOrthant)
    return 0.5 * std::log(1 / std::numbers::ln2);
  if (b == Measure::FisherSimplex)
    return 0.5 * std::log(std::numbers::sqrt2 * std::numbers::pi / (4 * std::numbers::ln2));
  return std::nullopt;
}

int cmd_compare(const DataOptions &o, const CompareOptions &c) {
  const Scale scale = scale_or_throw(c.scale);
  if (!c.against.empty()) {
    auto read = [&](const std::string &path) {
      std::ifstream in(path);
      if (!in)
        throw ParseError("cannot open '" + path + "'");
      return read_diagram(in, scale);
    };
    const PersistenceDiagram a = read(o.input);
    const PersistenceDiagram b = read(c.against);
    write_to(o.output, [&](std::ostream &out) {
      for (int dim = 0; dim <= std::max(a.max_dim(), b.max_dim()); ++dim)
        out << 'H' << dim << ' ' << real(bottleneck(a, b, dim)) << '\n';
    });
    return 0;
  }

  const Measure ma = measure_or_throw(o.measure);
  const Measure mb = c.measure_b.empty() ? ma : measure_or_throw(c.measure_b);
  const bool cech = flavor_or_throw(c.flavor_b) == Flavor::Cech;
  if (cech && mb != ma)
    throw UsageError("rips vs cech compares one measure; drop --measure-b");
  const Loaded data = load(o);
  if (!data.rows)
    throw UsageError("compare needs point data");
  const PointCloud cloud = make_cloud(*data.rows, o.ingest);
  const std::vector<double> distances =
      cech ? compare_constructions(cloud, ma, c.max_dim, o.factor)
           : compare_measures(cloud, {ma, o.factor}, {mb, c.factor_b}, c.max_dim);
  const auto bound = known_bound(ma, o.factor, mb, c.factor_b, cech);

  write_to(o.output, [&](std::ostream &out) {
    out << "# " << measure_name(ma) << " x" << real(o.factor) << " rips vs "
        << measure_name(mb) << " x" << real(cech ? o.factor : c.factor_b) << ' '
        << (cech ? "cech" : "rips") << ", log scale\n";
    bool within = true;
    for (std::size_t dim = 0; dim < distances.size(); ++dim) {
      out << 'H' << dim << ' ' << real(distances[dim]) << '\n';
      if (bound)
        within = within && distances[dim] <= *bound + 1e-9;
    }
    if (bound)
      out << "bound " << real(*bound) << "\nwithin_bound " << (within ? "true" : "false")
          << '\n';
    else
      out << "bound none\n";
  });
  return 0;
}

int cmd_verify(const std::string &check, const DataOptions &o, std::size_t samples) {
  VerifyConfig config;
  config.seed = o.seed;
  config.samples = samples;
  std::vector<BoundReport> reports;
  if (check == "all") {
    reports = run_all(config);
  } else {
    const auto names = check_names();
    if (std::find(names.begin(), names.end(), check) == names.end()) {
      std::string known = "all";
      for (auto n : names)
        known += ", " + std::string(n);
      throw UsageError("unknown check '" + check + "'; expected one of " + known);
    }
    reports = run_check(check, config);
  }
  bool pass = true;
  for (const auto &r : reports) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << '\n';
    pass = pass && r.pass;
  }
  write_to(o.output, [&](std::ostream &out) { out << to_json(reports); });
  return pass ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Topology of point clouds under information-theoretic measures"};
  app.require_subcommand(1);

  DataOptions data;
  bool full = false;
  auto *dist = app.add_subcommand("dist", "pairwise measure matrix");
  add_data_options(*dist, data);
  dist->add_flag("--full", full, "write the full matrix instead of the lower triangle");

  DiagramOptions diag;
  auto *diagram = app.add_subcommand("diagram", "persistence diagram of a filtration");
  add_data_options(*diagram, data);
  diagram->add_option("--flavor", diag.flavor, "rips | cech");
  diagram->add_option("--scale", diag.scale, "linear | log");
  diagram->add_option("--max-dim", diag.max_dim, "largest simplex dimension");
  diagram->add_option("--homology-dim", diag.homology_dim,
                      "largest homology dimension (default max-dim - 1)");
  diagram->add_option("--plot-data", diag.plot_data, "file for scatter and Betti-curve samples");

  CompareOptions cmp;
  auto *compare = app.add_subcommand("compare", "log-scale bottleneck between two settings");
  add_data_options(*compare, data);
  compare->add_option("--measure-b", cmp.measure_b, "second measure (default: --measure)");
  compare->add_option("--factor-a", data.factor, "alias of --factor")->check(CLI::PositiveNumber);
  compare->add_option("--factor-b", cmp.factor_b, "multiplier of the second measure")
      ->check(CLI::PositiveNumber);
  compare->add_option("--flavor-b", cmp.flavor_b, "rips | cech for the second diagram");
  compare->add_option("--max-dim", cmp.max_dim, "largest simplex dimension");
  compare->add_option("--scale", cmp.scale, "scale of diagram files given with --against");
  compare->add_option("--against", cmp.against,
                      "compare the diagram file `input` with this diagram file");

  std::string check = "all";
  std::size_t samples = VerifyConfig{}.samples;
  auto *verify = app.add_subcommand("verify", "run numerical checks, JSON report");
  verify->add_option("check", check, "all or a check name");
  verify->add_option("--seed", data.seed, "master seed");
  verify->add_option("--samples", samples, "random samples per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("-o,--output", data.output, "report file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*dist)
      return cmd_dist(data, full);
    if (*diagram)
      return cmd_diagram(data, diag);
    if (*compare)
      return cmd_compare(data, cmp);
    return cmd_verify(check, data, samples);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
