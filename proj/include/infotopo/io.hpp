#pragma once

// Reading histogram data: CSV and JSON rows become points of the open
// orthant (or simplex), with explicit handling of zero bins.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "infotopo/filtration.hpp"

namespace infotopo {

enum class InputFormat { Csv, Json, LowerDistance };

std::optional<InputFormat> parse_input_format(std::string_view name);
/// From the file extension: .json, .ldm/.dist/.lower, anything else CSV.
InputFormat guess_input_format(std::string_view path);

using Rows = std::vector<std::vector<double>>;

/// Comma separated reals, one row per line; blank lines and lines starting
/// with '#' are skipped. Throws ParseError naming the line.
Rows read_csv_rows(std::istream &in);
/// A JSON array of arrays of numbers. Throws ParseError naming the line.
Rows read_json_rows(std::istream &in);

struct IngestOptions {
  bool normalize = false;
  /// Added to every entry when some entry is zero; 0 disables smoothing.
  double smoothing = 1e-9;
  /// Remove every column holding a zero instead of smoothing.
  bool drop_zero_columns = false;
};

struct IngestSummary {
  std::size_t zero_entries = 0;
  bool smoothed = false;
  std::vector<std::size_t> dropped_columns;
};

/// Validates rows (equal length, finite, non-negative, positive mass),
/// handles zeros per `options`, and optionally divides each row by its sum.
/// Throws ZeroMassRow, ParseError, or DomainError for zeros left unhandled.
PointCloud make_cloud(const Rows &rows, const IngestOptions &options,
                      IngestSummary *summary = nullptr);

using Ingested = std::variant<PointCloud, DissimilarityMatrix>;

/// Reads `path` ("-" for stdin). Lower-distance input is returned as is.
Ingested ingest(const std::string &path, InputFormat format,
                const IngestOptions &options, IngestSummary *summary = nullptr);

} // namespace infotopo
