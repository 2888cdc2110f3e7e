#include "infotopo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace infotopo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

} // namespace

std::optional<InputFormat> parse_input_format(std::string_view name) {
  if (name == "csv")
    return InputFormat::Csv;
  if (name == "json")
    return InputFormat::Json;
  if (name == "lower" || name == "lower-distance" || name == "lower-distance-matrix")
    return InputFormat::LowerDistance;
  return std::nullopt;
}

InputFormat guess_input_format(std::string_view path) {
  if (ends_with(path, ".json"))
    return InputFormat::Json;
  if (ends_with(path, ".ldm") || ends_with(path, ".dist") || ends_with(path, ".lower"))
    return InputFormat::LowerDistance;
  return InputFormat::Csv;
}

Rows read_csv_rows(std::istream &in) {
  Rows rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#')
      continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = content.find(',', start);
      const std::string_view field = trim(content.substr(
          start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      double v = 0;
      const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || end != field.data() + field.size())
        throw ParseError(at_line(line_number) + "bad number '" + std::string(field) + "'");
      row.push_back(v);
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(at_line(line_number) + "expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw ParseError("no data rows");
  return rows;
}

Rows read_json_rows(std::istream &in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto line_of = [&](std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
  };
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(at_line(line_of(e.byte == 0 ? 0 : e.byte - 1)) + e.what());
  }
  if (!doc.is_array() || doc.empty())
    throw ParseError(at_line(1) + "expected a non-empty array of arrays");
  Rows rows;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto &row = doc[i];
    if (!row.is_array() || row.empty())
      throw ParseError(at_line(1) + "row " + std::to_string(i) + " is not a non-empty array");
    std::vector<double> values;
    for (const auto &v : row) {
      if (!v.is_number())
        throw ParseError(at_line(1) + "row " + std::to_string(i) + " holds a non-number");
      values.push_back(v.get<double>());
    }
    if (!rows.empty() && values.size() != rows.front().size())
      throw ParseError(at_line(1) + "row " + std::to_string(i) + " has " +
                       std::to_string(values.size()) + " entries, expected " +
                       std::to_string(rows.front().size()));
    rows.push_back(std::move(values));
  }
  return rows;
}

PointCloud make_cloud(const Rows &input, const IngestOptions &options,
                      IngestSummary *summary) {
  if (input.empty())
    throw ParseError("no data rows");
  if (!(options.smoothing >= 0) || !std::isfinite(options.smoothing))
    throw DomainError("smoothing must be finite and non-negative");
  IngestSummary info;
  Rows rows = input;
  const std::size_t width = rows.front().size();
  std::vector<bool> zero_column(width, false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width)
      throw ParseError("row " + std::to_string(i) + " has the wrong length");
    double mass = 0;
    for (std::size_t j = 0; j < width; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0)
        throw ParseError("row " + std::to_string(i) + ": entries must be finite and non-negative");
      if (v == 0) {
        ++info.zero_entries;
        zero_column[j] = true;
      }
      mass += v;
    }
    if (mass == 0)
      throw ZeroMassRow("row " + std::to_string(i) + " sums to 0");
  }

  if (info.zero_entries > 0 && options.drop_zero_columns) {
    for (std::size_t j = 0; j < width; ++j)
      if (zero_column[j])
        info.dropped_columns.push_back(j);
    if (info.dropped_columns.size() == width)
      throw DomainError("every column holds a zero");
    for (auto &row : rows) {
      std::vector<double> kept;
      for (std::size_t j = 0; j < width; ++j)
        if (!zero_column[j])
          kept.push_back(row[j]);
      row = std::move(kept);
    }
  } else if (info.zero_entries > 0) {
    if (options.smoothing == 0)
      throw DomainError("input holds zero entries; enable smoothing or drop zero columns");
    for (auto &row : rows)
      for (double &v : row)
        v += options.smoothing;
    info.smoothed = true;
  }

  std::vector<PositivePoint> points;
  points.reserve(rows.size());
  for (const auto &row : rows) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size()));
    if (options.normalize)
      v /= v.sum();
    points.emplace_back(v);
  }
  if (summary)
    *summary = info;
  return PointCloud(std::move(points));
}

Ingested ingest(const std::string &path, InputFormat format,
                const IngestOptions &options, IngestSummary *summary) {
  std::ifstream file;
  std::istream *in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file)
      throw ParseError("cannot open '" + path + "'");
    in = &file;
  }
  switch (format) {
  case InputFormat::LowerDistance:
    return read_lower_triangular(*in);
  case InputFormat::Json:
    return make_cloud(read_json_rows(*in), options, summary);
  case InputFormat::Csv:
  default:
    return make_cloud(read_csv_rows(*in), options, summary);
  }
}

} // namespace infotopo
