#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lochaus/dimension.hpp"
#include "lochaus/metric_space.hpp"
#include "lochaus/sampled_measure.hpp"

// File formats.
//   points CSV   id,x1,...,xk
//   matrix CSV   square matrix; optionally a header `id,<ids>` and an id column
//   weights CSV  id,weight
//   profile CSV  s,delta,cost
// JSON equivalents:
//   {"points": [{"id": "a", "x": [0, 1]}, ...]}
//   {"ids": [...], "distances": [[...], ...]}
//   {"weights": [{"id": "a", "weight": 0.5}, ...]}

namespace lochaus::io {

using Json = nlohmann::ordered_json;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180: quoted fields, doubled quotes, CRLF or LF line ends.
CsvTable parse_csv(std::istream& in, bool has_header = true);
CsvTable parse_csv_text(const std::string& text, bool has_header = true);
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& cells);

/// %.12g; non-finite values as inf, -inf, nan.
std::string format_number(double v);
double parse_number(const std::string& s, const std::string& what);

/// Deterministic JSON: insertion order, two-space indent, floats as %.12g,
/// non-finite floats as strings.
std::string dump(const Json& j);

std::string read_file(const std::string& path);
/// Creates missing parent directories.
void write_file(const std::string& path, const std::string& content);

bool is_json_path(const std::string& path);

std::vector<PointRecord> points_from_csv(const std::string& text);
std::vector<PointRecord> points_from_json(const Json& j);

struct MatrixInput {
  std::vector<std::string> ids;
  std::vector<double> dist;
};
MatrixInput matrix_from_csv(const std::string& text);
MatrixInput matrix_from_json(const Json& j);

/// Space from a points or matrix file; `precomputed` selects the matrix readers.
/// A JSON file holding "distances" is always read as a matrix.
FiniteMetricSpace load_space(const std::string& path, Metric metric);

/// One weight per input id. Ids merged as duplicates add their weights;
/// every point must receive a weight.
SampledMeasure weights_from_csv(const std::string& text, const FiniteMetricSpace& space);
SampledMeasure weights_from_json(const Json& j, const FiniteMetricSpace& space);
SampledMeasure load_weights(const std::string& path, const FiniteMetricSpace& space);

std::string points_csv(const FiniteMetricSpace& space);
std::string matrix_csv(const FiniteMetricSpace& space);
std::string weights_csv(const FiniteMetricSpace& space, const SampledMeasure& nu);
std::string profile_csv(const ScalingProfile& profile);

/// Comma-separated ids, or "all". Unknown ids are a validation error.
Mask parse_id_set(const std::string& text, const FiniteMetricSpace& space);

}  // namespace lochaus::io
