#include "lochaus/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "lochaus/error.hpp"

namespace lochaus::io {

CsvTable parse_csv(std::istream& in, bool has_header) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_csv_text(text, has_header);
}

CsvTable parse_csv_text(const std::string& text, bool has_header) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A blank line is not a record.
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) throw ValidationError("CSV line " + std::to_string(line) + ": stray quote inside a field");
        quoted = true;
        field_started = true;
        break;
      case ',': end_field(); break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw ValidationError("CSV: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();

  CsvTable t;
  std::size_t first = 0;
  if (has_header && !records.empty()) {
    t.header = records.front();
    first = 1;
  }
  for (std::size_t r = first; r < records.size(); ++r) t.rows.push_back(std::move(records[r]));
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_field(cells[i]);
  }
  out.push_back('\n');
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t start = s.find_first_not_of(" \t");
  std::size_t stop = s.find_last_not_of(" \t");
  if (start == std::string::npos) throw ValidationError(what + ": empty numeric field");
  const std::string body = s.substr(start, stop - start + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    throw ValidationError(what + ": '" + s + "' is not a number");
  }
  if (used != body.size()) throw ValidationError(what + ": '" + s + "' is not a number");
  if (!std::isfinite(v)) throw ValidationError(what + ": value must be finite");
  return v;
}

namespace {

void dump_value(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        dump_value(v, out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(j[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_value(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "\"" + format_number(v) + "\"";
      return;
    }
    default: out += j.dump();
  }
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(what + ": malformed JSON (" + e.what() + ")");
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out.push_back('\n');
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

bool is_json_path(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".json" || ext == ".JSON";
}

std::vector<PointRecord> points_from_csv(const std::string& text) {
  const auto t = parse_csv_text(text);
  if (t.header.size() < 2 || t.header[0] != "id")
    throw ValidationError("point CSV header must be id,x1,...,xk");
  std::vector<PointRecord> pts;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string where = "point CSV row " + std::to_string(r + 2);
    if (row.size() != t.header.size())
      throw ValidationError(where + ": expected " + std::to_string(t.header.size()) + " fields");
    PointRecord p;
    p.id = row[0];
    for (std::size_t c = 1; c < row.size(); ++c) p.coords.push_back(parse_number(row[c], where));
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<PointRecord> points_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw ValidationError("point JSON needs a \"points\" array");
  std::vector<PointRecord> pts;
  std::size_t k = 0;
  for (const auto& e : j["points"]) {
    const std::string where = "point JSON entry " + std::to_string(k++);
    if (!e.is_object() || !e.contains("x") || !e["x"].is_array())
      throw ValidationError(where + ": needs an \"x\" coordinate array");
    PointRecord p;
    if (e.contains("id")) p.id = e["id"].is_string() ? e["id"].get<std::string>() : e["id"].dump();
    else p.id = std::to_string(k - 1);
    for (const auto& v : e["x"]) {
      if (!v.is_number()) throw ValidationError(where + ": coordinates must be numbers");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw ValidationError(where + ": coordinates must be finite");
      p.coords.push_back(x);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

MatrixInput matrix_from_csv(const std::string& text) {
  auto t = parse_csv_text(text, false);
  MatrixInput m;
  if (t.rows.empty()) throw ValidationError("distance matrix is empty");
  // A header is present when its first cell is not numeric.
  bool header = false;
  try {
    parse_number(t.rows[0][0], "");
  } catch (const ValidationError&) {
    header = true;
  }
  bool labelled = false;
  if (header) {
    auto h = t.rows.front();
    t.rows.erase(t.rows.begin());
    labelled = !h.empty() && h[0] == "id";
    m.ids.assign(h.begin() + (labelled ? 1 : 0), h.end());
  }
  const std::size_t n = t.rows.size();
  if (n == 0) throw ValidationError("distance matrix is empty");
  if (m.ids.empty())
    for (std::size_t i = 0; i < n; ++i) m.ids.push_back(std::to_string(i));
  if (m.ids.size() != n) throw ValidationError("distance matrix header names " + std::to_string(m.ids.size()) +
                                               " points but has " + std::to_string(n) + " rows");
  m.dist.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = t.rows[r];
    const std::string where = "distance matrix row " + std::to_string(r + 1);
    const std::size_t off = labelled ? 1 : 0;
    if (row.size() != n + off) throw ValidationError(where + ": matrix must be square");
    if (labelled && row[0] != m.ids[r]) throw ValidationError(where + ": row id does not match the header");
    for (std::size_t c = off; c < row.size(); ++c) m.dist.push_back(parse_number(row[c], where));
  }
  return m;
}

MatrixInput matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("distances") || !j["distances"].is_array())
    throw ValidationError("matrix JSON needs a \"distances\" array");
  MatrixInput m;
  const auto& rows = j["distances"];
  const std::size_t n = rows.size();
  if (n == 0) throw ValidationError("distance matrix is empty");
  if (j.contains("ids")) {
    for (const auto& id : j["ids"]) m.ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
    if (m.ids.size() != n) throw ValidationError("matrix JSON: ids and rows differ in length");
  } else {
    for (std::size_t i = 0; i < n; ++i) m.ids.push_back(std::to_string(i));
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) throw ValidationError("distance matrix must be square");
    for (const auto& v : rows[r]) {
      if (!v.is_number()) throw ValidationError("distance matrix entries must be numbers");
      m.dist.push_back(v.get<double>());
    }
  }
  return m;
}

FiniteMetricSpace load_space(const std::string& path, Metric metric) {
  const std::string text = read_file(path);
  if (is_json_path(path)) {
    const Json j = parse_json(text, path);
    if (j.is_object() && j.contains("distances")) {
      auto m = matrix_from_json(j);
      return FiniteMetricSpace::from_matrix(std::move(m.ids), std::move(m.dist));
    }
    if (metric == Metric::precomputed) throw ValidationError(path + ": precomputed metric needs \"distances\"");
    return FiniteMetricSpace::from_points(points_from_json(j), metric);
  }
  if (metric == Metric::precomputed) {
    auto m = matrix_from_csv(text);
    return FiniteMetricSpace::from_matrix(std::move(m.ids), std::move(m.dist));
  }
  return FiniteMetricSpace::from_points(points_from_csv(text), metric);
}

namespace {

SampledMeasure assign_weights(const std::vector<std::pair<std::string, double>>& entries,
                              const FiniteMetricSpace& space) {
  std::vector<double> w(space.size(), 0.0);
  std::vector<bool> got(space.size(), false);
  std::unordered_set<std::string> seen;
  for (const auto& [id, v] : entries) {
    if (!seen.insert(id).second) throw ValidationError("weights: id '" + id + "' appears twice");
    const auto idx = space.find_id(id);
    if (!idx) throw ValidationError("weights: id '" + id + "' is not a point of the space");
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("weights: '" + id + "' must be finite and nonnegative");
    w[*idx] += v;
    got[*idx] = true;
  }
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!got[i]) throw ValidationError("weights: point '" + space.ids()[i] + "' has no weight");
  return SampledMeasure(std::move(w));
}

}  // namespace

SampledMeasure weights_from_csv(const std::string& text, const FiniteMetricSpace& space) {
  const auto t = parse_csv_text(text);
  if (t.header.size() != 2 || t.header[0] != "id" || t.header[1] != "weight")
    throw ValidationError("weights CSV header must be id,weight");
  std::vector<std::pair<std::string, double>> entries;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string where = "weights CSV row " + std::to_string(r + 2);
    if (row.size() != 2) throw ValidationError(where + ": expected 2 fields");
    entries.emplace_back(row[0], parse_number(row[1], where));
  }
  return assign_weights(entries, space);
}

SampledMeasure weights_from_json(const Json& j, const FiniteMetricSpace& space) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
    throw ValidationError("weights JSON needs a \"weights\" array");
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& e : j["weights"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("weight") || !e["weight"].is_number())
      throw ValidationError("weights JSON entries need \"id\" and numeric \"weight\"");
    entries.emplace_back(e["id"].is_string() ? e["id"].get<std::string>() : e["id"].dump(),
                         e["weight"].get<double>());
  }
  return assign_weights(entries, space);
}

SampledMeasure load_weights(const std::string& path, const FiniteMetricSpace& space) {
  const std::string text = read_file(path);
  if (is_json_path(path)) return weights_from_json(parse_json(text, path), space);
  return weights_from_csv(text, space);
}

std::string points_csv(const FiniteMetricSpace& space) {
  if (!space.has_coords()) throw ValidationError("space has no coordinates; write it as a matrix");
  const std::size_t k = space.coords().empty() ? 0 : space.coords()[0].size();
  std::vector<std::string> head{"id"};
  for (std::size_t c = 1; c <= k; ++c) head.push_back("x" + std::to_string(c));
  std::string out = csv_row(head);
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::vector<std::string> row{space.ids()[i]};
    for (double x : space.coords()[i]) row.push_back(format_number(x));
    out += csv_row(row);
  }
  return out;
}

std::string matrix_csv(const FiniteMetricSpace& space) {
  std::vector<std::string> head{"id"};
  head.insert(head.end(), space.ids().begin(), space.ids().end());
  std::string out = csv_row(head);
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::vector<std::string> row{space.ids()[i]};
    for (double d : space.row(i)) row.push_back(format_number(d));
    out += csv_row(row);
  }
  return out;
}

std::string weights_csv(const FiniteMetricSpace& space, const SampledMeasure& nu) {
  if (nu.size() != space.size()) throw ValidationError("measure weights must match the point count");
  std::string out = csv_row({"id", "weight"});
  for (std::size_t i = 0; i < space.size(); ++i) out += csv_row({space.ids()[i], format_number(nu.weights()[i])});
  return out;
}

std::string profile_csv(const ScalingProfile& profile) {
  std::string out = csv_row({"s", "delta", "cost"});
  for (std::size_t a = 0; a < profile.s_grid.size(); ++a)
    for (std::size_t k = 0; k < profile.scales.size(); ++k)
      out += csv_row({format_number(profile.s_grid[a]), format_number(profile.scales[k]),
                      format_number(profile.costs[a][k])});
  return out;
}

Mask parse_id_set(const std::string& text, const FiniteMetricSpace& space) {
  if (text == "all") return Mask::full(space.size());
  Mask m(space.size());
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    const auto idx = space.find_id(token);
    if (!idx) throw ValidationError("set: id '" + token + "' is not a point of the space");
    m.set(*idx);
  }
  return m;
}

}  // namespace lochaus::io
