#include "lochaus/report.hpp"

#include <unordered_set>

#include "lochaus/error.hpp"

namespace lochaus::report {

Json ids_json(const FiniteMetricSpace& space, const Mask& mask) {
  Json a = Json::array();
  mask.for_each([&](std::size_t i) { a.push_back(space.ids()[i]); });
  return a;
}

Json window_json(const Window& w) { return Json{{"lo", w.lo}, {"hi", w.hi}}; }

Json dimension_json(const DimensionEstimate& est, const FiniteMetricSpace& space, const DimensionOptions& opt) {
  Json j;
  j["value"] = est.value;
  j["ci_halfwidth"] = est.ci_halfwidth;
  j["method"] = to_string(est.method);
  j["upper_bound"] = est.upper_bound;
  j["bracket"] = Json::array({est.bracket_lo, est.bracket_hi});
  j["evaluations"] = est.evaluations;
  j["class"] = to_string(opt.cls);
  j["mode"] = to_string(opt.mode);
  j["clamp"] = to_string(opt.clamp);
  j["points"] = space.size();
  j["resolution"] = space.resolution();
  j["diameter"] = space.diameter();
  j["scales"] = est.profile.scales;
  return j;
}

Json measure_json(const MeasureEstimate& est, const FiniteMetricSpace& space) {
  Json j;
  j["set"] = ids_json(space, est.set);
  j["value"] = est.value;
  j["delta"] = est.delta;
  j["class"] = to_string(est.cls);
  j["mode"] = to_string(est.mode);
  j["optimal"] = est.optimal;
  Json spec;
  spec["kind"] = to_string(est.spec.kind);
  if (est.spec.kind == GaugeKind::constant) spec["s"] = est.spec.s;
  spec["clamp"] = to_string(est.spec.clamp);
  j["spec"] = spec;
  Json cover = Json::array();
  for (const auto& m : est.cover_sets) cover.push_back(ids_json(space, m));
  j["cover"] = cover;
  return j;
}

Json truth_json(const Generated& g, const GeneratorSpec& spec) {
  Json j;
  j["generator"] = spec.label();
  j["points"] = g.space.size();
  j["global_dim"] = g.truth.global_dim;
  Json pieces = Json::array();
  for (std::size_t p = 0; p < g.truth.piece_labels.size(); ++p) {
    std::size_t count = 0;
    for (int k : g.truth.piece) count += k == static_cast<int>(p) ? 1 : 0;
    pieces.push_back({{"label", g.truth.piece_labels[p]}, {"dim", g.truth.piece_dim[p]}, {"points", count}});
  }
  j["pieces"] = pieces;
  Json pts = Json::array();
  for (std::size_t i = 0; i < g.space.size(); ++i)
    pts.push_back({{"id", g.space.ids()[i]},
                   {"piece", g.truth.piece[i]},
                   {"dim", g.truth.point_dim[i]},
                   {"q", g.truth.point_q[i]}});
  j["point_truth"] = pts;
  return j;
}

std::string field_csv(const FiniteMetricSpace& space, const LocalDimensionField& field) {
  std::string out = io::csv_row({"id", "value", "ci", "flagged"});
  for (std::size_t i = 0; i < field.size(); ++i)
    out += io::csv_row({space.ids()[i], io::format_number(field.values[i]), io::format_number(field.ci[i]),
                        field.flagged[i] ? "1" : "0"});
  return out;
}

std::vector<double> field_from_csv(const std::string& text, const FiniteMetricSpace& space) {
  const auto t = io::parse_csv_text(text);
  if (t.header.size() < 2 || t.header[0] != "id") throw ValidationError("field CSV header must start with id,value");
  std::vector<double> v(space.size(), 0.0);
  std::vector<bool> got(space.size(), false);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string where = "field CSV row " + std::to_string(r + 2);
    if (row.size() < 2) throw ValidationError(where + ": expected id and value");
    const auto idx = space.find_id(row[0]);
    if (!idx) throw ValidationError(where + ": id '" + row[0] + "' is not a point of the space");
    if (got[*idx]) continue;  // merged duplicates share one value
    const double x = io::parse_number(row[1], where);
    if (x < 0.0) throw ValidationError(where + ": dimension must be nonnegative");
    v[*idx] = x;
    got[*idx] = true;
  }
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!got[i]) throw ValidationError("field CSV: point '" + space.ids()[i] + "' has no value");
  return v;
}

std::string q_field_csv(const FiniteMetricSpace& space, const QField& q, const LocalDimensionField* field) {
  std::string out = io::csv_row({"id", "q", "stderr", "d"});
  for (std::size_t i = 0; i < q.size(); ++i)
    out += io::csv_row({space.ids()[i], io::format_number(q.q[i]), io::format_number(q.q_stderr[i]),
                        field ? io::format_number(field->values[i]) : ""});
  return out;
}

Json q_field_json(const QField& q) {
  double lo = 0.0, hi = 0.0, se = 0.0;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    lo = i == 0 ? q.q[i] : std::min(lo, q.q[i]);
    hi = i == 0 ? q.q[i] : std::max(hi, q.q[i]);
    se = std::max(se, q.q_stderr[i]);
    flagged += q.flagged[i] ? 1 : 0;
  }
  Json j;
  j["method"] = to_string(q.method);
  j["window"] = window_json(q.window);
  j["radii"] = q.radii;
  if (q.method == QFitMethod::neighbourhood) j["neighbourhood_radius"] = q.neighbourhood_radius;
  j["min"] = lo;
  j["max"] = hi;
  j["R"] = q.bound();
  j["max_stderr"] = se;
  j["flagged"] = flagged;
  return j;
}

namespace {

Json witness_json(const RegularityWitness& w, const FiniteMetricSpace& space) {
  return {{"point", space.ids()[w.point]}, {"radius", w.radius}, {"mass", w.mass}, {"value", w.value}};
}

}  // namespace

Json regularity_json(const RegularityCertificate& c, const FiniteMetricSpace& space) {
  Json j;
  j["C"] = c.C;
  j["C1"] = c.C1;
  j["C2"] = c.C2;
  j["threshold"] = c.threshold;
  j["window"] = window_json(c.window);
  j["radii"] = c.radii;
  j["worst_upper"] = witness_json(c.worst_upper, space);
  j["worst_lower"] = witness_json(c.worst_lower, space);
  j["zero_mass"] = c.zero_mass;
  if (c.zero_mass) j["zero_witness"] = witness_json(c.zero_witness, space);
  j["pass"] = c.pass;
  return j;
}

Json log_holder_json(const LogHolderCertificate& c, const FiniteMetricSpace& space) {
  Json j;
  j["C_lh"] = c.C_lh;
  j["threshold"] = c.threshold;
  j["pair"] = c.pairs > 0 ? Json::array({space.ids()[c.i], space.ids()[c.j]}) : Json::array();
  j["distance"] = c.distance;
  j["pairs"] = c.pairs;
  j["scale"] = c.scale;
  j["pass"] = c.pass;
  if (c.bound_checked) {
    j["bound"] = c.bound;
    j["bound_pass"] = c.bound_pass;
  }
  return j;
}

Json sandwich_json(const SandwichReport& s) {
  return {{"checked", s.checked},
          {"violations", s.violations},
          {"worst_log_ratio", s.worst_log_ratio},
          {"C_lh", s.C_lh},
          {"pass", s.pass}};
}

Json nu_lambda_json(const NuLambdaReport& r) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["delta"] = r.delta;
  j["slack"] = r.slack;
  j["tested"] = r.tested;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"set", row.label},
                    {"nu", row.nu},
                    {"lambda", row.lambda},
                    {"solver_cost", row.solver_cost},
                    {"vitali_cost", row.vitali_cost},
                    {"vitali_balls", row.vitali_balls},
                    {"ratio", row.ratio},
                    {"skipped", row.skipped},
                    {"witness", row.witness},
                    {"amenable", row.amenable},
                    {"pass", row.pass}});
  j["rows"] = rows;
  j["pass"] = r.pass;
  return j;
}

Json q_dim_json(const QDimCheck& c, const FiniteMetricSpace& space) {
  return {{"max_diff", c.max_diff},
          {"witness", space.size() ? Json(space.ids()[c.witness]) : Json(nullptr)},
          {"tolerance", c.tolerance},
          {"pass", c.pass}};
}

}  // namespace lochaus::report
