// Command-line front end. Exit codes: 0 success, 1 validation or compute
// error (or a failing verify run), 2 usage error.

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lochaus/ahlfors.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/error.hpp"
#include "lochaus/io.hpp"
#include "lochaus/kernels.hpp"
#include "lochaus/local_measure.hpp"
#include "lochaus/oracle.hpp"
#include "lochaus/report.hpp"
#include "lochaus/spaces.hpp"
#include "lochaus/verify.hpp"

using namespace lochaus;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") std::cout << content;
  else io::write_file(path, content);
}

struct SpaceArgs {
  std::string path;
  std::string metric = "euclidean";
};

void add_space(CLI::App* c, SpaceArgs& a) {
  c->add_option("--space", a.path, "point CSV/JSON or distance matrix")->required();
  c->add_option("--metric", a.metric, "euclidean | manhattan | precomputed")->capture_default_str();
}

FiniteMetricSpace load(const SpaceArgs& a) { return io::load_space(a.path, parse_metric(a.metric)); }

struct CoverArgs {
  std::string cls = "balls";
  std::string mode = "greedy";
  std::string clamp = "additive";
};

void add_cover(CLI::App* c, CoverArgs& a) {
  c->add_option("--class", a.cls, "balls | all_subsets")->capture_default_str();
  c->add_option("--mode", a.mode, "greedy | exact")->capture_default_str();
  c->add_option("--clamp", a.clamp, "additive | max")->capture_default_str();
}

// ---- gen ------------------------------------------------------------------

GeneratorSpec parse_piece(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2) throw ValidationError("piece '" + text + "' must be kind:param[:ratio]");
  const auto kind = parse_generator_kind(parts[0]);
  const double v = io::parse_number(parts[1], "piece '" + text + "'");
  switch (kind) {
    case GeneratorKind::grid: return GeneratorSpec::grid(static_cast<std::size_t>(v));
    case GeneratorKind::cantor:
      return GeneratorSpec::cantor(static_cast<int>(v),
                                   parts.size() > 2 ? io::parse_number(parts[2], "piece ratio") : 1.0 / 3.0);
    case GeneratorKind::sierpinski: return GeneratorSpec::sierpinski(static_cast<int>(v));
    default: throw ValidationError("pieces must be grid, cantor or sierpinski");
  }
}

struct GenArgs {
  std::string kind;
  std::size_t n = 9;
  int depth = 6;
  double ratio = 1.0 / 3.0;
  std::string pieces;
  double gap = 2.0;
  double jitter = 0.0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& a) {
  GeneratorSpec spec;
  switch (parse_generator_kind(a.kind)) {
    case GeneratorKind::grid: spec = GeneratorSpec::grid(a.n); break;
    case GeneratorKind::cantor: spec = GeneratorSpec::cantor(a.depth, a.ratio); break;
    case GeneratorKind::sierpinski: spec = GeneratorSpec::sierpinski(a.depth); break;
    case GeneratorKind::glue:
    case GeneratorKind::product: {
      std::vector<GeneratorSpec> pieces;
      std::stringstream ss(a.pieces);
      for (std::string p; std::getline(ss, p, ',');) pieces.push_back(parse_piece(p));
      if (parse_generator_kind(a.kind) == GeneratorKind::glue) {
        spec = GeneratorSpec::glue(pieces, a.gap);
      } else {
        if (pieces.size() != 2) throw ValidationError("product needs exactly two pieces");
        spec = GeneratorSpec::product(pieces[0], pieces[1]);
      }
      break;
    }
  }
  spec.jitter = a.jitter;
  spec.seed = a.seed;
  const auto g = generate(spec);
  const std::string dir = a.out.empty() || a.out.back() == '/' ? a.out : a.out + "/";
  const std::string space_file = g.space.has_coords() ? "space.csv" : "distances.csv";
  io::write_file(dir + space_file, g.space.has_coords() ? io::points_csv(g.space) : io::matrix_csv(g.space));
  io::write_file(dir + "weights.csv", io::weights_csv(g.space, g.measure));
  io::write_file(dir + "truth.json", io::dump(report::truth_json(g, spec)));
  std::cout << dir + space_file << "\n" << dir + "weights.csv\n" << dir + "truth.json\n";
  return 0;
}

// ---- dim ------------------------------------------------------------------

struct DimArgs {
  SpaceArgs space;
  CoverArgs cover;
  std::string method = "critical_exponent";
  std::size_t scales = 8;
  double span = 64.0;
  double top_fraction = 0.25;
  double tolerance = 1e-3;
  std::string set = "all";
  std::string out;
  std::string profile;
};

DimensionOptions dim_options(const CoverArgs& c) {
  DimensionOptions opt;
  opt.cls = parse_cover_class(c.cls);
  opt.mode = parse_solve_mode(c.mode);
  opt.clamp = parse_clamp_rule(c.clamp);
  return opt;
}

int run_dim(const DimArgs& a) {
  const auto X = load(a.space);
  auto opt = dim_options(a.cover);
  opt.method = parse_dimension_method(a.method);
  opt.n_scales = a.scales;
  opt.span = a.span;
  opt.top_fraction = a.top_fraction;
  opt.tolerance = a.tolerance;
  const Mask target = io::parse_id_set(a.set, X);
  const auto est = estimate_dimension(X, target, opt);
  emit(a.out, io::dump(report::dimension_json(est, X, opt)));
  if (!a.profile.empty()) io::write_file(a.profile, io::profile_csv(est.profile));
  return 0;
}

// ---- locdim ---------------------------------------------------------------

struct LocArgs {
  SpaceArgs space;
  CoverArgs cover;
  std::size_t k_min = 16;
  std::size_t max_count = 128;
  std::size_t min_radii = 3;
  double radius_fraction = 0.25;
  std::string out;
};

int run_locdim(const LocArgs& a) {
  const auto X = load(a.space);
  LocalFieldOptions opt;
  opt.k_min = a.k_min;
  opt.max_count = a.max_count;
  opt.min_radii = a.min_radii;
  opt.max_radius_fraction = a.radius_fraction;
  opt.dim = dim_options(a.cover);
  const auto f = local_dimension_field(X, opt);
  emit(a.out, report::field_csv(X, f));
  return 0;
}

// ---- measure --------------------------------------------------------------

struct MeasureArgs {
  SpaceArgs space;
  CoverArgs cover;
  std::string set = "all";
  double delta = 0.0;
  std::string field;
  std::optional<double> s;
  std::string out;
};

double default_delta(const FiniteMetricSpace& X, ClampRule clamp) {
  DimensionOptions opt;
  opt.clamp = clamp;
  const auto grid = default_delta_grid(X, opt);
  return grid.empty() ? std::max(X.resolution(), 1.0) : grid.back();
}

int run_measure(const MeasureArgs& a) {
  const auto X = load(a.space);
  const auto cls = parse_cover_class(a.cover.cls);
  const auto mode = parse_solve_mode(a.cover.mode);
  const auto clamp = parse_clamp_rule(a.cover.clamp);
  const Mask A = io::parse_id_set(a.set, X);
  const double delta = a.delta > 0.0 ? a.delta : default_delta(X, clamp);
  MeasureEstimate est;
  if (a.s) {
    // Constant gauge, reported in the same shape.
    est.set = A;
    est.delta = delta;
    est.cls = cls;
    est.mode = mode;
    est.spec = PremeasureSpec::constant(*a.s, clamp);
    est.spec.validate(X.size());
    if (delta < X.resolution()) throw ValidationError("premeasure scale delta must be >= the sample resolution");
    if (!A.empty()) {
      const auto problem = make_cover_problem(X, A, delta, cls, est.spec);
      const auto sol = min_cover_cost(problem, est.spec, mode);
      est.value = sol.cost;
      est.optimal = sol.optimal;
      est.cover = sol.chosen;
      for (auto i : sol.chosen) est.cover_sets.push_back(problem.candidates[i].members);
    } else {
      est.optimal = true;
    }
  } else {
    const auto field = a.field.empty() ? local_dimension_field(X).values
                                       : report::field_from_csv(io::read_file(a.field), X);
    est = local_hausdorff_measure(X, A, field, delta, cls, mode, clamp);
  }
  emit(a.out, io::dump(report::measure_json(est, X)));
  return 0;
}

// ---- ahlfors --------------------------------------------------------------

struct AhlforsArgs {
  SpaceArgs space;
  std::string weights;
  std::string window;
  std::optional<double> q_const;
  bool q_fit = false;
  std::string q_method = "neighbourhood";
  std::size_t radii = 8;
  double threshold = 50.0;
  double lh_threshold = kInf;
  std::string field;
  bool skip_dimloc = false;
  double delta = 0.0;
  std::string out;
  std::string field_out;
};

int run_ahlfors(const AhlforsArgs& a) {
  const auto X = load(a.space);
  const auto nu = io::load_weights(a.weights, X);
  const Window w = a.window.empty() ? default_window(X) : parse_window(a.window);
  const QField q = a.q_const ? constant_q_field(X.size(), *a.q_const, w, a.radii)
                             : fit_q_field(X, nu, w, a.radii, parse_q_fit_method(a.q_method));
  const auto cert = regularity_certificate(X, nu, q.q, w, a.radii, a.threshold);
  const auto lh = log_holder_certificate(X, q.q, a.lh_threshold, &cert);
  const auto unit = lh.scale == 1.0 ? X : X.scaled(lh.scale);
  const auto sw = variable_gauge_sandwich(unit, q.q, lh.C_lh, CoverClass::balls);

  Json j;
  j["points"] = X.size();
  j["window"] = report::window_json(w);
  j["q_source"] = a.q_const ? "constant" : "fit";
  j["q_field"] = report::q_field_json(q);
  j["regularity"] = report::regularity_json(cert, X);
  j["log_holder"] = report::log_holder_json(lh, X);
  j["sandwich"] = report::sandwich_json(sw);
  if (!cert.zero_mass) {
    std::vector<LabeledSet> sets{{"whole", Mask::full(X.size())}};
    const std::size_t n = X.size();
    for (std::size_t c : {std::size_t{0}, n / 2, n - 1})
      for (double r : {w.lo, std::sqrt(w.lo * w.hi), w.hi})
        sets.push_back({"ball " + X.ids()[c] + " r=" + io::format_number(r), ball(X, c, r).members});
    const double delta = a.delta > 0.0 ? a.delta : w.hi;
    j["nu_lambda"] = report::nu_lambda_json(nu_vs_lambda_qc(X, nu, q, cert, sets, delta));
  }
  std::optional<LocalDimensionField> field;
  if (!a.skip_dimloc) {
    if (!a.field.empty()) {
      LocalDimensionField f;
      f.values = report::field_from_csv(io::read_file(a.field), X);
      f.ci.assign(X.size(), 0.0);
      f.flagged.assign(X.size(), false);
      field = std::move(f);
    } else {
      field = local_dimension_field(X);
    }
    j["q_equals_dimloc"] = report::q_dim_json(q_equals_dimloc_check(q, *field, 0.1), X);
  }
  emit(a.out, io::dump(j));
  if (!a.field_out.empty()) io::write_file(a.field_out, report::q_field_csv(X, q, field ? &*field : nullptr));
  return 0;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  SpaceArgs space;
  std::string cls = "balls";
  std::string clamp = "additive";
  std::string set = "all";
  double delta = 0.0;
  std::optional<double> s;
  std::string field;
  bool exhaustive = false;
  bool covering = false;
  std::string out;
};

int run_oracle(const OracleArgs& a) {
  const auto X = load(a.space);
  const Mask A = io::parse_id_set(a.set, X);
  const auto clamp = parse_clamp_rule(a.clamp);
  const double delta = a.delta > 0.0 ? a.delta : default_delta(X, clamp);
  Json j;
  j["set"] = report::ids_json(X, A);
  j["delta"] = delta;
  if (a.covering) {
    const auto c = oracle::covering_number(X, A, delta);
    j["oracle"] = "covering_number";
    j["count"] = c.count;
    j["exact"] = c.exact;
    emit(a.out, io::dump(j));
    return 0;
  }
  const auto cls = parse_cover_class(a.cls);
  PremeasureSpec spec;
  if (!a.field.empty()) spec = PremeasureSpec::local(report::field_from_csv(io::read_file(a.field), X), clamp);
  else spec = PremeasureSpec::constant(a.s.value_or(1.0), clamp);
  if (delta < X.resolution()) throw ValidationError("premeasure scale delta must be >= the sample resolution");
  const double brute = oracle::exhaustive_min_cover(X, A, spec, delta, cls);
  const double exact = premeasure_at_scale(X, A, spec, delta, cls, SolveMode::exact);
  const double greedy = premeasure_at_scale(X, A, spec, delta, cls, SolveMode::greedy);
  j["oracle"] = "exhaustive_min_cover";
  j["class"] = to_string(cls);
  j["spec"] = {{"kind", to_string(spec.kind)}, {"clamp", to_string(clamp)}};
  if (spec.kind == GaugeKind::constant) j["spec"]["s"] = spec.s;
  j["oracle_cost"] = brute;
  j["exact_cost"] = exact;
  j["greedy_cost"] = greedy;
  j["exact_matches"] = brute == exact || (std::isinf(brute) && std::isinf(exact));
  emit(a.out, io::dump(j));
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  bool quick = false;
  std::uint64_t seed = 20240601;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  verify::Suite suite({a.quick, a.seed});
  const auto rows = suite.run_all();
  std::cout << verify::format_table(rows);
  if (!a.out.empty()) io::write_file(a.out, io::dump(verify::to_json(rows)));
  for (const auto& r : rows)
    if (!r.pass) return 1;
  return 0;
}

// ---- config ---------------------------------------------------------------

// Appends `--key value` for every config entry the command line does not
// already set and the chosen subcommand (or the top level) understands.
std::vector<std::string> apply_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  Json cfg;
  try {
    cfg = Json::parse(io::read_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object of flag names");
  CLI::App* sub = nullptr;
  for (const auto& a : args)
    if (auto* s = app.get_subcommand_no_throw(a)) {
      sub = s;
      break;
    }
  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                                          : a.find('=') - 2));
  std::vector<std::string> out = args;
  for (const auto& [key, val] : cfg.items()) {
    if (key == "config" || given.count(key)) continue;
    const std::string flag = "--" + key;
    const bool known = (sub && sub->get_option_no_throw(flag)) || app.get_option_no_throw(flag);
    if (!known) {
      std::cerr << "warning: config key '" << key << "' is not an option here; ignored\n";
      continue;
    }
    if (val.is_boolean()) {
      if (val.get<bool>()) out.push_back(flag);
      continue;
    }
    std::string text;
    if (val.is_string()) {
      text = val.get<std::string>();
    } else if (val.is_array()) {
      for (std::size_t i = 0; i < val.size(); ++i)
        text += (i ? "," : "") + (val[i].is_string() ? val[i].get<std::string>() : val[i].dump());
    } else if (val.is_number_float()) {
      text = io::format_number(val.get<double>());
    } else {
      text = val.dump();
    }
    out.push_back(flag);
    out.push_back(text);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff dimension, local Hausdorff measure and Ahlfors regularity on finite metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  std::string config;
  app.add_option("--threads", threads, "worker threads (default: all)")->check(CLI::PositiveNumber);
  app.add_option("--config", config, "JSON file of flag values; command-line flags win");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "write a generated space, its weights and ground truth");
  c_gen->add_option("--kind", gen.kind, "grid | cantor | sierpinski | glue | product")->required();
  c_gen->add_option("--n", gen.n, "grid points on [0,1]")->capture_default_str();
  c_gen->add_option("--depth", gen.depth, "IFS depth")->capture_default_str();
  c_gen->add_option("--ratio", gen.ratio, "Cantor contraction ratio")->capture_default_str();
  c_gen->add_option("--pieces", gen.pieces, "glue/product pieces, e.g. cantor:6,grid:366");
  c_gen->add_option("--gap", gen.gap, "glue bridge length")->capture_default_str();
  c_gen->add_option("--jitter", gen.jitter, "coordinate jitter as a fraction of the resolution");
  c_gen->add_option("--seed", gen.seed, "jitter seed")->capture_default_str();
  c_gen->add_option("--out", gen.out, "output directory")->required();

  DimArgs dim;
  auto* c_dim = app.add_subcommand("dim", "estimate the Hausdorff dimension");
  add_space(c_dim, dim.space);
  add_cover(c_dim, dim.cover);
  c_dim->add_option("--method", dim.method, "critical_exponent | covering_slope")->capture_default_str();
  c_dim->add_option("--scales", dim.scales, "number of delta scales")->capture_default_str();
  c_dim->add_option("--span", dim.span, "coarsest/finest scale ratio cap")->capture_default_str();
  c_dim->add_option("--top-fraction", dim.top_fraction, "coarsest scale as a fraction of the diameter")
      ->capture_default_str();
  c_dim->add_option("--tolerance", dim.tolerance, "bisection width on s")->capture_default_str();
  c_dim->add_option("--set", dim.set, "comma-separated ids, or all")->capture_default_str();
  c_dim->add_option("--out", dim.out, "JSON output (default stdout)");
  c_dim->add_option("--profile", dim.profile, "scaling profile CSV (s,delta,cost)");

  LocArgs loc;
  auto* c_loc = app.add_subcommand("locdim", "local dimension field");
  add_space(c_loc, loc.space);
  add_cover(c_loc, loc.cover);
  c_loc->add_option("--k-min", loc.k_min, "points in the smallest ball")->capture_default_str();
  c_loc->add_option("--max-count", loc.max_count, "points in the largest ball")->capture_default_str();
  c_loc->add_option("--min-radii", loc.min_radii, "radii per point")->capture_default_str();
  c_loc->add_option("--radius-fraction", loc.radius_fraction, "largest radius as a fraction of the diameter")
      ->capture_default_str();
  c_loc->add_option("--out", loc.out, "CSV output (default stdout)");

  MeasureArgs meas;
  auto* c_meas = app.add_subcommand("measure", "local Hausdorff (or constant-exponent) premeasure of a set");
  add_space(c_meas, meas.space);
  add_cover(c_meas, meas.cover);
  c_meas->add_option("--set", meas.set, "comma-separated ids, or all")->capture_default_str();
  c_meas->add_option("--delta", meas.delta, "cover scale (default: finest default scale)");
  c_meas->add_option("--field", meas.field, "local dimension CSV (default: computed)");
  c_meas->add_option("--s", meas.s, "constant exponent instead of the local gauge");
  c_meas->add_option("--out", meas.out, "JSON output (default stdout)");

  AhlforsArgs ahl;
  auto* c_ahl = app.add_subcommand("ahlfors", "Ahlfors regularity and log-Hölder certificates");
  add_space(c_ahl, ahl.space);
  c_ahl->add_option("--weights", ahl.weights, "weights CSV/JSON (id,weight)")->required();
  c_ahl->add_option("--window", ahl.window, "radius window lo,hi (default [4h, diam/4])");
  auto* q_const = c_ahl->add_option("--q-const", ahl.q_const, "use a constant exponent");
  auto* q_fit = c_ahl->add_flag("--q-fit", ahl.q_fit, "fit the exponent field (default)");
  q_const->excludes(q_fit);
  c_ahl->add_option("--q-method", ahl.q_method, "neighbourhood | pointwise")->capture_default_str();
  c_ahl->add_option("--radii", ahl.radii, "window radii")->capture_default_str()->check(CLI::Range(3, 1000));
  c_ahl->add_option("--threshold", ahl.threshold, "regularity constant threshold")->capture_default_str();
  c_ahl->add_option("--lh-threshold", ahl.lh_threshold, "log-Hölder constant threshold (default: none)");
  c_ahl->add_option("--field", ahl.field, "local dimension CSV (default: computed)");
  c_ahl->add_flag("--skip-dimloc", ahl.skip_dimloc, "skip the Q = dim_loc comparison");
  c_ahl->add_option("--delta", ahl.delta, "scale of the lambda^Qc premeasure (default: window hi)");
  c_ahl->add_option("--out", ahl.out, "JSON output (default stdout)");
  c_ahl->add_option("--field-out", ahl.field_out, "CSV of id,q,stderr,d");

  OracleArgs orc;
  auto* c_orc = app.add_subcommand("oracle", "brute-force reference values");
  add_space(c_orc, orc.space);
  c_orc->add_option("--class", orc.cls, "balls | all_subsets")->capture_default_str();
  c_orc->add_option("--clamp", orc.clamp, "additive | max")->capture_default_str();
  c_orc->add_option("--set", orc.set, "comma-separated ids (at most 12), or all")->capture_default_str();
  c_orc->add_option("--delta", orc.delta, "cover scale (default: finest default scale)");
  auto* o_s = c_orc->add_option("--s", orc.s, "constant exponent (default 1)");
  auto* o_field = c_orc->add_option("--field", orc.field, "local dimension CSV for the local gauge");
  o_s->excludes(o_field);
  auto* o_ex = c_orc->add_flag("--exhaustive", orc.exhaustive, "exhaustive minimum cover (default)");
  auto* o_cov = c_orc->add_flag("--covering-number", orc.covering, "fewest sets of diameter <= delta");
  o_ex->excludes(o_cov);
  c_orc->add_option("--out", orc.out, "JSON output (default stdout)");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "run the property suite on generated fixtures");
  c_ver->add_flag("--quick", ver.quick, "smaller fixtures and fewer random instances");
  c_ver->add_option("--seed", ver.seed, "seed for the random instances")->capture_default_str();
  c_ver->add_option("--out", ver.out, "JSON report");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = apply_config(args, app);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) kernels::set_threads(threads);
    if (*c_gen) return run_gen(gen);
    if (*c_dim) return run_dim(dim);
    if (*c_loc) return run_locdim(loc);
    if (*c_meas) return run_measure(meas);
    if (*c_ahl) return run_ahlfors(ahl);
    if (*c_orc) return run_oracle(orc);
    if (*c_ver) return run_verify(ver);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ComputeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
