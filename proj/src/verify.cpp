#include "lochaus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "lochaus/error.hpp"
#include "lochaus/local_measure.hpp"
#include "lochaus/oracle.hpp"
#include "lochaus/premeasure.hpp"

namespace lochaus::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  if (!std::isfinite(v)) return io::format_number(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string count(std::size_t ok, std::size_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

FiniteMetricSpace random_square(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PointRecord> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({"r" + std::to_string(i), {u(rng), u(rng)}});
  return FiniteMetricSpace::from_points(pts, Metric::euclidean);
}

// Nonempty random subset, each point kept with probability 1/2.
Mask random_mask(std::mt19937_64& rng, std::size_t n) {
  Mask m(n);
  while (m.empty())
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1U) m.set(i);
  return m;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Same equality the oracle promises: both are ascending sums of the same gauges.
bool same_cost(double a, double b) { return a == b || (std::isinf(a) && std::isinf(b)); }

std::vector<std::size_t> piece_members(const Fixture& f, int piece) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.g.truth.piece.size(); ++i)
    if (f.g.truth.piece[i] == piece) out.push_back(i);
  return out;
}

Mask mask_of(std::size_t n, const std::vector<std::size_t>& idx) {
  Mask m(n);
  for (auto i : idx) m.set(i);
  return m;
}

Fixture make_fixture(std::string name, GeneratorSpec spec) {
  Fixture f;
  f.name = std::move(name);
  f.spec = spec;
  f.g = generate(spec);
  f.window = default_window(f.g.space);
  if (spec.kind == GeneratorKind::glue) {
    // Ball masses must see one piece at a time: cap the window at a quarter
    // of the smallest piece diameter instead of the diameter of the union.
    double piece_diam = kInf;
    for (std::size_t p = 0; p < f.g.truth.piece_labels.size(); ++p) {
      const auto idx = piece_members(f, static_cast<int>(p));
      piece_diam = std::min(piece_diam, f.g.space.diameter_of(mask_of(f.g.space.size(), idx)));
    }
    f.window.hi = piece_diam / 4.0;
  }
  return f;
}

}  // namespace

std::vector<Neighbourhood> neighbourhoods(const Fixture& f, std::size_t size) {
  const auto& X = f.g.space;
  const std::size_t n = X.size();
  std::vector<std::size_t> anchors{0, n / 2, n - 1};
  if (f.g.truth.piece_labels.size() > 1) {
    for (std::size_t p = 0; p < f.g.truth.piece_labels.size(); ++p) {
      const auto idx = piece_members(f, static_cast<int>(p));
      anchors.push_back(idx.front());
      anchors.push_back(idx[idx.size() / 2]);
    }
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  std::vector<Neighbourhood> out;
  for (auto a : anchors) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t p, std::size_t q) { return X.distance(a, p) < X.distance(a, q); });
    order.resize(std::min(size, n));
    std::sort(order.begin(), order.end());
    Neighbourhood nb;
    nb.anchor = a;
    nb.origin = order;
    nb.space = X.subspace(mask_of(n, order));
    out.push_back(std::move(nb));
  }
  return out;
}

Suite::Suite(SuiteOptions opt) : opt_(opt) {
  std::vector<std::pair<std::string, GeneratorSpec>> specs;
  if (opt_.quick) {
    specs = {{"grid65", GeneratorSpec::grid(65)},
             {"cantor8", GeneratorSpec::cantor(8)},
             {"sierpinski4", GeneratorSpec::sierpinski(4)},
             {"glue", GeneratorSpec::glue({GeneratorSpec::cantor(6), GeneratorSpec::grid(366)}, 2.0)}};
  } else {
    specs = {{"grid257", GeneratorSpec::grid(257)},
             {"cantor8", GeneratorSpec::cantor(8)},
             {"sierpinski5", GeneratorSpec::sierpinski(5)},
             {"glue", GeneratorSpec::glue({GeneratorSpec::cantor(6), GeneratorSpec::grid(366)}, 2.0)}};
  }
  for (auto& [name, spec] : specs) {
    names_.push_back(name);
    fixtures_.emplace(name, std::make_unique<Fixture>(make_fixture(name, spec)));
  }
}

const Fixture& Suite::fixture(const std::string& name) {
  auto it = fixtures_.find(name);
  if (it == fixtures_.end()) throw ValidationError("unknown fixture '" + name + "'");
  return *it->second;
}

const LocalDimensionField& Suite::field(const std::string& name) {
  auto it = fields_.find(name);
  if (it == fields_.end()) it = fields_.emplace(name, local_dimension_field(fixture(name).g.space)).first;
  return it->second;
}

const DimensionEstimate& Suite::dimension(const std::string& name) {
  auto it = dims_.find(name);
  if (it == dims_.end()) it = dims_.emplace(name, estimate_dimension(fixture(name).g.space)).first;
  return it->second;
}

const QField& Suite::q_field(const std::string& name) {
  auto it = qs_.find(name);
  if (it == qs_.end()) {
    const auto& f = fixture(name);
    it = qs_.emplace(name, fit_q_field(f.g.space, f.g.measure, f.window)).first;
  }
  return it->second;
}

const RegularityCertificate& Suite::regularity(const std::string& name) {
  auto it = certs_.find(name);
  if (it == certs_.end()) {
    const auto& f = fixture(name);
    it = certs_.emplace(name, regularity_certificate(f.g.space, f.g.measure, q_field(name).q, f.window)).first;
  }
  return it->second;
}

CheckResult Suite::oracle_equivalence() {
  const std::size_t instances = opt_.quick ? 40 : 200;
  std::mt19937_64 rng(opt_.seed);
  CheckResult r;
  r.name = "oracle_equivalence";
  r.fixture = "random n<=10";
  std::size_t solves = 0, equal = 0, greedy_ok = 0;
  double worst_ratio = 1.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = 2 + rng() % 9;
    const auto X = random_square(rng, n);
    const double s = uniform(rng, 0.0, 2.0);
    const double delta = uniform(rng, X.resolution(), X.diameter() + X.resolution());
    const Mask target = t % 2 == 0 ? Mask::full(n) : random_mask(rng, n);
    const auto spec = PremeasureSpec::constant(s);
    for (auto cls : {CoverClass::balls, CoverClass::all_subsets}) {
      const double exact = premeasure_at_scale(X, target, spec, delta, cls, SolveMode::exact);
      const double greedy = premeasure_at_scale(X, target, spec, delta, cls, SolveMode::greedy);
      const double brute = oracle::exhaustive_min_cover(X, target, spec, delta, cls);
      ++solves;
      if (same_cost(exact, brute)) ++equal;
      const double bound = 1.0 + std::log(static_cast<double>(target.count()));
      const double ratio = exact > 0.0 && std::isfinite(exact) ? greedy / exact : 1.0;
      if (greedy >= exact && ratio <= bound) ++greedy_ok;
      worst_ratio = std::max(worst_ratio, ratio);
    }
  }
  r.pass = equal == solves && greedy_ok == solves;
  r.detail = "exact==oracle " + count(equal, solves) + ", greedy within 1+ln n " + count(greedy_ok, solves) +
             ", worst greedy/exact " + num(worst_ratio);
  r.data["instances"] = instances;
  r.data["solves"] = solves;
  r.data["exact_equals_oracle"] = equal;
  r.data["greedy_within_bound"] = greedy_ok;
  r.data["worst_greedy_ratio"] = worst_ratio;
  return r;
}

CheckResult Suite::balls_vs_subsets() {
  const std::size_t instances = opt_.quick ? 10 : 50;
  std::mt19937_64 rng(opt_.seed + 1);
  CheckResult r;
  r.name = "balls_vs_subsets";
  r.fixture = "random n<=12";
  std::size_t checks = 0, ordered = 0, bounded = 0;
  double worst = 0.0;  // max of lambda(4 delta) / (4^s H(delta))
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = 2 + rng() % 11;
    const auto X = random_square(rng, n);
    const double delta = uniform(rng, X.resolution(), X.diameter() + X.resolution());
    const Mask A = Mask::full(n);
    for (double s : {0.0, 0.5, 1.0, 1.7}) {
      const auto spec = PremeasureSpec::constant(s);
      const double H = premeasure_at_scale(X, A, spec, delta, CoverClass::all_subsets, SolveMode::exact);
      const double L = premeasure_at_scale(X, A, spec, delta, CoverClass::balls, SolveMode::exact);
      const double L4 = premeasure_at_scale(X, A, spec, 4.0 * delta, CoverClass::balls, SolveMode::exact);
      ++checks;
      if (H <= L) ++ordered;
      const double cap = std::pow(4.0, s) * H;
      if (L4 <= cap + 1e-9) ++bounded;
      if (cap > 0.0) worst = std::max(worst, L4 / cap);
    }
  }
  r.pass = ordered == checks && bounded == checks;
  r.detail = "H<=lambda " + count(ordered, checks) + ", lambda(4d)<=4^s H(d) " + count(bounded, checks) +
             ", worst ratio " + num(worst);
  r.data["checks"] = checks;
  r.data["ordered"] = ordered;
  r.data["bounded"] = bounded;
  r.data["worst_ratio"] = worst;
  return r;
}

CheckResult Suite::s_monotonicity() {
  CheckResult r;
  r.name = "s_monotonicity";
  r.fixture = "all";
  const auto s_grid = linspace(0.0, 2.0, 9);
  std::size_t pairs = 0, ok = 0;
  bool scales_ok = true;
  auto scan = [&](const std::vector<std::vector<double>>& costs) {
    for (std::size_t a = 0; a + 1 < costs.size(); ++a)
      for (std::size_t k = 0; k < costs[a].size(); ++k) {
        ++pairs;
        if (costs[a + 1][k] <= costs[a][k]) ++ok;
      }
  };
  for (const auto& name : names_) {
    const auto& f = fixture(name);
    const auto unit = f.g.space.scaled(1.0 / f.g.space.diameter());
    // Whole fixture: greedy covers pooled across exponents.
    const auto scales = default_delta_grid(unit);
    for (double d : scales) scales_ok = scales_ok && d <= 0.5;
    ScalingStudy study(unit, Mask::full(unit.size()), scales, CoverClass::balls, SolveMode::greedy,
                       ClampRule::additive);
    scan(study.profile(s_grid).costs);
    // Neighbourhoods: exact premeasures, both classes.
    for (const auto& nb : neighbourhoods(f)) {
      const auto sub = nb.space.scaled(1.0 / f.g.space.diameter());
      const auto deltas = default_delta_grid(sub);
      for (auto cls : {CoverClass::balls, CoverClass::all_subsets}) {
        std::vector<std::vector<double>> costs;
        for (double s : s_grid) {
          std::vector<double> row;
          for (double d : deltas)
            row.push_back(premeasure_at_scale(sub, Mask::full(sub.size()), PremeasureSpec::constant(s), d, cls,
                                              SolveMode::exact));
          costs.push_back(std::move(row));
        }
        scan(costs);
      }
    }
  }
  r.pass = scales_ok && ok == pairs;
  r.detail = "cost(s_next)<=cost(s) " + count(ok, pairs) + " on 9 exponents, delta<=1/2 " + (scales_ok ? "yes" : "no");
  r.data["pairs"] = pairs;
  r.data["monotone"] = ok;
  r.data["scales_within_half"] = scales_ok;
  return r;
}

CheckResult Suite::dimension_recovery(const std::string& name, double tolerance) {
  const auto& f = fixture(name);
  const auto& est = dimension(name);
  CheckResult r;
  r.name = "dimension";
  r.fixture = name;
  const double err = std::abs(est.value - f.g.truth.global_dim);
  r.pass = err <= tolerance;
  r.detail = "estimate " + num(est.value) + " vs " + num(f.g.truth.global_dim) + " (+-" + num(tolerance) +
             "), ci " + num(est.ci_halfwidth);
  r.data["estimate"] = est.value;
  r.data["truth"] = f.g.truth.global_dim;
  r.data["tolerance"] = tolerance;
  r.data["ci_halfwidth"] = est.ci_halfwidth;
  return r;
}

CheckResult Suite::local_global() {
  const auto& name = glue();
  const auto& f = fixture(name);
  const auto& fld = field(name);
  const auto& est = dimension(name);
  CheckResult r;
  r.name = "local_global";
  r.fixture = name;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < fld.size(); ++i)
    if (!fld.flagged[i] && fld.values[i] > fld.values[arg]) arg = i;
  const double sup = fld.values[arg];
  const double ci = est.ci_halfwidth + fld.ci[arg];
  const bool sup_ok = std::abs(sup - est.value) <= ci;
  bool means_ok = true;
  std::string means;
  io::Json pieces = io::Json::array();
  for (std::size_t p = 0; p < f.g.truth.piece_labels.size(); ++p) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (auto i : piece_members(f, static_cast<int>(p)))
      if (!fld.flagged[i]) {
        sum += fld.values[i];
        ++cnt;
      }
    const double mean = cnt ? sum / static_cast<double>(cnt) : 0.0;
    const double truth = f.g.truth.piece_dim[p];
    means_ok = means_ok && cnt > 0 && std::abs(mean - truth) <= 0.07;
    means += (p ? ", " : "") + num(mean) + " vs " + num(truth);
    pieces.push_back({{"label", f.g.truth.piece_labels[p]}, {"mean", mean}, {"truth", truth}, {"points", cnt}});
  }
  r.pass = sup_ok && means_ok;
  r.detail = "sup field " + num(sup) + " vs global " + num(est.value) + " (ci " + num(ci) + "), piece means " + means;
  r.data["sup_local"] = sup;
  r.data["global"] = est.value;
  r.data["combined_ci"] = ci;
  r.data["pieces"] = pieces;
  return r;
}

CheckResult Suite::absolute_continuity() {
  const auto& name = glue();
  const auto& f = fixture(name);
  const auto& fld = field(name);
  const double d0 = dimension(name).value;
  const std::size_t n = f.g.space.size();
  std::vector<LabeledSet> sets;
  for (std::size_t p = 0; p < f.g.truth.piece_labels.size(); ++p)
    sets.push_back({f.g.truth.piece_labels[p], mask_of(n, piece_members(f, static_cast<int>(p)))});
  // Points whose local dimension sits clearly below d0.
  Mask low(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!fld.flagged[i] && fld.values[i] < d0 - 2.0 * fld.ci[i]) low.set(i);
  sets.push_back({"below_d0", low});
  sets.push_back({"empty", Mask(n)});
  const auto rep = absolute_continuity_probe(f.g.space, sets, d0, fld.values);
  CheckResult r;
  r.name = "absolute_continuity";
  r.fixture = name;
  r.pass = rep.pass;
  std::size_t small = 0;
  io::Json rows = io::Json::array();
  for (const auto& row : rep.rows) {
    small += row.small ? 1 : 0;
    rows.push_back({{"set", row.label},
                    {"H_loc", row.h_loc},
                    {"lambda_loc", row.lambda_loc},
                    {"H_d0", row.h_d0},
                    {"pass", row.pass}});
  }
  r.detail = "d0 " + num(d0) + ", epsilon " + num(rep.epsilon) + ", " + std::to_string(small) +
             " small sets, all with H^d0<=epsilon: " + (rep.pass ? "yes" : "no");
  r.data["d0"] = d0;
  r.data["delta"] = rep.delta;
  r.data["epsilon"] = rep.epsilon;
  r.data["rows"] = rows;
  return r;
}

CheckResult Suite::local_equivalence() {
  CheckResult r;
  r.name = "local_equivalence";
  r.fixture = "all (16-point neighbourhoods)";
  std::size_t rows = 0, ok = 0;
  double worst = 0.0;  // max of ratio / 4^dim
  for (const auto& name : names_) {
    const auto& f = fixture(name);
    const auto& fld = field(name);
    double dim_x = 0.0;
    for (double v : fld.values) dim_x = std::max(dim_x, v);
    for (const auto& nb : neighbourhoods(f)) {
      std::vector<double> sub_field;
      for (auto i : nb.origin) sub_field.push_back(fld.values[i]);
      auto deltas = default_delta_grid(nb.space);
      if (deltas.size() > 3) deltas = {deltas.front(), deltas[deltas.size() / 2], deltas.back()};
      const auto rep = equivalence_ratio_local(nb.space, Mask::full(nb.space.size()), sub_field, deltas,
                                               SolveMode::exact, dim_x);
      for (const auto& row : rep.rows) {
        ++rows;
        if (row.pass) ++ok;
        if (!row.ratio_is_absolute) worst = std::max(worst, row.ratio / rep.bound);
      }
    }
  }
  r.pass = rows > 0 && ok == rows;
  r.detail = "lambda_loc(4d)<=4^dim H_loc(d) and H_loc<=lambda_loc " + count(ok, rows) + ", worst ratio/bound " +
             num(worst);
  r.data["rows"] = rows;
  r.data["pass_rows"] = ok;
  r.data["worst_ratio_over_bound"] = worst;
  return r;
}

CheckResult Suite::ahlfors_regularity() {
  CheckResult r;
  r.name = "ahlfors_regularity";
  r.fixture = "natural measures";
  r.pass = true;
  std::string parts;
  io::Json rows = io::Json::array();
  for (const auto& name : names_) {
    if (!fixture(name).natural_measure) continue;
    const auto& c = regularity(name);
    r.pass = r.pass && c.pass;
    parts += (parts.empty() ? "" : ", ") + name + " C=" + num(c.C);
    rows.push_back({{"fixture", name}, {"C", c.C}, {"C1", c.C1}, {"C2", c.C2}, {"pass", c.pass}});
  }
  r.detail = parts + " (threshold 50)";
  r.data["rows"] = rows;
  return r;
}

CheckResult Suite::q_equals_dimloc() {
  CheckResult r;
  r.name = "q_equals_dimloc";
  r.fixture = "natural measures";
  r.pass = true;
  std::string parts;
  io::Json rows = io::Json::array();
  for (const auto& name : names_) {
    if (!fixture(name).natural_measure) continue;
    const auto& q = q_field(name);
    const auto c = q_equals_dimloc_check(q, field(name), 0.1);
    r.pass = r.pass && c.pass;
    parts += (parts.empty() ? "" : ", ") + name + " " + num(c.max_diff);
    rows.push_back({{"fixture", name},
                    {"max_diff", c.max_diff},
                    {"witness", fixture(name).g.space.ids()[c.witness]},
                    {"q", q.q[c.witness]},
                    {"q_stderr", q.q_stderr[c.witness]},
                    {"d", field(name).values[c.witness]},
                    {"pass", c.pass}});
  }
  r.detail = "max |q-d| " + parts + " (tol 0.1 + stderr)";
  r.data["rows"] = rows;
  return r;
}

CheckResult Suite::nu_lambda() {
  CheckResult r;
  r.name = "nu_vs_lambda";
  r.fixture = "natural measures";
  std::mt19937_64 rng(opt_.seed + 2);
  std::size_t tested = 0, ok = 0, amenable = 0, balls = 0;
  double lo = kInf, hi = 0.0;
  io::Json rows = io::Json::array();
  for (const auto& name : names_) {
    const auto& f = fixture(name);
    if (!f.natural_measure) continue;
    const auto& X = f.g.space;
    const std::size_t n = X.size();
    const auto& q = q_field(name);
    const auto& cert = regularity(name);
    std::vector<LabeledSet> sets{{"whole", Mask::full(n)}};
    if (f.g.truth.piece_labels.size() > 1)
      for (std::size_t p = 0; p < f.g.truth.piece_labels.size(); ++p)
        sets.push_back({f.g.truth.piece_labels[p], mask_of(n, piece_members(f, static_cast<int>(p)))});
    const std::vector<double> radii{f.window.lo, std::sqrt(f.window.lo * f.window.hi), f.window.hi};
    std::size_t first_ball = sets.size();
    for (std::size_t a : {std::size_t{0}, n / 4, n / 2, 3 * n / 4, n - 1})
      for (double rad : radii) sets.push_back({"ball " + X.ids()[a] + " r=" + num(rad), ball(X, a, rad).members});
    for (int k = 0; k < 2; ++k) sets.push_back({"random " + std::to_string(k), random_mask(rng, n)});
    const auto rep = nu_vs_lambda_qc(X, f.g.measure, q, cert, sets, f.window.hi);
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const auto& row = rep.rows[k];
      if (row.skipped) continue;
      ++tested;
      if (row.pass) ++ok;
      if (k >= first_ball && k < first_ball + 15) {
        ++balls;
        if (row.amenable) ++amenable;
      }
      lo = std::min(lo, row.ratio * cert.C1);
      hi = std::max(hi, row.ratio / rep.upper);
    }
    rows.push_back({{"fixture", name},
                    {"lower", rep.lower},
                    {"upper", rep.upper},
                    {"delta", rep.delta},
                    {"tested", rep.tested},
                    {"pass", rep.pass}});
  }
  r.pass = tested >= 20 && ok == tested && amenable == balls;
  r.detail = "ratio in [1/C1, C2 10^R] " + count(ok, tested) + ", amenable balls " + count(amenable, balls) +
             ", tightest C1*ratio " + num(lo) + ", ratio/upper " + num(hi);
  r.data["tested"] = tested;
  r.data["pass_sets"] = ok;
  r.data["amenable_balls"] = amenable;
  r.data["rows"] = rows;
  return r;
}

CheckResult Suite::sandwich() {
  CheckResult r;
  r.name = "gauge_sandwich";
  r.fixture = "natural measures";
  std::size_t checked = 0, violations = 0;
  bool holder_ok = true;
  std::string parts;
  io::Json rows = io::Json::array();
  for (const auto& name : names_) {
    const auto& f = fixture(name);
    if (!f.natural_measure) continue;
    const auto& q = q_field(name).q;
    const auto& cert = regularity(name);
    const auto lh = log_holder_certificate(f.g.space, q, kInf, &cert);
    // Log-Hölder at the constant the regularity certificate implies.
    const bool passes = lh.bound_checked && lh.bound_pass;
    holder_ok = holder_ok && passes;
    const auto unit = lh.scale == 1.0 ? f.g.space : f.g.space.scaled(lh.scale);
    auto rep = variable_gauge_sandwich(unit, q, lh.C_lh, CoverClass::balls);
    std::size_t c = rep.checked, v = rep.violations;
    for (const auto& nb : neighbourhoods(f)) {
      std::vector<double> sub_q;
      for (auto i : nb.origin) sub_q.push_back(q[i]);
      const auto sub = lh.scale == 1.0 ? nb.space : nb.space.scaled(lh.scale);
      const auto s = variable_gauge_sandwich(sub, sub_q, lh.C_lh, CoverClass::all_subsets);
      c += s.checked;
      v += s.violations;
    }
    checked += c;
    violations += v;
    parts += (parts.empty() ? "" : ", ") + name + " C_lh=" + num(lh.C_lh);
    rows.push_back({{"fixture", name}, {"C_lh", lh.C_lh}, {"candidates", c}, {"violations", v}});
  }
  r.pass = holder_ok && violations == 0 && checked > 0;
  r.detail = "|U|^Q+<=|U|^Q-<=e^C_lh |U|^Q+ on " + count(checked - violations, checked) + " candidates; " + parts;
  r.data["checked"] = checked;
  r.data["violations"] = violations;
  r.data["rows"] = rows;
  return r;
}

CheckResult Suite::log_holder_bound() {
  CheckResult r;
  r.name = "log_holder_bound";
  r.fixture = "certified measures";
  r.pass = true;
  std::size_t certified = 0;
  std::string parts;
  io::Json rows = io::Json::array();
  for (const auto& name : names_) {
    const auto& f = fixture(name);
    if (!f.natural_measure) continue;
    const auto& cert = regularity(name);
    if (!cert.pass) continue;
    ++certified;
    const auto lh = log_holder_certificate(f.g.space, q_field(name).q, kInf, &cert, 0.5);
    r.pass = r.pass && lh.bound_pass;
    parts += (parts.empty() ? "" : ", ") + name + " " + num(lh.C_lh) + "<=" + num(lh.bound);
    rows.push_back({{"fixture", name}, {"C_lh", lh.C_lh}, {"bound", lh.bound}, {"pass", lh.bound_pass}});
  }
  r.pass = r.pass && certified > 0;
  r.detail = "C_lh <= log(C1 C2 2^R)+0.5: " + parts;
  r.data["rows"] = rows;
  return r;
}

CheckResult Suite::vitali() {
  const std::size_t families = opt_.quick ? 100 : 500;
  std::mt19937_64 rng(opt_.seed + 3);
  CheckResult r;
  r.name = "vitali";
  r.fixture = "random families";
  std::size_t disjoint = 0, covering = 0;
  for (std::size_t t = 0; t < families; ++t) {
    const std::size_t n = 2 + rng() % 39;
    const auto X = random_square(rng, n);
    const std::size_t k = 1 + rng() % 30;
    std::vector<BallRef> family;
    for (std::size_t b = 0; b < k; ++b)
      family.push_back(ball(X, rng() % n, uniform(rng, 0.01, 0.6) * X.diameter()));
    const auto chosen = vitali_5r_subfamily(X, family);
    bool dis = true;
    for (std::size_t a = 0; a < chosen.size(); ++a)
      for (std::size_t b = a + 1; b < chosen.size(); ++b)
        dis = dis && X.distance(chosen[a].center, chosen[b].center) >= chosen[a].radius + chosen[b].radius &&
              !chosen[a].members.intersects(chosen[b].members);
    Mask uni(n);
    for (const auto& b : family) uni |= b.members;
    bool cov = !chosen.empty();
    uni.for_each([&](std::size_t p) {
      bool hit = false;
      for (const auto& b : chosen) hit = hit || X.distance(p, b.center) < 5.0 * b.radius;
      cov = cov && hit;
    });
    if (dis) ++disjoint;
    if (cov) ++covering;
  }
  r.pass = disjoint == families && covering == families;
  r.detail = "disjoint " + count(disjoint, families) + ", 5r dilations cover " + count(covering, families);
  r.data["families"] = families;
  r.data["disjoint"] = disjoint;
  r.data["covering"] = covering;
  return r;
}

std::vector<CheckResult> Suite::run_all() {
  std::vector<CheckResult> out;
  out.push_back(oracle_equivalence());
  out.push_back(balls_vs_subsets());
  out.push_back(s_monotonicity());
  out.push_back(dimension_recovery(grid(), 0.05));
  out.push_back(dimension_recovery(cantor(), 0.05));
  out.push_back(dimension_recovery(sierpinski(), 0.10));
  out.push_back(local_global());
  out.push_back(absolute_continuity());
  out.push_back(local_equivalence());
  out.push_back(ahlfors_regularity());
  out.push_back(q_equals_dimloc());
  out.push_back(nu_lambda());
  out.push_back(sandwich());
  out.push_back(log_holder_bound());
  out.push_back(vitali());
  return out;
}

std::string format_table(const std::vector<CheckResult>& rows) {
  std::size_t wn = 8, wf = 7;
  for (const auto& r : rows) {
    wn = std::max(wn, r.name.size());
    wf = std::max(wf, r.fixture.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::string out = pad("property", wn) + "  " + pad("fixture", wf) + "  result  detail\n";
  std::size_t passed = 0;
  for (const auto& r : rows) {
    passed += r.pass ? 1 : 0;
    out += pad(r.name, wn) + "  " + pad(r.fixture, wf) + "  " + (r.pass ? "PASS  " : "FAIL  ") + "  " + r.detail +
           "\n";
  }
  out += std::to_string(passed) + "/" + std::to_string(rows.size()) + " properties passed\n";
  return out;
}

io::Json to_json(const std::vector<CheckResult>& rows) {
  io::Json j = io::Json::object();
  std::size_t passed = 0;
  io::Json arr = io::Json::array();
  for (const auto& r : rows) {
    passed += r.pass ? 1 : 0;
    arr.push_back(
        {{"property", r.name}, {"fixture", r.fixture}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
  }
  j["passed"] = passed;
  j["total"] = rows.size();
  j["pass"] = passed == rows.size();
  j["rows"] = arr;
  return j;
}

}  // namespace lochaus::verify
