#include "lochaus/ahlfors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lochaus/error.hpp"
#include "lochaus/kernels.hpp"
#include "lochaus/regression.hpp"

namespace lochaus {

Window default_window(const FiniteMetricSpace& space) {
  const double h = space.resolution();
  const double diam = space.diameter();
  Window w{4.0 * h, diam / 4.0};
  if (!(w.lo < w.hi)) w = {h, diam};
  return w;
}

Window parse_window(const std::string& text) {
  std::istringstream is(text);
  Window w;
  char comma = 0;
  if (!(is >> w.lo >> comma >> w.hi) || comma != ',' || !is.eof())
    throw ValidationError("window must be 'lo,hi' (got '" + text + "')");
  if (!(w.lo > 0.0) || !(w.lo < w.hi) || !std::isfinite(w.hi))
    throw ValidationError("window needs 0 < lo < hi < inf");
  return w;
}

std::vector<double> window_radii(const Window& w, std::size_t n) {
  if (!(w.lo > 0.0) || !(w.lo < w.hi)) throw ValidationError("window needs 0 < lo < hi");
  if (n < 3) throw ValidationError("a window needs at least 3 radii");
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k)
    r[k] = w.lo * std::pow(w.hi / w.lo, static_cast<double>(k) / static_cast<double>(n - 1));
  r.front() = w.lo;
  r.back() = w.hi;
  return r;
}

QFitMethod parse_q_fit_method(const std::string& s) {
  if (s == "neighbourhood") return QFitMethod::neighbourhood;
  if (s == "pointwise") return QFitMethod::pointwise;
  throw ValidationError("unknown Q fit method '" + s + "' (neighbourhood|pointwise)");
}

std::string to_string(QFitMethod m) { return m == QFitMethod::pointwise ? "pointwise" : "neighbourhood"; }

double QField::bound() const {
  double m = 0.0;
  for (double v : q) m = std::max(m, v);
  return m;
}

QField fit_q_field(const FiniteMetricSpace& space, const SampledMeasure& nu, const Window& window,
                   std::size_t n_radii, QFitMethod method) {
  const std::size_t n = space.size();
  if (nu.size() != n) throw ValidationError("measure weights must match the point count");
  QField f;
  f.window = window;
  f.radii = window_radii(window, n_radii);
  f.method = method;
  f.q.assign(n, 0.0);
  f.q_stderr.assign(n, 0.0);
  f.flagged.assign(n, false);
  auto masses = kernels::ball_masses_parallel(space.matrix(), n, nu.weights(), f.radii);
  const std::size_t m = f.radii.size();
  if (method == QFitMethod::neighbourhood) {
    f.neighbourhood_radius = 2.0 * window.hi;
    masses = kernels::neighbourhood_average_parallel(space.matrix(), n, nu.weights(), masses, m,
                                                     f.neighbourhood_radius);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x, y;
    for (std::size_t k = 0; k < m; ++k) {
      const double mass = masses[i * m + k];
      if (mass > 0.0) {
        x.push_back(std::log(f.radii[k]));
        y.push_back(std::log(mass));
      }
    }
    if (x.size() < 2) {
      f.flagged[i] = true;
      continue;
    }
    const LineFit fit = fit_line(x, y);
    f.q[i] = fit.slope;
    f.q_stderr[i] = fit.slope_stderr;
  }
  return f;
}

QField constant_q_field(std::size_t n, double value, const Window& window, std::size_t n_radii) {
  if (!std::isfinite(value) || value < 0.0) throw ValidationError("Q must be finite and nonnegative");
  QField f;
  f.window = window;
  f.radii = window_radii(window, n_radii);
  f.q.assign(n, value);
  f.q_stderr.assign(n, 0.0);
  f.flagged.assign(n, false);
  return f;
}

RegularityCertificate regularity_certificate(const FiniteMetricSpace& space, const SampledMeasure& nu,
                                             const std::vector<double>& q, const Window& window,
                                             std::size_t n_radii, double threshold) {
  const std::size_t n = space.size();
  if (nu.size() != n || q.size() != n) throw ValidationError("measure and Q must match the point count");
  RegularityCertificate c;
  c.threshold = threshold;
  c.window = window;
  c.radii = window_radii(window, n_radii);
  const auto masses = kernels::ball_masses_parallel(space.matrix(), n, nu.weights(), c.radii);
  const std::size_t m = c.radii.size();
  for (std::size_t i = 0; i < n && !c.zero_mass; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const double mass = masses[i * m + k];
      const double rq = std::pow(c.radii[k], q[i]);
      if (!(mass > 0.0)) {
        c.zero_mass = true;
        c.zero_witness = {i, c.radii[k], mass, rq};
        break;
      }
      const double up = mass / rq;
      const double down = rq / mass;
      if (up > c.C1) c.worst_upper = {i, c.radii[k], mass, c.C1 = up};
      if (down > c.C2) c.worst_lower = {i, c.radii[k], mass, c.C2 = down};
    }
  }
  if (c.zero_mass) {
    c.C = std::numeric_limits<double>::infinity();
    c.pass = false;
    return c;
  }
  c.C = std::max({1.0, c.C1, c.C2});
  c.pass = c.C <= threshold;
  return c;
}

LogHolderCertificate log_holder_certificate(const FiniteMetricSpace& space, const std::vector<double>& q,
                                            double threshold, const RegularityCertificate* regularity,
                                            double slack) {
  const std::size_t n = space.size();
  if (q.size() != n) throw ValidationError("Q must match the point count");
  LogHolderCertificate c;
  c.threshold = threshold;
  c.scale = space.diameter() > 1.0 ? 1.0 / space.diameter() : 1.0;
  std::vector<double> dist = space.matrix();
  if (c.scale != 1.0)
    for (auto& d : dist) d *= c.scale;
  const auto scan = kernels::log_holder_scan_parallel(dist, n, q, 0.5);
  c.C_lh = scan.value;
  c.i = scan.i;
  c.j = scan.j;
  c.pairs = scan.pairs;
  c.distance = scan.pairs > 0 ? dist[scan.i * n + scan.j] : 0.0;
  c.pass = c.C_lh <= threshold;
  if (regularity != nullptr && !regularity->zero_mass) {
    double R = 0.0;
    for (double v : q) R = std::max(R, v);
    c.bound_checked = true;
    c.bound = std::log(regularity->C1 * regularity->C2 * std::pow(2.0, R)) + slack;
    c.bound_pass = c.C_lh <= c.bound;
  }
  return c;
}

SandwichReport variable_gauge_sandwich(const FiniteMetricSpace& space, const std::vector<double>& q, double C_lh,
                                       CoverClass cls, ClampRule clamp) {
  if (q.size() != space.size()) throw ValidationError("Q must match the point count");
  SandwichReport rep;
  rep.C_lh = C_lh;
  // Enumerate up to 1/2 and keep candidates strictly below it.
  const auto spec = PremeasureSpec::variable(GaugeKind::variable_sup, q, clamp);
  const double delta = std::max(0.5, space.resolution());
  const auto cands = enumerate_candidates(space, Mask::full(space.size()), delta, cls, spec);
  for (const auto& c : cands) {
    if (!(c.clamped < 0.5)) continue;
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = -qmin;
    c.members.for_each([&](std::size_t i) {
      qmin = std::min(qmin, q[i]);
      qmax = std::max(qmax, q[i]);
    });
    const double log_u = std::log(c.clamped);
    const double log_sup = qmax * log_u;  // log |U|^Q+
    const double log_inf = qmin * log_u;  // log |U|^Q-
    // Same expression as the pairwise scan, so the bound holds exactly.
    const double gap = (qmax - qmin) * -log_u;
    ++rep.checked;
    rep.worst_log_ratio = std::max(rep.worst_log_ratio, gap);
    if (!(log_sup <= log_inf) || !(gap <= C_lh)) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

namespace {

// Cost of covering `set` by 5r dilations of a Vitali subfamily, the way the
// upper-bound argument does: each point gets the largest ball inside the set
// whose dilation still fits the scale.
std::pair<double, std::size_t> vitali_cover_cost(const FiniteMetricSpace& space, const Mask& set,
                                                 const std::vector<double>& q, const std::vector<double>& radii,
                                                 double delta, ClampRule clamp) {
  const double h = space.resolution();
  std::vector<BallRef> family;
  set.for_each([&](std::size_t x) {
    // h / 5 always works: both the ball and its dilation are {x}.
    BallRef best = ball(space, x, h > 0.0 ? h / 5.0 : 1.0);
    for (double r : radii) {
      BallRef b = ball(space, x, r);
      if (!b.members.is_subset_of(set)) break;
      const BallRef big = ball(space, x, 5.0 * r);
      if (clamp_diameter(space.diameter_of(big.members), h, clamp) > delta) break;
      best = std::move(b);
    }
    family.push_back(std::move(best));
  });
  const auto chosen = vitali_5r_subfamily(space, family);
  std::vector<double> taus;
  for (const auto& b : chosen) {
    const BallRef big = ball(space, b.center, 5.0 * b.radius);
    taus.push_back(std::pow(clamp_diameter(space.diameter_of(big.members), h, clamp), q[b.center]));
  }
  return {canonical_cost(taus), chosen.size()};
}

}  // namespace

NuLambdaReport nu_vs_lambda_qc(const FiniteMetricSpace& space, const SampledMeasure& nu, const QField& q,
                               const RegularityCertificate& cert, const std::vector<LabeledSet>& sets, double delta,
                               SolveMode mode, double slack, ClampRule clamp) {
  if (nu.size() != space.size() || q.size() != space.size())
    throw ValidationError("measure and Q must match the point count");
  if (cert.zero_mass) throw ComputeError("regularity certificate has a zero-mass ball; no constants to compare");
  NuLambdaReport rep;
  rep.delta = delta;
  rep.slack = slack;
  rep.lower = cert.C1 > 0.0 ? 1.0 / cert.C1 : 0.0;
  rep.upper = cert.C2 * std::pow(10.0, q.bound());
  rep.pass = true;
  const auto spec = PremeasureSpec::variable(GaugeKind::variable_centered, q.q, clamp);
  for (const auto& ls : sets) {
    NuLambdaRow row;
    row.label = ls.label;
    row.nu = nu.of(ls.set);
    if (ls.set.empty()) {
      row.skipped = true;
      row.pass = true;
      rep.rows.push_back(row);
      continue;
    }
    const auto problem = make_cover_problem(space, ls.set, delta, CoverClass::balls, spec);
    row.solver_cost = min_cover_cost(problem, spec, mode).cost;
    const auto [vc, vb] = vitali_cover_cost(space, ls.set, q.q, q.radii, delta, clamp);
    row.vitali_cost = vc;
    row.vitali_balls = vb;
    row.lambda = std::min(row.solver_cost, row.vitali_cost);
    row.amenable = row.lambda > 0.0 && std::isfinite(row.lambda);
    if (!(row.nu > 0.0)) {
      row.witness = row.lambda > 0.0;
      row.skipped = !row.witness;
      row.pass = !row.witness;
    } else {
      row.ratio = row.lambda / row.nu;
      row.pass = row.amenable && row.ratio >= rep.lower - slack && row.ratio <= rep.upper + slack;
      ++rep.tested;
    }
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

QDimCheck q_equals_dimloc_check(const std::vector<double>& q, const std::vector<double>& q_stderr,
                                const std::vector<double>& d, double tol) {
  if (q.size() != d.size() || q_stderr.size() != q.size()) throw ValidationError("fields must have equal length");
  QDimCheck c;
  c.tolerance = tol;
  c.pass = true;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double diff = std::abs(q[i] - d[i]);
    c.diff.push_back(diff);
    if (diff > c.max_diff) {
      c.max_diff = diff;
      c.witness = i;
    }
    if (diff > tol + q_stderr[i]) c.pass = false;
  }
  return c;
}

QDimCheck q_equals_dimloc_check(const QField& q, const LocalDimensionField& field, double tol) {
  if (q.size() != field.size()) throw ValidationError("fields must have equal length");
  std::vector<double> qv, se, dv;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q.flagged[i] || field.flagged[i]) continue;
    qv.push_back(q.q[i]);
    se.push_back(q.q_stderr[i]);
    dv.push_back(field.values[i]);
    origin.push_back(i);
  }
  auto c = q_equals_dimloc_check(qv, se, dv, tol);
  // Back to the space's indexing; flagged points report 0.
  std::vector<double> full(q.size(), 0.0);
  for (std::size_t k = 0; k < origin.size(); ++k) full[origin[k]] = c.diff[k];
  if (!origin.empty()) c.witness = origin[c.witness];
  c.diff = std::move(full);
  return c;
}

}  // namespace lochaus
