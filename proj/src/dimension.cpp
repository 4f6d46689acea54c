#include "lochaus/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lochaus/error.hpp"

namespace lochaus {

namespace {

constexpr double kFlatSlope = 1e-9;
constexpr double kMaxBracket = 64.0;

}  // namespace

DimensionMethod parse_dimension_method(const std::string& s) {
  if (s == "critical_exponent") return DimensionMethod::critical_exponent;
  if (s == "covering_slope") return DimensionMethod::covering_slope;
  throw ValidationError("unknown dimension method '" + s + "' (expected critical_exponent or covering_slope)");
}

std::string to_string(DimensionMethod m) {
  return m == DimensionMethod::critical_exponent ? "critical_exponent" : "covering_slope";
}

std::vector<double> default_delta_grid(const FiniteMetricSpace& space, const DimensionOptions& opt) {
  if (space.size() < 2) return {};
  const double h = space.resolution();
  const double diam = space.diameter();
  // Below the clamped diameter of the closest pair only singletons are
  // admissible, and that cover says nothing about the geometry.
  const double lo = std::max(clamp_diameter(h, h, opt.clamp), diam / opt.span);
  double hi = diam * opt.top_fraction;
  if (hi <= lo) hi = diam;
  if (hi <= lo || opt.n_scales < 2) return {lo};
  std::vector<double> d(opt.n_scales);
  const double m = static_cast<double>(opt.n_scales - 1);
  for (std::size_t k = 0; k < opt.n_scales; ++k) d[k] = hi * std::pow(lo / hi, static_cast<double>(k) / m);
  d.front() = hi;
  d.back() = lo;
  // A nearly degenerate range can round adjacent scales together.
  d.erase(std::unique(d.begin(), d.end(), [](double a, double b) { return !(b < a); }), d.end());
  return d;
}

LineFit ScalingProfile::fit(std::size_t s_index) const {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    x.push_back(std::log(scales[k]));
    y.push_back(std::log(costs.at(s_index)[k]));
  }
  return fit_line(x, y);
}

ScalingStudy::ScalingStudy(const FiniteMetricSpace& space, Mask target, std::vector<double> scales, CoverClass cls,
                           SolveMode mode, ClampRule clamp)
    : target_(std::move(target)),
      scales_(std::move(scales)),
      cls_(cls),
      mode_(mode),
      clamp_(clamp),
      covers_(space, target_, scales_.empty() ? 0.0 : scales_.front(), cls, PremeasureSpec::constant(0.0, clamp)),
      pool_(scales_.size()) {
  for (std::size_t k = 1; k < scales_.size(); ++k)
    if (!(scales_[k] < scales_[k - 1])) throw ValidationError("scaling profile deltas must be strictly decreasing");
  if (!scales_.empty() && space.size() > 1 && scales_.back() < space.resolution())
    throw ValidationError("scaling profile deltas must be >= the resolution of the space");
  for (double d : scales_) eligible_.push_back(covers_.eligible(d));
}

void ScalingStudy::explore(double s) {
  const auto taus = covers_.taus(PremeasureSpec::constant(s, clamp_));
  for (std::size_t k = 0; k < scales_.size(); ++k) {
    auto sol = solve_cover(covers_.candidates(), eligible_[k], taus, target_, mode_);
    if (!std::isfinite(sol.cost)) continue;  // infeasible: nothing to pool
    auto& bucket = pool_[k];
    if (std::find(bucket.begin(), bucket.end(), sol.chosen) == bucket.end()) bucket.push_back(std::move(sol.chosen));
  }
}

std::vector<double> ScalingStudy::costs(double s) const {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> row(scales_.size(), inf);
  if (target_.empty()) {
    std::fill(row.begin(), row.end(), 0.0);
    return row;
  }
  const auto taus = covers_.taus(PremeasureSpec::constant(s, clamp_));
  // A cover found at scales_[j] is admissible at every coarser scale k <= j.
  double best = inf;
  for (std::size_t j = scales_.size(); j-- > 0;) {
    for (const auto& chosen : pool_[j]) best = std::min(best, covers_.cost_of(chosen, taus));
    row[j] = best;
  }
  return row;
}

LineFit ScalingStudy::slope(double s) {
  explore(s);
  const auto row = costs(s);
  std::vector<double> x, y;
  for (std::size_t k = 0; k < scales_.size(); ++k) {
    if (!std::isfinite(row[k]) || !(row[k] > 0.0)) continue;
    x.push_back(std::log(scales_[k]));
    y.push_back(std::log(row[k]));
  }
  if (x.size() < 2) throw ComputeError("all profile costs are infinite or zero; no slope to fit");
  return fit_line(x, y);
}

ScalingProfile ScalingStudy::profile(const std::vector<double>& s_grid) {
  for (double s : s_grid) explore(s);
  ScalingProfile p;
  p.scales = scales_;
  p.s_grid = s_grid;
  p.cls = cls_;
  p.mode = mode_;
  p.clamp = clamp_;
  for (double s : s_grid) p.costs.push_back(costs(s));
  return p;
}

double dimension_upper_bound(const FiniteMetricSpace& space) {
  if (space.size() < 2) return 0.0;
  const double ratio = space.diameter() / space.resolution();
  if (!(ratio > 1.0)) return 0.0;
  return std::log(static_cast<double>(space.size())) / std::log(ratio);
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

}  // namespace

DimensionEstimate critical_exponent(ScalingStudy& study, double upper_bound, const DimensionOptions& opt) {
  DimensionEstimate est;
  est.method = opt.method;
  est.upper_bound = upper_bound;
  const double grid_top = upper_bound > 0.0 ? 2.0 * upper_bound : 1.0;
  if (study.target_size() <= 1) {
    est.profile = study.profile(linspace(0.0, grid_top, opt.s_grid_size));
    return est;
  }
  if (study.scales().size() < 4)
    throw ComputeError("scaling profile needs at least 4 scales (got " + std::to_string(study.scales().size()) +
                       "); the sample is too small to estimate a dimension");

  const LineFit at_zero = study.slope(0.0);
  ++est.evaluations;
  if (opt.method == DimensionMethod::covering_slope) {
    est.value = std::max(0.0, -at_zero.slope);
    est.ci_halfwidth = at_zero.slope_stderr;
    est.bracket_lo = est.bracket_hi = est.value;
  } else if (at_zero.slope >= -kFlatSlope) {
    // The covering count does not grow: no scale separates the points.
    est.ci_halfwidth = at_zero.slope_stderr;
  } else {
    double lo = 0.0;
    double hi = std::max(1.0, grid_top);
    for (;;) {
      const LineFit f = study.slope(hi);
      ++est.evaluations;
      if (f.slope >= -kFlatSlope) break;
      lo = hi;
      hi *= 2.0;
      if (hi > kMaxBracket)
        throw ComputeError("no exponent bracket below " + std::to_string(kMaxBracket) +
                           "; widen the s range or check the delta grid");
    }
    while (hi - lo > opt.tolerance) {
      const double mid = 0.5 * (lo + hi);
      const LineFit f = study.slope(mid);
      ++est.evaluations;
      if (f.slope < -kFlatSlope)
        lo = mid;
      else
        hi = mid;
    }
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.value = 0.5 * (lo + hi);
    // d slope / d s is 1 along the scaling law, so the stderr is already in
    // s units. Near the crossing rows are almost flat and their stderr says
    // little; the counting row at s = 0 measures how far from a power law
    // the sample is.
    est.ci_halfwidth = std::max(0.5 * (hi - lo), at_zero.slope_stderr);
  }
  est.profile = study.profile(linspace(0.0, grid_top, opt.s_grid_size));
  return est;
}

DimensionEstimate estimate_dimension(const FiniteMetricSpace& space, const Mask& target,
                                     const DimensionOptions& opt) {
  if (target.count() <= 1) {
    DimensionEstimate est;
    est.method = opt.method;
    return est;
  }
  // Scales and the sanity bound come from the target's own geometry.
  const FiniteMetricSpace sub = space.subspace(target);
  ScalingStudy study(space, target, default_delta_grid(sub, opt), opt.cls, opt.mode, opt.clamp);
  return critical_exponent(study, dimension_upper_bound(sub), opt);
}

DimensionEstimate estimate_dimension(const FiniteMetricSpace& space, const DimensionOptions& opt) {
  return estimate_dimension(space, Mask::full(space.size()), opt);
}

namespace {

// Radius whose open ball holds exactly the points at distance <= sorted[k-1].
double radius_for_count(const std::vector<double>& sorted, std::size_t k) {
  const double d = sorted[k - 1];
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), d);
  return it == sorted.end() ? 2.0 * d + 1.0 : *it;
}

}  // namespace

LocalDimensionField local_dimension_field(const FiniteMetricSpace& space, const LocalFieldOptions& opt) {
  const std::size_t n = space.size();
  LocalDimensionField field;
  field.values.assign(n, 0.0);
  field.ci.assign(n, 0.0);
  field.radii.assign(n, {});
  field.counts.assign(n, {});
  field.estimates.assign(n, {});
  field.flagged.assign(n, false);
  if (n == 0) return field;
  const double r_cap = opt.max_radius_fraction * space.diameter();
  const std::size_t k_min = std::max<std::size_t>(opt.k_min, 2);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> sorted(space.row(i).begin(), space.row(i).end());
    std::sort(sorted.begin(), sorted.end());
    const auto k_max = std::min(
        opt.max_count, static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), r_cap) - sorted.begin()));
    if (k_max < k_min) {
      field.flagged[i] = true;
      continue;
    }
    // Counts k_min, 2 k_min, ... up to k_max, spread geometrically when that
    // gives fewer than min_radii of them.
    const double span = static_cast<double>(k_max) / static_cast<double>(k_min);
    const std::size_t steps =
        std::max<std::size_t>(opt.min_radii, static_cast<std::size_t>(std::floor(std::log2(span))) + 1);
    std::vector<double> radii;
    for (std::size_t j = 0; j < steps; ++j) {
      const double t = steps == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(steps - 1);
      const auto k = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::llround(static_cast<double>(k_min) * std::pow(span, t))), k_min, k_max);
      const double r = radius_for_count(sorted, k);
      if (radii.empty() || r > radii.back()) radii.push_back(r);
    }
    double best = std::numeric_limits<double>::infinity();
    double best_ci = 0.0;
    for (double r : radii) {
      const BallRef b = ball(space, i, r);
      DimensionEstimate est;
      try {
        est = estimate_dimension(space.subspace(b.members), opt.dim);
      } catch (const ComputeError&) {
        continue;  // too few distinct scales inside this ball
      }
      field.radii[i].push_back(r);
      field.counts[i].push_back(b.members.count());
      field.estimates[i].push_back(est.value);
      if (est.value < best) {
        best = est.value;
        best_ci = est.ci_halfwidth;
      }
    }
    if (!std::isfinite(best)) {
      field.flagged[i] = true;
      continue;
    }
    field.values[i] = best;
    field.ci[i] = best_ci;
  }
  return field;
}

SemicontinuityReport semicontinuity_report(const LocalDimensionField& field, const FiniteMetricSpace& space,
                                           double tolerance) {
  SemicontinuityReport rep;
  rep.tolerance = tolerance;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.flagged[i] || field.radii[i].empty()) continue;
    SemicontinuityRow row;
    row.point = i;
    row.radius = field.radii[i].front();
    row.neighbor_max = field.values[i];
    const auto d = space.row(i);
    for (std::size_t j = 0; j < field.size(); ++j)
      if (d[j] < row.radius && !field.flagged[j]) row.neighbor_max = std::max(row.neighbor_max, field.values[j]);
    row.excess = row.neighbor_max - field.values[i];
    row.violation = row.excess > tolerance;
    if (row.violation) ++rep.violations;
    rep.rows.push_back(row);
  }
  return rep;
}

double global_from_local(const LocalDimensionField& field) {
  double m = 0.0;
  for (double v : field.values) m = std::max(m, v);
  return m;
}

}  // namespace lochaus
