#include "lochaus/local_measure.hpp"

#include <algorithm>
#include <cmath>

#include "lochaus/error.hpp"

namespace lochaus {

MeasureEstimate local_hausdorff_measure(const FiniteMetricSpace& space, const Mask& set,
                                        const std::vector<double>& field, double delta, CoverClass cls,
                                        SolveMode mode, ClampRule clamp) {
  MeasureEstimate est;
  est.set = set;
  est.delta = delta;
  est.cls = cls;
  est.mode = mode;
  est.spec = PremeasureSpec::local(field, clamp);
  est.spec.validate(space.size());
  if (delta < space.resolution()) throw ValidationError("premeasure scale delta must be >= the sample resolution");
  if (set.empty()) {
    est.optimal = true;
    return est;
  }
  const auto problem = make_cover_problem(space, set, delta, cls, est.spec);
  const auto sol = min_cover_cost(problem, est.spec, mode);
  est.value = sol.cost;
  est.optimal = sol.optimal;
  est.cover = sol.chosen;
  for (auto i : sol.chosen) est.cover_sets.push_back(problem.candidates[i].members);
  return est;
}

EquivalenceReport equivalence_ratio_local(const FiniteMetricSpace& space, const Mask& set,
                                          const std::vector<double>& field, const std::vector<double>& deltas,
                                          SolveMode mode, double dim_estimate, double tolerance, ClampRule clamp) {
  EquivalenceReport rep;
  if (dim_estimate < 0.0) {
    dim_estimate = 0.0;
    for (double v : field) dim_estimate = std::max(dim_estimate, v);
  }
  if (!std::isfinite(dim_estimate)) throw ValidationError("dimension estimate must be finite");
  rep.dim_estimate = dim_estimate;
  rep.bound = std::pow(4.0, dim_estimate);
  rep.tolerance = tolerance;
  rep.pass = true;
  for (double d : deltas) {
    EquivalenceRow row;
    row.delta = d;
    row.h_loc = local_hausdorff_measure(space, set, field, d, CoverClass::all_subsets, mode, clamp).value;
    row.lambda_loc = local_hausdorff_measure(space, set, field, d, CoverClass::balls, mode, clamp).value;
    row.lambda_loc_4 = local_hausdorff_measure(space, set, field, 4.0 * d, CoverClass::balls, mode, clamp).value;
    const bool ordered = row.h_loc <= row.lambda_loc + tolerance;
    if (row.h_loc > 0.0) {
      row.ratio = row.lambda_loc_4 / row.h_loc;
      row.pass = ordered && row.ratio <= rep.bound + tolerance;
    } else {
      // Nothing to divide by: compare absolute values instead.
      row.ratio = row.lambda_loc_4;
      row.ratio_is_absolute = true;
      row.pass = ordered && row.lambda_loc_4 <= tolerance;
    }
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

ProbeReport absolute_continuity_probe(const FiniteMetricSpace& space, const std::vector<LabeledSet>& sets,
                                      double d0, const std::vector<double>& field, const ProbeOptions& opt) {
  if (!std::isfinite(d0) || d0 < 0.0) throw ValidationError("d0 must be finite and nonnegative");
  if (field.size() != space.size()) throw ValidationError("dimension field length must match the point count");
  ProbeReport rep;
  rep.d0 = d0;
  rep.cls = opt.cls;
  rep.scale = space.diameter() > 0.0 ? 1.0 / space.diameter() : 1.0;
  const FiniteMetricSpace unit = space.scaled(rep.scale);
  const double h = unit.resolution();
  const double n = static_cast<double>(unit.size());
  if (opt.delta > 0.0) {
    rep.delta = opt.delta;
  } else {
    const auto grid = default_delta_grid(unit);
    rep.delta = grid.empty() ? 1.0 : grid.back();
  }
  rep.epsilon = opt.epsilon > 0.0 ? opt.epsilon : 10.0 * n * std::pow(std::max(h, 1e-300), d0);

  const auto constant = PremeasureSpec::constant(d0, opt.clamp);
  for (const auto& ls : sets) {
    ProbeRow row;
    row.label = ls.label;
    row.set = ls.set;
    if (!ls.set.empty()) {
      const auto loc = local_hausdorff_measure(unit, ls.set, field, rep.delta, opt.cls, opt.mode, opt.clamp);
      row.h_loc = loc.value;
      row.lambda_loc = opt.cls == CoverClass::balls
                           ? loc.value
                           : local_hausdorff_measure(unit, ls.set, field, rep.delta, CoverClass::balls, opt.mode,
                                                     opt.clamp)
                                 .value;
      const auto problem = make_cover_problem(unit, ls.set, rep.delta, opt.cls, constant);
      row.h_d0 = min_cover_cost(problem, constant, opt.mode).cost;
      // The local cover is a delta-cover too; price it with exponent d0.
      std::vector<double> taus;
      for (const auto& m : loc.cover_sets) {
        Candidate c;
        c.members = m;
        c.diameter = unit.diameter_of(m);
        c.clamped = clamp_diameter(c.diameter, h, opt.clamp);
        taus.push_back(eval_tau(constant, c));
      }
      if (!loc.cover_sets.empty()) row.h_d0 = std::min(row.h_d0, canonical_cost(taus));
    }
    row.small = row.h_loc < rep.epsilon;
    row.pass = !row.small || row.h_d0 <= rep.epsilon + opt.tolerance;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace lochaus
