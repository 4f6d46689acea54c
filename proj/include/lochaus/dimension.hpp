#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lochaus/bitmask.hpp"
#include "lochaus/metric_space.hpp"
#include "lochaus/premeasure.hpp"
#include "lochaus/regression.hpp"

namespace lochaus {

enum class DimensionMethod { critical_exponent, covering_slope };

DimensionMethod parse_dimension_method(const std::string& s);
std::string to_string(DimensionMethod m);

struct DimensionOptions {
  CoverClass cls = CoverClass::balls;
  SolveMode mode = SolveMode::greedy;
  ClampRule clamp = ClampRule::additive;
  DimensionMethod method = DimensionMethod::critical_exponent;
  std::size_t n_scales = 8;
  double top_fraction = 0.25;  // coarsest delta = diam * top_fraction
  double span = 64.0;          // finest delta = max(clamped pair diameter, diam / span)
  double tolerance = 1e-3;     // bisection width on s
  std::size_t s_grid_size = 9; // rows of the reported profile
};

/// Geometric delta grid, decreasing, from diam*top_fraction down to the
/// larger of diam/span and the clamped diameter of the closest pair.
/// Endpoints are exact. Empty when the space has fewer than two points.
std::vector<double> default_delta_grid(const FiniteMetricSpace& space, const DimensionOptions& opt = {});

/// cost[s][k] = premeasure of the target at scales[k] with exponent s_grid[s].
struct ScalingProfile {
  std::vector<double> scales;  // decreasing
  std::vector<double> s_grid;
  std::vector<std::vector<double>> costs;
  CoverClass cls = CoverClass::balls;
  SolveMode mode = SolveMode::greedy;
  ClampRule clamp = ClampRule::additive;

  /// Least-squares slope of log cost against log delta for row `s_index`.
  LineFit fit(std::size_t s_index) const;
};

/// Cover optimizations over a fixed delta grid, shared between exponents.
///
/// Every cover found at some (s, delta') stays valid at any delta >= delta'
/// and any exponent, so each reported cost is the cheapest among all covers
/// found so far that are admissible at that scale. With exact solves this is
/// the premeasure itself; with greedy solves it keeps rows monotone in delta
/// and in s the way true premeasures are.
class ScalingStudy {
 public:
  ScalingStudy(const FiniteMetricSpace& space, Mask target, std::vector<double> scales, CoverClass cls,
               SolveMode mode, ClampRule clamp);

  const std::vector<double>& scales() const { return scales_; }
  std::size_t target_size() const { return target_.count(); }

  /// Solve every scale at exponent s and record the covers.
  void explore(double s);
  /// Pooled costs at exponent s over the covers recorded so far.
  std::vector<double> costs(double s) const;
  /// explore(s) followed by the regression slope of the pooled row.
  LineFit slope(double s);

  ScalingProfile profile(const std::vector<double>& s_grid);

 private:
  Mask target_;
  std::vector<double> scales_;
  CoverClass cls_;
  SolveMode mode_;
  ClampRule clamp_;
  ScaleCovers covers_;
  std::vector<std::size_t> eligible_;
  // pool_[k]: covers found while solving at scales_[k]
  std::vector<std::vector<std::vector<std::size_t>>> pool_;
};

struct DimensionEstimate {
  double value = 0.0;
  double ci_halfwidth = 0.0;
  DimensionMethod method = DimensionMethod::critical_exponent;
  double upper_bound = 0.0;    // log n / log(diam / h), reported only
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::size_t evaluations = 0;
  ScalingProfile profile;
};

/// log n / log(diam / h); 0 for fewer than two points. This is the
/// box-counting ceiling of a sample that fills its diameter; samples with
/// gaps (glued pieces) legitimately exceed it, so estimates are not clamped.
double dimension_upper_bound(const FiniteMetricSpace& space);

/// The exponent at which the pooled profile slope stops being negative.
/// Below the dimension cost ~ delta^(s - dim) rises as delta shrinks; above
/// it the finest cover is cheapest at every scale and the row is flat.
DimensionEstimate critical_exponent(ScalingStudy& study, double upper_bound, const DimensionOptions& opt = {});

/// Dimension of `target` inside `space` with the default delta grid.
DimensionEstimate estimate_dimension(const FiniteMetricSpace& space, const Mask& target,
                                     const DimensionOptions& opt = {});
DimensionEstimate estimate_dimension(const FiniteMetricSpace& space, const DimensionOptions& opt = {});

struct LocalFieldOptions {
  std::size_t k_min = 16;
  std::size_t min_radii = 3;
  std::size_t max_count = 128;        // largest ball, in points
  double max_radius_fraction = 0.25;  // of diam(X)
  DimensionOptions dim;
};

struct LocalDimensionField {
  std::vector<double> values;
  std::vector<double> ci;
  std::vector<std::vector<double>> radii;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::vector<double>> estimates;  // per radius
  std::vector<bool> flagged;                   // too few neighbors or scales; value 0

  std::size_t size() const { return values.size(); }
};

/// dim_loc(x_i) as the minimum over a radius schedule of the dimension of
/// the ball subspace B_r(x_i). Radii are chosen so balls hold k_min, 2 k_min,
/// ... points up to max_count points and max_radius_fraction * diam(X).
LocalDimensionField local_dimension_field(const FiniteMetricSpace& space, const LocalFieldOptions& opt = {});

struct SemicontinuityRow {
  std::size_t point = 0;
  double radius = 0.0;        // smallest scheduled radius
  double neighbor_max = 0.0;  // max of the field over B_radius(x)
  double excess = 0.0;        // neighbor_max - value
  bool violation = false;
};

struct SemicontinuityReport {
  std::vector<SemicontinuityRow> rows;
  std::size_t violations = 0;
  double tolerance = 0.0;
};

/// Discrete upper semicontinuity: d_i >= max_{j in B_r(x_i)} d_j - tol at the
/// smallest scheduled radius r of each point.
SemicontinuityReport semicontinuity_report(const LocalDimensionField& field, const FiniteMetricSpace& space,
                                           double tolerance = 0.1);

/// sup of the field; 0 for an empty field.
double global_from_local(const LocalDimensionField& field);

}  // namespace lochaus
