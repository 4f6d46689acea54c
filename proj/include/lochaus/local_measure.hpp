#pragma once

#include <string>
#include <vector>

#include "lochaus/bitmask.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/metric_space.hpp"
#include "lochaus/premeasure.hpp"

namespace lochaus {

/// Premeasure of a set under the local gauge |U|^dim(U), dim(U) = max of the field over U.
/// all_subsets gives the H_loc-style value, balls the lambda_loc-style value.
struct MeasureEstimate {
  Mask set;
  double value = 0.0;
  double delta = 0.0;
  CoverClass cls = CoverClass::balls;
  SolveMode mode = SolveMode::greedy;
  bool optimal = false;
  PremeasureSpec spec;
  std::vector<std::size_t> cover;  // candidate indices of the chosen cover
  std::vector<Mask> cover_sets;
};

MeasureEstimate local_hausdorff_measure(const FiniteMetricSpace& space, const Mask& set,
                                        const std::vector<double>& field, double delta, CoverClass cls,
                                        SolveMode mode, ClampRule clamp = ClampRule::additive);

struct EquivalenceRow {
  double delta = 0.0;
  double h_loc = 0.0;           // all_subsets at delta
  double lambda_loc = 0.0;      // balls at delta
  double lambda_loc_4 = 0.0;    // balls at 4 delta
  double ratio = 0.0;           // lambda_loc_4 / h_loc, or the absolute value when h_loc = 0
  bool ratio_is_absolute = false;
  bool pass = false;
};

struct EquivalenceReport {
  double dim_estimate = 0.0;
  double bound = 0.0;  // 4^dim_estimate
  double tolerance = 0.0;
  std::vector<EquivalenceRow> rows;
  bool pass = false;
};

/// lambda_loc(4 delta) <= 4^dim(X) H_loc(delta) and H_loc(delta) <= lambda_loc(delta) per delta.
/// dim(X) defaults to the max of the field, the sup of the local dimensions.
EquivalenceReport equivalence_ratio_local(const FiniteMetricSpace& space, const Mask& set,
                                          const std::vector<double>& field, const std::vector<double>& deltas,
                                          SolveMode mode, double dim_estimate = -1.0, double tolerance = 1e-9,
                                          ClampRule clamp = ClampRule::additive);

struct ProbeRow {
  std::string label;
  Mask set;
  double h_loc = 0.0;      // local gauge, requested class
  double lambda_loc = 0.0; // local gauge, balls
  double h_d0 = 0.0;       // constant gauge d0, requested class
  bool small = false;      // h_loc < epsilon
  bool pass = true;
};

struct ProbeOptions {
  CoverClass cls = CoverClass::balls;
  SolveMode mode = SolveMode::greedy;
  ClampRule clamp = ClampRule::additive;
  double delta = 0.0;    // normalized units; 0 picks the finest default scale
  double epsilon = 0.0;  // 0 picks 10 n h^d0 (normalized h)
  double tolerance = 1e-9;
};

struct ProbeReport {
  double d0 = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double scale = 1.0;  // distances were multiplied by this to normalize diam to 1
  CoverClass cls = CoverClass::balls;
  std::vector<ProbeRow> rows;
  bool pass = true;
};

struct LabeledSet {
  std::string label;
  Mask set;
};

/// H^{d0} << H_loc at desk scale: whenever the local measure of N is below
/// epsilon so is its H^{d0} premeasure. The space is normalized to diameter 1
/// so every cover element has |U| < 1. H^{d0} is evaluated as the better of
/// its own cover and the local cover re-priced with exponent d0, which is
/// the chain the proof uses.
ProbeReport absolute_continuity_probe(const FiniteMetricSpace& space, const std::vector<LabeledSet>& sets,
                                      double d0, const std::vector<double>& field, const ProbeOptions& opt = {});

}  // namespace lochaus
