#pragma once

#include <cstddef>

#include "lochaus/bitmask.hpp"
#include "lochaus/metric_space.hpp"
#include "lochaus/premeasure.hpp"

// Brute-force references. Nothing here shares code with the optimized
// solvers beyond the input types: diameters, clamping and gauges are
// recomputed from the distance matrix.

namespace lochaus::oracle {

inline constexpr std::size_t kMaxTarget = 12;

/// True minimum of sum tau(U) over delta-covers of `target`, drawn from every
/// subset (all_subsets) or every open ball (center, radius) with radius taken
/// from the center's distance list plus +inf, without maximality pruning or
/// deduplication. Memoized search over uncovered masks. |target| <= 12; for
/// all_subsets with a variable gauge the whole space must also have <= 12 points.
double exhaustive_min_cover(const FiniteMetricSpace& space, const Mask& target, const PremeasureSpec& spec,
                            double delta, CoverClass cls);

struct CoveringNumber {
  std::size_t count = 0;
  bool exact = false;  // false: greedy upper bound
};

/// Fewest sets of (unclamped) diameter <= delta covering `target`. Exact for
/// |target| <= 12, greedy otherwise.
CoveringNumber covering_number(const FiniteMetricSpace& space, const Mask& target, double delta);

}  // namespace lochaus::oracle
