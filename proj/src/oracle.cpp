#include "lochaus/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "lochaus/error.hpp"

namespace lochaus::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Item {
  std::uint32_t bits;  // projection onto the target
  double tau;
};

double raw_diameter(const FiniteMetricSpace& space, const std::vector<std::size_t>& members) {
  double d = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) d = std::max(d, space.distance(members[a], members[b]));
  return d;
}

double clamped(double diam, double h, ClampRule rule) { return rule == ClampRule::additive ? diam + h : std::max(diam, h); }

double exponent(const PremeasureSpec& spec, const std::vector<std::size_t>& members, std::size_t center) {
  switch (spec.kind) {
    case GaugeKind::constant: return spec.s;
    case GaugeKind::variable_centered: return spec.field[center];
    case GaugeKind::variable_inf: {
      double e = kInf;
      for (auto i : members) e = std::min(e, spec.field[i]);
      return e;
    }
    case GaugeKind::variable_sup:
    case GaugeKind::local_dim: {
      double e = -kInf;
      for (auto i : members) e = std::max(e, spec.field[i]);
      return e;
    }
  }
  return 0.0;
}

std::uint32_t project(const std::vector<std::size_t>& members, const std::vector<int>& slot) {
  std::uint32_t b = 0;
  for (auto i : members)
    if (slot[i] >= 0) b |= std::uint32_t{1} << slot[i];
  return b;
}

// Minimum over covers, reconstructed so the cost is summed in ascending order
// like the solvers report it.
double cheapest_cover(const std::vector<Item>& items, std::size_t k) {
  const std::uint32_t full = k == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1;
  std::vector<double> best(std::size_t{1} << k, kInf);
  std::vector<int> pick(best.size(), -1);
  best[0] = 0.0;
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    for (std::size_t c = 0; c < items.size(); ++c) {
      if (!(items[c].bits & low)) continue;
      const double v = items[c].tau + best[m & ~items[c].bits];
      if (v < best[m]) {
        best[m] = v;
        pick[m] = static_cast<int>(c);
      }
    }
  }
  if (!std::isfinite(best[full])) return kInf;
  std::vector<double> taus;
  for (std::uint32_t m = full; m != 0;) {
    const auto& it = items[static_cast<std::size_t>(pick[m])];
    taus.push_back(it.tau);
    m &= ~it.bits;
  }
  std::sort(taus.begin(), taus.end());
  double acc = 0.0;
  for (double t : taus) acc += t;
  return acc;
}

}  // namespace

double exhaustive_min_cover(const FiniteMetricSpace& space, const Mask& target, const PremeasureSpec& spec,
                            double delta, CoverClass cls) {
  spec.validate(space.size());
  const auto tidx = target.indices();
  if (tidx.size() > kMaxTarget)
    throw ComputeError("exhaustive oracle supports at most " + std::to_string(kMaxTarget) + " target points");
  if (tidx.empty()) return 0.0;
  const std::size_t n = space.size();
  const double h = space.resolution();
  std::vector<int> slot(n, -1);
  for (std::size_t a = 0; a < tidx.size(); ++a) slot[tidx[a]] = static_cast<int>(a);

  std::vector<Item> items;
  auto add = [&](const std::vector<std::size_t>& members, std::size_t center) {
    const std::uint32_t bits = project(members, slot);
    if (bits == 0) return;
    const double c = clamped(raw_diameter(space, members), h, spec.clamp);
    if (c > delta) return;
    items.push_back({bits, std::pow(c, exponent(spec, members, center))});
  };

  if (cls == CoverClass::all_subsets) {
    if (spec.kind == GaugeKind::variable_centered)
      throw ValidationError("variable_centered gauge is defined on balls only");
    // Every subset of the space when it is small enough; otherwise subsets of
    // the target, which suffice for a constant exponent.
    std::vector<std::size_t> universe;
    if (n <= kMaxTarget) {
      for (std::size_t i = 0; i < n; ++i) universe.push_back(i);
    } else if (spec.kind == GaugeKind::constant) {
      universe = tidx;
    } else {
      throw ComputeError("exhaustive oracle with a variable gauge needs at most " + std::to_string(kMaxTarget) +
                         " points in the space");
    }
    const std::size_t u = universe.size();
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << u); ++m) {
      std::vector<std::size_t> members;
      for (std::size_t a = 0; a < u; ++a)
        if (m >> a & 1U) members.push_back(universe[a]);
      add(members, 0);
    }
  } else {
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<double> radii(space.row(c).begin(), space.row(c).end());
      radii.push_back(kInf);
      for (double r : radii) {
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < n; ++j)
          if (space.distance(c, j) < r) members.push_back(j);
        if (!members.empty()) add(members, c);
      }
    }
  }
  return cheapest_cover(items, tidx.size());
}

CoveringNumber covering_number(const FiniteMetricSpace& space, const Mask& target, double delta) {
  const auto tidx = target.indices();
  const std::size_t k = tidx.size();
  CoveringNumber out;
  if (k == 0) {
    out.exact = true;
    return out;
  }
  if (k <= kMaxTarget) {
    // Subsets of the target suffice: intersecting with it never grows a diameter.
    std::vector<Item> items;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << k); ++m) {
      std::vector<std::size_t> members;
      for (std::size_t a = 0; a < k; ++a)
        if (m >> a & 1U) members.push_back(tidx[a]);
      if (raw_diameter(space, members) <= delta) items.push_back({m, 1.0});
    }
    out.count = static_cast<std::size_t>(cheapest_cover(items, k));
    out.exact = true;
    return out;
  }
  // Greedy: grow a set from the first uncovered point by nearest uncovered
  // neighbours while the diameter stays within delta.
  std::vector<bool> covered(space.size(), false);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t x = tidx[a];
    if (covered[x]) continue;
    std::vector<std::size_t> rest;
    for (std::size_t b = a + 1; b < k; ++b)
      if (!covered[tidx[b]] && space.distance(x, tidx[b]) <= delta) rest.push_back(tidx[b]);
    std::stable_sort(rest.begin(), rest.end(),
                     [&](std::size_t p, std::size_t q) { return space.distance(x, p) < space.distance(x, q); });
    std::vector<std::size_t> members{x};
    for (auto y : rest) {
      bool fits = true;
      for (auto m : members)
        if (space.distance(m, y) > delta) {
          fits = false;
          break;
        }
      if (fits) members.push_back(y);
    }
    for (auto m : members) covered[m] = true;
    ++out.count;
  }
  return out;
}

}  // namespace lochaus::oracle
