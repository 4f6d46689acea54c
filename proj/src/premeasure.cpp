#include "lochaus/premeasure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "lochaus/error.hpp"

namespace lochaus {

CoverClass parse_cover_class(const std::string& s) {
  if (s == "balls") return CoverClass::balls;
  if (s == "all_subsets" || s == "subsets") return CoverClass::all_subsets;
  throw ValidationError("unknown cover class '" + s + "' (expected balls or all_subsets)");
}

SolveMode parse_solve_mode(const std::string& s) {
  if (s == "exact") return SolveMode::exact;
  if (s == "greedy") return SolveMode::greedy;
  throw ValidationError("unknown solve mode '" + s + "' (expected exact or greedy)");
}

ClampRule parse_clamp_rule(const std::string& s) {
  if (s == "additive") return ClampRule::additive;
  if (s == "max") return ClampRule::max;
  throw ValidationError("unknown clamp rule '" + s + "' (expected additive or max)");
}

std::string to_string(CoverClass c) { return c == CoverClass::balls ? "balls" : "all_subsets"; }
std::string to_string(SolveMode m) { return m == SolveMode::exact ? "exact" : "greedy"; }
std::string to_string(ClampRule c) { return c == ClampRule::additive ? "additive" : "max"; }
std::string to_string(GaugeKind k) {
  switch (k) {
    case GaugeKind::constant: return "constant_s";
    case GaugeKind::variable_centered: return "variable_centered";
    case GaugeKind::variable_inf: return "variable_inf";
    case GaugeKind::variable_sup: return "variable_sup";
    case GaugeKind::local_dim: return "local_dim";
  }
  return "?";
}

double clamp_diameter(double diameter, double resolution, ClampRule rule) {
  return rule == ClampRule::additive ? diameter + resolution : std::max(diameter, resolution);
}

PremeasureSpec PremeasureSpec::constant(double s, ClampRule clamp) {
  PremeasureSpec p;
  p.kind = GaugeKind::constant;
  p.s = s;
  p.clamp = clamp;
  return p;
}

PremeasureSpec PremeasureSpec::variable(GaugeKind kind, std::vector<double> q, ClampRule clamp) {
  if (kind == GaugeKind::constant || kind == GaugeKind::local_dim)
    throw ValidationError("variable gauge needs kind variable_centered, variable_inf or variable_sup");
  PremeasureSpec p;
  p.kind = kind;
  p.field = std::move(q);
  p.clamp = clamp;
  return p;
}

PremeasureSpec PremeasureSpec::local(std::vector<double> dims, ClampRule clamp) {
  PremeasureSpec p;
  p.kind = GaugeKind::local_dim;
  p.field = std::move(dims);
  p.clamp = clamp;
  return p;
}

void PremeasureSpec::validate(std::size_t n) const {
  if (kind == GaugeKind::constant) {
    if (!std::isfinite(s) || s < 0.0) throw ValidationError("gauge exponent s must be finite and >= 0");
    if (!field.empty()) throw ValidationError("constant gauge must not carry a per-point field");
    return;
  }
  if (field.size() != n) throw ValidationError("gauge field length must equal the point count");
  for (double v : field)
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("gauge field values must be finite and >= 0");
}

PremeasureSpec PremeasureSpec::with_exponent(double s_new) const {
  PremeasureSpec p = *this;
  p.s = s_new;
  return p;
}

double eval_tau(const PremeasureSpec& spec, const Candidate& c) {
  if (c.members.empty()) return 0.0;
  const double base = c.clamped;
  switch (spec.kind) {
    case GaugeKind::constant: return std::pow(base, spec.s);
    case GaugeKind::variable_centered: {
      if (!c.is_ball()) throw ValidationError("variable_centered gauge is defined on balls only");
      double best = std::numeric_limits<double>::infinity();
      for (auto x : c.centers) best = std::min(best, std::pow(base, spec.field[x]));
      return best;
    }
    case GaugeKind::variable_inf: {
      double e = std::numeric_limits<double>::infinity();
      c.members.for_each([&](std::size_t i) { e = std::min(e, spec.field[i]); });
      return std::pow(base, e);
    }
    case GaugeKind::variable_sup:
    case GaugeKind::local_dim: {
      double e = 0.0;
      c.members.for_each([&](std::size_t i) { e = std::max(e, spec.field[i]); });
      return std::pow(base, e);
    }
  }
  return 0.0;
}

double canonical_cost(std::vector<double> taus) {
  std::sort(taus.begin(), taus.end());
  double acc = 0.0;
  for (double t : taus) acc += t;
  return acc;
}

namespace {

void sort_by_clamped(std::vector<Candidate>& cands) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.clamped < b.clamped; });
}

std::vector<Candidate> enumerate_balls(const FiniteMetricSpace& space, const Mask& target, double delta,
                                       ClampRule rule) {
  const std::size_t n = space.size();
  const double h = space.resolution();
  std::vector<Candidate> out;
  std::unordered_map<Mask, std::size_t, MaskHash> seen;
  std::vector<std::size_t> order(n);
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = space.row(x);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return row[a] != row[b] ? row[a] < row[b] : a < b;
    });
    Mask mask(n);
    members.clear();
    double diam = 0.0;
    std::size_t pos = 0;
    while (pos < n) {
      // Add the next group of equidistant points.
      const double r = row[order[pos]];
      std::size_t end = pos;
      while (end < n && row[order[end]] == r) ++end;
      double new_diam = diam;
      for (std::size_t g = pos; g < end; ++g) {
        const std::size_t p = order[g];
        for (auto q : members) new_diam = std::max(new_diam, space.distance(p, q));
        for (std::size_t g2 = pos; g2 < g; ++g2) new_diam = std::max(new_diam, space.distance(p, order[g2]));
      }
      if (clamp_diameter(new_diam, h, rule) > delta) break;
      for (std::size_t g = pos; g < end; ++g) {
        mask.set(order[g]);
        members.push_back(order[g]);
      }
      diam = new_diam;
      pos = end;
      const double radius = pos < n ? row[order[pos]] : std::numeric_limits<double>::infinity();
      if (!mask.intersects(target)) continue;
      auto it = seen.find(mask);
      if (it == seen.end()) {
        seen.emplace(mask, out.size());
        Candidate c;
        c.members = mask;
        c.diameter = diam;
        c.clamped = clamp_diameter(diam, h, rule);
        c.centers.push_back(x);
        c.radii.push_back(radius);
        out.push_back(std::move(c));
      } else {
        out[it->second].centers.push_back(x);
        out[it->second].radii.push_back(radius);
      }
    }
  }
  sort_by_clamped(out);
  return out;
}

// Bron-Kerbosch with pivoting on at most 32 vertices.
void maximal_cliques(const std::vector<std::uint32_t>& adj, std::uint32_t R, std::uint32_t P, std::uint32_t X,
                     const std::function<void(std::uint32_t)>& emit) {
  if (P == 0 && X == 0) {
    emit(R);
    return;
  }
  std::uint32_t px = P | X;
  int best = -1;
  std::uint32_t pivot = 0;
  while (px) {
    const auto u = static_cast<std::uint32_t>(std::countr_zero(px));
    px &= px - 1;
    const int deg = std::popcount(P & adj[u]);
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  std::uint32_t cand = P & ~adj[pivot];
  while (cand) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(cand));
    cand &= cand - 1;
    const std::uint32_t bit = std::uint32_t{1} << v;
    maximal_cliques(adj, R | bit, P & adj[v], X & adj[v], emit);
    P &= ~bit;
    X |= bit;
  }
}

std::vector<Candidate> enumerate_subsets(const FiniteMetricSpace& space, const Mask& target, double delta,
                                         const PremeasureSpec& spec) {
  if (spec.kind == GaugeKind::variable_centered)
    throw ValidationError("variable_centered gauge is defined on balls only");
  const bool set_dependent = spec.uses_field();
  const Mask universe_mask = set_dependent ? Mask::full(space.size()) : target;
  const auto universe = universe_mask.indices();
  const std::size_t m = universe.size();
  if (m > kMaxSubsetUniverse)
    throw ComputeError("all_subsets cover class refuses universes above " + std::to_string(kMaxSubsetUniverse) +
                       " points (got " + std::to_string(m) + "); use --class balls");
  const double h = space.resolution();
  const ClampRule rule = spec.clamp;

  std::vector<double> thresholds{0.0};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) thresholds.push_back(space.distance(universe[a], universe[b]));
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  // Exponent levels: a filter keeps points whose exponent cannot push the
  // set's exponent past the level.
  std::vector<double> levels;
  if (set_dependent) {
    for (auto u : universe) levels.push_back(spec.field[u]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  } else {
    levels.push_back(0.0);
  }
  const bool min_based = spec.kind == GaugeKind::variable_inf;

  std::vector<Candidate> out;
  std::unordered_map<Mask, std::size_t, MaskHash> seen;
  auto add = [&](std::uint32_t local) {
    Mask mask(space.size());
    std::uint32_t w = local;
    while (w) {
      mask.set(universe[static_cast<std::size_t>(std::countr_zero(w))]);
      w &= w - 1;
    }
    if (!mask.intersects(target) || seen.count(mask)) return;
    Candidate c;
    c.members = mask;
    c.diameter = space.diameter_of(mask);
    c.clamped = clamp_diameter(c.diameter, h, rule);
    if (c.clamped > delta) return;
    seen.emplace(c.members, out.size());
    out.push_back(std::move(c));
  };
  for (std::size_t a = 0; a < m; ++a) add(std::uint32_t{1} << a);

  std::vector<std::uint32_t> adj(m);
  for (double t : thresholds) {
    if (clamp_diameter(t, h, rule) > delta) break;
    for (double e : levels) {
      std::uint32_t allowed = 0;
      for (std::size_t a = 0; a < m; ++a) {
        const bool ok = !set_dependent || (min_based ? spec.field[universe[a]] >= e : spec.field[universe[a]] <= e);
        if (ok) allowed |= std::uint32_t{1} << a;
      }
      for (std::size_t a = 0; a < m; ++a) {
        adj[a] = 0;
        if (!((allowed >> a) & 1U)) continue;
        for (std::size_t b = 0; b < m; ++b)
          if (b != a && ((allowed >> b) & 1U) && space.distance(universe[a], universe[b]) <= t)
            adj[a] |= std::uint32_t{1} << b;
      }
      maximal_cliques(adj, 0, allowed, 0, add);
    }
  }
  sort_by_clamped(out);
  return out;
}

CoverSolution solve_greedy(const std::vector<Candidate>& cands, std::size_t eligible, const std::vector<double>& taus,
                           const Mask& target) {
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t i = 0; i < eligible; ++i) {
    const std::size_t k = cands[i].members.count_and(target);
    if (k > 0) heap.emplace(taus[i] / static_cast<double>(k), i);
  }
  Mask uncovered = target;
  std::size_t remaining = uncovered.count();
  CoverSolution sol;
  std::vector<double> chosen_taus;
  // Lazy evaluation: stale rates are lower bounds because rates only grow.
  while (remaining > 0 && !heap.empty()) {
    const auto [stale, idx] = heap.top();
    heap.pop();
    (void)stale;
    const std::size_t k = cands[idx].members.count_and(uncovered);
    if (k == 0) continue;
    const Entry fresh{taus[idx] / static_cast<double>(k), idx};
    if (!heap.empty() && heap.top() < fresh) {
      heap.push(fresh);
      continue;
    }
    sol.chosen.push_back(idx);
    chosen_taus.push_back(taus[idx]);
    uncovered -= cands[idx].members;
    remaining -= k;
  }
  if (remaining > 0) {
    sol.chosen.clear();
    sol.cost = std::numeric_limits<double>::infinity();
    return sol;
  }
  sol.cost = canonical_cost(chosen_taus);
  return sol;
}

CoverSolution solve_exact(const std::vector<Candidate>& cands, std::size_t eligible, const std::vector<double>& taus,
                          const Mask& target) {
  const auto tidx = target.indices();
  const std::size_t k = tidx.size();
  if (k > kMaxExactTarget)
    throw ComputeError("exact cover mode supports at most " + std::to_string(kMaxExactTarget) +
                       " target points (got " + std::to_string(k) + "); use --mode greedy");
  CoverSolution sol;
  sol.optimal = true;
  if (k == 0) return sol;

  // Project onto target positions; keep the cheapest candidate per projection.
  std::map<std::uint32_t, std::size_t> best_for;
  for (std::size_t i = 0; i < eligible; ++i) {
    std::uint32_t pm = 0;
    for (std::size_t b = 0; b < k; ++b)
      if (cands[i].members.test(tidx[b])) pm |= std::uint32_t{1} << b;
    if (pm == 0) continue;
    auto it = best_for.find(pm);
    if (it == best_for.end() || taus[i] < taus[it->second]) best_for[pm] = i;
  }
  struct Item {
    std::uint32_t mask;
    double tau;
    std::size_t idx;
  };
  std::vector<Item> items;
  for (const auto& [pm, i] : best_for) items.push_back({pm, taus[i], i});
  std::vector<std::vector<std::size_t>> containing(k);
  for (std::size_t c = 0; c < items.size(); ++c)
    for (std::size_t b = 0; b < k; ++b)
      if ((items[c].mask >> b) & 1U) containing[b].push_back(c);
  std::vector<double> rate(k, std::numeric_limits<double>::infinity());
  for (std::size_t b = 0; b < k; ++b) {
    if (containing[b].empty()) {
      sol.optimal = true;
      sol.cost = std::numeric_limits<double>::infinity();
      return sol;
    }
    std::sort(containing[b].begin(), containing[b].end(), [&](std::size_t x, std::size_t y) {
      return std::tie(items[x].tau, x) < std::tie(items[y].tau, y);
    });
    for (auto c : containing[b])
      rate[b] = std::min(rate[b], items[c].tau / static_cast<double>(std::popcount(items[c].mask)));
  }
  // Slightly deflated so rounding can never make the bound inadmissible.
  auto bound = [&](std::uint32_t u) {
    double acc = 0.0;
    while (u) {
      acc += rate[static_cast<std::size_t>(std::countr_zero(u))];
      u &= u - 1;
    }
    return acc * (1.0 - 1e-12);
  };

  const std::uint32_t full = k == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1;
  const std::size_t states = std::size_t{1} << k;
  std::vector<double> g(states, std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> parent(states, 0);
  std::vector<std::int32_t> via(states, -1);
  using Node = std::tuple<double, double, std::uint32_t>;  // f, g, uncovered
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  g[full] = 0.0;
  open.emplace(bound(full), 0.0, full);
  while (!open.empty()) {
    const auto [f, cost, u] = open.top();
    open.pop();
    (void)f;
    if (cost > g[u]) continue;
    if (u == 0) break;
    const auto e = static_cast<std::size_t>(std::countr_zero(u));
    for (auto c : containing[e]) {
      const std::uint32_t nu = u & ~items[c].mask;
      const double ng = cost + items[c].tau;
      if (ng < g[nu]) {
        g[nu] = ng;
        parent[nu] = u;
        via[nu] = static_cast<std::int32_t>(c);
        open.emplace(ng + bound(nu), ng, nu);
      }
    }
  }
  std::vector<double> chosen_taus;
  for (std::uint32_t u = 0; u != full; u = parent[u]) {
    const auto c = static_cast<std::size_t>(via[u]);
    sol.chosen.push_back(items[c].idx);
    chosen_taus.push_back(items[c].tau);
  }
  std::reverse(sol.chosen.begin(), sol.chosen.end());
  sol.cost = canonical_cost(chosen_taus);
  return sol;
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const FiniteMetricSpace& space, const Mask& target, double delta,
                                            CoverClass cls, const PremeasureSpec& spec) {
  if (!(delta > 0.0)) throw ValidationError("cover scale delta must be positive");
  if (target.size() != space.size()) throw ValidationError("target mask size does not match the space");
  return cls == CoverClass::balls ? enumerate_balls(space, target, delta, spec.clamp)
                                  : enumerate_subsets(space, target, delta, spec);
}

CoverProblem make_cover_problem(const FiniteMetricSpace& space, const Mask& target, double delta, CoverClass cls,
                                const PremeasureSpec& spec) {
  CoverProblem p;
  p.target = target;
  p.delta = delta;
  p.cls = cls;
  p.candidates = enumerate_candidates(space, target, delta, cls, spec);
  Mask reach(space.size());
  for (const auto& c : p.candidates) reach |= c.members;
  p.feasible = target.is_subset_of(reach);
  return p;
}

CoverSolution solve_cover(const std::vector<Candidate>& candidates, std::size_t eligible,
                          const std::vector<double>& taus, const Mask& target, SolveMode mode) {
  if (target.empty()) {
    CoverSolution s;
    s.optimal = true;
    return s;
  }
  return mode == SolveMode::exact ? solve_exact(candidates, eligible, taus, target)
                                  : solve_greedy(candidates, eligible, taus, target);
}

CoverSolution min_cover_cost(const CoverProblem& problem, const PremeasureSpec& spec, SolveMode mode) {
  if (mode == SolveMode::exact && problem.target.count() > kMaxExactTarget)
    throw ComputeError("exact cover mode supports at most " + std::to_string(kMaxExactTarget) + " target points");
  std::vector<double> taus;
  taus.reserve(problem.candidates.size());
  for (const auto& c : problem.candidates) taus.push_back(eval_tau(spec, c));
  return solve_cover(problem.candidates, problem.candidates.size(), taus, problem.target, mode);
}

double premeasure_at_scale(const FiniteMetricSpace& space, const Mask& target, const PremeasureSpec& spec,
                           double delta, CoverClass cls, SolveMode mode) {
  spec.validate(space.size());
  if (delta < space.resolution())
    throw ValidationError("premeasure scale delta must be >= the sample resolution");
  if (target.empty()) return 0.0;
  const auto problem = make_cover_problem(space, target, delta, cls, spec);
  return min_cover_cost(problem, spec, mode).cost;
}

ScaleCovers::ScaleCovers(const FiniteMetricSpace& space, Mask target, double delta_max, CoverClass cls,
                         const PremeasureSpec& enumeration_spec)
    : target_(std::move(target)),
      candidates_(enumerate_candidates(space, target_, delta_max, cls, enumeration_spec)) {}

std::size_t ScaleCovers::eligible(double delta) const {
  const auto it = std::upper_bound(candidates_.begin(), candidates_.end(), delta,
                                   [](double d, const Candidate& c) { return d < c.clamped; });
  return static_cast<std::size_t>(it - candidates_.begin());
}

std::vector<double> ScaleCovers::taus(const PremeasureSpec& spec) const {
  std::vector<double> t;
  t.reserve(candidates_.size());
  for (const auto& c : candidates_) t.push_back(eval_tau(spec, c));
  return t;
}

CoverSolution ScaleCovers::solve(const std::vector<double>& taus, double delta, SolveMode mode) const {
  return solve_cover(candidates_, eligible(delta), taus, target_, mode);
}

double ScaleCovers::cost_of(const std::vector<std::size_t>& chosen, const std::vector<double>& taus) const {
  std::vector<double> t;
  t.reserve(chosen.size());
  for (auto i : chosen) t.push_back(taus[i]);
  return canonical_cost(t);
}

}  // namespace lochaus
