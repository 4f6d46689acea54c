#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lochaus/bitmask.hpp"
#include "lochaus/metric_space.hpp"

namespace lochaus {

enum class CoverClass { all_subsets, balls };
enum class GaugeKind { constant, variable_centered, variable_inf, variable_sup, local_dim };
enum class SolveMode { exact, greedy };

/// How a set's diameter is lifted away from zero on a sample of resolution h.
///  - additive: |U| + h, so a set of sample points spans the cells of its points.
///  - max:      max(|U|, h).
enum class ClampRule { additive, max };

CoverClass parse_cover_class(const std::string& s);
SolveMode parse_solve_mode(const std::string& s);
ClampRule parse_clamp_rule(const std::string& s);
std::string to_string(CoverClass c);
std::string to_string(SolveMode m);
std::string to_string(ClampRule c);
std::string to_string(GaugeKind k);

double clamp_diameter(double diameter, double resolution, ClampRule rule);

/// The gauge tau(U) = clamped(|U|)^e(U), with the exponent chosen by kind:
///   constant           e = s
///   variable_centered  e = field[center]        (balls only; cheapest center wins)
///   variable_inf       e = min of field over U
///   variable_sup       e = max of field over U
///   local_dim          e = max of field over U  (dim(U) as sup of local dimensions)
struct PremeasureSpec {
  GaugeKind kind = GaugeKind::constant;
  double s = 0.0;
  std::vector<double> field;
  ClampRule clamp = ClampRule::additive;

  static PremeasureSpec constant(double s, ClampRule clamp = ClampRule::additive);
  static PremeasureSpec variable(GaugeKind kind, std::vector<double> q, ClampRule clamp = ClampRule::additive);
  static PremeasureSpec local(std::vector<double> dims, ClampRule clamp = ClampRule::additive);

  bool uses_field() const { return kind != GaugeKind::constant; }
  /// Throws ValidationError if fields are missing, extra, negative or non-finite.
  void validate(std::size_t n) const;
  PremeasureSpec with_exponent(double s_new) const;
};

/// A cover element: an arbitrary subset, or a ball with every (center, radius)
/// pair that realizes the same member set.
struct Candidate {
  Mask members;
  double diameter = 0.0;
  double clamped = 0.0;
  std::vector<std::size_t> centers;
  std::vector<double> radii;

  bool is_ball() const { return !centers.empty(); }
};

double eval_tau(const PremeasureSpec& spec, const Candidate& candidate);

/// Candidate sets meeting `target` with clamped diameter <= delta, sorted by
/// clamped diameter (stable in generation order).
///
/// balls: every open ball centered at a sample point, one per distinct mask.
/// all_subsets: singletons plus the inclusion-maximal sets of diameter <= t
/// for every distance threshold t (and, for set-dependent exponents, every
/// exponent level). Any feasible set is contained in one of these with no
/// larger gauge. The universe is `target` for the constant gauge and the
/// whole space otherwise; both refuse universes above 20 points.
std::vector<Candidate> enumerate_candidates(const FiniteMetricSpace& space, const Mask& target, double delta,
                                            CoverClass cls, const PremeasureSpec& spec);

inline constexpr std::size_t kMaxSubsetUniverse = 20;
inline constexpr std::size_t kMaxExactTarget = 20;

struct CoverProblem {
  Mask target;
  double delta = 0.0;
  CoverClass cls = CoverClass::balls;
  std::vector<Candidate> candidates;
  /// False when some target point lies in no candidate (premeasure is +inf).
  bool feasible = true;
};

CoverProblem make_cover_problem(const FiniteMetricSpace& space, const Mask& target, double delta, CoverClass cls,
                                const PremeasureSpec& spec);

struct CoverSolution {
  std::vector<std::size_t> chosen;
  double cost = 0.0;
  bool optimal = false;
};

/// Sum of gauges in ascending order, so equal multisets give equal costs.
double canonical_cost(std::vector<double> taus);

/// Minimum-cost cover of the target. Exact mode is best-first branch and
/// bound over uncovered-point bitmasks with the cheapest-rate lower bound;
/// greedy picks min tau / |new points| each round (ties: lower index).
CoverSolution min_cover_cost(const CoverProblem& problem, const PremeasureSpec& spec, SolveMode mode);

/// Same as above restricted to the first `eligible` candidates, with gauges precomputed.
CoverSolution solve_cover(const std::vector<Candidate>& candidates, std::size_t eligible,
                          const std::vector<double>& taus, const Mask& target, SolveMode mode);

/// mu*_{tau,delta}(A). Requires delta >= resolution.
double premeasure_at_scale(const FiniteMetricSpace& space, const Mask& target, const PremeasureSpec& spec,
                           double delta, CoverClass cls, SolveMode mode);

/// Candidates enumerated once at the coarsest scale and reused at finer ones.
class ScaleCovers {
 public:
  ScaleCovers(const FiniteMetricSpace& space, Mask target, double delta_max, CoverClass cls,
              const PremeasureSpec& enumeration_spec);

  const std::vector<Candidate>& candidates() const { return candidates_; }
  const Mask& target() const { return target_; }
  /// Number of leading candidates with clamped diameter <= delta.
  std::size_t eligible(double delta) const;
  std::vector<double> taus(const PremeasureSpec& spec) const;
  CoverSolution solve(const std::vector<double>& taus, double delta, SolveMode mode) const;
  double cost_of(const std::vector<std::size_t>& chosen, const std::vector<double>& taus) const;

 private:
  Mask target_;
  std::vector<Candidate> candidates_;
};

}  // namespace lochaus
