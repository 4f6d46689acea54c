#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "helpers.hpp"
#include "lochaus/error.hpp"
#include "lochaus/oracle.hpp"
#include "lochaus/premeasure.hpp"

using namespace lochaus;
using lochaus::test::line;
using lochaus::test::uniform_grid;

namespace {

std::size_t count_size(const std::vector<Candidate>& c, std::size_t k) {
  std::size_t n = 0;
  for (const auto& x : c) n += x.members.count() == k ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("all_subsets candidates on a 4-point line") {
  const auto X = line({0, 1, 2, 3});
  const auto spec = PremeasureSpec::constant(1.0, ClampRule::max);
  const auto c = enumerate_candidates(X, Mask::full(4), 1.5, CoverClass::all_subsets, spec);
  CHECK(c.size() == 7);
  CHECK(count_size(c, 1) == 4);
  CHECK(count_size(c, 2) == 3);
  for (const auto& x : c)
    if (x.members.count() == 2) CHECK(x.diameter == 1.0);
}

TEST_CASE("below the closest pair only singleton balls") {
  const auto X = line({0, 1, 2, 3});
  // Additive clamp: a pair costs h + h = 2 > delta.
  auto c = enumerate_candidates(X, Mask::full(4), 1.5, CoverClass::balls, PremeasureSpec::constant(1.0));
  CHECK(c.size() == 4);
  CHECK(count_size(c, 1) == 4);
  c = enumerate_candidates(X, Mask::full(4), 0.5, CoverClass::balls, PremeasureSpec::constant(1.0, ClampRule::max));
  CHECK(c.empty());
}

TEST_CASE("a candidate spans the space once delta reaches the diameter") {
  const auto X = line({0, 1, 2, 3});
  for (auto cls : {CoverClass::balls, CoverClass::all_subsets}) {
    const auto c = enumerate_candidates(X, Mask::full(4), 10.0, cls, PremeasureSpec::constant(1.0));
    CHECK(count_size(c, 4) >= 1);
  }
}

TEST_CASE("all_subsets refuses universes above 20 points") {
  const auto X = uniform_grid(21);
  CHECK_THROWS_AS(enumerate_candidates(X, Mask::full(21), 0.5, CoverClass::all_subsets, PremeasureSpec::constant(1)),
                  ComputeError);
  CHECK_NOTHROW(enumerate_candidates(X, Mask::full(21), 0.5, CoverClass::balls, PremeasureSpec::constant(1)));
}

TEST_CASE("gauge evaluation") {
  Candidate c;
  c.members = Mask(2);
  c.members.set(0);
  c.members.set(1);
  c.diameter = 0.5;
  c.clamped = 1.0;
  CHECK(eval_tau(PremeasureSpec::constant(1.0), c) == 1.0);
  c.clamped = 0.5;
  CHECK(eval_tau(PremeasureSpec::constant(0.0), c) == 1.0);
  const auto inf = PremeasureSpec::variable(GaugeKind::variable_inf, {0.5, 1.0});
  CHECK(eval_tau(inf, c) == doctest::Approx(0.70710678118).epsilon(1e-10));
  const auto sup = PremeasureSpec::variable(GaugeKind::variable_sup, {0.5, 1.0});
  CHECK(eval_tau(sup, c) == 0.5);
  CHECK(eval_tau(PremeasureSpec::local({0.5, 1.0}), c) == 0.5);
  CHECK(eval_tau(PremeasureSpec::constant(1.0), Candidate{Mask(2), 0, 0, {}, {}}) == 0.0);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(PremeasureSpec::local({1.0}).validate(2), ValidationError);
  CHECK_THROWS_AS(PremeasureSpec::local({1.0, -1.0}).validate(2), ValidationError);
  CHECK_THROWS_AS(PremeasureSpec::local({1.0, std::nan("")}).validate(2), ValidationError);
  CHECK_THROWS_AS(PremeasureSpec::constant(-0.5).validate(2), ValidationError);
  CHECK_NOTHROW(PremeasureSpec::local({1.0, 0.0}).validate(2));
}

TEST_CASE("exact cover of the 4-point line costs 2") {
  const auto X = line({0, 1, 2, 3});
  const auto spec = PremeasureSpec::constant(1.0, ClampRule::max);
  const auto p = make_cover_problem(X, Mask::full(4), 1.5, CoverClass::all_subsets, spec);
  const auto sol = min_cover_cost(p, spec, SolveMode::exact);
  CHECK(sol.cost == 2.0);
  CHECK(sol.optimal);
  CHECK(sol.chosen.size() == 2);
  CHECK(premeasure_at_scale(X, Mask::full(4), spec, 1.5, CoverClass::all_subsets, SolveMode::exact) == 2.0);
  // Additive clamp: pairs cost 1 + h = 2 > delta, so only singletons remain.
  CHECK(premeasure_at_scale(X, Mask::full(4), PremeasureSpec::constant(1.0), 1.5, CoverClass::all_subsets,
                            SolveMode::exact) == 4.0);
}

TEST_CASE("empty target and counting measure") {
  const auto X = line({0, 1, 2, 3});
  const auto spec = PremeasureSpec::constant(0.0);
  const auto p = make_cover_problem(X, Mask(4), 1.5, CoverClass::balls, spec);
  const auto sol = min_cover_cost(p, spec, SolveMode::exact);
  CHECK(sol.cost == 0.0);
  CHECK(sol.chosen.empty());
  Mask one(4);
  one.set(2);
  for (double delta : {1.0, 2.5, 100.0})
    for (auto cls : {CoverClass::balls, CoverClass::all_subsets})
      for (auto mode : {SolveMode::exact, SolveMode::greedy})
        CHECK(premeasure_at_scale(X, one, spec, delta, cls, mode) == 1.0);
}

TEST_CASE("one set covers once delta reaches the diameter") {
  const auto X = line({0, 0.25, 1, 1.5});
  const double s = 0.7;
  const auto spec = PremeasureSpec::constant(s);
  const double whole = std::pow(clamp_diameter(X.diameter(), X.resolution(), ClampRule::additive), s);
  const double v = premeasure_at_scale(X, Mask::full(4), spec, 10.0, CoverClass::balls, SolveMode::exact);
  CHECK(v <= whole);
}

TEST_CASE("premeasure requires delta at least the resolution") {
  const auto X = line({0, 1, 2});
  CHECK_THROWS_AS(premeasure_at_scale(X, Mask::full(3), PremeasureSpec::constant(1), 0.5, CoverClass::balls,
                                      SolveMode::exact),
                  ValidationError);
}

TEST_CASE("greedy never beats exact and matches the oracle bound") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + t % 7;
    const auto X = lochaus::test::random_square(n, rng);
    const double s = 2.0 * u(rng);
    const double delta = X.resolution() * 2 + u(rng) * X.diameter();
    const auto spec = PremeasureSpec::constant(s);
    for (auto cls : {CoverClass::balls, CoverClass::all_subsets}) {
      const double exact = premeasure_at_scale(X, Mask::full(n), spec, delta, cls, SolveMode::exact);
      const double greedy = premeasure_at_scale(X, Mask::full(n), spec, delta, cls, SolveMode::greedy);
      CHECK(exact == oracle::exhaustive_min_cover(X, Mask::full(n), spec, delta, cls));
      CHECK(greedy >= exact);
      CHECK(greedy <= (1.0 + std::log(static_cast<double>(n))) * exact);
    }
  }
}

TEST_CASE("exact premeasure is monotone and subadditive") {
  std::mt19937_64 rng(11);
  const auto X = lochaus::test::random_square(9, rng);
  const auto spec = PremeasureSpec::constant(0.8);
  const double delta = X.diameter() / 2;
  Mask a(9), b(9);
  for (std::size_t i = 0; i < 9; ++i) (i % 2 ? a : b).set(i);
  Mask one(9);
  one.set(1);
  const Mask a_small = a - one;
  const auto mu = [&](const Mask& m) {
    return premeasure_at_scale(X, m, spec, delta, CoverClass::balls, SolveMode::exact);
  };
  CHECK(mu(a_small) <= mu(a) + 1e-12);
  CHECK(mu(a) <= mu(a | b) + 1e-12);
  CHECK(mu(a | b) <= mu(a) + mu(b) + 1e-12);
  CHECK(canonical_cost({0.3, 0.1, 0.2}) == canonical_cost({0.2, 0.3, 0.1}));
}

TEST_CASE("infeasible covers cost infinity") {
  const auto X = line({0, 1, 2});
  CoverProblem p;
  p.target = Mask::full(3);
  p.feasible = false;
  const auto sol = min_cover_cost(p, PremeasureSpec::constant(1), SolveMode::exact);
  CHECK(std::isinf(sol.cost));
  CHECK(sol.chosen.empty());
}
