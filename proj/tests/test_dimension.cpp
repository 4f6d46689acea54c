#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/oracle.hpp"
#include "lochaus/spaces.hpp"

using namespace lochaus;
using lochaus::test::uniform_grid;

TEST_CASE("scaling profile on the 9-point grid") {
  const auto X = uniform_grid(9);
  const Mask all = Mask::full(9);
  ScalingStudy study(X, all, {0.5, 0.25}, CoverClass::all_subsets, SolveMode::exact, ClampRule::additive);
  const auto p = study.profile({0.0, 1.0, 3.0});
  REQUIRE(p.costs.size() == 3);
  // s = 1: flat in delta (additive clamp makes every cover cost 9/8).
  CHECK(p.costs[1][0] == doctest::Approx(9.0 / 8));
  CHECK(p.costs[1][1] == doctest::Approx(9.0 / 8));
  // s = 0: covering counts, growing as delta shrinks.
  for (std::size_t k = 0; k < 2; ++k)
    CHECK(p.costs[0][k] == oracle::exhaustive_min_cover(X, all, PremeasureSpec::constant(0), p.scales[k],
                                                         CoverClass::all_subsets));
  CHECK(p.costs[0][1] > p.costs[0][0]);
  // s well above 1: singletons are already cheapest, so the row cannot grow as delta shrinks.
  CHECK(p.costs[2][1] <= p.costs[2][0]);
  CHECK(p.costs[2][1] < p.costs[1][1]);
}

TEST_CASE("default delta grid") {
  const auto X = uniform_grid(257);
  const auto g = default_delta_grid(X);
  REQUIRE(g.size() == 8);
  CHECK(g.front() == doctest::Approx(0.25));
  CHECK(g.back() == doctest::Approx(1.0 / 64));
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] < g[k - 1]);
  CHECK(default_delta_grid(uniform_grid(2)).size() >= 1);
  CHECK(default_delta_grid(lochaus::test::line({1.0})).empty());
}

TEST_CASE("critical exponent of the 9-point grid") {
  const auto est = estimate_dimension(uniform_grid(9));
  CHECK(est.value == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("critical exponent of the depth-6 Cantor sample") {
  const auto g = generate(GeneratorSpec::cantor(6));
  REQUIRE(g.space.size() == 64);
  const auto est = estimate_dimension(g.space);
  CHECK(std::abs(est.value - std::log(2.0) / std::log(3.0)) <= 0.05);
  CHECK(est.bracket_lo <= est.value);
  CHECK(est.value <= est.bracket_hi);
}

TEST_CASE("dimension of a point") {
  CHECK(estimate_dimension(lochaus::test::line({0.0})).value == 0.0);
}

TEST_CASE("covering slope method agrees on the grid") {
  // Interior open balls hold odd point counts, so the finest scale must sit
  // a few spacings above h: 257 points put diam/64 at 4h.
  DimensionOptions opt;
  opt.method = DimensionMethod::covering_slope;
  const auto est = estimate_dimension(uniform_grid(257), opt);
  CHECK(est.value == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("local dimension of a grid interior point") {
  const auto X = uniform_grid(129);
  const auto f = local_dimension_field(X);
  REQUIRE(f.size() == 129);
  CHECK_FALSE(f.flagged[64]);
  CHECK(f.values[64] == doctest::Approx(1.0).epsilon(0.1));
  CHECK(f.radii[64].size() >= 3);
}

TEST_CASE("local dimension of a Cantor point") {
  const auto g = generate(GeneratorSpec::cantor(7));
  const auto f = local_dimension_field(g.space);
  CHECK(std::abs(f.values[40] - std::log(2.0) / std::log(3.0)) <= 0.1);
}

TEST_CASE("too few neighbours flags the point") {
  const auto f = local_dimension_field(uniform_grid(8));
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(f.flagged[i]);
    CHECK(f.values[i] == 0.0);
  }
}

TEST_CASE("local field is scale free") {
  const auto X = uniform_grid(65);
  const auto a = local_dimension_field(X);
  const auto b = local_dimension_field(X.scaled(7.5));
  for (std::size_t i = 0; i < X.size(); ++i) CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-6));
}

namespace {

LocalDimensionField flat_field(const FiniteMetricSpace& X, double v, double r) {
  LocalDimensionField f;
  f.values.assign(X.size(), v);
  f.ci.assign(X.size(), 0.0);
  f.flagged.assign(X.size(), false);
  f.radii.assign(X.size(), {r});
  return f;
}

}  // namespace

TEST_CASE("semicontinuity report") {
  const auto X = uniform_grid(9);
  auto f = flat_field(X, 1.0, 0.3);
  CHECK(semicontinuity_report(f, X).violations == 0);
  f.values[4] = 0.5;
  const auto rep = semicontinuity_report(f, X);
  CHECK(rep.violations == 1);
  bool found = false;
  for (const auto& row : rep.rows)
    if (row.violation) found = row.point == 4;
  CHECK(found);
}

TEST_CASE("semicontinuity across a gap") {
  const auto X = lochaus::test::line({0, 0.1, 0.2, 2.2, 2.3, 2.4});
  auto f = flat_field(X, 0.6, 0.5);
  for (std::size_t i = 3; i < 6; ++i) f.values[i] = 1.0;
  CHECK(semicontinuity_report(f, X).violations == 0);
}

TEST_CASE("global from local") {
  LocalDimensionField f;
  CHECK(global_from_local(f) == 0.0);
  f.values = {0.63, 1.0, 0.9};
  CHECK(global_from_local(f) == 1.0);
}
