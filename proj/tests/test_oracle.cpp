#include <doctest.h>

#include "helpers.hpp"
#include "lochaus/error.hpp"
#include "lochaus/oracle.hpp"

using namespace lochaus;
using lochaus::test::line;
using lochaus::test::uniform_grid;

TEST_CASE("exhaustive cover of the 4-point line") {
  const auto X = line({0, 1, 2, 3});
  const auto spec = PremeasureSpec::constant(1.0, ClampRule::max);
  CHECK(oracle::exhaustive_min_cover(X, Mask::full(4), spec, 1.5, CoverClass::all_subsets) == 2.0);
  CHECK(oracle::exhaustive_min_cover(X, Mask(4), spec, 1.5, CoverClass::all_subsets) == 0.0);
  CHECK(oracle::exhaustive_min_cover(X, Mask(4), spec, 1.5, CoverClass::balls) == 0.0);
}

TEST_CASE("9-point grid at delta 1/2 under both clamps") {
  const auto X = uniform_grid(9);
  const Mask all = Mask::full(9);
  // Five sets {0,1}, {2,3}, {4,5}, {6,7}, {8} each cost h = 1/8 under max.
  CHECK(oracle::exhaustive_min_cover(X, all, PremeasureSpec::constant(1, ClampRule::max), 0.5,
                                     CoverClass::all_subsets) == doctest::Approx(5.0 / 8).epsilon(1e-12));
  // Additive: m consecutive points cost m h, so every cover costs 9/8.
  CHECK(oracle::exhaustive_min_cover(X, all, PremeasureSpec::constant(1), 0.5, CoverClass::all_subsets) ==
        doctest::Approx(9.0 / 8).epsilon(1e-12));
}

TEST_CASE("covering numbers") {
  const auto X = uniform_grid(9);
  const Mask all = Mask::full(9);
  const auto c = oracle::covering_number(X, all, 0.5);
  CHECK(c.count == 2);
  CHECK(c.exact);
  CHECK(oracle::covering_number(X, all, 1.0).count == 1);
  CHECK(oracle::covering_number(X, all, 0.05).count == 9);
  CHECK(oracle::covering_number(X, Mask(9), 0.5).count == 0);
}

TEST_CASE("covering number falls back to greedy above 12 points") {
  const auto X = uniform_grid(17);
  const auto c = oracle::covering_number(X, Mask::full(17), 0.25);
  CHECK_FALSE(c.exact);
  CHECK(c.count >= 4);
}

TEST_CASE("oracle size guards") {
  const auto X = uniform_grid(13);
  CHECK_THROWS(oracle::exhaustive_min_cover(X, Mask::full(13), PremeasureSpec::constant(1), 0.5,
                                            CoverClass::balls));
  std::vector<double> q(13, 1.0);
  Mask small(13);
  small.set(0);
  small.set(1);
  CHECK_THROWS(oracle::exhaustive_min_cover(X, small, PremeasureSpec::local(q), 0.5, CoverClass::all_subsets));
}
