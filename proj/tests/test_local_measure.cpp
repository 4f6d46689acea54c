#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lochaus/local_measure.hpp"
#include "lochaus/spaces.hpp"

using namespace lochaus;
using lochaus::test::uniform_grid;

TEST_CASE("constant field reduces to the constant gauge") {
  const auto X = uniform_grid(9);
  const std::vector<double> ones(9, 1.0);
  for (auto cls : {CoverClass::balls, CoverClass::all_subsets}) {
    const auto est = local_hausdorff_measure(X, Mask::full(9), ones, 0.5, cls, SolveMode::exact);
    const double c = premeasure_at_scale(X, Mask::full(9), PremeasureSpec::constant(1.0), 0.5, cls, SolveMode::exact);
    CHECK(est.value == c);
    CHECK(est.value == doctest::Approx(9.0 / 8));
    CHECK(est.optimal);
  }
  const auto maxc = local_hausdorff_measure(X, Mask::full(9), ones, 0.5, CoverClass::all_subsets, SolveMode::exact,
                                            ClampRule::max);
  CHECK(maxc.value == doctest::Approx(5.0 / 8));
}

TEST_CASE("local measure of the empty set") {
  const auto X = uniform_grid(9);
  const auto est = local_hausdorff_measure(X, Mask(9), std::vector<double>(9, 1.0), 0.5, CoverClass::balls,
                                           SolveMode::greedy);
  CHECK(est.value == 0.0);
  CHECK(est.cover_sets.empty());
}

namespace {

Generated small_glue() { return generate(GeneratorSpec::glue({GeneratorSpec::cantor(4), GeneratorSpec::grid(33)}, 2)); }

Mask piece_mask(const Generated& g, int p) {
  Mask m(g.space.size());
  for (std::size_t i = 0; i < g.space.size(); ++i)
    if (g.truth.piece[i] == p) m.set(i);
  return m;
}

}  // namespace

TEST_CASE("grid piece of a glued space matches the constant gauge") {
  const auto g = small_glue();
  const auto grid = piece_mask(g, 1);
  const double delta = 0.1;
  const auto est = local_hausdorff_measure(g.space, grid, g.truth.point_dim, delta, CoverClass::balls,
                                           SolveMode::greedy);
  const double c = premeasure_at_scale(g.space, grid, PremeasureSpec::constant(1.0), delta, CoverClass::balls,
                                       SolveMode::greedy);
  CHECK(std::abs(est.value - c) <= 1e-9);
}

TEST_CASE("equivalence ratio with a constant field") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto X = lochaus::test::random_square(10, rng);
    const double s = 0.5 + 0.1 * t;
    const std::vector<double> field(10, s);
    const std::vector<double> deltas{X.diameter() / 2, X.diameter() / 4, 2.5 * X.resolution()};
    const auto rep = equivalence_ratio_local(X, Mask::full(10), field, deltas, SolveMode::exact);
    CHECK(rep.bound == doctest::Approx(std::pow(4.0, s)));
    CHECK(rep.pass);
    for (const auto& row : rep.rows) CHECK(row.h_loc <= row.lambda_loc);
  }
}

TEST_CASE("equivalence ratio on random local fields") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const auto X = lochaus::test::random_square(10, rng);
    std::vector<double> field(10);
    for (auto& v : field) v = u(rng);
    const std::vector<double> deltas{X.diameter() / 3, 3 * X.resolution()};
    CHECK(equivalence_ratio_local(X, Mask::full(10), field, deltas, SolveMode::exact).pass);
  }
}

TEST_CASE("equivalence ratio on a single point") {
  const auto X = uniform_grid(5);
  Mask one(5);
  one.set(2);
  const auto rep = equivalence_ratio_local(X, one, std::vector<double>(5, 1.0), {0.5}, SolveMode::exact);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].ratio == doctest::Approx(1.0));
  CHECK(rep.pass);
}

TEST_CASE("absolute continuity probe") {
  const auto g = small_glue();
  const std::vector<LabeledSet> sets{
      {"empty", Mask(g.space.size())}, {"cantor", piece_mask(g, 0)}, {"grid", piece_mask(g, 1)}};
  const auto rep = absolute_continuity_probe(g.space, sets, 1.0, g.truth.point_dim);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].h_loc == 0.0);
  CHECK(rep.rows[0].h_d0 == 0.0);
  CHECK(rep.rows[1].h_d0 <= rep.rows[1].h_loc + 1e-9);
  CHECK(rep.pass);
}
