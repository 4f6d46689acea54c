#include <doctest.h>

#include <cmath>

#include "lochaus/error.hpp"
#include "lochaus/spaces.hpp"

using namespace lochaus;

TEST_CASE("moran equation") {
  CHECK(moran_dimension({1.0 / 3, 1.0 / 3}) == doctest::Approx(0.630929753571).epsilon(1e-11));
  CHECK(moran_dimension({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(moran_dimension({0.5, 0.5, 0.5}) == doctest::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-11));
}

TEST_CASE("cantor generator") {
  const auto g = generate(GeneratorSpec::cantor(6));
  CHECK(g.space.size() == 64);
  CHECK(g.truth.global_dim == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-10));
  CHECK(g.measure.total() == doctest::Approx(1.0));
  CHECK(g.measure.weights()[0] == doctest::Approx(1.0 / 64));
}

TEST_CASE("grid generator") {
  const auto g = generate(GeneratorSpec::grid(257));
  CHECK(g.space.size() == 257);
  CHECK(g.truth.global_dim == 1.0);
  for (double q : g.truth.point_q) CHECK(q == 1.0);
  CHECK(g.space.resolution() == doctest::Approx(1.0 / 256));
}

TEST_CASE("sierpinski generator") {
  const auto g = generate(GeneratorSpec::sierpinski(3));
  CHECK(g.space.size() == 27);
  CHECK(g.truth.global_dim == doctest::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("glue generator") {
  const auto g = generate(GeneratorSpec::glue({GeneratorSpec::cantor(6), GeneratorSpec::grid(129)}, 2.0));
  CHECK(g.space.size() == 64 + 129);
  CHECK(g.truth.global_dim == 1.0);
  REQUIRE(g.truth.piece_dim.size() == 2);
  CHECK(g.truth.piece_dim[0] == doctest::Approx(0.630929753571).epsilon(1e-10));
  CHECK(g.truth.piece_dim[1] == 1.0);
  // Nearest cross-piece pair sits at the gap.
  double cross = 1e300;
  for (std::size_t i = 0; i < g.space.size(); ++i)
    for (std::size_t j = 0; j < g.space.size(); ++j)
      if (g.truth.piece[i] == 0 && g.truth.piece[j] == 1) cross = std::min(cross, g.space.distance(i, j));
  CHECK(cross == doctest::Approx(2.0));
  CHECK(g.measure.total() == doctest::Approx(1.0));
}

TEST_CASE("generation is deterministic") {
  auto spec = GeneratorSpec::sierpinski(3);
  spec.jitter = 0.1;
  spec.seed = 42;
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.space.matrix() == b.space.matrix());
}

TEST_CASE("invalid generator parameters") {
  CHECK_THROWS_AS(generate(GeneratorSpec::cantor(4, 0.7)), ValidationError);
  CHECK_THROWS_AS(generate(GeneratorSpec::grid(0)), ValidationError);
  CHECK_THROWS_AS(parse_generator_kind("torus"), ValidationError);
}
