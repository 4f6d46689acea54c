#include <doctest.h>

#include "helpers.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/error.hpp"

using namespace lochaus;
using lochaus::test::line;

TEST_CASE("single point space is degenerate") {
  const auto X = line({0.5});
  CHECK(X.size() == 1);
  CHECK(X.resolution() == 0.0);
  CHECK(X.diameter() == 0.0);
  CHECK(estimate_dimension(X).value == 0.0);
}

TEST_CASE("collinear points") {
  const auto X = line({0, 1, 2});
  CHECK(X.distance(0, 2) == 2.0);
  CHECK(X.resolution() == 1.0);
  CHECK(X.diameter() == 2.0);
}

TEST_CASE("manhattan metric") {
  const auto X = FiniteMetricSpace::from_points({{"a", {0, 0}}, {"b", {1, 2}}}, Metric::manhattan);
  CHECK(X.distance(0, 1) == 3.0);
}

TEST_CASE("triangle violation is rejected") {
  std::vector<double> d{0, 1, 5, 1, 0, 1, 5, 1, 0};
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b", "c"}, d), ValidationError);
}

TEST_CASE("asymmetric and negative matrices are rejected") {
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b"}, {0, 1, 2, 0}), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b"}, {0, -1, -1, 0}), ValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b"}, {1, 1, 1, 0}), ValidationError);
}

TEST_CASE("duplicate points merge") {
  const auto X = FiniteMetricSpace::from_points({{"a", {0}}, {"b", {1}}, {"c", {0}}}, Metric::euclidean);
  REQUIRE(X.size() == 2);
  CHECK(X.multiplicity()[0] == 2);
  CHECK(X.find_id("c") == std::optional<std::size_t>(0));
  CHECK(X.aliases()[0] == std::vector<std::string>{"a", "c"});
}

TEST_CASE("open balls") {
  const auto X = line({0, 1, 2});
  CHECK(ball(X, 1, 1.5).members == Mask::full(3));
  CHECK(ball(X, 0, 0.0).members.empty());
  CHECK(ball(X, 2, 0.0).members.empty());
  const auto b = ball(X, 0, 1.0).members;
  CHECK(b.count() == 1);
  CHECK(b.test(0));
}

TEST_CASE("subspace and scaling") {
  const auto X = line({0, 1, 3, 7});
  Mask m(4);
  m.set(1);
  m.set(3);
  const auto Y = X.subspace(m);
  REQUIRE(Y.size() == 2);
  CHECK(Y.distance(0, 1) == 6.0);
  CHECK(Y.ids()[0] == "1");
  CHECK(X.diameter_of(m) == 6.0);
  CHECK(X.scaled(0.5).distance(0, 3) == 3.5);
}

TEST_CASE("vitali subfamily on a line") {
  const auto X = line({0, 0.5, 1, 5});
  const std::vector<BallRef> balls{ball(X, 0, 1), ball(X, 1, 1), ball(X, 3, 1)};
  const auto kept = vitali_5r_subfamily(X, balls);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].center == 0);
  CHECK(kept[1].center == 3);
  Mask dilated(X.size());
  for (const auto& b : kept) dilated |= ball(X, b.center, 5 * b.radius).members;
  for (const auto& b : balls) CHECK(b.members.is_subset_of(dilated));
}

TEST_CASE("vitali trivial families") {
  const auto X = line({0, 1, 10});
  CHECK(vitali_5r_subfamily(X, {}).empty());
  const auto one = vitali_5r_subfamily(X, {ball(X, 1, 2)});
  REQUIRE(one.size() == 1);
  CHECK(one[0].center == 1);
  CHECK(vitali_5r_subfamily(X, {ball(X, 0, 1), ball(X, 2, 1)}).size() == 2);
}
