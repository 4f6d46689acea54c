#include <doctest.h>

#include <cmath>
#include <limits>

#include "lochaus/error.hpp"
#include "lochaus/io.hpp"
#include "lochaus/report.hpp"
#include "lochaus/spaces.hpp"

using namespace lochaus;

TEST_CASE("csv quoting round trip") {
  const std::vector<std::string> cells{"plain", "with,comma", "with \"quote\"", ""};
  const auto t = io::parse_csv_text("a,b,c,d\r\n" + io::csv_row(cells));
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0] == cells);
  CHECK(t.header == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(1.0 / 3) == "0.333333333333");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(io::format_number(std::nan("")) == "nan");
  CHECK(io::parse_number("2.5", "x") == 2.5);
  CHECK_THROWS_AS(io::parse_number("2.5x", "x"), ValidationError);
}

TEST_CASE("json dump is stable") {
  io::Json j;
  j["zeta"] = 1.0 / 3;
  j["alpha"] = io::Json::array({1, 2.5, 3});
  j["inf"] = std::numeric_limits<double>::infinity();
  j["nested"] = {{"b", true}, {"a", "x"}};
  const auto s = io::dump(j);
  CHECK(s == io::dump(j));
  CHECK(s.find("zeta") < s.find("alpha"));
  CHECK(s.find("0.333333333333") != std::string::npos);
  CHECK(s.find("[1, 2.5, 3]") != std::string::npos);
  CHECK(s.find("\"inf\": \"inf\"") != std::string::npos);
  CHECK(s.back() == '\n');
}

TEST_CASE("points csv round trip") {
  const auto g = generate(GeneratorSpec::sierpinski(2));
  const auto pts = io::points_from_csv(io::points_csv(g.space));
  const auto X = FiniteMetricSpace::from_points(pts, Metric::euclidean);
  REQUIRE(X.size() == g.space.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j) CHECK(X.distance(i, j) == doctest::Approx(g.space.distance(i, j)));
}

TEST_CASE("points json") {
  const auto pts = io::points_from_json(io::Json::parse(R"({"points": [{"id": "a", "x": [0, 1]},
                                                                        {"id": "b", "x": [3, 5]}]})"));
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].coords == std::vector<double>{3, 5});
}

TEST_CASE("matrix csv round trip") {
  const auto X = FiniteMetricSpace::from_matrix({"a", "b", "c"}, {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0});
  const auto m = io::matrix_from_csv(io::matrix_csv(X));
  CHECK(m.ids == X.ids());
  CHECK(m.dist == X.matrix());
  const auto bare = io::matrix_from_csv("0,1\n1,0\n");
  CHECK(bare.ids.size() == 2);
  CHECK_THROWS_AS(io::matrix_from_csv("0,1\n1\n"), ValidationError);
}

TEST_CASE("matrix json") {
  const auto m = io::matrix_from_json(io::Json::parse(R"({"ids": ["p", "q"], "distances": [[0, 2], [2, 0]]})"));
  CHECK(m.dist == std::vector<double>{0, 2, 2, 0});
}

TEST_CASE("weights") {
  const auto X = FiniteMetricSpace::from_points({{"a", {0}}, {"b", {1}}, {"c", {0}}}, Metric::euclidean);
  const auto nu = io::weights_from_csv("id,weight\na,0.25\nb,0.5\nc,0.25\n", X);
  CHECK(nu.weights() == std::vector<double>{0.5, 0.5});
  CHECK_THROWS_AS(io::weights_from_csv("id,weight\na,1\nc,1\n", X), ValidationError);
  CHECK_THROWS_AS(io::weights_from_csv("id,weight\na,1\na,1\nb,1\nc,1\n", X), ValidationError);
  CHECK_THROWS_AS(io::weights_from_csv("id,weight\na,-1\nb,1\nc,1\n", X), ValidationError);
  const auto j = io::weights_from_json(io::Json::parse(R"({"weights": [{"id": "a", "weight": 1},
      {"id": "b", "weight": 2}, {"id": "c", "weight": 3}]})"), X);
  CHECK(j.weights() == std::vector<double>{4, 2});
  const auto back = io::weights_from_csv(io::weights_csv(X, nu), X);
  CHECK(back.weights() == nu.weights());
}

TEST_CASE("id sets") {
  const auto X = FiniteMetricSpace::from_points({{"a", {0}}, {"b", {1}}, {"c", {2}}}, Metric::euclidean);
  CHECK(io::parse_id_set("all", X) == Mask::full(3));
  const auto m = io::parse_id_set("a,c", X);
  CHECK(m.count() == 2);
  CHECK(m.test(2));
  CHECK_THROWS_AS(io::parse_id_set("a,z", X), ValidationError);
}

TEST_CASE("field csv round trip") {
  const auto X = FiniteMetricSpace::from_points({{"a", {0}}, {"b", {1}}}, Metric::euclidean);
  LocalDimensionField f;
  f.values = {0.5, 1.25};
  f.ci = {0.1, 0.2};
  f.flagged = {false, true};
  CHECK(report::field_from_csv(report::field_csv(X, f), X) == f.values);
  CHECK_THROWS_AS(report::field_from_csv("id,value\na,1\n", X), ValidationError);
}
