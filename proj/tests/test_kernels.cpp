#include <doctest.h>

#include <random>

#include "lochaus/kernels.hpp"

using namespace lochaus::kernels;

namespace {

struct Data {
  std::size_t n = 300;
  std::size_t dim = 3;
  std::vector<double> coords, weights, q;
  std::vector<double> dist;
};

Data make_data() {
  Data d;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < d.n * d.dim; ++i) d.coords.push_back(u(rng));
  for (std::size_t i = 0; i < d.n; ++i) {
    d.weights.push_back(u(rng));
    d.q.push_back(2 * u(rng));
  }
  d.dist = distance_matrix_serial(d.coords, d.dim, Norm::l2);
  return d;
}

// Every parallel kernel must match its serial reference bit for bit at any worker count.
template <class F>
void for_threads(F f) {
  const int saved = max_threads();
  for (int t : {1, 2, 4, 8}) {
    set_threads(t);
    f();
  }
  set_threads(saved);
}

}  // namespace

TEST_CASE("distance matrix serial equals parallel") {
  const auto d = make_data();
  for (auto norm : {Norm::l2, Norm::l1}) {
    const auto ref = distance_matrix_serial(d.coords, d.dim, norm);
    for_threads([&] { CHECK(distance_matrix_parallel(d.coords, d.dim, norm) == ref); });
  }
}

TEST_CASE("triangle scan serial equals parallel") {
  auto d = make_data();
  CHECK_FALSE(triangle_violation_serial(d.dist, d.n, 1e-9).has_value());
  d.dist[5 * d.n + 200] = d.dist[200 * d.n + 5] = 10.0;
  d.dist[17 * d.n + 250] = d.dist[250 * d.n + 17] = 10.0;
  const auto ref = triangle_violation_serial(d.dist, d.n, 1e-9);
  REQUIRE(ref.has_value());
  for_threads([&] {
    const auto got = triangle_violation_parallel(d.dist, d.n, 1e-9);
    REQUIRE(got.has_value());
    CHECK(got->i == ref->i);
    CHECK(got->j == ref->j);
    CHECK(got->k == ref->k);
  });
}

TEST_CASE("ball masses serial equals parallel") {
  const auto d = make_data();
  const std::vector<double> radii{0.05, 0.1, 0.2, 0.4, 0.8};
  const auto ref = ball_masses_serial(d.dist, d.n, d.weights, radii);
  for_threads([&] { CHECK(ball_masses_parallel(d.dist, d.n, d.weights, radii) == ref); });
}

TEST_CASE("neighbourhood average serial equals parallel") {
  const auto d = make_data();
  const std::vector<double> radii{0.05, 0.1, 0.2};
  const auto masses = ball_masses_serial(d.dist, d.n, d.weights, radii);
  const auto ref = neighbourhood_average_serial(d.dist, d.n, d.weights, masses, radii.size(), 0.3);
  for_threads([&] {
    CHECK(neighbourhood_average_parallel(d.dist, d.n, d.weights, masses, radii.size(), 0.3) == ref);
  });
}

TEST_CASE("log-Holder scan serial equals parallel") {
  const auto d = make_data();
  const auto ref = log_holder_scan_serial(d.dist, d.n, d.q, 0.5);
  CHECK(ref.pairs > 0);
  for_threads([&] {
    const auto got = log_holder_scan_parallel(d.dist, d.n, d.q, 0.5);
    CHECK(got.value == ref.value);
    CHECK(got.i == ref.i);
    CHECK(got.j == ref.j);
    CHECK(got.pairs == ref.pairs);
  });
}
