#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lochaus/kernels.hpp"

using namespace lochaus::kernels;

namespace {

struct Data {
  std::size_t n = 0;
  std::vector<double> coords, weights, q, dist, masses;
  std::vector<double> radii{0.02, 0.05, 0.1, 0.2, 0.4};
};

const Data& data(std::size_t n) {
  static std::vector<Data> cache;
  for (const auto& d : cache)
    if (d.n == n) return d;
  Data d;
  d.n = n;
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < 2 * n; ++i) d.coords.push_back(u(rng));
  for (std::size_t i = 0; i < n; ++i) {
    d.weights.push_back(1.0 / static_cast<double>(n));
    d.q.push_back(1.0 + 0.5 * u(rng));
  }
  d.dist = distance_matrix_serial(d.coords, 2, Norm::l2);
  d.masses = ball_masses_serial(d.dist, n, d.weights, d.radii);
  cache.push_back(std::move(d));
  return cache.back();
}

std::size_t size_of(const benchmark::State& s) { return static_cast<std::size_t>(s.range(0)); }

void BM_distance_serial(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(distance_matrix_serial(d.coords, 2, Norm::l2));
}
void BM_distance_parallel(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(distance_matrix_parallel(d.coords, 2, Norm::l2));
}

void BM_triangle_serial(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(triangle_violation_serial(d.dist, d.n, 1e-9));
}
void BM_triangle_parallel(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(triangle_violation_parallel(d.dist, d.n, 1e-9));
}

void BM_ball_masses_serial(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(ball_masses_serial(d.dist, d.n, d.weights, d.radii));
}
void BM_ball_masses_parallel(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(ball_masses_parallel(d.dist, d.n, d.weights, d.radii));
}

void BM_neighbourhood_average_serial(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s)
    benchmark::DoNotOptimize(neighbourhood_average_serial(d.dist, d.n, d.weights, d.masses, d.radii.size(), 0.2));
}
void BM_neighbourhood_average_parallel(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s)
    benchmark::DoNotOptimize(neighbourhood_average_parallel(d.dist, d.n, d.weights, d.masses, d.radii.size(), 0.2));
}

void BM_log_holder_serial(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(log_holder_scan_serial(d.dist, d.n, d.q, 0.5));
}
void BM_log_holder_parallel(benchmark::State& s) {
  const auto& d = data(size_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(log_holder_scan_parallel(d.dist, d.n, d.q, 0.5));
}

}  // namespace

BENCHMARK(BM_distance_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_distance_parallel)->Arg(256)->Arg(1024);
// The triangle scan is cubic; keep it small.
BENCHMARK(BM_triangle_serial)->Arg(128)->Arg(256);
BENCHMARK(BM_triangle_parallel)->Arg(128)->Arg(256);
BENCHMARK(BM_ball_masses_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_ball_masses_parallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_neighbourhood_average_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_neighbourhood_average_parallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_log_holder_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_log_holder_parallel)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
