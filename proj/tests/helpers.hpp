#pragma once

#include <random>
#include <string>
#include <vector>

#include "lochaus/metric_space.hpp"

namespace lochaus::test {

inline FiniteMetricSpace line(const std::vector<double>& xs) {
  std::vector<PointRecord> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({std::to_string(i), {xs[i]}});
  return FiniteMetricSpace::from_points(pts, Metric::euclidean);
}

inline FiniteMetricSpace uniform_grid(std::size_t n) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
  return line(xs);
}

inline FiniteMetricSpace random_square(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PointRecord> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({std::to_string(i), {u(rng), u(rng)}});
  return FiniteMetricSpace::from_points(pts, Metric::euclidean);
}

}  // namespace lochaus::test
