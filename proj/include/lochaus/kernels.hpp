#pragma once

// Data-parallel inner loops. Every kernel has a serial reference next to the
// OpenMP version; the two must agree bit for bit (tests/test_kernels.cpp), and
// bench/bench_kernels.cpp times them against each other.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lochaus::kernels {

enum class Norm { l2, l1 };

/// Row-major n x n distances between points given as n rows of `dim` coordinates.
std::vector<double> distance_matrix_serial(std::span<const double> coords, std::size_t dim, Norm norm);
std::vector<double> distance_matrix_parallel(std::span<const double> coords, std::size_t dim, Norm norm);

struct Triple {
  std::size_t i, j, k;
};

/// First (lexicographic) triple with d(i,k) > d(i,j) + d(j,k) + tol.
std::optional<Triple> triangle_violation_serial(std::span<const double> dist, std::size_t n, double tol);
std::optional<Triple> triangle_violation_parallel(std::span<const double> dist, std::size_t n, double tol);

/// masses[x * radii.size() + k] = sum of weights w_j with d(x, j) < radii[k].
std::vector<double> ball_masses_serial(std::span<const double> dist, std::size_t n,
                                       std::span<const double> weights, std::span<const double> radii);
std::vector<double> ball_masses_parallel(std::span<const double> dist, std::size_t n,
                                         std::span<const double> weights, std::span<const double> radii);

/// out[x * m + k] = nu-weighted mean of values[j * m + k] over j with d(x, j) < radius,
/// the x-neighbourhood average of a per-point profile of length m.
std::vector<double> neighbourhood_average_serial(std::span<const double> dist, std::size_t n,
                                                 std::span<const double> weights, std::span<const double> values,
                                                 std::size_t m, double radius);
std::vector<double> neighbourhood_average_parallel(std::span<const double> dist, std::size_t n,
                                                   std::span<const double> weights, std::span<const double> values,
                                                   std::size_t m, double radius);

struct PairScan {
  double value = 0.0;  // max over pairs of |q_i - q_j| * (-log d(i, j))
  std::size_t i = 0, j = 0;
  std::size_t pairs = 0;  // pairs with 0 < d < cutoff
};

/// Log-Hölder scan over pairs with 0 < d(i, j) < cutoff (cutoff <= 1).
/// Ties keep the lexicographically first pair.
PairScan log_holder_scan_serial(std::span<const double> dist, std::size_t n, std::span<const double> q,
                                double cutoff);
PairScan log_holder_scan_parallel(std::span<const double> dist, std::size_t n, std::span<const double> q,
                                  double cutoff);

/// Worker count used by the parallel kernels (1 when built without OpenMP).
int max_threads();
void set_threads(int n);

}  // namespace lochaus::kernels
