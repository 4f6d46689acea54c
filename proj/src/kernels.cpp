#include "lochaus/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lochaus::kernels {

namespace {

inline double point_distance(const double* a, const double* b, std::size_t dim, Norm norm) {
  double acc = 0.0;
  if (norm == Norm::l2) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = a[k] - b[k];
      acc += d * d;
    }
    return std::sqrt(acc);
  }
  for (std::size_t k = 0; k < dim; ++k) acc += std::abs(a[k] - b[k]);
  return acc;
}

inline void distance_row(std::span<const double> coords, std::size_t dim, Norm norm, std::size_t n,
                         std::size_t i, double* out) {
  const double* a = coords.data() + i * dim;
  for (std::size_t j = 0; j < n; ++j) out[j] = (i == j) ? 0.0 : point_distance(a, coords.data() + j * dim, dim, norm);
}

inline std::optional<Triple> triangle_row(std::span<const double> dist, std::size_t n, double tol, std::size_t i) {
  const double* di = dist.data() + i * n;
  for (std::size_t j = 0; j < n; ++j) {
    const double* dj = dist.data() + j * n;
    const double dij = di[j];
    for (std::size_t k = 0; k < n; ++k)
      if (di[k] > dij + dj[k] + tol) return Triple{i, j, k};
  }
  return std::nullopt;
}

inline void mass_row(std::span<const double> dist, std::size_t n, std::span<const double> weights,
                     std::span<const double> radii, std::size_t x, double* out) {
  const double* dx = dist.data() + x * n;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (dx[j] < radii[k]) m += weights[j];
    out[k] = m;
  }
}

inline void scan_row(std::span<const double> dist, std::size_t n, std::span<const double> q, double cutoff,
                     std::size_t i, PairScan& best) {
  const double* di = dist.data() + i * n;
  for (std::size_t j = i + 1; j < n; ++j) {
    const double d = di[j];
    if (!(d > 0.0 && d < cutoff)) continue;
    ++best.pairs;
    const double v = std::abs(q[i] - q[j]) * (-std::log(d));
    if (v > best.value) best = PairScan{v, i, j, best.pairs};
  }
}

}  // namespace

std::vector<double> distance_matrix_serial(std::span<const double> coords, std::size_t dim, Norm norm) {
  const std::size_t n = dim == 0 ? 0 : coords.size() / dim;
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) distance_row(coords, dim, norm, n, i, out.data() + i * n);
  return out;
}

std::vector<double> distance_matrix_parallel(std::span<const double> coords, std::size_t dim, Norm norm) {
  const std::size_t n = dim == 0 ? 0 : coords.size() / dim;
  std::vector<double> out(n * n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i)
    distance_row(coords, dim, norm, n, static_cast<std::size_t>(i), out.data() + static_cast<std::size_t>(i) * n);
  return out;
}

std::optional<Triple> triangle_violation_serial(std::span<const double> dist, std::size_t n, double tol) {
  for (std::size_t i = 0; i < n; ++i)
    if (auto t = triangle_row(dist, n, tol, i)) return t;
  return std::nullopt;
}

std::optional<Triple> triangle_violation_parallel(std::span<const double> dist, std::size_t n, double tol) {
  // Each row is scanned independently; the lowest violating row wins.
  std::size_t first = n;
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4) reduction(min : first)
  for (std::ptrdiff_t i = 0; i < sn; ++i)
    if (triangle_row(dist, n, tol, static_cast<std::size_t>(i))) first = std::min(first, static_cast<std::size_t>(i));
  if (first == n) return std::nullopt;
  return triangle_row(dist, n, tol, first);
}

std::vector<double> ball_masses_serial(std::span<const double> dist, std::size_t n, std::span<const double> weights,
                                       std::span<const double> radii) {
  std::vector<double> out(n * radii.size());
  for (std::size_t x = 0; x < n; ++x) mass_row(dist, n, weights, radii, x, out.data() + x * radii.size());
  return out;
}

std::vector<double> ball_masses_parallel(std::span<const double> dist, std::size_t n, std::span<const double> weights,
                                         std::span<const double> radii) {
  std::vector<double> out(n * radii.size());
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t x = 0; x < sn; ++x)
    mass_row(dist, n, weights, radii, static_cast<std::size_t>(x), out.data() + static_cast<std::size_t>(x) * radii.size());
  return out;
}

namespace {

void average_row(std::span<const double> dist, std::size_t n, std::span<const double> weights,
                 std::span<const double> values, std::size_t m, double radius, std::size_t x, double* out) {
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) out[k] = 0.0;
  const double* row = dist.data() + x * n;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(row[j] < radius)) continue;
    total += weights[j];
    for (std::size_t k = 0; k < m; ++k) out[k] += weights[j] * values[j * m + k];
  }
  if (total > 0.0)
    for (std::size_t k = 0; k < m; ++k) out[k] /= total;
}

}  // namespace

std::vector<double> neighbourhood_average_serial(std::span<const double> dist, std::size_t n,
                                                 std::span<const double> weights, std::span<const double> values,
                                                 std::size_t m, double radius) {
  std::vector<double> out(n * m);
  for (std::size_t x = 0; x < n; ++x) average_row(dist, n, weights, values, m, radius, x, out.data() + x * m);
  return out;
}

std::vector<double> neighbourhood_average_parallel(std::span<const double> dist, std::size_t n,
                                                   std::span<const double> weights, std::span<const double> values,
                                                   std::size_t m, double radius) {
  std::vector<double> out(n * m);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t x = 0; x < sn; ++x)
    average_row(dist, n, weights, values, m, radius, static_cast<std::size_t>(x),
                out.data() + static_cast<std::size_t>(x) * m);
  return out;
}

PairScan log_holder_scan_serial(std::span<const double> dist, std::size_t n, std::span<const double> q,
                                double cutoff) {
  PairScan best;
  for (std::size_t i = 0; i < n; ++i) scan_row(dist, n, q, cutoff, i, best);
  return best;
}

PairScan log_holder_scan_parallel(std::span<const double> dist, std::size_t n, std::span<const double> q,
                                  double cutoff) {
  std::vector<PairScan> rows(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    PairScan r;
    scan_row(dist, n, q, cutoff, static_cast<std::size_t>(i), r);
    rows[static_cast<std::size_t>(i)] = r;
  }
  // Row results merged in index order so ties resolve exactly as in the serial scan.
  PairScan best;
  for (const auto& r : rows) {
    best.pairs += r.pairs;
    if (r.value > best.value) {
      best.value = r.value;
      best.i = r.i;
      best.j = r.j;
    }
  }
  return best;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace lochaus::kernels
