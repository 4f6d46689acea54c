#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lochaus/bitmask.hpp"

namespace lochaus {

enum class Metric { euclidean, manhattan, precomputed };

Metric parse_metric(const std::string& name);
std::string to_string(Metric m);

struct PointRecord {
  std::string id;
  std::vector<double> coords;
};

/// Finite metric space with a dense distance matrix.
///
/// Duplicate points (distance 0) are merged on construction; the surviving
/// point keeps the multiplicity of everything merged into it. The matrix is
/// validated for symmetry, zero diagonal, nonnegativity and (for
/// precomputed input) the triangle inequality.
class FiniteMetricSpace {
 public:
  static constexpr double kTriangleTolerance = 1e-9;

  FiniteMetricSpace() = default;

  static FiniteMetricSpace from_points(const std::vector<PointRecord>& points, Metric metric);
  /// `dist` is row-major n x n.
  static FiniteMetricSpace from_matrix(std::vector<std::string> ids, std::vector<double> dist,
                                       std::vector<std::vector<double>> coords = {});

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  double distance(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  std::span<const double> row(std::size_t i) const { return {dist_.data() + i * size(), size()}; }
  const std::vector<double>& matrix() const { return dist_; }

  /// Smallest nonzero pairwise distance; 0 for spaces with fewer than two points.
  double resolution() const { return resolution_; }
  double diameter() const { return diameter_; }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::vector<double>>& coords() const { return coords_; }
  bool has_coords() const { return !coords_.empty(); }
  const std::vector<std::size_t>& multiplicity() const { return multiplicity_; }
  /// Input ids merged into each point (the point's own id first).
  const std::vector<std::vector<std::string>>& aliases() const { return aliases_; }
  /// Point holding input id `id`, including ids merged as duplicates.
  std::optional<std::size_t> find_id(const std::string& id) const;

  /// Subspace on the points of `mask`, in increasing index order.
  FiniteMetricSpace subspace(const Mask& mask) const;
  /// Same points with every distance multiplied by `c` > 0.
  FiniteMetricSpace scaled(double c) const;

  /// Largest pairwise distance inside `mask` (0 for empty and singletons).
  double diameter_of(const Mask& mask) const;

 private:
  void finalize();

  std::vector<std::string> ids_;
  std::vector<double> dist_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::size_t> multiplicity_;
  std::vector<std::vector<std::string>> aliases_;
  double resolution_ = 0.0;
  double diameter_ = 0.0;
};

/// Open ball B_r(x) = { j : d(x, j) < r }.
struct BallRef {
  std::size_t center = 0;
  double radius = 0.0;
  Mask members;
};

struct SubsetRef {
  Mask members;
  double diameter = 0.0;
};

BallRef ball(const FiniteMetricSpace& space, std::size_t center, double radius);
SubsetRef subset(const FiniteMetricSpace& space, Mask members);

/// Disjoint subfamily of `balls` whose 5x dilations cover every input ball.
///
/// Greedy largest-radius-first; ties go to the lower center index. A ball is
/// kept only if d(c_i, c_j) >= r_i + r_j for every ball already kept, so the
/// result is disjoint as metric balls, not merely as point masks.
std::vector<BallRef> vitali_5r_subfamily(const FiniteMetricSpace& space,
                                         const std::vector<BallRef>& balls);

}  // namespace lochaus
