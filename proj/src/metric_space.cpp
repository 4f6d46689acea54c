#include "lochaus/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lochaus/error.hpp"
#include "lochaus/kernels.hpp"

namespace lochaus {

Metric parse_metric(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "manhattan") return Metric::manhattan;
  if (name == "precomputed") return Metric::precomputed;
  throw ValidationError("unknown metric '" + name + "' (expected euclidean, manhattan or precomputed)");
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::precomputed: return "precomputed";
  }
  return "?";
}

FiniteMetricSpace FiniteMetricSpace::from_points(const std::vector<PointRecord>& points, Metric metric) {
  if (points.empty()) throw ValidationError("empty input: a metric space needs at least one point");
  if (metric == Metric::precomputed) throw ValidationError("point tables need a euclidean or manhattan metric");
  const std::size_t dim = points.front().coords.size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  for (const auto& p : points) {
    if (p.coords.size() != dim) throw ValidationError("point '" + p.id + "' has inconsistent coordinate count");
    for (double c : p.coords)
      if (!std::isfinite(c)) throw ValidationError("point '" + p.id + "' has a non-finite coordinate");
    flat.insert(flat.end(), p.coords.begin(), p.coords.end());
    ids.push_back(p.id);
    coords.push_back(p.coords);
  }
  const auto norm = metric == Metric::euclidean ? kernels::Norm::l2 : kernels::Norm::l1;
  auto dist = dim == 0 ? std::vector<double>(points.size() * points.size(), 0.0)
                       : kernels::distance_matrix_parallel(flat, dim, norm);

  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.dist_ = std::move(dist);
  s.coords_ = std::move(coords);
  // Norm-induced distances satisfy the triangle inequality by construction.
  s.finalize();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> ids, std::vector<double> dist,
                                                 std::vector<std::vector<double>> coords) {
  const std::size_t n = ids.size();
  if (n == 0) throw ValidationError("empty input: a metric space needs at least one point");
  if (dist.size() != n * n) throw ValidationError("distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i * n + i] != 0.0) throw ValidationError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i * n + j];
      if (!std::isfinite(d) || d < 0.0) throw ValidationError("distances must be finite and nonnegative");
      if (std::abs(d - dist[j * n + i]) > kTriangleTolerance)
        throw ValidationError("distance matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  // Symmetrize exactly so downstream comparisons never see d(i,j) != d(j,i).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dist[j * n + i] = dist[i * n + j];
  if (auto t = kernels::triangle_violation_parallel(dist, n, kTriangleTolerance)) {
    std::ostringstream os;
    os << "triangle inequality violated: d(" << t->i << "," << t->k << ") > d(" << t->i << "," << t->j << ") + d("
       << t->j << "," << t->k << ")";
    throw ValidationError(os.str());
  }
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.dist_ = std::move(dist);
  s.coords_ = std::move(coords);
  s.finalize();
  return s;
}

void FiniteMetricSpace::finalize() {
  std::size_t n = ids_.size();
  // Merge points at distance zero into the first occurrence.
  std::vector<std::size_t> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  std::vector<std::size_t> keep;
  std::vector<std::size_t> mult;
  const bool fresh = aliases_.size() != n;
  std::vector<std::vector<std::string>> aliases;
  for (std::size_t i = 0; i < n; ++i) {
    bool merged = false;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (dist_[keep[k] * n + i] == 0.0) {
        ++mult[k];
        if (fresh) aliases[k].push_back(ids_[i]);
        else aliases[k].insert(aliases[k].end(), aliases_[i].begin(), aliases_[i].end());
        merged = true;
        break;
      }
    }
    if (!merged) {
      keep.push_back(i);
      mult.push_back(1);
      aliases.push_back(fresh ? std::vector<std::string>{ids_[i]} : aliases_[i]);
    }
  }
  aliases_ = std::move(aliases);
  if (keep.size() != n) {
    const std::size_t m = keep.size();
    std::vector<double> d(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) d[a * m + b] = dist_[keep[a] * n + keep[b]];
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    for (auto k : keep) {
      ids.push_back(ids_[k]);
      if (!coords_.empty()) coords.push_back(coords_[k]);
    }
    ids_ = std::move(ids);
    coords_ = std::move(coords);
    dist_ = std::move(d);
    n = m;
  }
  if (multiplicity_.empty() || multiplicity_.size() != n) multiplicity_ = std::move(mult);

  resolution_ = 0.0;
  diameter_ = 0.0;
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dist_[i * n + j];
      h = std::min(h, d);
      diameter_ = std::max(diameter_, d);
    }
  if (n >= 2) resolution_ = h;
}

FiniteMetricSpace FiniteMetricSpace::subspace(const Mask& mask) const {
  const auto idx = mask.indices();
  const std::size_t m = idx.size();
  FiniteMetricSpace s;
  s.dist_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    s.ids_.push_back(ids_[idx[a]]);
    if (has_coords()) s.coords_.push_back(coords_[idx[a]]);
    s.multiplicity_.push_back(multiplicity_[idx[a]]);
    s.aliases_.push_back(aliases_[idx[a]]);
    for (std::size_t b = 0; b < m; ++b) s.dist_[a * m + b] = distance(idx[a], idx[b]);
  }
  s.finalize();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::scaled(double c) const {
  if (!(c > 0.0)) throw ValidationError("scale factor must be positive");
  FiniteMetricSpace s = *this;
  for (auto& d : s.dist_) d *= c;
  for (auto& p : s.coords_)
    for (auto& x : p) x *= c;
  s.finalize();
  return s;
}

std::optional<std::size_t> FiniteMetricSpace::find_id(const std::string& id) const {
  for (std::size_t i = 0; i < aliases_.size(); ++i)
    for (const auto& a : aliases_[i])
      if (a == id) return i;
  return std::nullopt;
}

double FiniteMetricSpace::diameter_of(const Mask& mask) const {
  const auto idx = mask.indices();
  double d = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) d = std::max(d, distance(idx[a], idx[b]));
  return d;
}

BallRef ball(const FiniteMetricSpace& space, std::size_t center, double radius) {
  if (center >= space.size()) throw ValidationError("ball center out of range");
  if (!(radius >= 0.0)) throw ValidationError("ball radius must be nonnegative");
  BallRef b{center, radius, Mask(space.size())};
  const auto r = space.row(center);
  for (std::size_t j = 0; j < space.size(); ++j)
    if (r[j] < radius) b.members.set(j);
  return b;
}

SubsetRef subset(const FiniteMetricSpace& space, Mask members) {
  SubsetRef s{std::move(members), 0.0};
  s.diameter = space.diameter_of(s.members);
  return s;
}

std::vector<BallRef> vitali_5r_subfamily(const FiniteMetricSpace& space, const std::vector<BallRef>& balls) {
  std::vector<std::size_t> order(balls.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (balls[a].radius != balls[b].radius) return balls[a].radius > balls[b].radius;
    return balls[a].center < balls[b].center;
  });
  std::vector<BallRef> chosen;
  for (auto k : order) {
    const auto& cand = balls[k];
    if (!(cand.radius > 0.0)) throw ValidationError("vitali_5r_subfamily needs positive radii");
    bool disjoint = true;
    for (const auto& sel : chosen) {
      if (space.distance(cand.center, sel.center) < cand.radius + sel.radius) {
        disjoint = false;
        break;
      }
    }
    if (disjoint) chosen.push_back(cand);
  }
  return chosen;
}

}  // namespace lochaus
