#include "lochaus/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lochaus/error.hpp"

namespace lochaus {

GeneratorKind parse_generator_kind(const std::string& s) {
  if (s == "grid") return GeneratorKind::grid;
  if (s == "cantor") return GeneratorKind::cantor;
  if (s == "sierpinski") return GeneratorKind::sierpinski;
  if (s == "glue") return GeneratorKind::glue;
  if (s == "product") return GeneratorKind::product;
  throw ValidationError("unknown generator kind '" + s + "'");
}

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::cantor: return "cantor";
    case GeneratorKind::sierpinski: return "sierpinski";
    case GeneratorKind::glue: return "glue";
    case GeneratorKind::product: return "product";
  }
  return "?";
}

GeneratorSpec GeneratorSpec::grid(std::size_t n) {
  GeneratorSpec g;
  g.kind = GeneratorKind::grid;
  g.n = n;
  return g;
}

GeneratorSpec GeneratorSpec::cantor(int depth, double ratio) {
  GeneratorSpec g;
  g.kind = GeneratorKind::cantor;
  g.depth = depth;
  g.ratio = ratio;
  return g;
}

GeneratorSpec GeneratorSpec::sierpinski(int depth) {
  GeneratorSpec g;
  g.kind = GeneratorKind::sierpinski;
  g.depth = depth;
  return g;
}

GeneratorSpec GeneratorSpec::glue(std::vector<GeneratorSpec> pieces, double gap) {
  GeneratorSpec g;
  g.kind = GeneratorKind::glue;
  g.pieces = std::move(pieces);
  g.gap = gap;
  return g;
}

GeneratorSpec GeneratorSpec::product(GeneratorSpec a, GeneratorSpec b) {
  GeneratorSpec g;
  g.kind = GeneratorKind::product;
  g.pieces = {std::move(a), std::move(b)};
  return g;
}

void GeneratorSpec::validate() const {
  switch (kind) {
    case GeneratorKind::grid:
      if (n < 1) throw ValidationError("grid needs n >= 1");
      break;
    case GeneratorKind::cantor:
      if (depth < 1) throw ValidationError("cantor depth must be >= 1");
      if (!(ratio > 0.0 && ratio <= 0.5)) throw ValidationError("cantor ratio must lie in (0, 1/2]");
      if (depth > 20) throw ValidationError("cantor depth above 20 is out of range");
      break;
    case GeneratorKind::sierpinski:
      if (depth < 1) throw ValidationError("sierpinski depth must be >= 1");
      if (depth > 10) throw ValidationError("sierpinski depth above 10 is out of range");
      break;
    case GeneratorKind::glue:
      if (pieces.size() < 2) throw ValidationError("glue needs at least two pieces");
      if (!(gap > 0.0)) throw ValidationError("glue gap must be positive");
      for (const auto& p : pieces) p.validate();
      break;
    case GeneratorKind::product:
      if (pieces.size() != 2) throw ValidationError("product needs exactly two factors");
      for (const auto& p : pieces) p.validate();
      break;
  }
  if (!(jitter >= 0.0 && jitter < 0.5)) throw ValidationError("jitter must lie in [0, 0.5)");
}

std::string GeneratorSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case GeneratorKind::grid: os << "grid(" << n << ")"; break;
    case GeneratorKind::cantor: os << "cantor(" << ratio << "," << depth << ")"; break;
    case GeneratorKind::sierpinski: os << "sierpinski(" << depth << ")"; break;
    case GeneratorKind::glue:
      os << "glue(";
      for (std::size_t i = 0; i < pieces.size(); ++i) os << (i ? "," : "") << pieces[i].label();
      os << ";gap=" << gap << ")";
      break;
    case GeneratorKind::product: os << "product(" << pieces[0].label() << "," << pieces[1].label() << ")"; break;
  }
  return os.str();
}

double moran_dimension(const std::vector<double>& ratios) {
  if (ratios.empty()) throw ValidationError("moran_dimension needs at least one ratio");
  for (double r : ratios)
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("moran ratios must lie in (0, 1)");
  auto f = [&](double s) {
    double acc = 0.0;
    for (double r : ratios) acc += std::pow(r, s);
    return acc - 1.0;
  };
  if (f(0.0) <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct Raw {
  std::vector<std::vector<double>> coords;  // empty when only `dist` is known
  std::vector<double> dist;
  std::vector<double> weights;
  std::vector<double> dim;
  std::vector<double> q;
  std::vector<int> piece;
  std::vector<std::string> piece_labels;
  std::vector<double> piece_dim;
  double global_dim = 0.0;

  std::size_t size() const { return weights.size(); }
  double distance(std::size_t i, std::size_t j) const {
    if (!coords.empty()) {
      double acc = 0.0;
      for (std::size_t k = 0; k < coords[i].size(); ++k) {
        const double d = coords[i][k] - coords[j][k];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    return dist[i * size() + j];
  }
};

Raw single_piece(std::vector<std::vector<double>> coords, double dim, const std::string& label) {
  Raw r;
  const std::size_t n = coords.size();
  r.coords = std::move(coords);
  r.weights.assign(n, 1.0 / static_cast<double>(n));
  r.dim.assign(n, dim);
  r.q.assign(n, dim);
  r.piece.assign(n, 0);
  r.piece_labels = {label};
  r.piece_dim = {dim};
  r.global_dim = dim;
  return r;
}

Raw build(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::grid: {
      std::vector<std::vector<double>> c;
      for (std::size_t i = 0; i < spec.n; ++i)
        c.push_back({spec.n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(spec.n - 1)});
      return single_piece(std::move(c), spec.n == 1 ? 0.0 : 1.0, spec.label());
    }
    case GeneratorKind::cantor: {
      // Left endpoints of the surviving intervals at the given depth.
      std::vector<double> left{0.0};
      double len = 1.0;
      for (int d = 0; d < spec.depth; ++d) {
        std::vector<double> next;
        const double child = spec.ratio * len;
        for (double a : left) {
          next.push_back(a);
          next.push_back(a + len - child);
        }
        left = std::move(next);
        len = child;
      }
      std::vector<std::vector<double>> c;
      for (double a : left) c.push_back({a});
      return single_piece(std::move(c), moran_dimension({spec.ratio, spec.ratio}), spec.label());
    }
    case GeneratorKind::sierpinski: {
      const double cx[3] = {0.0, 1.0, 0.5};
      const double cy[3] = {0.0, 0.0, std::sqrt(3.0) / 2.0};
      std::vector<std::vector<double>> pts{{0.0, 0.0}};
      // Points are f_w(seed) for words w of the given length; building by
      // prepending maps keeps the order lexicographic in w.
      for (int d = 0; d < spec.depth; ++d) {
        std::vector<std::vector<double>> next;
        for (int m = 0; m < 3; ++m)
          for (const auto& p : pts) next.push_back({0.5 * p[0] + 0.5 * cx[m], 0.5 * p[1] + 0.5 * cy[m]});
        pts = std::move(next);
      }
      return single_piece(std::move(pts), moran_dimension({0.5, 0.5, 0.5}), spec.label());
    }
    case GeneratorKind::product: {
      const Raw a = build(spec.pieces[0]);
      const Raw b = build(spec.pieces[1]);
      if (a.coords.empty() || b.coords.empty()) throw ValidationError("product factors need coordinates");
      std::vector<std::vector<double>> c;
      std::vector<double> w;
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
          auto p = a.coords[i];
          p.insert(p.end(), b.coords[j].begin(), b.coords[j].end());
          c.push_back(std::move(p));
          w.push_back(a.weights[i] * b.weights[j]);
        }
      Raw r = single_piece(std::move(c), a.global_dim + b.global_dim, spec.label());
      r.weights = std::move(w);
      return r;
    }
    case GeneratorKind::glue: {
      std::vector<Raw> parts;
      for (const auto& p : spec.pieces) parts.push_back(build(p));
      bool line = true;
      for (const auto& p : parts) line = line && !p.coords.empty() && p.coords.front().size() == 1;
      Raw r;
      const double share = 1.0 / static_cast<double>(parts.size());
      std::vector<std::size_t> offset;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        offset.push_back(r.size());
        const auto& p = parts[k];
        for (std::size_t i = 0; i < p.size(); ++i) {
          r.weights.push_back(p.weights[i] * share);
          r.dim.push_back(p.dim[i]);
          r.q.push_back(p.q[i]);
          r.piece.push_back(static_cast<int>(r.piece_labels.size()) + p.piece[i]);
        }
        r.piece_labels.insert(r.piece_labels.end(), p.piece_labels.begin(), p.piece_labels.end());
        r.piece_dim.insert(r.piece_dim.end(), p.piece_dim.begin(), p.piece_dim.end());
        r.global_dim = std::max(r.global_dim, p.global_dim);
      }
      // Pieces are chained by bridges of length `gap` between the last point
      // of one piece and the first point of the next.
      if (line) {
        double cursor = 0.0;
        for (std::size_t k = 0; k < parts.size(); ++k) {
          double lo = parts[k].coords.front()[0], hi = lo;
          for (const auto& c : parts[k].coords) {
            lo = std::min(lo, c[0]);
            hi = std::max(hi, c[0]);
          }
          const double shift = (k == 0 ? 0.0 : cursor + spec.gap) - lo;
          for (const auto& c : parts[k].coords) r.coords.push_back({c[0] + shift});
          cursor = hi + shift;
        }
        return r;
      }
      const std::size_t n = r.size();
      r.dist.assign(n * n, 0.0);
      std::vector<double> span(parts.size());
      for (std::size_t k = 0; k < parts.size(); ++k) span[k] = parts[k].distance(0, parts[k].size() - 1);
      for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t i = 0; i < parts[a].size(); ++i)
          for (std::size_t b = a; b < parts.size(); ++b)
            for (std::size_t j = 0; j < parts[b].size(); ++j) {
              double d;
              if (a == b) {
                d = parts[a].distance(i, j);
              } else {
                d = parts[a].distance(i, parts[a].size() - 1) + spec.gap + parts[b].distance(0, j);
                for (std::size_t m = a + 1; m < b; ++m) d += span[m] + spec.gap;
              }
              r.dist[(offset[a] + i) * n + offset[b] + j] = d;
              r.dist[(offset[b] + j) * n + offset[a] + i] = d;
            }
      return r;
    }
  }
  throw ValidationError("unsupported generator");
}

}  // namespace

Generated generate(const GeneratorSpec& spec) {
  spec.validate();
  Raw raw = build(spec);
  const std::size_t n = raw.size();
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));

  Generated g;
  if (!raw.coords.empty()) {
    if (spec.jitter > 0.0) {
      double h = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) h = std::min(h, raw.distance(i, j));
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> u(-0.5 * spec.jitter * h, 0.5 * spec.jitter * h);
      for (auto& p : raw.coords)
        for (auto& x : p) x += u(rng);
    }
    std::vector<PointRecord> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({ids[i], raw.coords[i]});
    g.space = FiniteMetricSpace::from_points(pts, Metric::euclidean);
  } else {
    g.space = FiniteMetricSpace::from_matrix(ids, raw.dist);
  }
  if (g.space.size() != n) throw ComputeError("generator produced coincident points");
  g.measure = SampledMeasure(raw.weights);
  g.truth.global_dim = raw.global_dim;
  g.truth.point_dim = raw.dim;
  g.truth.point_q = raw.q;
  g.truth.piece = raw.piece;
  g.truth.piece_labels = raw.piece_labels;
  g.truth.piece_dim = raw.piece_dim;
  return g;
}

}  // namespace lochaus
