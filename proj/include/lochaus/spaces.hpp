#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lochaus/metric_space.hpp"
#include "lochaus/sampled_measure.hpp"

namespace lochaus {

enum class GeneratorKind { grid, cantor, sierpinski, glue, product };

GeneratorKind parse_generator_kind(const std::string& s);
std::string to_string(GeneratorKind k);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::grid;
  std::size_t n = 9;          // grid: point count on [0, 1]
  double ratio = 1.0 / 3.0;   // cantor: contraction ratio in (0, 1/2]
  int depth = 6;              // cantor / sierpinski: IFS depth
  std::vector<GeneratorSpec> pieces;  // glue / product
  double gap = 2.0;           // glue: bridge length between consecutive pieces
  double jitter = 0.0;        // fraction of the resolution; 0 disables
  std::uint64_t seed = 1;

  static GeneratorSpec grid(std::size_t n);
  static GeneratorSpec cantor(int depth, double ratio = 1.0 / 3.0);
  static GeneratorSpec sierpinski(int depth);
  static GeneratorSpec glue(std::vector<GeneratorSpec> pieces, double gap);
  static GeneratorSpec product(GeneratorSpec a, GeneratorSpec b);

  void validate() const;
  std::string label() const;
};

/// Expected values computed independently of the estimators.
struct GroundTruth {
  double global_dim = 0.0;
  std::vector<double> point_dim;   // expected local dimension per point
  std::vector<double> point_q;     // expected Ahlfors exponent of the natural measure
  std::vector<int> piece;          // piece index per point (0 for single-piece spaces)
  std::vector<std::string> piece_labels;
  std::vector<double> piece_dim;
};

struct Generated {
  FiniteMetricSpace space;
  SampledMeasure measure;
  GroundTruth truth;
};

Generated generate(const GeneratorSpec& spec);

/// Unique s >= 0 with sum_i r_i^s = 1, by bisection to 1e-12.
double moran_dimension(const std::vector<double>& ratios);

}  // namespace lochaus
