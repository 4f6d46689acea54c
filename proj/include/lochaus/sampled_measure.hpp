#pragma once

#include <cstddef>
#include <vector>

#include "lochaus/bitmask.hpp"

namespace lochaus {

/// Nonnegative weight per sample point; nu(A) is the exact weight sum over A.
class SampledMeasure {
 public:
  SampledMeasure() = default;
  explicit SampledMeasure(std::vector<double> weights);

  static SampledMeasure uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double total() const { return total_; }
  double of(const Mask& mask) const;
  SampledMeasure scaled(double c) const;

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

}  // namespace lochaus
