#include "lochaus/sampled_measure.hpp"

#include <cmath>

#include "lochaus/error.hpp"

namespace lochaus {

SampledMeasure::SampledMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("measure weights must be finite and nonnegative");
    total_ += w;
  }
  if (!(total_ > 0.0)) throw ValidationError("measure total mass must be positive");
}

SampledMeasure SampledMeasure::uniform(std::size_t n) {
  return SampledMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double SampledMeasure::of(const Mask& mask) const {
  double m = 0.0;
  mask.for_each([&](std::size_t i) { m += weights_[i]; });
  return m;
}

SampledMeasure SampledMeasure::scaled(double c) const {
  std::vector<double> w = weights_;
  for (auto& x : w) x *= c;
  return SampledMeasure(std::move(w));
}

}  // namespace lochaus
