#pragma once

#include <string>
#include <vector>

#include "lochaus/ahlfors.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/io.hpp"
#include "lochaus/local_measure.hpp"
#include "lochaus/spaces.hpp"

// JSON and CSV shapes of the results. Field order is fixed here; io::dump
// fixes the number formatting.

namespace lochaus::report {

using io::Json;

Json ids_json(const FiniteMetricSpace& space, const Mask& mask);
Json window_json(const Window& w);

Json dimension_json(const DimensionEstimate& est, const FiniteMetricSpace& space, const DimensionOptions& opt);
Json measure_json(const MeasureEstimate& est, const FiniteMetricSpace& space);
Json truth_json(const Generated& g, const GeneratorSpec& spec);

/// id,value,ci,flagged
std::string field_csv(const FiniteMetricSpace& space, const LocalDimensionField& field);
/// Values of a field CSV (as written by field_csv, or just id,value) in point order.
std::vector<double> field_from_csv(const std::string& text, const FiniteMetricSpace& space);

/// id,q,stderr,d (d empty when no local field was computed)
std::string q_field_csv(const FiniteMetricSpace& space, const QField& q, const LocalDimensionField* field);

Json q_field_json(const QField& q);
Json regularity_json(const RegularityCertificate& c, const FiniteMetricSpace& space);
Json log_holder_json(const LogHolderCertificate& c, const FiniteMetricSpace& space);
Json sandwich_json(const SandwichReport& s);
Json nu_lambda_json(const NuLambdaReport& r);
Json q_dim_json(const QDimCheck& c, const FiniteMetricSpace& space);

}  // namespace lochaus::report
