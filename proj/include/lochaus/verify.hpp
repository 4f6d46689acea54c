#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lochaus/ahlfors.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/io.hpp"
#include "lochaus/spaces.hpp"

// Finite-scale checks of the measure-theoretic properties, on generated
// fixtures and seeded random spaces. Every row is deterministic: no timings,
// no dependence on the worker count.

namespace lochaus::verify {

struct CheckResult {
  std::string name;
  std::string fixture;
  bool pass = false;
  std::string detail;
  io::Json data = io::Json::object();
};

struct Fixture {
  std::string name;
  GeneratorSpec spec;
  Generated g;
  Window window;               // ball-mass window for the Q fit
  bool natural_measure = true; // weights are the self-similar measure
};

struct SuiteOptions {
  bool quick = false;
  std::uint64_t seed = 20240601;
};

/// Fixture set with cached fields; the expensive pieces are computed once.
class Suite {
 public:
  explicit Suite(SuiteOptions opt);

  const SuiteOptions& options() const { return opt_; }
  const std::vector<std::string>& fixture_names() const { return names_; }
  const Fixture& fixture(const std::string& name);
  const LocalDimensionField& field(const std::string& name);
  const DimensionEstimate& dimension(const std::string& name);
  const QField& q_field(const std::string& name);
  const RegularityCertificate& regularity(const std::string& name);

  // Names of the roles the checks use.
  std::string grid() const { return names_[0]; }
  std::string cantor() const { return names_[1]; }
  std::string sierpinski() const { return names_[2]; }
  std::string glue() const { return names_[3]; }

  CheckResult oracle_equivalence();
  CheckResult balls_vs_subsets();
  CheckResult s_monotonicity();
  CheckResult dimension_recovery(const std::string& name, double tolerance);
  CheckResult local_global();
  CheckResult absolute_continuity();
  CheckResult local_equivalence();
  CheckResult ahlfors_regularity();
  CheckResult q_equals_dimloc();
  CheckResult nu_lambda();
  CheckResult sandwich();
  CheckResult log_holder_bound();
  CheckResult vitali();

  /// Every row, in a fixed order.
  std::vector<CheckResult> run_all();

 private:
  SuiteOptions opt_;
  std::vector<std::string> names_;
  std::map<std::string, std::unique_ptr<Fixture>> fixtures_;
  std::map<std::string, LocalDimensionField> fields_;
  std::map<std::string, DimensionEstimate> dims_;
  std::map<std::string, QField> qs_;
  std::map<std::string, RegularityCertificate> certs_;
};

/// 16-point neighbourhoods of a few anchor points, small enough for the
/// all_subsets class. `origin[k]` is the fixture index of subspace point k.
struct Neighbourhood {
  std::size_t anchor = 0;
  std::vector<std::size_t> origin;
  FiniteMetricSpace space;
};
std::vector<Neighbourhood> neighbourhoods(const Fixture& f, std::size_t size = 16);

/// Fixed-width text table, one row per check, then a summary line.
std::string format_table(const std::vector<CheckResult>& rows);
io::Json to_json(const std::vector<CheckResult>& rows);

}  // namespace lochaus::verify
