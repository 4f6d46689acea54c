#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lochaus/bitmask.hpp"
#include "lochaus/dimension.hpp"
#include "lochaus/local_measure.hpp"
#include "lochaus/metric_space.hpp"
#include "lochaus/premeasure.hpp"
#include "lochaus/sampled_measure.hpp"

namespace lochaus {

/// Radius window [lo, hi] for ball-mass tests; Ahlfors constants are only
/// meaningful relative to it.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// [4h, diam/4], widened to [h, diam] when that would be empty.
Window default_window(const FiniteMetricSpace& space);
/// Parses "lo,hi".
Window parse_window(const std::string& text);
/// n geometric radii from lo to hi inclusive.
std::vector<double> window_radii(const Window& w, std::size_t n);

/// pointwise:      slope of log nu(B_r(x)) against log r.
/// neighbourhood:  slope of the log of the nu-average of nu(B_r(y)) over y in
///                 B_R(x), R = 2 * window.hi. Bounded distortions of the ball
///                 masses (a boundary halves them) are what Ahlfors regularity
///                 allows, and averaging keeps them from bending the slope.
enum class QFitMethod { neighbourhood, pointwise };

QFitMethod parse_q_fit_method(const std::string& s);
std::string to_string(QFitMethod m);

struct QField {
  std::vector<double> q;
  std::vector<double> q_stderr;
  std::vector<bool> flagged;  // no positive ball mass at two radii; q = 0
  Window window;
  std::vector<double> radii;
  QFitMethod method = QFitMethod::neighbourhood;
  double neighbourhood_radius = 0.0;

  std::size_t size() const { return q.size(); }
  /// max q, the R bounding the exponent.
  double bound() const;
};

/// q_i = least-squares slope against log r over the window radii.
QField fit_q_field(const FiniteMetricSpace& space, const SampledMeasure& nu, const Window& window,
                   std::size_t n_radii = 8, QFitMethod method = QFitMethod::neighbourhood);
/// A supplied exponent, constant over the space.
QField constant_q_field(std::size_t n, double value, const Window& window, std::size_t n_radii = 8);

struct RegularityWitness {
  std::size_t point = 0;
  double radius = 0.0;
  double mass = 0.0;
  double value = 0.0;
};

/// 1/C nu(B_r(x)) <= r^Q(x) <= C nu(B_r(x)) over every point and window radius.
/// C1 = max nu / r^Q and C2 = max r^Q / nu are kept separately; C = max(1, C1, C2).
struct RegularityCertificate {
  double C = 1.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double threshold = 50.0;
  Window window;
  std::vector<double> radii;
  RegularityWitness worst_upper;  // attains C1
  RegularityWitness worst_lower;  // attains C2
  bool zero_mass = false;         // a ball in the window had no mass
  RegularityWitness zero_witness;
  bool pass = false;
};

RegularityCertificate regularity_certificate(const FiniteMetricSpace& space, const SampledMeasure& nu,
                                             const std::vector<double>& q, const Window& window,
                                             std::size_t n_radii = 8, double threshold = 50.0);

struct LogHolderCertificate {
  double C_lh = 0.0;
  double threshold = 0.0;
  std::size_t i = 0, j = 0;  // attaining pair
  double distance = 0.0;     // normalized
  std::size_t pairs = 0;
  double scale = 1.0;        // distances were multiplied by this so diam <= 1
  bool pass = false;
  // Against log(C1 C2 2^R) + slack when a regularity certificate was supplied.
  bool bound_checked = false;
  double bound = 0.0;
  bool bound_pass = false;
};

/// C_lh = max over pairs with 0 < d < 1/2 of |q_x - q_y| (-log d), with the
/// metric scaled to diameter <= 1.
LogHolderCertificate log_holder_certificate(const FiniteMetricSpace& space, const std::vector<double>& q,
                                            double threshold, const RegularityCertificate* regularity = nullptr,
                                            double slack = 0.5);

struct SandwichReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_log_ratio = 0.0;  // max of (Q+ - Q-) (-log |U|)
  double C_lh = 0.0;
  bool pass = false;
};

/// Per candidate with clamped |U| < 1/2: |U|^Q+ <= |U|^Q- <= e^C_lh |U|^Q+,
/// compared in the log domain with no tolerance.
SandwichReport variable_gauge_sandwich(const FiniteMetricSpace& space, const std::vector<double>& q, double C_lh,
                                       CoverClass cls, ClampRule clamp = ClampRule::additive);

struct NuLambdaRow {
  std::string label;
  double nu = 0.0;
  double lambda = 0.0;       // min of the solver cover and the Vitali cover
  double solver_cost = 0.0;
  double vitali_cost = 0.0;  // 5r dilations of the Vitali subfamily
  std::size_t vitali_balls = 0;
  double ratio = 0.0;
  bool skipped = false;      // nu = 0 and lambda = 0
  bool witness = false;      // nu = 0 with positive lambda
  bool amenable = true;      // 0 < lambda < inf
  bool pass = false;
};

struct NuLambdaReport {
  double lower = 0.0;  // 1 / C1
  double upper = 0.0;  // C2 10^R
  double delta = 0.0;
  double slack = 0.0;
  std::vector<NuLambdaRow> rows;
  std::size_t tested = 0;
  bool pass = false;
};

/// lambda^{Q_c}(A) / nu(A) within [1/C1, C2 10^R] for each test set.
NuLambdaReport nu_vs_lambda_qc(const FiniteMetricSpace& space, const SampledMeasure& nu, const QField& q,
                               const RegularityCertificate& cert, const std::vector<LabeledSet>& sets, double delta,
                               SolveMode mode = SolveMode::greedy, double slack = 1e-9,
                               ClampRule clamp = ClampRule::additive);

struct QDimCheck {
  double max_diff = 0.0;
  std::size_t witness = 0;
  double tolerance = 0.1;
  std::vector<double> diff;
  bool pass = false;
};

/// |q_i - d_i| <= tol + stderr_i for every unflagged point.
QDimCheck q_equals_dimloc_check(const QField& q, const LocalDimensionField& field, double tol = 0.1);
QDimCheck q_equals_dimloc_check(const std::vector<double>& q, const std::vector<double>& q_stderr,
                                const std::vector<double>& d, double tol = 0.1);

}  // namespace lochaus
