#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lochaus/ahlfors.hpp"
#include "lochaus/error.hpp"
#include "lochaus/spaces.hpp"

using namespace lochaus;
using lochaus::test::uniform_grid;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

}  // namespace

TEST_CASE("window parsing and defaults") {
  const auto w = parse_window("0.1,0.5");
  CHECK(w.lo == 0.1);
  CHECK(w.hi == 0.5);
  CHECK_THROWS_AS(parse_window("0.5,0.1"), ValidationError);
  CHECK_THROWS_AS(parse_window("0.5"), ValidationError);
  const auto X = uniform_grid(257);
  const auto d = default_window(X);
  CHECK(d.lo == doctest::Approx(4.0 / 256));
  CHECK(d.hi == doctest::Approx(0.25));
  const auto r = window_radii(d, 8);
  CHECK(r.front() == d.lo);
  CHECK(r.back() == d.hi);
}

TEST_CASE("uniform grid measure has slope 1") {
  const auto X = uniform_grid(256);
  const auto nu = SampledMeasure::uniform(256);
  for (auto m : {QFitMethod::pointwise, QFitMethod::neighbourhood}) {
    const auto q = fit_q_field(X, nu, default_window(X), 8, m);
    CHECK(q.q[128] == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("natural Cantor measure has slope log2/log3") {
  const auto g = generate(GeneratorSpec::cantor(8));
  const Window w{std::pow(3.0, -7), std::pow(3.0, -2)};
  const auto q = fit_q_field(g.space, g.measure, w, 6, QFitMethod::pointwise);
  for (std::size_t i : {std::size_t{0}, std::size_t{100}, std::size_t{200}})
    CHECK(std::abs(q.q[i] - kCantorDim) <= 0.05);
}

TEST_CASE("point mass has slope 0") {
  const auto X = uniform_grid(33);
  std::vector<double> w(33, 0.0);
  w[16] = 1.0;
  const SampledMeasure nu(w);
  for (auto m : {QFitMethod::pointwise, QFitMethod::neighbourhood}) {
    const auto q = fit_q_field(X, nu, Window{0.05, 0.4}, 6, m);
    CHECK(std::abs(q.q[16]) <= 1e-12);
  }
}

TEST_CASE("zero mass at every radius flags the point") {
  const auto X = lochaus::test::line({0, 0.01, 5, 5.01});
  const SampledMeasure nu({0, 0, 1, 1});
  const auto q = fit_q_field(X, nu, Window{0.1, 1.0}, 4, QFitMethod::pointwise);
  CHECK(q.flagged[0]);
  CHECK(q.q[0] == 0.0);
  CHECK_FALSE(q.flagged[2]);
}

TEST_CASE("regularity of the uniform grid") {
  const auto X = uniform_grid(257);
  const auto nu = SampledMeasure::uniform(257);
  const auto c = regularity_certificate(X, nu, std::vector<double>(257, 1.0), default_window(X));
  CHECK(c.C <= 4.0);
  CHECK(c.pass);
  CHECK_FALSE(c.zero_mass);
}

TEST_CASE("regularity of the natural Cantor measure") {
  const auto g = generate(GeneratorSpec::cantor(8));
  const Window w{std::pow(3.0, -6), std::pow(3.0, -1)};
  const auto c = regularity_certificate(g.space, g.measure, std::vector<double>(g.space.size(), kCantorDim), w);
  CHECK(c.C <= 8.0);
}

TEST_CASE("wrong exponent fails as the window widens") {
  const auto X = uniform_grid(257);
  const auto nu = SampledMeasure::uniform(257);
  const std::vector<double> half(257, 0.5);
  const auto narrow = regularity_certificate(X, nu, half, Window{0.1, 0.25}, 8, 4.0);
  const auto wide = regularity_certificate(X, nu, half, Window{X.resolution() * 1.5, 1.0}, 8, 4.0);
  CHECK(wide.C > narrow.C);
  CHECK_FALSE(wide.pass);
}

TEST_CASE("zero-mass ball in the window fails with a witness") {
  const auto X = lochaus::test::line({0, 0.5, 1});
  const SampledMeasure nu({1, 0, 1});
  const auto c = regularity_certificate(X, nu, {1, 1, 1}, Window{0.1, 0.2});
  CHECK(c.zero_mass);
  CHECK(c.zero_witness.point == 1);
  CHECK_FALSE(c.pass);
}

TEST_CASE("regularity constants scale with the measure") {
  const auto X = uniform_grid(65);
  const auto nu = SampledMeasure::uniform(65);
  const std::vector<double> q(65, 1.0);
  const auto w = default_window(X);
  const double c = 3.5;
  const auto a = regularity_certificate(X, nu, q, w);
  const auto b = regularity_certificate(X, nu.scaled(c), q, w);
  CHECK(b.C1 == doctest::Approx(c * a.C1).epsilon(1e-12));
  CHECK(b.C2 == doctest::Approx(a.C2 / c).epsilon(1e-12));
}

TEST_CASE("q fit is invariant under joint rescaling") {
  const auto g = generate(GeneratorSpec::cantor(6));
  const Window w = default_window(g.space);
  const double c = 12.0;
  for (auto m : {QFitMethod::pointwise, QFitMethod::neighbourhood}) {
    const auto a = fit_q_field(g.space, g.measure, w, 8, m);
    const auto b = fit_q_field(g.space.scaled(c), g.measure, Window{w.lo * c, w.hi * c}, 8, m);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.q[i] - b.q[i]) <= 1e-6);
  }
}

TEST_CASE("log-Holder constants") {
  const auto X = lochaus::test::line({0, 0.4, 1.0});
  const auto flat = log_holder_certificate(X, {1, 1, 1}, 10.0);
  CHECK(flat.C_lh == 0.0);
  CHECK(flat.pass);
  const auto jump = log_holder_certificate(X, {1.0, 0.63, 0.63}, 10.0);
  CHECK(jump.C_lh >= 0.37 * -std::log(0.4) - 1e-12);
  CHECK(jump.C_lh == doctest::Approx(0.339).epsilon(0.01));
}

TEST_CASE("glued pieces far apart give a small log-Holder constant") {
  const auto g = generate(GeneratorSpec::glue({GeneratorSpec::cantor(4), GeneratorSpec::grid(17)}, 2));
  const auto c = log_holder_certificate(g.space, g.truth.point_q, 1.0);
  CHECK(c.C_lh == 0.0);
  CHECK(c.pass);
}

TEST_CASE("sandwich holds for a log-Holder field") {
  const auto X = uniform_grid(17);
  std::vector<double> q(17);
  for (std::size_t i = 0; i < 17; ++i) q[i] = 0.8 + 0.2 * X.coords()[i][0];
  const auto lh = log_holder_certificate(X, q, 10.0);
  const auto s = variable_gauge_sandwich(X, q, lh.C_lh, CoverClass::balls);
  CHECK(s.checked > 0);
  CHECK(s.violations == 0);
  CHECK(s.pass);
}

TEST_CASE("nu versus lambda on the whole grid") {
  const auto X = uniform_grid(65);
  const auto nu = SampledMeasure::uniform(65);
  const auto w = default_window(X);
  const auto q = constant_q_field(65, 1.0, w);
  const auto cert = regularity_certificate(X, nu, q.q, w);
  const std::vector<LabeledSet> sets{{"whole", Mask::full(65)}, {"empty", Mask(65)}};
  const auto rep = nu_vs_lambda_qc(X, nu, q, cert, sets, w.hi);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].ratio >= 0.1);
  CHECK(rep.rows[0].ratio <= 10.0 * cert.C2);
  CHECK(rep.rows[0].pass);
  CHECK(rep.rows[1].skipped);
  CHECK(rep.tested == 1);
}

TEST_CASE("nu versus lambda on the Cantor piece of a glued space") {
  const auto g = generate(GeneratorSpec::glue({GeneratorSpec::cantor(6), GeneratorSpec::grid(129)}, 2));
  const Window w{4 * g.space.resolution(), 0.25};
  const auto q = fit_q_field(g.space, g.measure, w);
  const auto cert = regularity_certificate(g.space, g.measure, q.q, w);
  Mask cantor(g.space.size());
  for (std::size_t i = 0; i < g.space.size(); ++i)
    if (g.truth.piece[i] == 0) cantor.set(i);
  const auto rep = nu_vs_lambda_qc(g.space, g.measure, q, cert, {{"cantor", cantor}}, w.hi);
  CHECK(rep.rows[0].ratio >= rep.lower);
  CHECK(rep.rows[0].ratio <= rep.upper);
}

TEST_CASE("q versus local dimension") {
  QField q;
  q.q = {1.0, 1.02, 0.63};
  q.q_stderr = {0, 0, 0};
  q.flagged = {false, false, false};
  CHECK(q_equals_dimloc_check(q.q, q.q_stderr, {1.0, 1.0, 0.63}).pass);
  const auto bad = q_equals_dimloc_check(q.q, q.q_stderr, {1.0, 1.0, 1.0});
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness == 2);
  CHECK(bad.max_diff == doctest::Approx(0.37));
}
