#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "buser/model_space.hpp"

using namespace buser;

namespace {

constexpr double kPi = std::numbers::pi;

SpaceSpec spec_of(Preset p, int n, double radius) {
  SpaceSpec s;
  s.preset = p;
  s.n = n;
  s.radius = radius;
  return s;
}

}  // namespace

TEST_CASE("gaussian build: normalization and truncation tail") {
  const WeightedLine s = build_space(spec_of(Preset::gaussian, 4001, 8.0));
  CHECK(std::fabs(s.total_mass() - 1.0) < 1e-10);
  CHECK(s.normalized);
  CHECK(s.curvature == 1.0);
  // continuum tail beyond the truncation radius, via erfc
  CHECK(std::erfc(8.0 / std::numbers::sqrt2) < 1e-14);
  // discrete normalization reproduces the standard normal density
  CHECK(density_at(s, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-10));
}

TEST_CASE("flat circle build") {
  SpaceSpec spec = spec_of(Preset::flat_circle, 256, 0.0);
  spec.length = 2.0 * kPi;
  const WeightedLine s = build_space(spec);
  CHECK(std::fabs(s.total_mass() - 1.0) < 1e-12);
  for (double w : s.weight) CHECK(w == doctest::Approx(s.weight[0]).epsilon(1e-15));
  CHECK(s.topology == Topology::circle);
  CHECK(s.curvature == 0.0);
}

TEST_CASE("double well curvature") {
  SpaceSpec spec = spec_of(Preset::double_well, 2001, 6.0);
  spec.b = 1.0;
  const WeightedLine s = build_space(spec);
  CHECK(s.curvature == -1.0);  // inf(3x^2 - b) = -b
  CHECK(std::fabs(s.total_mass() - 1.0) < 1e-12);
}

TEST_CASE("inverted gaussian is flagged infinite") {
  const WeightedLine s = build_space(spec_of(Preset::inverted_gaussian, 801, 8.0));
  CHECK_FALSE(s.normalizable);
  CHECK_FALSE(s.normalized);
  CHECK(s.curvature == -1.0);
  CHECK(density_at(s, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("build rejects out-of-range parameters") {
  CHECK_THROWS_AS(build_space(spec_of(Preset::gaussian, 8, 8.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_space(spec_of(Preset::gaussian, 1001, 2.0)), std::invalid_argument);
  {
    SpaceSpec s = spec_of(Preset::convex_perturbed, 1001, 8.0);
    s.a = 1.5;
    CHECK_THROWS_AS(build_space(s), std::invalid_argument);
  }
  {
    SpaceSpec s = spec_of(Preset::double_well, 1001, 6.0);
    s.b = -1.0;
    CHECK_THROWS_AS(build_space(s), std::invalid_argument);
  }
  {
    SpaceSpec s = spec_of(Preset::flat_interval, 1001, 0.0);
    s.length = -2.0;
    CHECK_THROWS_AS(build_space(s), std::invalid_argument);
  }
  CHECK_THROWS_AS(preset_from_name("triangle"), std::invalid_argument);
  CHECK(preset_from_name("gaussian") == Preset::gaussian);
}

TEST_CASE("every normalizable preset is normalized and positive") {
  std::vector<SpaceSpec> specs;
  specs.push_back(spec_of(Preset::gaussian, 501, 8.0));
  specs.push_back(spec_of(Preset::flat_interval, 501, 0.0));
  specs.push_back(spec_of(Preset::flat_circle, 256, 0.0));
  {
    SpaceSpec s = spec_of(Preset::convex_perturbed, 501, 8.0);
    s.a = 0.5;
    specs.push_back(s);
  }
  {
    SpaceSpec s = spec_of(Preset::double_well, 501, 6.0);
    s.b = 1.0;
    specs.push_back(s);
  }
  for (const SpaceSpec& spec : specs) {
    const WeightedLine s = build_space(spec);
    CHECK(std::fabs(s.total_mass() - 1.0) <= 1e-12);
    for (double w : s.weight) CHECK(w > 0.0);
  }
}

TEST_CASE("sublevel measure: symmetry, uniformity, endpoints") {
  const WeightedLine g = build_space(spec_of(Preset::gaussian, 2001, 8.0));
  CHECK(measure_of_sublevel(g, 0.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(measure_of_sublevel(g, g.nodes.back()) ==
        doctest::Approx(g.total_mass()).epsilon(1e-12));
  CHECK(measure_of_sublevel(g, g.domain_right()) ==
        doctest::Approx(g.total_mass()).epsilon(1e-15));

  SpaceSpec fs = spec_of(Preset::flat_interval, 2001, 0.0);
  fs.length = 4.0;
  const WeightedLine f = build_space(fs);
  CHECK(measure_of_sublevel(f, 1.0) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(measure_of_sublevel(f, 4.0) == doctest::Approx(1.0).epsilon(1e-14));

  // monotone in s
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = f.domain_left() + (f.domain_right() - f.domain_left()) * i / 100.0;
    const double m = measure_of_sublevel(f, s);
    CHECK(m >= prev);
    prev = m;
  }
  CHECK_THROWS_AS(measure_of_sublevel(f, 4.5), std::invalid_argument);
  CHECK_THROWS_AS(measure_of_sublevel(f, -0.5), std::invalid_argument);
}

TEST_CASE("sublevel measure refines at second order") {
  // probe at a shared cell boundary so the partial-cell remainder
  // vanishes and the pure midpoint-rule error is visible
  const double s_probe = -8.0 + 16.0 * (265.0 / 500.0);
  const WeightedLine ref = build_space(spec_of(Preset::gaussian, 25000, 8.0));
  const double m_ref = measure_of_sublevel(ref, s_probe);
  const double e1 =
      std::fabs(measure_of_sublevel(build_space(spec_of(Preset::gaussian, 500, 8.0)), s_probe) -
                m_ref);
  const double e2 =
      std::fabs(measure_of_sublevel(build_space(spec_of(Preset::gaussian, 1000, 8.0)), s_probe) -
                m_ref);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.5);
}

TEST_CASE("slope: constants, affine exactness, quadratic exactness") {
  SpaceSpec fs = spec_of(Preset::flat_interval, 201, 0.0);
  fs.length = 2.0;
  const WeightedLine f = build_space(fs);
  const GridFunction c(f.nodes.size(), 3.14);
  for (double v : slope(f, c)) CHECK(v == 0.0);

  const GridFunction lin = sample(f, [](double x) { return x; });
  for (double v : slope(f, lin)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  // central differences are exact for quadratics on uniform grids
  const GridFunction quad = sample(f, [](double x) { return x * x; });
  const GridFunction g = slope(f, quad);
  for (size_t i = 1; i + 1 < g.size(); ++i) {
    CHECK(g[i] == doctest::Approx(2.0 * f.nodes[i]).epsilon(1e-12));
  }
}

TEST_CASE("slope second-order convergence on a smooth profile") {
  const auto err_at = [](int n) {
    SpaceSpec fs;
    fs.preset = Preset::flat_interval;
    fs.n = n;
    fs.length = 2.0;
    const WeightedLine f = build_space(fs);
    const GridFunction u = sample(f, [](double x) { return std::sin(3.0 * x); });
    const GridFunction g = slope(f, u);
    double worst = 0.0;
    for (size_t i = 1; i + 1 < g.size(); ++i) {
      worst = std::max(worst, std::fabs(g[i] - std::fabs(3.0 * std::cos(3.0 * f.nodes[i]))));
    }
    return worst;
  };
  const double r = err_at(200) / err_at(400);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
}

TEST_CASE("slope wraps around the circle") {
  SpaceSpec cs = spec_of(Preset::flat_circle, 256, 0.0);
  cs.length = 2.0 * kPi;
  const WeightedLine c = build_space(cs);
  const GridFunction u = sample(c, [](double x) { return std::sin(x); });
  const GridFunction g = slope(c, u);
  for (size_t i = 0; i < g.size(); ++i) {
    CHECK(g[i] == doctest::Approx(std::fabs(std::cos(c.nodes[i]))).epsilon(1e-3));
  }
}
