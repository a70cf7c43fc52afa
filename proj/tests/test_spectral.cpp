#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "buser/model_space.hpp"
#include "buser/spectral.hpp"

using namespace buser;

namespace {

constexpr double kPi = std::numbers::pi;

WeightedLine gaussian(int n, double radius = 8.0) {
  SpaceSpec s;
  s.preset = Preset::gaussian;
  s.n = n;
  s.radius = radius;
  return build_space(s);
}

WeightedLine circle(int n, double length) {
  SpaceSpec s;
  s.preset = Preset::flat_circle;
  s.n = n;
  s.length = length;
  return build_space(s);
}

WeightedLine interval(int n, double length) {
  SpaceSpec s;
  s.preset = Preset::flat_interval;
  s.n = n;
  s.length = length;
  return build_space(s);
}

}  // namespace

TEST_CASE("assembled operator structure") {
  const WeightedLine f = interval(64, 1.0);
  const TridiagonalOperator op = assemble(f);
  CHECK(op.symmetrized);
  CHECK_FALSE(op.periodic);
  const double inv_dx2 = 1.0 / (f.dx * f.dx);
  for (double o : op.off) CHECK(o == doctest::Approx(-inv_dx2).epsilon(1e-15));
  for (size_t i = 1; i + 1 < op.diag.size(); ++i) {
    CHECK(op.diag[i] == doctest::Approx(2.0 * inv_dx2).epsilon(1e-14));
  }
  CHECK(op.diag.front() == doctest::Approx(inv_dx2).epsilon(1e-14));

  const TridiagonalOperator pc = assemble(circle(64, 2.0 * kPi));
  CHECK(pc.periodic);
  CHECK(pc.corner == doctest::Approx(-1.0 / (pc.dx * pc.dx)).epsilon(1e-15));
}

TEST_CASE("generator annihilates constants and is weighted-symmetric") {
  for (const WeightedLine& s : {gaussian(301), circle(128, 2.0 * kPi), interval(301, 2.0)}) {
    const GridFunction c(s.nodes.size(), 2.5);
    for (double v : apply_generator(s, c)) CHECK(std::fabs(v) <= 1e-12);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> us(-1.0, 1.0);
    GridFunction f(s.nodes.size()), g(s.nodes.size());
    for (size_t i = 0; i < f.size(); ++i) {
      f[i] = us(rng);
      g[i] = us(rng);
    }
    const GridFunction Lf = apply_generator(s, f);
    const GridFunction Lg = apply_generator(s, g);
    double a = 0.0, b = 0.0, scale = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
      a += Lf[i] * g[i] * s.weight[i];
      b += f[i] * Lg[i] * s.weight[i];
      scale += std::fabs(Lf[i] * g[i]) * s.weight[i];
    }
    CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("generator acts as the drifted second derivative") {
  const WeightedLine g = gaussian(2001);
  const GridFunction x = sample(g, [](double v) { return v; });
  const GridFunction lx = apply_generator(g, x);
  // f'' - x f' evaluated on f(x) = x is -x
  for (int i = 5; i < g.size() - 5; ++i) {
    CHECK(lx[i] == doctest::Approx(-g.nodes[i]).epsilon(5e-4));
  }
}

TEST_CASE("spectral gap of the curvature-one space") {
  const EigenResult e = lambda1(gaussian(4001, 8.0));
  CHECK(std::fabs(e.eigenvalue - 1.0) < 1e-3);
  CHECK(e.residual_norm <= 1e-8 * std::max(1.0, e.eigenvalue));

  const WeightedLine g = gaussian(4001, 8.0);
  double mean = 0.0;
  for (int i = 0; i < g.size(); ++i) mean += e.eigenfunction[i] * g.weight[i] * g.dx;
  CHECK(std::fabs(mean) <= 1e-10);
}

TEST_CASE("spectral gap of flat circles and intervals") {
  const EigenResult ec = lambda1(circle(256, 2.0 * kPi));
  CHECK(std::fabs(ec.eigenvalue - 1.0) < 1e-3);

  const EigenResult ei = lambda1(interval(1001, kPi));
  CHECK(std::fabs(ei.eigenvalue - 1.0) < 1e-3);

  const EigenResult e2 = lambda1(circle(256, kPi));
  CHECK(e2.eigenvalue == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("lambda1 is strictly positive on every normalizable preset") {
  std::vector<SpaceSpec> specs(5);
  specs[0].preset = Preset::gaussian;
  specs[1].preset = Preset::flat_interval;
  specs[1].length = kPi;
  specs[2].preset = Preset::flat_circle;
  specs[2].length = 2.0 * kPi;
  specs[3].preset = Preset::convex_perturbed;
  specs[3].a = 0.5;
  specs[4].preset = Preset::double_well;
  specs[4].b = 1.0;
  specs[4].radius = 6.0;
  for (SpaceSpec& s : specs) {
    s.n = 801;
    const WeightedLine space = build_space(s);
    const EigenResult e = lambda1(space);
    CHECK(e.eigenvalue > 0.0);
    CHECK(e.residual_norm <= 1e-8 * std::max(1.0, e.eigenvalue));
  }
}

TEST_CASE("regime routing") {
  const WeightedLine inv = build_space([] {
    SpaceSpec s;
    s.preset = Preset::inverted_gaussian;
    s.n = 801;
    s.radius = 6.0;
    return s;
  }());
  CHECK_THROWS_AS(lambda1(inv), std::invalid_argument);
  CHECK_THROWS_AS(lambda0(interval(64, 1.0)), std::invalid_argument);
}

TEST_CASE("bottom eigenvalue of the inverted-gaussian truncations") {
  double prev = std::numeric_limits<double>::infinity();
  for (double R : {4.0, 6.0, 8.0}) {
    SpaceSpec s;
    s.preset = Preset::inverted_gaussian;
    // fixed dx across radii keeps the discretization bias common, so
    // the wall effect alone drives the comparison
    s.n = static_cast<int>(400 * R) + 1;
    s.radius = R;
    const WeightedLine space = build_space(s);
    const EigenResult e = lambda0(space);
    CHECK(e.eigenvalue >= 0.0);
    CHECK(e.eigenvalue <= prev + 1e-12);  // Neumann values decrease with the domain
    prev = e.eigenvalue;
    // Rayleigh quotient of the eigenfunction reproduces the eigenvalue
    CHECK(rayleigh(space, e.eigenfunction, false) ==
          doctest::Approx(e.eigenvalue).epsilon(1e-10));
  }
  // the harmonic-oscillator limit value
  CHECK(prev == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("rayleigh quotients of known eigenfunctions") {
  const WeightedLine g = gaussian(2001);
  CHECK(rayleigh(g, sample(g, [](double x) { return x; }), true) ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK(rayleigh(g, sample(g, [](double x) { return x * x - 1.0; }), true) ==
        doctest::Approx(2.0).epsilon(1e-3));
  const WeightedLine c = circle(256, 2.0 * kPi);
  CHECK(rayleigh(c, sample(c, [](double x) { return std::sin(x); }), true) ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(rayleigh(g, GridFunction(g.nodes.size(), 0.0), false),
                  std::invalid_argument);
  CHECK_THROWS_AS(rayleigh(g, GridFunction(g.nodes.size(), 1.0), true),
                  std::invalid_argument);
}

TEST_CASE("rayleigh dominates the computed gap") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (const WeightedLine& s :
       {gaussian(801), circle(256, 2.0 * kPi), interval(801, kPi)}) {
    const double lam = lambda1(s).eigenvalue;
    for (int rep = 0; rep < 100; ++rep) {
      const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng), ph = amp(rng);
      const double L = s.domain_length();
      const double x0 = s.domain_left();
      GridFunction f = sample(s, [&](double x) {
        const double r = (x - x0) / L;
        return a1 * std::sin(2.0 * kPi * r + ph) + a2 * std::cos(4.0 * kPi * r) +
               a3 * r * r;
      });
      CHECK(rayleigh(s, f, true) >= lam - 1e-8);
    }
  }
}

TEST_CASE("eigenvalue refines at second order") {
  const double l1 = lambda1(gaussian(501)).eigenvalue;
  const double l2 = lambda1(gaussian(1001)).eigenvalue;
  const double l3 = lambda1(gaussian(2001)).eigenvalue;
  CHECK(std::fabs(l1 - l2) / std::fabs(l2 - l3) >= 3.5);
}
