#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "buser/isoperimetry.hpp"
#include "buser/model_space.hpp"

using namespace buser;

namespace {

constexpr double kPi = std::numbers::pi;

WeightedLine make(Preset p, int n, double radius = 8.0, double length = 2.0 * kPi,
                  double param = 1.0) {
  SpaceSpec s;
  s.preset = p;
  s.n = n;
  s.radius = radius;
  s.length = length;
  if (p == Preset::convex_perturbed) s.a = param;
  if (p == Preset::double_well) s.b = param;
  return build_space(s);
}

// Continuum Cheeger ratio of symmetric intervals [-r, r] for the
// density e^{x^2/2}: 2 e^{r^2/2} / int_{-r}^{r} e^{x^2/2} dx,
// minimized by a fine scan with Simpson integration.
double inverted_gaussian_h_oracle() {
  const auto mass = [](double r) {
    const int n = 4000;
    const double h = r / n;
    double acc = std::exp(0.0) + std::exp(0.5 * r * r);
    for (int i = 1; i < n; ++i) {
      const double x = i * h;
      acc += (i % 2 ? 4.0 : 2.0) * std::exp(0.5 * x * x);
    }
    return 2.0 * acc * h / 3.0;
  };
  double best = std::numeric_limits<double>::infinity();
  for (double r = 0.2; r <= 4.0; r += 1e-3) {
    best = std::min(best, 2.0 * std::exp(0.5 * r * r) / mass(r));
  }
  return best;
}

GridFunction random_pwl(const WeightedLine& s, std::mt19937& rng) {
  std::uniform_int_distribution<int> kc(3, 10);
  std::uniform_real_distribution<double> hs(0.0, 2.0);
  const int k = kc(rng);
  std::vector<double> val(k);
  for (double& v : val) v = hs(rng);
  const int n = s.size();
  GridFunction u(n);
  for (int i = 0; i < n; ++i) {
    const double r = i / double(n - 1) * (k - 1);
    const int j = std::min(static_cast<int>(r), k - 2);
    u[i] = val[j] + (r - j) * (val[j + 1] - val[j]);
  }
  return u;
}

}  // namespace

TEST_CASE("perimeter of basic families") {
  const WeightedLine g = make(Preset::gaussian, 2001);
  CHECK(perimeter(g, {CutKind::single_cut, {0.0}}) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-6));

  const WeightedLine c = make(Preset::flat_circle, 256, 0.0, 4.0);
  CHECK(perimeter(c, {CutKind::interval, {0.5, 2.5}}) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(perimeter(g, {CutKind::single_cut, {}}) == 0.0);
  CHECK_THROWS_AS(perimeter(c, {CutKind::single_cut, {1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(perimeter(g, {CutKind::interval, {1.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(perimeter(g, {CutKind::interval, {0.0, 9.5}}), std::invalid_argument);

  // interval endpoints on the domain boundary carry no perimeter
  const WeightedLine f = make(Preset::flat_interval, 1001, 0.0, 1.0);
  CHECK(perimeter(f, {CutKind::interval, {0.0, 0.25}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cut_measure(f, {CutKind::interval, {0.0, 0.25}}) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("cheeger constant: half-space optimum on the curvature-one space") {
  const WeightedLine g = make(Preset::gaussian, 4001);
  const CheegerResult r = cheeger_constant(g);
  CHECK(r.h == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-3));
  CHECK(r.optimal_cuts.kind == CutKind::single_cut);
  CHECK(std::fabs(r.optimal_cuts.cut_points[0]) <= g.dx);
}

TEST_CASE("cheeger constant: flat interval and circle") {
  const WeightedLine f = make(Preset::flat_interval, 2001, 0.0, 2.0);
  const CheegerResult rf = cheeger_constant(f);
  CHECK(rf.h == doctest::Approx(1.0).epsilon(1e-6));  // 2/L with L = 2
  CHECK(rf.optimal_cuts.cut_points[0] == doctest::Approx(1.0).epsilon(1e-6));

  const WeightedLine c = make(Preset::flat_circle, 2001, 0.0, 2.0 * kPi);
  const CheegerResult rc = cheeger_constant(c);
  CHECK(rc.h == doctest::Approx(4.0 / (2.0 * kPi)).epsilon(1e-6));
  REQUIRE(rc.optimal_cuts.cut_points.size() == 2);
  const double arc = rc.optimal_cuts.cut_points[1] - rc.optimal_cuts.cut_points[0];
  CHECK(std::fabs(arc - kPi) <= c.dx + 1e-12);
}

TEST_CASE("cheeger constant: double well cuts at the barrier") {
  const WeightedLine w = make(Preset::double_well, 2001, 6.0, 0.0, 1.0);
  const CheegerResult r = cheeger_constant(w);
  CHECK(std::fabs(r.optimal_cuts.cut_points[0]) <= w.dx);
  CHECK(r.h == doctest::Approx(2.0 * density_at(w, 0.0)).epsilon(1e-6));
}

TEST_CASE("cheeger constant on the infinite-measure space") {
  SpaceSpec s;
  s.preset = Preset::inverted_gaussian;
  s.n = 3001;
  s.radius = 8.0;
  const CheegerResult r = cheeger_constant(build_space(s));
  CHECK(r.optimal_cuts.kind == CutKind::interval);
  CHECK(r.h == doctest::Approx(inverted_gaussian_h_oracle()).epsilon(1e-3));
  // symmetric optimum
  CHECK(std::fabs(r.optimal_cuts.cut_points[0] + r.optimal_cuts.cut_points[1]) <= 2e-2);
}

TEST_CASE("cheeger constant is scale invariant") {
  WeightedLine g = make(Preset::gaussian, 1001);
  const double h0 = cheeger_constant(g).h;
  g.normalized = false;
  for (double& w : g.weight) w *= 7.3;
  CHECK(cheeger_constant(g).h == doctest::Approx(h0).epsilon(1e-12));
}

TEST_CASE("coarea: tent equality against the hand integral") {
  const WeightedLine f = make(Preset::flat_interval, 400, 0.0, 1.0);
  const int apex = 200, half = 100;
  GridFunction tent(f.nodes.size(), 0.0);
  for (int i = apex - half; i <= apex + half; ++i) {
    tent[i] = 1.0 - std::fabs(i - apex) / double(half);
  }
  const CoareaResult r = coarea_check(f, tent);
  // Per({u > t}) = 2 w for every level, so the integral is 2 w.
  CHECK(r.lhs == doctest::Approx(2.0 * f.weight[0]).epsilon(1e-12));
  CHECK(std::fabs(r.lhs - r.rhs) <= 1e-9);
  CHECK(r.pass);
}

TEST_CASE("coarea: constants and rejections") {
  const WeightedLine f = make(Preset::flat_interval, 101, 0.0, 1.0);
  const CoareaResult r = coarea_check(f, GridFunction(101, 0.7));
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.pass);
  GridFunction bad(101, 1.0);
  bad[50] = -0.1;
  CHECK_THROWS_AS(coarea_check(f, bad), std::invalid_argument);
}

TEST_CASE("coarea inequality on random piecewise-linear profiles") {
  std::mt19937 rng(2718);
  std::vector<WeightedLine> spaces;
  spaces.push_back(make(Preset::gaussian, 257));
  spaces.push_back(make(Preset::flat_interval, 300, 0.0, 2.0));
  spaces.push_back(make(Preset::flat_circle, 128, 0.0, 2.0 * kPi));
  spaces.push_back(make(Preset::double_well, 301, 6.0, 0.0, 1.0));
  for (int rep = 0; rep < 200; ++rep) {
    const WeightedLine& s = spaces[rep % spaces.size()];
    const CoareaResult r = coarea_check(s, random_pwl(s, rng));
    CHECK(r.pass);
    CHECK(r.lhs <= r.rhs + 1e-9);
  }
}
