#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "buser/special_functions.hpp"

using namespace buser;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent root-finder for w e^w = x on (-inf, -1]; w e^w is
// decreasing there, so plain bisection applies.
double lambert_bisection_oracle(double x) {
  double hi = -1.0, lo = -2.0;
  while (lo * std::exp(lo) < x) lo *= 2.0;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid * std::exp(mid) - x > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  }
  return g;
}

}  // namespace

TEST_CASE("j_k closed form and limits") {
  CHECK(j_k(0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j_k(1.0, 0.5 * std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // continuity across K = 0
  const double tiny = j_k(1e-12, 1.0);
  CHECK(std::fabs(tiny - j_k(0.0, 1.0)) / j_k(0.0, 1.0) < 1e-9);
  CHECK_THROWS_AS(j_k(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(j_k(1.0, -1.0), std::domain_error);
}

TEST_CASE("j_k is decreasing in t and nonincreasing in K") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ks(-3.0, 3.0), ts(0.01, 20.0);
  for (int i = 0; i < 400; ++i) {
    double k1 = ks(rng), k2 = ks(rng);
    if (k1 > k2) std::swap(k1, k2);
    const double t = ts(rng);
    // smaller curvature gives the larger kernel
    CHECK(j_k(k1, t) >= j_k(k2, t) - 1e-14);
    const double t2 = t * 1.37;
    CHECK(j_k(k1, t) >= j_k(k1, t2));
    // strictly decreasing until the K < 0 saturation at |K| flattens
    // out below double resolution
    if (2.0 * std::fabs(k1) * t2 < 30.0) CHECK(j_k(k1, t) > j_k(k1, t2));
  }
}

TEST_CASE("J_k closed form special values") {
  CHECK(J_k_closed(0.0, kPi / 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  // K > 0 saturates at sqrt(pi/(2K))
  CHECK(std::fabs(J_k_closed(1.0, 50.0) - std::sqrt(kPi / 2.0)) < 1e-6);
  for (double t : {0.1, 1.0, 10.0, 200.0, 2000.0}) {
    CHECK(J_k_closed(2.0, t) < std::sqrt(kPi / 4.0) + 1e-15);
  }
  CHECK_THROWS_AS(J_k_closed(1.0, 0.0), std::domain_error);
}

TEST_CASE("J_k strictly increasing in t") {
  for (double K : {-2.0, -1e-8, 0.0, 1e-8, 2.0}) {
    double prev = 0.0;
    for (double t : log_spaced(1e-6, 100.0, 60)) {
      const double v = J_k_closed(K, t);
      CHECK(v >= prev);
      // strict growth until the K > 0 plateau at sqrt(pi/(2K))
      if (!(K > 0.0) || 2.0 * K * t < 30.0) CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("J_k quadrature oracle agrees with the closed form") {
  CHECK(J_k_quadrature(0.0, 1.0, 1e-12) ==
        doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-12));
  CHECK(std::fabs(J_k_quadrature(1.0, 0.3466, 1e-10) - J_k_closed(1.0, 0.3466)) < 1e-10);
  CHECK(std::fabs(J_k_quadrature(-2.0, 2.0, 1e-10) - J_k_closed(-2.0, 2.0)) < 1e-9);

  for (double K : {-2.0, -1.0, -1e-8, 0.0, 1e-8, 1.0, 2.0}) {
    for (double t : log_spaced(1e-4, 50.0, 40)) {
      const double closed = J_k_closed(K, t);
      const double quad = J_k_quadrature(K, t, 1e-12);
      CHECK(std::fabs(closed - quad) < 1e-10);
    }
  }
}

TEST_CASE("J_k quadrature reports nonconvergence") {
  CHECK_THROWS_WITH_AS(J_k_quadrature(1.0, 1.0, 1e-300) == 0.0,
                       doctest::Contains("achieved"), std::runtime_error);
  CHECK_THROWS_AS(J_k_quadrature(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("lambert lower branch") {
  CHECK(lambert_w_m1(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(lambert_w_m1(-2.0 * std::exp(-2.0)) == doctest::Approx(-2.0).epsilon(1e-13));
  const double x = -0.5 * std::exp(-0.5);  // -1/(2 sqrt(e))
  const double w = lambert_w_m1(x);
  CHECK(std::fabs(w * std::exp(w) - x) <= 1e-14 * std::fabs(x));
  CHECK(w == doctest::Approx(lambert_bisection_oracle(x)).epsilon(1e-12));

  CHECK_THROWS_AS(lambert_w_m1(-0.5), std::domain_error);
  CHECK_THROWS_AS(lambert_w_m1(0.0), std::domain_error);
  CHECK_THROWS_AS(lambert_w_m1(0.1), std::domain_error);
}

TEST_CASE("lambert round trip over the branch interval") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> us(0.0, 1.0);
  const double lo = -std::exp(-1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = lo + (std::fabs(lo) - 1e-6) * us(rng);
    const double w = lambert_w_m1(x);
    CHECK(w <= -1.0);
    CHECK(std::fabs(w * std::exp(w) - x) <= 1e-14 * std::fabs(x));
  }
}

TEST_CASE("inverse normal cdf round trip") {
  for (double x : {1e-10, 1e-8, 1e-4, 0.02, 0.3, 0.5, 0.7, 0.98, 1.0 - 1e-8, 1.0 - 1e-10}) {
    const double z = inverse_normal_cdf(x);
    CHECK(std::fabs(normal_cdf(z) - x) <= 1e-12 * std::max(normal_pdf(z), x * 1e-3));
  }
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::domain_error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), std::domain_error);
}

TEST_CASE("gaussian isoperimetric profile") {
  CHECK(gaussian_isoperimetric(0.5) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-14));
  CHECK(gaussian_isoperimetric(0.0) == 0.0);
  CHECK(gaussian_isoperimetric(1.0) == 0.0);
  CHECK_THROWS_AS(gaussian_isoperimetric(-0.1), std::domain_error);
  CHECK_THROWS_AS(gaussian_isoperimetric(1.1), std::domain_error);

  // small-x asymptotics I(x) ~ x sqrt(2 log(1/x)); slow convergence
  {
    const double x = 1e-6;
    const double ratio = gaussian_isoperimetric(x) / (x * std::sqrt(2.0 * std::log(1.0 / x)));
    CHECK(std::fabs(ratio - 1.0) < 0.1);
  }
  {
    // the exact ratio at 1e-12 is about 0.9654; the limit is approached
    // only logarithmically
    const double x = 1e-12;
    const double ratio = gaussian_isoperimetric(x) / (x * std::sqrt(2.0 * std::log(1.0 / x)));
    CHECK(std::fabs(ratio - 1.0) < 4e-2);
  }
}

TEST_CASE("profile symmetry and the I I'' = -1 identity") {
  for (int i = 1; i < 1000; ++i) {
    const double x = i / 1000.0;
    CHECK(std::fabs(gaussian_isoperimetric(x) - gaussian_isoperimetric(1.0 - x)) <= 1e-12);
  }
  const double h = 1e-5;
  for (double x = 0.05; x <= 0.95; x += 0.05) {
    const double ipp = (gaussian_isoperimetric(x + h) - 2.0 * gaussian_isoperimetric(x) +
                        gaussian_isoperimetric(x - h)) /
                       (h * h);
    CHECK(std::fabs(gaussian_isoperimetric(x) * ipp + 1.0) <= 1e-4);
  }
}

TEST_CASE("f1 and f2 endpoints and ordering") {
  CHECK(f1(1e-12, 4.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(f1(2.0, 1.0) >= f1(1.0, 1.0));
  CHECK(f2(2.0, 1.0) <= f2(1.0, 1.0));
  CHECK_THROWS_AS(f1(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(f1(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(f2(-1.0, 1.0), std::domain_error);
}

TEST_CASE("f1 nondecreasing, f2 nonincreasing on log grids") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ts(1e-3, 10.0);
  for (int rep = 0; rep < 20; ++rep) {
    const double T = ts(rng);
    const std::vector<double> xs = log_spaced(1e-6, 50.0, 1000);
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      CHECK(f1(xs[i + 1], T) >= f1(xs[i], T) - 1e-12);
      CHECK(f2(xs[i + 1], T) <= f2(xs[i], T) + 1e-12);
    }
  }
}

TEST_CASE("g1 nonnegative, g2 nonpositive") {
  for (double y : {0.1, 1.0, 10.0}) CHECK(g1(y) >= 0.0);
  for (double y : {0.1, 0.5, 0.9}) CHECK(g2(y) <= 0.0);
  CHECK(g1(0.0) == 0.0);
  CHECK(g2(0.0) == 0.0);
  for (int i = 1; i <= 200; ++i) {
    CHECK(g1(0.05 * i) >= 0.0);
    CHECK(g2(i / 201.0) <= 1e-15);
  }
  CHECK_THROWS_AS(g2(1.0), std::domain_error);
  CHECK_THROWS_AS(g1(-0.1), std::domain_error);
}
