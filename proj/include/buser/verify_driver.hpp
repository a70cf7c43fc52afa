#pragma once

#include <optional>
#include <string>
#include <vector>

#include "buser/bounds.hpp"
#include "buser/heat.hpp"
#include "buser/model_space.hpp"
#include "buser/report.hpp"

// Suite orchestration shared by the command-line tool, the acceptance
// tests and the Python module: per-space verification suites,
// sharpness and constants reports, and bound sweeps.

namespace buser {

struct SuiteConfig {
  SpaceSpec spec;
  std::vector<double> t_grid;   // default: 24 log points in [1e-2, 10]
  unsigned rng_seed = 12345;
  int coarea_samples = 50;
  bool refinement = true;       // grid-doubling shrink checks
};

struct SuiteResult {
  std::vector<VerificationRecord> records;
  double lambda = 0.0;  // lambda_1 (finite) or lambda_0 (infinite)
  double h = 0.0;
  double curvature = 0.0;
  bool all_pass = false;
};

SuiteResult run_verify_suite(const SuiteConfig& config);

// Random nonnegative piecewise-linear profile for the co-area checks.
GridFunction random_piecewise_linear(const WeightedLine& space, unsigned seed);

struct SharpnessReport {
  double lambda1 = 0.0;
  double h = 0.0;
  double curvature = 1.0;
  double implicit_value = 0.0;
  double explicit_value = 0.0;
  double c_used = 1.0;
  double gap_h = 0.0;         // |h - sqrt(2/pi)| / sqrt(2/pi)
  double gap_implicit = 0.0;  // |implicit - h| / h
  double gap_explicit = 0.0;  // |explicit - lambda_1| / lambda_1
};

SharpnessReport sharpness_report(int n, double radius, std::optional<double> c = std::nullopt);

std::vector<Row> sharpness_rows(const SharpnessReport& r);
std::vector<Row> constants_rows();

struct SweepAxis {
  double lo = 0.0, hi = 0.0;
  int points = 0;  // 0 = empty sweep
  std::vector<double> values() const;
};

struct SweepConfig {
  std::optional<SweepAxis> k_axis;
  std::optional<SweepAxis> h_axis;
  std::optional<SweepAxis> lambda_axis;
  double fixed_k = 0.0;
  std::optional<double> fixed_h;
  std::optional<double> fixed_lambda;
  MeasureRegime regime = MeasureRegime::finite_normalized;
  std::optional<double> c;
};

std::vector<Row> sweep_rows(const SweepConfig& config);

std::vector<std::string> name_value_header();

}  // namespace buser
