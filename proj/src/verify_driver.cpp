#include "buser/verify_driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "buser/isoperimetry.hpp"
#include "buser/special_functions.hpp"
#include "buser/spectral.hpp"

namespace buser {

namespace {

constexpr double kSqrt2OverPi = 0.79788456080286535588;

struct Profiles {
  GridFunction smooth;     // mean-rich smooth profile (l2, savare)
  GridFunction zero_one;   // values in [0,1] (bgl)
  GridFunction sign_ramp;  // clamped ramp in [-1,1] (linf, l1)
};

Profiles make_profiles(const WeightedLine& s) {
  Profiles p;
  if (s.topology == Topology::circle) {
    const double L = s.domain_length();
    const double x0 = s.domain_left();
    p.smooth = sample(s, [&](double x) { return std::sin(2.0 * std::numbers::pi * (x - x0) / L); });
    p.zero_one = sample(s, [&](double x) {
      return 0.5 * (1.0 + std::sin(2.0 * std::numbers::pi * (x - x0) / L));
    });
    p.sign_ramp = p.smooth;
  } else {
    const double c = 0.5 * (s.domain_left() + s.domain_right());
    p.smooth = sample(s, [&](double x) { return x - c; });
    p.zero_one = sample(s, [&](double x) { return 1.0 / (1.0 + std::exp(-2.0 * (x - c))); });
    p.sign_ramp = sample(s, [&](double x) { return std::clamp((x - c) / 0.25, -1.0, 1.0); });
  }
  return p;
}

CutFamily chain_cut(const WeightedLine& s) {
  const int n = s.size();
  if (s.topology == Topology::circle) {
    // half circle
    return {CutKind::interval, {s.nodes[n / 4], s.nodes[(3 * n) / 4]}};
  }
  // node closest to the weighted median
  const double total = s.total_mass();
  double acc = 0.0;
  int cut = n / 2;
  for (int i = 0; i < n; ++i) {
    acc += s.weight[i] * s.dx;
    if (acc >= 0.5 * total) {
      cut = i;
      break;
    }
  }
  return {CutKind::single_cut, {s.nodes[cut]}};
}

VerificationRecord stat_record(const WeightedLine& s, const char* id, double value,
                               double tol, const std::string& notes) {
  VerificationRecord r;
  r.inequality_id = id;
  r.worst_slack = -value;
  r.tolerance = tol;
  r.pass = r.worst_slack >= -tol;
  r.n = s.size();
  r.dx = s.dx;
  r.notes = notes;
  return r;
}

double violation(const VerificationRecord& r) { return std::max(0.0, -r.worst_slack); }

SpaceSpec doubled(const SpaceSpec& spec) {
  SpaceSpec d = spec;
  d.n = 2 * spec.n;
  return d;
}

}  // namespace

GridFunction random_piecewise_linear(const WeightedLine& space, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> knot_count(3, 12);
  std::uniform_real_distribution<double> height(0.0, 2.0);
  const int n = space.size();
  const int k = knot_count(rng);
  std::vector<double> knot_pos(k), knot_val(k);
  for (int j = 0; j < k; ++j) {
    knot_pos[j] = j / double(k - 1);
    knot_val[j] = height(rng);
  }
  GridFunction u(n);
  for (int i = 0; i < n; ++i) {
    const double r = i / double(n - 1);
    int j = std::min(static_cast<int>(r * (k - 1)), k - 2);
    const double frac = r * (k - 1) - j;
    u[i] = knot_val[j] + frac * (knot_val[j + 1] - knot_val[j]);
  }
  return u;
}

SuiteResult run_verify_suite(const SuiteConfig& config) {
  SuiteResult out;
  const WeightedLine space = build_space(config.spec);
  out.curvature = space.curvature;
  const std::vector<double> grid =
      config.t_grid.empty() ? log_grid(1e-2, 10.0, 24) : config.t_grid;
  const bool finite = space.normalizable;
  const MeasureRegime regime =
      finite ? MeasureRegime::finite_normalized : MeasureRegime::infinite;

  const EigenResult eig = finite ? lambda1(space) : lambda0(space);
  out.lambda = eig.eigenvalue;
  const CheegerResult ch = cheeger_constant(space);
  out.h = ch.h;

  // Two-sided sandwich: h^2/4 <= lambda <= explicit(h, K).
  {
    VerificationRecord r;
    r.inequality_id = "cheeger_lower_sandwich";
    r.worst_slack = out.lambda - cheeger_lower_bound(out.h);
    r.tolerance = 1e-6;
    r.pass = r.worst_slack >= -r.tolerance;
    r.n = space.size();
    r.dx = space.dx;
    char buf[120];
    std::snprintf(buf, sizeof buf, "lambda=%.9g h=%.9g", out.lambda, out.h);
    r.notes = buf;
    out.records.push_back(r);
  }
  {
    std::optional<double> c;
    if (space.curvature > 0.0) c = space.curvature / out.lambda;
    const ExplicitBound eb = explicit_upper(out.h, space.curvature, regime, c);
    VerificationRecord r;
    r.inequality_id = "buser_upper_sandwich";
    r.worst_slack = eb.value - out.lambda;
    r.tolerance = 1e-6;
    r.pass = r.worst_slack >= -r.tolerance;
    r.n = space.size();
    r.dx = space.dx;
    char buf[160];
    std::snprintf(buf, sizeof buf, "explicit=%.9g (%s) lambda=%.9g h_eff=%.9g",
                  eb.value, to_string(eb.regime), out.lambda,
                  finite ? out.h : 0.5 * out.h);
    r.notes = buf;
    out.records.push_back(r);
  }

  const Profiles p = make_profiles(space);
  out.records.push_back(verify_l2_decay(space, p.smooth, grid));
  out.records.push_back(verify_bgl(space, p.zero_one, grid));
  out.records.push_back(verify_linf_gradient(space, p.sign_ramp, grid));
  out.records.push_back(verify_l1_smoothing(space, p.sign_ramp, grid));
  out.records.push_back(verify_savare(space, p.smooth, grid));
  if (finite) {
    out.records.push_back(verify_perimeter_chain(space, chain_cut(space), grid));
  }

  // Mass preservation and the maximum principle on dedicated runs:
  // a smooth [0,1] profile and the raw chain indicator.
  {
    const double t_max = grid.back();
    const long steps = static_cast<long>(std::ceil(t_max / space.dx));
    std::vector<GridFunction> runs{p.zero_one};
    if (finite) {
      GridFunction chi(space.size(), 0.0);
      const CutFamily cut = chain_cut(space);
      if (cut.kind == CutKind::single_cut) {
        for (int i = 0; i < space.size(); ++i) {
          chi[i] = space.nodes[i] <= cut.cut_points[0] ? 1.0 : 0.0;
        }
      } else {
        for (int i = 0; i < space.size(); ++i) {
          chi[i] = (space.nodes[i] >= cut.cut_points[0] &&
                    space.nodes[i] <= cut.cut_points[1])
                       ? 1.0
                       : 0.0;
        }
      }
      runs.push_back(chi);
    }
    double worst_drift = 0.0, worst_overshoot = 0.0;
    for (const GridFunction& f : runs) {
      const FlowResult fr = evolve(space, f, t_max, steps);
      worst_drift = std::max(worst_drift, fr.mass_drift);
      double range = *std::max_element(f.begin(), f.end()) -
                     *std::min_element(f.begin(), f.end());
      range = std::max(1.0, range);
      worst_overshoot = std::max(
          worst_overshoot, std::max(fr.min_overshoot, fr.max_overshoot) / range);
    }
    out.records.push_back(stat_record(space, "mass_preservation", worst_drift, 1e-8,
                                      "worst relative drift per unit time"));
    out.records.push_back(stat_record(space, "maximum_principle", worst_overshoot, 1e-12,
                                      "worst range overshoot / max(1, range)"));
  }

  // Co-area inequality on random piecewise-linear profiles.
  {
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < config.coarea_samples; ++s) {
      const GridFunction u = random_piecewise_linear(space, config.rng_seed + 977u * s);
      const CoareaResult cr = coarea_check(space, u);
      worst = std::min(worst, cr.rhs - cr.lhs);
    }
    VerificationRecord r;
    r.inequality_id = "coarea";
    r.worst_slack = worst;
    r.tolerance = 1e-9;
    r.pass = worst >= -1e-9;
    r.n = space.size();
    r.dx = space.dx;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d random piecewise-linear profiles, seed %u",
                  config.coarea_samples, config.rng_seed);
    r.notes = buf;
    out.records.push_back(r);
  }

  // Grid-doubling shrink of the pointwise-check violations.
  if (config.refinement) {
    const WeightedLine fine = build_space(doubled(config.spec));
    const Profiles pf = make_profiles(fine);
    const std::vector<double> short_grid =
        log_grid(grid.front(), std::min(1.0, grid.back()), 5);

    struct Pair {
      const char* id;
      VerificationRecord coarse, finer;
    };
    std::vector<Pair> pairs;
    pairs.push_back({"bgl", verify_bgl(space, p.zero_one, short_grid),
                     verify_bgl(fine, pf.zero_one, short_grid)});
    pairs.push_back({"linf_gradient", verify_linf_gradient(space, p.sign_ramp, short_grid),
                     verify_linf_gradient(fine, pf.sign_ramp, short_grid)});
    pairs.push_back({"l1_smoothing", verify_l1_smoothing(space, p.sign_ramp, short_grid),
                     verify_l1_smoothing(fine, pf.sign_ramp, short_grid)});
    pairs.push_back({"savare", verify_savare(space, p.smooth, short_grid),
                     verify_savare(fine, pf.smooth, short_grid)});
    if (finite) {
      pairs.push_back({"perimeter_chain",
                       verify_perimeter_chain(space, chain_cut(space), short_grid),
                       verify_perimeter_chain(fine, chain_cut(fine), short_grid)});
    }
    for (const Pair& q : pairs) {
      const double v_coarse = violation(q.coarse);
      const double v_fine = violation(q.finer);
      VerificationRecord r;
      r.inequality_id = std::string(q.id) + "_refine";
      // violations must at least halve under doubling (round-off floor 1e-15)
      r.worst_slack = std::max(0.5 * v_coarse, 1e-15) - v_fine;
      r.tolerance = 0.0;
      r.pass = r.worst_slack >= 0.0;
      r.n = fine.size();
      r.dx = fine.dx;
      char buf[120];
      std::snprintf(buf, sizeof buf, "violation %.3e -> %.3e under doubling", v_coarse,
                    v_fine);
      r.notes = buf;
      out.records.push_back(r);
    }
  }

  out.all_pass = true;
  for (const VerificationRecord& r : out.records) out.all_pass = out.all_pass && r.pass;
  return out;
}

SharpnessReport sharpness_report(int n, double radius, std::optional<double> c) {
  SpaceSpec spec;
  spec.preset = Preset::gaussian;
  spec.n = n;
  spec.radius = radius;
  const WeightedLine space = build_space(spec);
  SharpnessReport r;
  r.lambda1 = lambda1(space).eigenvalue;
  r.h = cheeger_constant(space).h;
  r.curvature = 1.0;
  r.implicit_value = buser_functional(r.lambda1, 1.0).value;
  r.c_used = c.value_or(1.0 / r.lambda1);
  r.explicit_value = explicit_upper(r.h, 1.0, MeasureRegime::finite_normalized, r.c_used).value;
  const double h_star = kSqrt2OverPi;
  r.gap_h = std::fabs(r.h - h_star) / h_star;
  r.gap_implicit = std::fabs(r.implicit_value - r.h) / r.h;
  r.gap_explicit = std::fabs(r.explicit_value - r.lambda1) / r.lambda1;
  return r;
}

namespace {

Row name_value(const char* name, double value) {
  return {{"name", name, false, false}, {"value", format_number(value), true, false}};
}

}  // namespace

std::vector<std::string> name_value_header() { return {"name", "value"}; }

std::vector<Row> sharpness_rows(const SharpnessReport& r) {
  std::vector<Row> rows;
  rows.push_back(name_value("lambda1", r.lambda1));
  rows.push_back(name_value("h", r.h));
  rows.push_back(name_value("K", r.curvature));
  rows.push_back(name_value("implicit_functional", r.implicit_value));
  rows.push_back(name_value("explicit_upper", r.explicit_value));
  rows.push_back(name_value("c_used", r.c_used));
  rows.push_back(name_value("gap_h", r.gap_h));
  rows.push_back(name_value("gap_implicit", r.gap_implicit));
  rows.push_back(name_value("gap_explicit", r.gap_explicit));
  return rows;
}

std::vector<Row> constants_rows() {
  const ConstantM m = constant_m();
  std::vector<Row> rows;
  rows.push_back(name_value("M", m.value));
  rows.push_back(name_value("T_star", m.t_star));
  rows.push_back(name_value("two_over_pi", 2.0 / std::numbers::pi));
  rows.push_back(name_value("four_over_pi_M2", 4.0 / (std::numbers::pi * m.value * m.value)));
  rows.push_back(name_value("pi", std::numbers::pi));
  rows.push_back(name_value("k_neg_linear_exact", k_neg_linear_constant()));
  rows.push_back(name_value("k_neg_linear_majorant", 2.1));
  rows.push_back(name_value("k_neg_quadratic_exact", k_neg_quadratic_constant()));
  rows.push_back(name_value("k_neg_quadratic_majorant", 4.4));
  return rows;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v;
  if (points <= 0) return v;
  if (points == 1) {
    v.push_back(lo);
    return v;
  }
  for (int i = 0; i < points; ++i) v.push_back(lo + (hi - lo) * i / (points - 1));
  return v;
}

std::vector<Row> sweep_rows(const SweepConfig& config) {
  std::vector<double> ks =
      config.k_axis ? config.k_axis->values() : std::vector<double>{config.fixed_k};
  std::vector<Row> rows;
  const bool from_h = config.h_axis.has_value() || config.fixed_h.has_value();
  const bool from_lambda =
      config.lambda_axis.has_value() || config.fixed_lambda.has_value();
  if (from_h == from_lambda) {
    throw std::invalid_argument("sweep: exactly one of the h and lambda inputs required");
  }
  std::vector<double> inputs;
  if (config.h_axis) inputs = config.h_axis->values();
  else if (config.lambda_axis) inputs = config.lambda_axis->values();
  else if (config.fixed_h) inputs = {*config.fixed_h};
  else inputs = {*config.fixed_lambda};

  for (double K : ks) {
    for (double x : inputs) {
      const BoundReport r = sandwich(from_h ? BoundInput::from_h : BoundInput::from_lambda,
                                     x, K, config.regime, config.c);
      rows.push_back(to_row(r));
    }
  }
  return rows;
}

}  // namespace buser
