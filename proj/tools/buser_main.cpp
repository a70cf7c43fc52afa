#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "buser/bounds.hpp"
#include "buser/heat.hpp"
#include "buser/model_space.hpp"
#include "buser/report.hpp"
#include "buser/verify_driver.hpp"

namespace {

using namespace buser;

struct OutputOptions {
  std::string format = "csv";
  std::string path;  // empty = stdout
};

void add_output_options(CLI::App* cmd, OutputOptions* out) {
  cmd->add_option("--format", out->format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", out->path,
                  "Output file (default stdout); relative paths are joined with "
                  "$BUSER_OUTPUT_DIR when set");
}

OutputFormat parse_format(const std::string& f) {
  return f == "json" ? OutputFormat::json : OutputFormat::csv;
}

void write_output(const OutputOptions& opts, const std::string& text) {
  if (opts.path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::filesystem::path p(opts.path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("BUSER_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + p.string());
  f << text;
}

MeasureRegime parse_regime(const std::string& r) {
  if (r == "finite") return MeasureRegime::finite_normalized;
  if (r == "infinite") return MeasureRegime::infinite;
  throw CLI::ValidationError("--regime must be finite or infinite");
}

SweepAxis parse_axis(const std::string& text) {
  SweepAxis axis;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &axis.lo, &axis.hi, &axis.points) != 3 ||
      axis.points < 0) {
    throw CLI::ValidationError("sweep axis must be lo:hi:n");
  }
  return axis;
}

SpaceSpec parse_space(const std::string& name, int n, double radius,
                      const std::vector<std::string>& params) {
  SpaceSpec spec;
  spec.preset = preset_from_name(name);
  spec.n = n;
  spec.radius = radius;
  for (const std::string& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--param expects key=value, got: " + kv);
    }
    const std::string key = kv.substr(0, eq);
    const double value = std::stod(kv.substr(eq + 1));
    if (key == "L") spec.length = value;
    else if (key == "a") spec.a = value;
    else if (key == "b") spec.b = value;
    else throw std::invalid_argument("unknown space parameter: " + key);
  }
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"Cheeger-Buser spectral bound toolkit for 1-D weighted model spaces"};
  app.require_subcommand(1);

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "Two-sided bound report for (K, h) or (K, lambda)");
  double b_K = 0.0;
  std::optional<double> b_h, b_lambda, b_c, b_neg_c;
  std::string b_regime = "finite";
  OutputOptions b_out;
  cmd_bounds->add_option("--K", b_K, "Curvature lower bound")->required();
  cmd_bounds->add_option("--h", b_h, "Cheeger constant input");
  cmd_bounds->add_option("--lambda", b_lambda, "Spectral gap input");
  cmd_bounds->add_option("--c", b_c, "Lower bound for K/lambda (required for K > 0 with --h)");
  cmd_bounds->add_option("--neg-c", b_neg_c,
                         "Also report the K<0 variant assuming K/lambda >= -c");
  cmd_bounds->add_option("--regime", b_regime, "finite or infinite measure");
  add_output_options(cmd_bounds, &b_out);

  // invert
  auto* cmd_invert = app.add_subcommand("invert", "Largest lambda consistent with a given h");
  double i_K = 0.0, i_h = 0.0;
  std::string i_regime = "finite";
  OutputOptions i_out;
  cmd_invert->add_option("--K", i_K)->required();
  cmd_invert->add_option("--h", i_h)->required();
  cmd_invert->add_option("--regime", i_regime);
  add_output_options(cmd_invert, &i_out);

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "Run the verification suite on a model space");
  std::string v_space;
  int v_n = 2001;
  double v_radius = 8.0;
  std::vector<std::string> v_params;
  double v_tmin = 1e-2, v_tmax = 10.0;
  int v_tpoints = 24, v_coarea = 50;
  unsigned v_seed = 12345;
  bool v_norefine = false;
  OutputOptions v_out;
  cmd_verify->add_option("--space", v_space, "Space preset name")->required();
  cmd_verify->add_option("--n", v_n, "Grid size");
  cmd_verify->add_option("--radius", v_radius, "Truncation radius (line presets)");
  cmd_verify->add_option("--param", v_params, "Preset parameter key=value (L, a, b)");
  cmd_verify->add_option("--t-min", v_tmin);
  cmd_verify->add_option("--t-max", v_tmax);
  cmd_verify->add_option("--t-points", v_tpoints);
  cmd_verify->add_option("--coarea-samples", v_coarea);
  cmd_verify->add_option("--seed", v_seed, "RNG seed for the randomized suites");
  cmd_verify->add_flag("--no-refine", v_norefine, "Skip the grid-doubling shrink checks");
  add_output_options(cmd_verify, &v_out);

  // sharpness
  auto* cmd_sharp = app.add_subcommand("sharpness", "Equality gaps on the curvature-one space");
  int s_n = 4001;
  double s_radius = 8.0;
  std::optional<double> s_c;
  OutputOptions s_out;
  cmd_sharp->add_option("--n", s_n);
  cmd_sharp->add_option("--radius", s_radius);
  cmd_sharp->add_option("--c", s_c, "Override the K/lambda ratio used for the explicit bound");
  add_output_options(cmd_sharp, &s_out);

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "Bound table over a (K, h) or (K, lambda) grid");
  std::optional<std::string> w_kaxis, w_haxis, w_laxis;
  double w_K = 0.0;
  std::optional<double> w_h, w_lambda, w_c;
  std::string w_regime = "finite";
  OutputOptions w_out;
  cmd_sweep->add_option("--sweep-K", w_kaxis, "K axis lo:hi:n");
  cmd_sweep->add_option("--sweep-h", w_haxis, "h axis lo:hi:n");
  cmd_sweep->add_option("--sweep-lambda", w_laxis, "lambda axis lo:hi:n");
  cmd_sweep->add_option("--K", w_K, "Fixed K when not swept");
  cmd_sweep->add_option("--h", w_h, "Fixed h");
  cmd_sweep->add_option("--lambda", w_lambda, "Fixed lambda");
  cmd_sweep->add_option("--c", w_c, "K/lambda lower bound for K > 0 entries");
  cmd_sweep->add_option("--regime", w_regime);
  add_output_options(cmd_sweep, &w_out);

  // constants
  auto* cmd_const = app.add_subcommand("constants", "Named constants of the bound calculus");
  OutputOptions c_out;
  add_output_options(cmd_const, &c_out);

  // usage problems exit with code 2, --help with 0
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_bounds->parsed()) {
    if (b_h.has_value() == b_lambda.has_value()) {
      std::fprintf(stderr, "bounds: exactly one of --h and --lambda is required\n");
      return 2;
    }
    const MeasureRegime regime = parse_regime(b_regime);
    std::vector<Row> rows;
    BoundReport r = b_h ? sandwich(BoundInput::from_h, *b_h, b_K, regime, b_c)
                        : sandwich(BoundInput::from_lambda, *b_lambda, b_K, regime, b_c);
    rows.push_back(to_row(r));
    if (b_neg_c) {
      const double h_for_variant = b_h ? *b_h : r.implicit_value;
      BoundReport v = r;
      v.explicit_value = explicit_upper_neg_c(h_for_variant, *b_neg_c, regime);
      v.c_used = *b_neg_c;
      Row row = to_row(v);
      row[8].value = "Kneg_with_c";  // explicit_regime column
      rows.push_back(row);
    }
    write_output(b_out, render(rows, bound_header(), parse_format(b_out.format)));
    return 0;
  }

  if (cmd_invert->parsed()) {
    const MeasureRegime regime = parse_regime(i_regime);
    const double lam = lambda_upper_from_h(i_h, i_K, regime);
    Row row;
    row.push_back({"regime", to_string(regime), false, false});
    row.push_back({"K", format_number(i_K), true, false});
    row.push_back({"h", format_number(i_h), true, false});
    row.push_back({"lambda_upper", format_number(lam), true, false});
    double implied = 0.0, argmax = 0.0;
    if (lam > 0.0) {
      implied = implicit_h_lower_bound(lam, i_K, regime);
      argmax = buser_functional(lam, i_K).argmax_t;
    }
    row.push_back({"implicit_at_lambda", format_number(implied), true, false});
    row.push_back({"argmax_t", format_number(argmax), !std::isinf(argmax), false});
    write_output(i_out, render({row},
                               {"regime", "K", "h", "lambda_upper", "implicit_at_lambda",
                                "argmax_t"},
                               parse_format(i_out.format)));
    return 0;
  }

  if (cmd_verify->parsed()) {
    SuiteConfig config;
    config.spec = parse_space(v_space, v_n, v_radius, v_params);
    config.t_grid = log_grid(v_tmin, v_tmax, v_tpoints);
    config.rng_seed = v_seed;
    config.coarea_samples = v_coarea;
    config.refinement = !v_norefine;
    const SuiteResult res = run_verify_suite(config);
    std::vector<Row> rows;
    for (const VerificationRecord& r : res.records) rows.push_back(to_row(r));
    write_output(v_out, render(rows, record_header(), parse_format(v_out.format)));
    int failures = 0;
    for (const VerificationRecord& r : res.records) failures += r.pass ? 0 : 1;
    std::fprintf(stderr, "verify %s: lambda=%.9g h=%.9g K=%g, %zu records, %d failing\n",
                 v_space.c_str(), res.lambda, res.h, res.curvature, res.records.size(),
                 failures);
    return failures == 0 ? 0 : 1;
  }

  if (cmd_sharp->parsed()) {
    const SharpnessReport r = sharpness_report(s_n, s_radius, s_c);
    write_output(s_out, render(sharpness_rows(r), name_value_header(),
                               parse_format(s_out.format)));
    return 0;
  }

  if (cmd_sweep->parsed()) {
    SweepConfig config;
    if (w_kaxis) config.k_axis = parse_axis(*w_kaxis);
    if (w_haxis) config.h_axis = parse_axis(*w_haxis);
    if (w_laxis) config.lambda_axis = parse_axis(*w_laxis);
    config.fixed_k = w_K;
    config.fixed_h = w_h;
    config.fixed_lambda = w_lambda;
    config.regime = parse_regime(w_regime);
    config.c = w_c;
    const std::vector<Row> rows = sweep_rows(config);
    write_output(w_out, render(rows, bound_header(), parse_format(w_out.format)));
    return 0;
  }

  if (cmd_const->parsed()) {
    write_output(c_out, render(constants_rows(), name_value_header(),
                               parse_format(c_out.format)));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 1;
  }
}
