#pragma once

#include <optional>
#include <string>

// The Cheeger-Buser bound calculus on (K, h, lambda) triples:
// the implicit supremum functional, its inversion, the explicit
// constants in every curvature regime, and the assembled two-sided
// sandwich report.

namespace buser {

enum class MeasureRegime { finite_normalized, infinite };

enum class ExplicitRegime { k_pos_with_c, k_zero, k_neg_max_form };

const char* to_string(MeasureRegime r);
const char* to_string(ExplicitRegime r);

struct BuserSup {
  double value;     // sup_{t>0} (1 - e^{-lambda t}) / J_K(t)
  double argmax_t;  // +infinity when the t->inf limit dominates (K > 0)
};

// Supremum over t > 0 of (1 - e^{-lambda t}) / J_K(t). Located by a
// coarse log-grid scan plus golden-section refinement in the scaled
// variable T = lambda t; for K > 0 the t->infinity limit sqrt(2K/pi)
// is evaluated analytically and wins when it dominates.
BuserSup buser_functional(double lambda, double curvature);

// Lower bound for the Cheeger constant implied by the spectral gap:
// the functional value, doubled in the infinite-measure regime.
double implicit_h_lower_bound(double lambda, double curvature, MeasureRegime regime);

// Largest lambda whose implicit lower bound does not exceed h.
// Bisection on the (monotone in lambda) functional, relative
// tolerance 1e-8; the bracket grows geometrically until it straddles.
// For K > 0 the functional never drops below sqrt(2K/pi) (its
// t->infinity limit), so an h below that floor admits no positive
// lambda at all; 0 is returned for such unsatisfiable inputs.
double lambda_upper_from_h(double h, double curvature, MeasureRegime regime);

struct ExplicitBound {
  double value;
  ExplicitRegime regime;
  // Companion bound: pi h_eff^2 for K = 0, the decimal-majorant max
  // form for K < 0; absent for K > 0.
  std::optional<double> loose_value;
  std::optional<double> c_used;
};

// Explicit spectral upper bound from the Cheeger constant.
//   K > 0 (requires c with K/lambda >= c > 0):  pi/(2c) h_eff^2
//   K = 0:  (4/pi) h_eff^2 inf_T T/(1-e^{-T})^2  (< pi h_eff^2)
//   K < 0:  max{ sqrt(-K) c_lin h_eff, c_quad h_eff^2 } with the exact
//           constants, plus the decimal majorants 21/10 and 22/5.
// h_eff = h for finite normalized measure and h/2 for infinite measure.
ExplicitBound explicit_upper(double h, double curvature, MeasureRegime regime,
                             std::optional<double> c = std::nullopt);

// Optional variant for K < 0 under the extra hypothesis K/lambda >= -c:
// inverts sqrt(2/pi) h_eff >= sqrt(c lambda) sup_T (1-e^{-T}) /
// log(e^{cT} + sqrt(e^{2cT}-1)), evaluated numerically.
double explicit_upper_neg_c(double h, double c, MeasureRegime regime);

// Exact K < 0 constants of the max form and their decimal majorants.
double k_neg_linear_constant();     // sqrt(2) log(e+sqrt(e^2-1)) / (sqrt(pi)(1-1/e))
double k_neg_quadratic_constant();  // 2 log^2(e+sqrt(e^2-1)) / (pi (1-1/e)^2)

struct ConstantM {
  double value;   // M = sup_{T>0} (1 - e^{-T}) / sqrt(T) > 2/pi
  double t_star;  // the maximizer, -W_{-1}(-1/(2 sqrt(e))) - 1/2
};

// Evaluates M through the lower Lambert branch.
ConstantM constant_m();

// Cheeger's lower bound h^2 / 4 for the spectral gap.
double cheeger_lower_bound(double h);

enum class BoundInput { from_h, from_lambda };

struct BoundReport {
  MeasureRegime regime;
  double curvature;
  BoundInput input_kind;
  double input_value;
  double cheeger_lower;       // lower bound for the eigenvalue
  double implicit_value;      // supremum of the implicit functional (an h lower bound)
  double implicit_argmax_t;   // +infinity marker possible
  double explicit_value;      // upper bound for the eigenvalue
  ExplicitRegime explicit_regime;
  std::optional<double> c_used;
  std::optional<double> loose_value;
};

// Assembles the full sandwich for a given h or lambda. For
// input_kind = from_lambda with K > 0 and no c supplied, c defaults
// to K/lambda (the tightest admissible choice).
BoundReport sandwich(BoundInput kind, double input_value, double curvature,
                     MeasureRegime regime, std::optional<double> c = std::nullopt);

}  // namespace buser
