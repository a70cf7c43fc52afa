#include "buser/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "buser/special_functions.hpp"

namespace buser {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double regime_factor(MeasureRegime r) {
  return r == MeasureRegime::infinite ? 2.0 : 1.0;
}

double h_effective(double h, MeasureRegime r) {
  return r == MeasureRegime::infinite ? 0.5 * h : h;
}

// (1 - e^{-T}) / J_K(T / lambda) on the scaled time axis.
double scaled_ratio(double T, double lambda, double K) {
  return -std::expm1(-T) / J_k_closed(K, T / lambda);
}

}  // namespace

const char* to_string(MeasureRegime r) {
  return r == MeasureRegime::infinite ? "infinite" : "finite";
}

const char* to_string(ExplicitRegime r) {
  switch (r) {
    case ExplicitRegime::k_pos_with_c: return "Kpos_with_c";
    case ExplicitRegime::k_zero: return "Kzero";
    case ExplicitRegime::k_neg_max_form: return "Kneg_max_form";
  }
  return "?";
}

BuserSup buser_functional(double lambda, double curvature) {
  if (!(lambda > 0.0)) throw std::domain_error("buser_functional: lambda must be positive");
  const double K = curvature;

  // Coarse scan in T = lambda t; the maximizer sits at T = O(1) in
  // every regime, while the unscaled t* escapes any fixed bracket as
  // lambda -> 0.
  const double log_lo = std::log(1e-8), log_hi = std::log(1e3);
  const int n_scan = 320;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < n_scan; ++i) {
    const double T = std::exp(log_lo + (log_hi - log_lo) * i / (n_scan - 1));
    const double v = scaled_ratio(T, lambda, K);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double step = (log_hi - log_lo) / (n_scan - 1);
  double a = log_lo + step * std::max(0, best - 1);
  double b = log_lo + step * std::min(n_scan - 1, best + 1);

  // Golden-section refinement on log T to relative tolerance 1e-10.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double fx1 = scaled_ratio(std::exp(x1), lambda, K);
  double fx2 = scaled_ratio(std::exp(x2), lambda, K);
  for (int it = 0; it < 120 && (b - a) > 1e-10; ++it) {
    if (fx1 < fx2) {
      a = x1;
      x1 = x2;
      fx1 = fx2;
      x2 = a + gr * (b - a);
      fx2 = scaled_ratio(std::exp(x2), lambda, K);
    } else {
      b = x2;
      x2 = x1;
      fx2 = fx1;
      x1 = b - gr * (b - a);
      fx1 = scaled_ratio(std::exp(x1), lambda, K);
    }
  }
  const double T_star = std::exp(0.5 * (a + b));
  const double interior = scaled_ratio(T_star, lambda, K);

  if (K > 0.0) {
    // As t -> infinity the numerator tends to 1 and J_K to
    // sqrt(pi/(2K)), independently of lambda. Near lambda = K the
    // interior excess over the limit decays like e^{-t*}, so the
    // comparison slack decides how sharply the inversion can resolve
    // the equality case; 3e-13 sits above evaluation noise.
    const double limit = std::sqrt(2.0 * K / kPi);
    if (limit >= interior * (1.0 - 3e-13)) return {limit, kInf};
  }
  return {interior, T_star / lambda};
}

double implicit_h_lower_bound(double lambda, double curvature, MeasureRegime regime) {
  return regime_factor(regime) * buser_functional(lambda, curvature).value;
}

double lambda_upper_from_h(double h, double curvature, MeasureRegime regime) {
  if (!(h > 0.0)) throw std::domain_error("lambda_upper_from_h: h must be positive");
  const auto fits = [&](double lambda) {
    return implicit_h_lower_bound(lambda, curvature, regime) <= h;
  };
  double lo = 1e-8;
  while (!fits(lo)) {
    lo /= 16.0;
    if (lo < 1e-280) return 0.0;  // K > 0 with h below the sqrt(2K/pi) floor
  }
  double hi = std::max(1.0, 2.0 * lo);
  while (fits(hi)) hi *= 8.0;
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (fits(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

double k_neg_linear_constant() {
  const double e = std::exp(1.0);
  const double L = std::log(e + std::sqrt(e * e - 1.0));
  return std::sqrt(2.0) * L / (std::sqrt(kPi) * (1.0 - 1.0 / e));
}

double k_neg_quadratic_constant() {
  const double e = std::exp(1.0);
  const double L = std::log(e + std::sqrt(e * e - 1.0));
  return 2.0 * L * L / (kPi * (1.0 - 1.0 / e) * (1.0 - 1.0 / e));
}

ConstantM constant_m() {
  const double w = lambert_w_m1(-0.5 * std::exp(-0.5));  // -1/(2 sqrt(e))
  const double u = -w;                                   // u >= 1
  ConstantM m;
  m.value = std::sqrt(4.0 * u - 2.0) / (2.0 * u);
  m.t_star = u - 0.5;
  return m;
}

ExplicitBound explicit_upper(double h, double curvature, MeasureRegime regime,
                             std::optional<double> c) {
  if (!(h > 0.0)) throw std::domain_error("explicit_upper: h must be positive");
  const double K = curvature;
  const double he = h_effective(h, regime);
  ExplicitBound out;
  if (K > 0.0) {
    if (!c.has_value() || !(*c > 0.0)) {
      throw std::invalid_argument("explicit_upper: K > 0 requires a positive c with K/lambda >= c");
    }
    out.value = kPi / (2.0 * *c) * he * he;
    out.regime = ExplicitRegime::k_pos_with_c;
    out.c_used = *c;
  } else if (K == 0.0) {
    const double M = constant_m().value;
    out.value = (4.0 / kPi) * he * he / (M * M);
    out.regime = ExplicitRegime::k_zero;
    out.loose_value = kPi * he * he;
  } else {
    const double lin = std::sqrt(-K) * k_neg_linear_constant() * he;
    const double quad = k_neg_quadratic_constant() * he * he;
    out.value = std::max(lin, quad);
    out.regime = ExplicitRegime::k_neg_max_form;
    out.loose_value = std::max(2.1 * std::sqrt(-K) * he, 4.4 * he * he);
  }
  return out;
}

double explicit_upper_neg_c(double h, double c, MeasureRegime regime) {
  if (!(h > 0.0)) throw std::domain_error("explicit_upper_neg_c: h must be positive");
  if (!(c > 0.0)) throw std::domain_error("explicit_upper_neg_c: c must be positive");
  // sqrt(2/pi) h_eff >= sqrt(c lambda) S(c) with
  // S(c) = sup_T (1-e^{-T}) / log(e^{cT} + sqrt(e^{2cT}-1}); the
  // supremum equals buser_functional(1, -c) / sqrt(pi c / 2), so the
  // bound collapses to lambda <= (h_eff / B)^2.
  const double he = h_effective(h, regime);
  const double B = buser_functional(1.0, -c).value;
  return (he / B) * (he / B);
}

double cheeger_lower_bound(double h) {
  if (!(h >= 0.0)) throw std::domain_error("cheeger_lower_bound: h must be nonnegative");
  return 0.25 * h * h;
}

BoundReport sandwich(BoundInput kind, double input_value, double curvature,
                     MeasureRegime regime, std::optional<double> c) {
  if (!(input_value > 0.0)) throw std::domain_error("sandwich: input must be positive");
  BoundReport r;
  r.regime = regime;
  r.curvature = curvature;
  r.input_kind = kind;
  r.input_value = input_value;

  if (kind == BoundInput::from_h) {
    const double h = input_value;
    r.cheeger_lower = cheeger_lower_bound(h);
    const ExplicitBound eb = explicit_upper(h, curvature, regime, c);
    r.explicit_value = eb.value;
    r.explicit_regime = eb.regime;
    r.c_used = eb.c_used;
    r.loose_value = eb.loose_value;
    const double lambda_up = lambda_upper_from_h(h, curvature, regime);
    if (lambda_up > 0.0) {
      const BuserSup sup = buser_functional(lambda_up, curvature);
      r.implicit_value = regime_factor(regime) * sup.value;
      r.implicit_argmax_t = sup.argmax_t;
    } else {
      // Unsatisfiable (h, K) pair: report the lambda-independent floor.
      r.implicit_value = regime_factor(regime) * std::sqrt(2.0 * curvature / kPi);
      r.implicit_argmax_t = kInf;
    }
    if (r.cheeger_lower > r.explicit_value + 1e-12) {
      // h^2/4 <= pi/(2c) h^2 forces c <= 2 pi on any space satisfying
      // the hypotheses; a larger c is inconsistent input.
      throw std::invalid_argument(
          "sandwich: Cheeger lower bound exceeds the explicit upper bound; "
          "the stated hypotheses are unsatisfiable (c too large?)");
    }
  } else {
    const double lambda = input_value;
    const BuserSup sup = buser_functional(lambda, curvature);
    r.implicit_value = regime_factor(regime) * sup.value;
    r.implicit_argmax_t = sup.argmax_t;
    const double h_min = r.implicit_value;
    r.cheeger_lower = cheeger_lower_bound(h_min);
    std::optional<double> c_eff = c;
    if (curvature > 0.0 && !c_eff.has_value()) c_eff = curvature / lambda;
    const ExplicitBound eb = explicit_upper(h_min, curvature, regime, c_eff);
    r.explicit_value = eb.value;
    r.explicit_regime = eb.regime;
    r.c_used = eb.c_used;
    r.loose_value = eb.loose_value;
  }
  return r;
}

}  // namespace buser
