#include "buser/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace buser {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

}  // namespace

double j_k(double curvature, double t) {
  if (!(t > 0.0)) throw std::domain_error("j_k: t must be positive");
  const double u = 2.0 * curvature * t;
  if (std::fabs(u) < 1e-6) {
    // K/(e^{2Kt}-1) = (1/2t) * u/(e^u - 1); three Bernoulli terms are
    // exact to ~u^4/720 here.
    return (1.0 / (2.0 * t)) * (1.0 - 0.5 * u + u * u / 12.0);
  }
  return curvature / std::expm1(u);
}

double J_k_closed(double curvature, double t) {
  if (!(t > 0.0)) throw std::domain_error("J_k_closed: t must be positive");
  const double K = curvature;
  if (K == 0.0) return 2.0 * std::sqrt(t) / kSqrtPi;
  if (K > 0.0) {
    const double u = 2.0 * K * t;
    const double theta =
        u < 700.0 ? std::atan(std::sqrt(std::expm1(u))) : std::acos(std::exp(-K * t));
    return std::sqrt(2.0 / (kPi * K)) * theta;
  }
  // K < 0: arctanh(sqrt(1-e^{2Kt})) = log(e^{-Kt} + sqrt(e^{-2Kt}-1))
  //      = -Kt + log(1 + sqrt(1 - e^{2Kt})), overflow-free.
  const double x = -K * t;
  const double y = std::sqrt(-std::expm1(-2.0 * x));
  return std::sqrt(2.0 / (kPi * (-K))) * (x + std::log1p(y));
}

namespace {

// 15-point Kronrod / 7-point Gauss pair on [-1, 1].
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

template <typename F>
void gauss_kronrod_15(const F& f, double a, double b, double* value, double* err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double res_g = kWg[3] * fc;
  double res_k = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    res_k += kWgk[j] * fsum;
    if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
  }
  *value = res_k * h;
  *err = std::fabs((res_k - res_g) * h);
}

}  // namespace

double J_k_quadrature(double curvature, double t, double tol) {
  if (!(t > 0.0)) throw std::domain_error("J_k_quadrature: t must be positive");
  if (!(tol > 0.0)) throw std::domain_error("J_k_quadrature: tol must be positive");
  const double K = curvature;
  // After s = u^2 the integrand sqrt(2/pi) sqrt(j_K(u^2)) * 2u extends
  // continuously to u = 0 with value sqrt(2/pi).
  const auto f = [K](double u) {
    if (u <= 0.0) return std::sqrt(2.0) / kSqrtPi;
    return std::sqrt(2.0 / kPi) * 2.0 * u * std::sqrt(j_k(K, u * u));
  };

  struct Piece {
    double a, b, value, err;
  };
  std::vector<Piece> pieces;
  {
    Piece p{0.0, std::sqrt(t), 0.0, 0.0};
    gauss_kronrod_15(f, p.a, p.b, &p.value, &p.err);
    pieces.push_back(p);
  }
  const int kMaxPieces = 4000;
  while (true) {
    double total_err = 0.0;
    int worst = 0;
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
      total_err += pieces[i].err;
      if (pieces[i].err > pieces[worst].err) worst = i;
    }
    if (total_err <= tol) break;
    if (static_cast<int>(pieces.size()) >= kMaxPieces) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "J_k_quadrature: refinement budget exhausted, achieved "
                    "error estimate %.3e (requested %.3e)",
                    total_err, tol);
      throw std::runtime_error(msg);
    }
    Piece p = pieces[worst];
    const double m = 0.5 * (p.a + p.b);
    Piece left{p.a, m, 0.0, 0.0}, right{m, p.b, 0.0, 0.0};
    gauss_kronrod_15(f, left.a, left.b, &left.value, &left.err);
    gauss_kronrod_15(f, right.a, right.b, &right.value, &right.err);
    pieces[worst] = left;
    pieces.push_back(right);
  }
  double total = 0.0;
  for (const Piece& p : pieces) total += p.value;
  return total;
}

double lambert_w_m1(double x) {
  const double branch = -std::exp(-1.0);
  if (!(x < 0.0) || x < branch - 4e-16) {
    throw std::domain_error("lambert_w_m1: x must lie in [-1/e, 0)");
  }
  if (x <= branch) return -1.0;

  // Decreasing on (-inf, -1]: bracket [lo, hi] with f(lo) >= 0 >= f(hi).
  const auto f = [x](double w) { return w * std::exp(w) - x; };
  double hi = -1.0;
  double w = std::log(-x) - std::log(-std::log(-x));
  if (!(w < -1.0)) w = -1.0000001;
  double lo = std::min(w - 1.0, -2.0);
  while (f(lo) < 0.0) lo *= 2.0;
  w = std::clamp(w, lo, hi);

  const double target = 1e-15 * std::fabs(x);
  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double fw = w * ew - x;
    if (fw > 0.0) lo = w; else hi = w;
    if (std::fabs(fw) <= target) break;
    const double fp = ew * (1.0 + w);
    const double fpp = ew * (2.0 + w);
    const double denom = fp - fw * fpp / (2.0 * fp);
    double next = w - fw / denom;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (next == w) break;
    w = next;
  }
  // Bisection fallback: Halley degrades at the branch point where f' -> 0.
  for (int it = 0; it < 200 && std::fabs(f(w)) > 1e-14 * std::fabs(x); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) > 0.0) lo = mid; else hi = mid;
    w = std::fabs(f(lo)) < std::fabs(f(hi)) ? lo : hi;
  }
  return std::min(w, -1.0);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inverse_normal_cdf: p must lie in (0,1)");
  }
  // Acklam's rational approximation (|rel err| < 1.2e-9), then one Newton
  // step on Phi through erfc brings it to full double accuracy.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double z;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double phi = kInvSqrt2Pi * std::exp(-0.5 * z * z);
  if (phi > 0.0) {
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    z -= (cdf - p) / phi;
  }
  return z;
}

double gaussian_isoperimetric(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("gaussian_isoperimetric: x must lie in [0,1]");
  }
  const double r = std::min(x, 1.0 - x);  // I(x) = I(1-x)
  if (r <= 0.0) return 0.0;
  const double z = inverse_normal_cdf(r);
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double f1(double x, double T) {
  if (!(x > 0.0) || !(T > 0.0)) throw std::domain_error("f1: x and T must be positive");
  const double u = T * x;
  // arctan(sqrt(e^u - 1)) = arccos(e^{-u/2})
  const double theta =
      u < 700.0 ? std::atan(std::sqrt(std::expm1(u))) : std::acos(std::exp(-0.5 * u));
  return std::sqrt(x) / theta;
}

double f2(double x, double T) {
  if (!(x > 0.0) || !(T > 0.0)) throw std::domain_error("f2: x and T must be positive");
  const double u = T * x;
  // log(e^u + sqrt(e^{2u} - 1)) = u + log(1 + sqrt(1 - e^{-2u}))
  const double denom = u + std::log1p(std::sqrt(-std::expm1(-2.0 * u)));
  return std::sqrt(x) / denom;
}

double g1(double y) {
  if (!(y >= 0.0)) throw std::domain_error("g1: y must be nonnegative");
  return y * std::atan(y) - std::log1p(y * y);
}

double g2(double y) {
  if (!(y >= 0.0 && y < 1.0)) throw std::domain_error("g2: y must lie in [0,1)");
  return (1.0 + 0.5 * y) * std::log1p(y) + (1.0 - 0.5 * y) * std::log1p(-y);
}

}  // namespace buser
