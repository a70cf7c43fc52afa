#pragma once

// Scalar special functions behind the spectral-gap bound calculus:
// the curvature kernel j_K, its time integral J_K, the Gaussian
// isoperimetric profile, the lower Lambert branch, and the monotone
// auxiliaries f1/f2/g1/g2 used by the explicit constants.
//
// All functions are pure and thread-safe.

namespace buser {

// j_K(t) = K / (e^{2Kt} - 1) for K != 0, and 1/(2t) for K = 0.
// Continuous in K at K = 0 (series branch when |2Kt| is tiny).
// Strictly decreasing in t and strictly nonincreasing in K.
// Throws std::domain_error for t <= 0.
double j_k(double curvature, double t);

// Closed form of J_K(t) = sqrt(2/pi) * int_0^t sqrt(j_K(s)) ds:
//   K > 0: sqrt(2/(pi K)) * arctan(sqrt(e^{2Kt} - 1))   (bounded by sqrt(pi/(2K)))
//   K = 0: 2 sqrt(t/pi)
//   K < 0: sqrt(-2/(pi K)) * log(e^{-Kt} + sqrt(e^{-2Kt} - 1))
// The K < 0 branch uses the log form of arctanh to avoid loss of
// precision for arguments near 1. Throws for t <= 0.
double J_k_closed(double curvature, double t);

// Adaptive Gauss-Kronrod evaluation of the defining integral of J_K,
// after the substitution s = u^2 that removes the 1/sqrt(s) endpoint
// singularity. Absolute tolerance `tol`. Independent oracle for
// J_k_closed. Throws std::domain_error for bad arguments and
// std::runtime_error (with the achieved error estimate) if the
// refinement budget is exhausted.
double J_k_quadrature(double curvature, double t, double tol);

// Lower branch W_{-1} of the Lambert function on [-1/e, 0):
// returns w <= -1 with w e^w = x, residual |w e^w - x| <= 1e-14 |x|.
// Safeguarded Halley iteration (cap 50) seeded from the asymptotic
// log(-x) - log(-log(-x)), with bisection fallback.
double lambert_w_m1(double x);

// Inverse of the standard normal CDF. Rational initial approximation
// refined by one Newton step on Phi (via erfc). Throws for p outside (0,1).
double inverse_normal_cdf(double p);

// Gaussian isoperimetric function I = phi o Phi^{-1} on [0,1],
// I(0) = I(1) = 0, I(1/2) = 1/sqrt(2 pi), symmetric about 1/2,
// and I * I'' = -1 on (0,1).
double gaussian_isoperimetric(double x);

// f1(x) = sqrt(x) / arctan(sqrt(e^{Tx} - 1)), increasing in x with
// infimum 1/sqrt(T) as x -> 0+.
double f1(double x, double T);

// f2(x) = sqrt(x) / log(e^{Tx} + sqrt(e^{2Tx} - 1)), decreasing in x.
double f2(double x, double T);

// g1(y) = y arctan(y) - log(1 + y^2), nonnegative for y >= 0.
double g1(double y);

// g2(y) = (1 + y/2) log(1+y) + (1 - y/2) log(1-y), nonpositive on [0,1).
double g2(double y);

}  // namespace buser
