#pragma once

#include <string>
#include <vector>

#include "buser/isoperimetry.hpp"
#include "buser/model_space.hpp"

// Heat flow H_t of the weighted Laplacian, and numerical
// certification of the semigroup inequalities the spectral bounds
// rest on. Time stepping is Crank-Nicolson with a range-preserving
// startup: steps below the elementwise monotonicity bound while the
// data may be rough, then a step ramp dt <= t/20 that keeps
// unresolved modes at or below round-off before regular steps take
// over. Mass is conserved exactly by the finite-volume stencil.

namespace buser {

struct FlowResult {
  GridFunction final;
  double t = 0.0;
  long steps = 0;           // steps actually executed
  double mass_drift = 0.0;  // |m(t) - m(0)| / (scale * max(t, 1))
  double min_overshoot = 0.0;  // below the initial minimum, >= 0
  double max_overshoot = 0.0;  // above the initial maximum, >= 0
};

// Evolves f to time t. `steps` sets the step-size ceiling t/steps and
// must be at least ceil(t / dx); the stepper may subdivide further for
// range preservation. Throws std::invalid_argument when the guard is
// violated (the message names the minimum) or f is not finite.
FlowResult evolve(const WeightedLine& space, const GridFunction& f, double t, long steps);

struct VerificationRecord {
  std::string inequality_id;
  double worst_slack = 0.0;  // negative = violation
  double tolerance = 0.0;
  bool pass = false;         // worst_slack >= -tolerance
  long n = 0;
  double dx = 0.0;
  double dt = 0.0;           // largest step used
  std::string notes;
};

// ||H_t f||_2 <= e^{-lambda t} ||f||_2 with lambda from the spectral
// module; f is projected to weighted mean zero on finite-measure
// spaces (lambda_1), taken as-is on infinite ones (lambda_0).
// Relative slack, tolerance 1e-3.
VerificationRecord verify_l2_decay(const WeightedLine& space, const GridFunction& f,
                                   const std::vector<double>& t_grid);

// Pointwise |D H_t f|^2 <= j_K(t) ([I(H_t f)]^2 - [H_t(I(f))]^2) at
// interior nodes, for 0 <= f <= 1. Slack scaled by 1/(1 + j_K(t)),
// tolerance C dx.
VerificationRecord verify_bgl(const WeightedLine& space, const GridFunction& f,
                              const std::vector<double>& t_grid);

// max |D H_t f| <= sqrt(2/pi) sqrt(j_K(t)) ||f||_inf, slack scaled by
// 1/(1 + sqrt(j_K(t)) ||f||_inf), tolerance C dx. Also notes that the
// constant improves on the sqrt(j_K(t)) bound for K > 0.
VerificationRecord verify_linf_gradient(const WeightedLine& space, const GridFunction& f,
                                        const std::vector<double>& t_grid);

// ||f - H_t f||_1 <= J_K(t) || |Df| ||_1, slack scaled by
// 1/(1 + J_K(t) TV), tolerance 1e-6 + C dx.
VerificationRecord verify_l1_smoothing(const WeightedLine& space, const GridFunction& f,
                                       const std::vector<double>& t_grid);

// J_K(t) Per(A) >= 2 m(A)(1 - m(A))(1 - e^{-lambda_1 t}) for the
// indicator of the cut family, evolved without mollification; the
// half-time evolution is applied twice so the self-adjointness
// identity ||chi - H_t chi||_1 = 2(m(A) - ||H_{t/2} chi||_2^2) holds
// by construction and is checked to 1e-6.
VerificationRecord verify_perimeter_chain(const WeightedLine& space, const CutFamily& cut,
                                          const std::vector<double>& t_grid);

// Pointwise |D H_t f| <= e^{-Kt} H_t(|D f|); slack evaluated as
// H_t(|Df|) - e^{Kt} |D H_t f| scaled by 1/(1 + ||Df||_inf),
// tolerance C dx.
VerificationRecord verify_savare(const WeightedLine& space, const GridFunction& f,
                                 const std::vector<double>& t_grid);

// Log-spaced grid helper, lo and hi included.
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace buser
