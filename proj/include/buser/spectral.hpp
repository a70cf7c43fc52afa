#pragma once

#include <vector>

#include "buser/model_space.hpp"

// The weighted Laplacian Delta f = f'' - V' f' in divergence form
// (w f')' / w, its symmetric tridiagonal discretization with
// geometric face averages, and the bottom of its spectrum.

namespace buser {

struct TridiagonalOperator {
  std::vector<double> diag;  // symmetrized -Delta, positive semidefinite
  std::vector<double> off;   // size n-1; equals -1/dx^2 identically
  bool symmetrized = true;
  bool periodic = false;
  double corner = 0.0;       // (0, n-1) entry for circles
  double dx = 0.0;
};

// Finite-volume assembly with face weights sqrt(w_i w_{i+1}).
// The unsymmetrized generator annihilates constants exactly and is
// self-adjoint for the weighted inner product sum f g w dx; circles
// reduce to tridiagonal plus a corner pair.
TridiagonalOperator assemble(const WeightedLine& space);

// Action of the (unsymmetrized) generator Delta on a grid function.
GridFunction apply_generator(const WeightedLine& space, const GridFunction& f);

struct EigenResult {
  double eigenvalue = 0.0;
  GridFunction eigenfunction;   // normalized to max |u| = 1, deterministic sign
  double residual_norm = 0.0;   // ||(Delta + lambda) u||_w / ||u||_w
};

// Smallest nonzero eigenvalue of -Delta on a finite-measure space:
// Sturm-sequence bisection (rank-one corrected for circles) plus
// inverse iteration with the constant mode deflated. The
// eigenfunction has weighted mean zero.
EigenResult lambda1(const WeightedLine& space);

// Bottom of the spectrum on a non-normalizable (infinite measure)
// space, reported on the truncated domain.
EigenResult lambda0(const WeightedLine& space);

// Weighted Rayleigh quotient of f, computed with the same face-based
// Dirichlet form as the assembled operator, so it dominates lambda1
// (after mean-zero projection) up to roundoff.
double rayleigh(const WeightedLine& space, const GridFunction& f, bool mean_zero);

}  // namespace buser
