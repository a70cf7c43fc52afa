#pragma once

#include <vector>

#include "buser/model_space.hpp"

// Perimeters of interval families, the Cheeger constant, and the
// co-area inequality check on 1-D weighted spaces. The perimeter of a
// set is the sum of the density over its topological boundary points;
// domain endpoints of interval/truncated spaces carry no boundary.

namespace buser {

enum class CutKind { single_cut, interval, multi_interval };

struct CutFamily {
  CutKind kind = CutKind::single_cut;
  // single_cut: one point s, the set {x <= s}. interval /
  // multi_interval: 2k strictly increasing endpoints of k <= 3
  // disjoint intervals.
  std::vector<double> cut_points;
};

// Sum of interpolated densities at the boundary points of the family.
// Empty families have zero perimeter. Circles reject single cuts.
double perimeter(const WeightedLine& space, const CutFamily& cuts);

// Measure of the set described by the family.
double cut_measure(const WeightedLine& space, const CutFamily& cuts);

struct CheegerResult {
  double h = 0.0;
  CutFamily optimal_cuts;
};

// Cheeger constant: dense scan over half-line cuts at every node
// (arc pairs on circles, bounded intervals on infinite-measure
// spaces), then a brute-force search over families of up to three
// intervals with endpoints on a coarse subgrid. Throws if the brute
// force beats the dense scan by more than 1e-3 relative, which would
// indicate a broken discretization. Ties break to the leftmost cut.
CheegerResult cheeger_constant(const WeightedLine& space);

struct CoareaResult {
  double lhs = 0.0;  // integral over levels of Per({u > t})
  double rhs = 0.0;  // integral of |grad u| against the measure
  bool pass = false;
};

// Level-set side: Per({u > t}) integrated over the grid of distinct
// node values (midpoint rule per interval; exact for piecewise-linear
// u with linearly interpolated crossing densities). Gradient side:
// total-variation quadrature matching the limsup slope of a
// piecewise-linear function. Passes when lhs <= rhs + 1e-9.
CoareaResult coarea_check(const WeightedLine& space, const GridFunction& u);

}  // namespace buser
