#pragma once

#include <optional>
#include <string>
#include <vector>

// Discretized one-dimensional weighted metric measure spaces
// (cell-centered uniform grids) with curvature derived from the
// potential: the desk-scale surrogates for the smooth model spaces.

namespace buser {

enum class Topology { interval_neumann, circle, truncated_line };

using GridFunction = std::vector<double>;

struct WeightedLine {
  std::vector<double> nodes;      // cell centers, uniform spacing dx
  std::vector<double> potential;  // V at nodes
  std::vector<double> weight;     // w_i proportional to exp(-V(x_i)), all > 0
  Topology topology = Topology::interval_neumann;
  double dx = 0.0;
  bool normalized = false;    // sum w_i dx == 1
  bool normalizable = true;   // false: infinite total measure, lambda_0 regime
  double curvature = 0.0;     // K = inf V'' (analytic, from the preset)
  double radius = 0.0;        // truncation radius, truncated_line only
  std::string preset_name;

  int size() const { return static_cast<int>(nodes.size()); }
  double domain_left() const { return nodes.front() - 0.5 * dx; }
  double domain_right() const { return nodes.back() + 0.5 * dx; }
  double domain_length() const { return size() * dx; }
  double total_mass() const;
};

enum class Preset {
  gaussian,          // V = x^2/2 on [-R,R], K = 1
  flat_interval,     // V = 0 on [0,L], K = 0
  flat_circle,       // V = 0 on the circle of length L, K = 0
  convex_perturbed,  // V = x^2/2 + a cos x, 0 <= a < 1, K = 1 - a
  double_well,       // V = x^4/4 - b x^2/2, b > 0, K = -b
  inverted_gaussian  // V = -x^2/2, K = -1, infinite measure
};

Preset preset_from_name(const std::string& name);
const char* to_string(Preset p);

struct SpaceSpec {
  Preset preset = Preset::gaussian;
  int n = 2001;
  double radius = 8.0;             // truncated-line presets
  std::optional<double> length;    // flat_interval / flat_circle, default 2 pi
  std::optional<double> a;         // convex_perturbed
  std::optional<double> b;         // double_well
};

// Builds the discretized space and validates every type invariant
// (positivity, normalization, curvature consistency). Throws
// std::invalid_argument on out-of-range parameters.
WeightedLine build_space(const SpaceSpec& spec);

// Mass of {x <= s}: exact cell-fraction cumulative of the discrete
// measure w_i dx. Monotone in s, equal to the total mass at the right
// domain endpoint. s must lie within the domain.
double measure_of_sublevel(const WeightedLine& space, double s);

// Density at an arbitrary point of the domain, linearly interpolated
// between the two adjacent nodes (clamped beyond the end nodes).
double density_at(const WeightedLine& space, double s);

// Discrete slope |grad f|: absolute central differences at interior
// nodes, one-sided at interval endpoints, wrap-around on circles.
GridFunction slope(const WeightedLine& space, const GridFunction& f);

// Weighted integral  sum f_i w_i dx.
double integrate(const WeightedLine& space, const GridFunction& f);

// Weighted L^p norms and the weighted mean.
double norm_l1(const WeightedLine& space, const GridFunction& f);
double norm_l2(const WeightedLine& space, const GridFunction& f);
double weighted_mean(const WeightedLine& space, const GridFunction& f);

// Samples a scalar function at the nodes.
template <typename F>
GridFunction sample(const WeightedLine& space, F&& f) {
  GridFunction out(space.nodes.size());
  for (size_t i = 0; i < space.nodes.size(); ++i) out[i] = f(space.nodes[i]);
  return out;
}

}  // namespace buser
