#include "buser/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace buser {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void check_invariants(const WeightedLine& s) {
  const int n = s.size();
  if (n < 2 || static_cast<int>(s.weight.size()) != n ||
      static_cast<int>(s.potential.size()) != n) {
    throw std::invalid_argument("WeightedLine: inconsistent field lengths");
  }
  for (double w : s.weight) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("WeightedLine: weights must be positive and finite");
    }
  }
  if (s.normalized && std::fabs(s.total_mass() - 1.0) > 1e-12) {
    throw std::invalid_argument("WeightedLine: normalized flag but total mass != 1");
  }
  // K must not exceed the discrete second difference of V anywhere.
  double min_vpp = std::numeric_limits<double>::infinity();
  const double dx2 = s.dx * s.dx;
  for (int i = 1; i + 1 < n; ++i) {
    min_vpp = std::min(min_vpp,
                       (s.potential[i - 1] - 2.0 * s.potential[i] + s.potential[i + 1]) / dx2);
  }
  if (s.topology == Topology::circle) {
    const auto wrap_vpp = [&](int i, int l, int r) {
      return (s.potential[l] - 2.0 * s.potential[i] + s.potential[r]) / dx2;
    };
    min_vpp = std::min(min_vpp, wrap_vpp(0, n - 1, 1));
    min_vpp = std::min(min_vpp, wrap_vpp(n - 1, n - 2, 0));
  }
  if (s.curvature > min_vpp + 1e-6) {
    throw std::invalid_argument("WeightedLine: curvature exceeds the discrete inf of V''");
  }
}

WeightedLine make_line(Topology topo, double left, double right, int n,
                       const std::function<double(double)>& V, double K,
                       bool normalizable) {
  WeightedLine s;
  s.topology = topo;
  s.curvature = K;
  s.normalizable = normalizable;
  s.dx = (right - left) / n;
  s.nodes.resize(n);
  s.potential.resize(n);
  s.weight.resize(n);
  for (int i = 0; i < n; ++i) {
    s.nodes[i] = left + (i + 0.5) * s.dx;
    s.potential[i] = V(s.nodes[i]);
  }
  // exponentiate relative to the minimum so the interesting region
  // never underflows; the shift washes out in the normalization
  double v_min = s.potential[0];
  for (double v : s.potential) v_min = std::min(v_min, v);
  for (int i = 0; i < n; ++i) {
    s.weight[i] = std::exp(-(s.potential[i] - v_min));
    if (!(s.weight[i] > 0.0)) {
      throw std::invalid_argument(
          "build_space: density underflows at this truncation radius; reduce R");
    }
  }
  if (normalizable) {
    double z = 0.0;
    for (double w : s.weight) z += w;
    z *= s.dx;
    for (double& w : s.weight) w /= z;
    s.normalized = true;
  } else {
    for (double& w : s.weight) w *= std::exp(-v_min);
  }
  return s;
}

}  // namespace

double WeightedLine::total_mass() const {
  double m = 0.0;
  for (double w : weight) m += w;
  return m * dx;
}

Preset preset_from_name(const std::string& name) {
  if (name == "gaussian") return Preset::gaussian;
  if (name == "flat_interval") return Preset::flat_interval;
  if (name == "flat_circle") return Preset::flat_circle;
  if (name == "convex_perturbed") return Preset::convex_perturbed;
  if (name == "double_well") return Preset::double_well;
  if (name == "inverted_gaussian") return Preset::inverted_gaussian;
  throw std::invalid_argument("unknown space preset: " + name);
}

const char* to_string(Preset p) {
  switch (p) {
    case Preset::gaussian: return "gaussian";
    case Preset::flat_interval: return "flat_interval";
    case Preset::flat_circle: return "flat_circle";
    case Preset::convex_perturbed: return "convex_perturbed";
    case Preset::double_well: return "double_well";
    case Preset::inverted_gaussian: return "inverted_gaussian";
  }
  return "?";
}

WeightedLine build_space(const SpaceSpec& spec) {
  if (spec.n < 16) throw std::invalid_argument("build_space: need at least 16 nodes");
  const bool is_line = spec.preset == Preset::gaussian ||
                       spec.preset == Preset::convex_perturbed ||
                       spec.preset == Preset::double_well ||
                       spec.preset == Preset::inverted_gaussian;
  if (is_line && !(spec.radius >= 4.0)) {
    throw std::invalid_argument("build_space: truncation radius must be >= 4");
  }
  const double R = spec.radius;
  WeightedLine s;
  switch (spec.preset) {
    case Preset::gaussian:
      s = make_line(Topology::truncated_line, -R, R, spec.n,
                    [](double x) { return 0.5 * x * x; }, 1.0, true);
      break;
    case Preset::flat_interval: {
      const double L = spec.length.value_or(2.0 * std::numbers::pi);
      if (!(L > 0.0)) throw std::invalid_argument("build_space: length must be positive");
      s = make_line(Topology::interval_neumann, 0.0, L, spec.n,
                    [](double) { return 0.0; }, 0.0, true);
      break;
    }
    case Preset::flat_circle: {
      const double L = spec.length.value_or(2.0 * std::numbers::pi);
      if (!(L > 0.0)) throw std::invalid_argument("build_space: length must be positive");
      s = make_line(Topology::circle, 0.0, L, spec.n,
                    [](double) { return 0.0; }, 0.0, true);
      break;
    }
    case Preset::convex_perturbed: {
      const double a = spec.a.value_or(0.5);
      if (!(a >= 0.0 && a < 1.0)) {
        throw std::invalid_argument("build_space: convex_perturbed needs 0 <= a < 1");
      }
      s = make_line(Topology::truncated_line, -R, R, spec.n,
                    [a](double x) { return 0.5 * x * x + a * std::cos(x); }, 1.0 - a, true);
      break;
    }
    case Preset::double_well: {
      const double b = spec.b.value_or(1.0);
      if (!(b > 0.0)) throw std::invalid_argument("build_space: double_well needs b > 0");
      s = make_line(Topology::truncated_line, -R, R, spec.n,
                    [b](double x) { return 0.25 * x * x * x * x - 0.5 * b * x * x; }, -b,
                    true);
      break;
    }
    case Preset::inverted_gaussian:
      s = make_line(Topology::truncated_line, -R, R, spec.n,
                    [](double x) { return -0.5 * x * x; }, -1.0, false);
      // Match the reference measure e^{x^2/2}/sqrt(2 pi); the scale is
      // immaterial for lambda_0 and h but keeps reported densities tied
      // to the usual normal density convention.
      for (double& w : s.weight) w *= kInvSqrt2Pi;
      break;
  }
  s.radius = is_line ? R : 0.0;
  s.preset_name = to_string(spec.preset);
  check_invariants(s);
  return s;
}

double measure_of_sublevel(const WeightedLine& space, double s) {
  const double left = space.domain_left();
  const double right = space.domain_right();
  const double grace = 1e-9 * space.dx;
  if (s < left - grace || s > right + grace) {
    throw std::invalid_argument("measure_of_sublevel: point outside the domain");
  }
  s = std::clamp(s, left, right);
  double m = 0.0;
  for (int i = 0; i < space.size(); ++i) {
    const double cl = left + i * space.dx;
    const double cr = cl + space.dx;
    if (s >= cr) {
      m += space.weight[i] * space.dx;
    } else {
      if (s > cl) m += space.weight[i] * (s - cl);
      break;
    }
  }
  return m;
}

double density_at(const WeightedLine& space, double s) {
  const double grace = 1e-9 * space.dx;
  if (s < space.domain_left() - grace || s > space.domain_right() + grace) {
    throw std::invalid_argument("density_at: point outside the domain");
  }
  const int n = space.size();
  if (space.topology == Topology::circle) {
    const double L = space.domain_length();
    double rel = std::fmod(s - space.nodes[0], L);
    if (rel < 0) rel += L;
    const int i = static_cast<int>(std::floor(rel / space.dx));
    const double frac = rel / space.dx - i;
    const int i0 = i % n, i1 = (i + 1) % n;
    return (1.0 - frac) * space.weight[i0] + frac * space.weight[i1];
  }
  if (s <= space.nodes.front()) return space.weight.front();
  if (s >= space.nodes.back()) return space.weight.back();
  const int i = static_cast<int>(std::floor((s - space.nodes[0]) / space.dx));
  const int j = std::min(i, n - 2);
  const double frac = (s - space.nodes[j]) / space.dx;
  return (1.0 - frac) * space.weight[j] + frac * space.weight[j + 1];
}

GridFunction slope(const WeightedLine& space, const GridFunction& f) {
  const int n = space.size();
  if (static_cast<int>(f.size()) != n) {
    throw std::invalid_argument("slope: grid function has wrong length");
  }
  GridFunction g(n);
  const double inv2dx = 1.0 / (2.0 * space.dx);
  if (space.topology == Topology::circle) {
    for (int i = 0; i < n; ++i) {
      const int l = (i + n - 1) % n, r = (i + 1) % n;
      g[i] = std::fabs((f[r] - f[l]) * inv2dx);
    }
    return g;
  }
  g[0] = std::fabs((f[1] - f[0]) / space.dx);
  g[n - 1] = std::fabs((f[n - 1] - f[n - 2]) / space.dx);
  for (int i = 1; i + 1 < n; ++i) g[i] = std::fabs((f[i + 1] - f[i - 1]) * inv2dx);
  return g;
}

double integrate(const WeightedLine& space, const GridFunction& f) {
  double acc = 0.0;
  for (int i = 0; i < space.size(); ++i) acc += f[i] * space.weight[i];
  return acc * space.dx;
}

double norm_l1(const WeightedLine& space, const GridFunction& f) {
  double acc = 0.0;
  for (int i = 0; i < space.size(); ++i) acc += std::fabs(f[i]) * space.weight[i];
  return acc * space.dx;
}

double norm_l2(const WeightedLine& space, const GridFunction& f) {
  double acc = 0.0;
  for (int i = 0; i < space.size(); ++i) acc += f[i] * f[i] * space.weight[i];
  return std::sqrt(acc * space.dx);
}

double weighted_mean(const WeightedLine& space, const GridFunction& f) {
  return integrate(space, f) / space.total_mass();
}

}  // namespace buser
