#include "buser/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace buser {

namespace {

// Generator stencil: (Delta f)_i = lower_i (f_{i-1} - f_i) + upper_i (f_{i+1} - f_i).
struct Stencil {
  std::vector<double> lower, upper;
  bool periodic = false;
};

Stencil generator_stencil(const WeightedLine& s) {
  const int n = s.size();
  const double inv_dx2 = 1.0 / (s.dx * s.dx);
  Stencil st;
  st.periodic = s.topology == Topology::circle;
  st.lower.assign(n, 0.0);
  st.upper.assign(n, 0.0);
  const auto face = [&](int i, int j) { return std::sqrt(s.weight[i] * s.weight[j]); };
  for (int i = 0; i < n; ++i) {
    if (i > 0) st.lower[i] = face(i - 1, i) / s.weight[i] * inv_dx2;
    if (i + 1 < n) st.upper[i] = face(i, i + 1) / s.weight[i] * inv_dx2;
  }
  if (st.periodic) {
    st.lower[0] = face(n - 1, 0) / s.weight[0] * inv_dx2;
    st.upper[n - 1] = face(n - 1, 0) / s.weight[n - 1] * inv_dx2;
  }
  return st;
}

// Tridiagonal (plus optional wrap pair) symmetric matrix in split form
// S = T - c q q^T with q = e_0 + e_{n-1}; c = 0 for non-periodic.
struct SymMatrix {
  std::vector<double> diag;  // diagonal of T (corner already absorbed)
  std::vector<double> off;   // common off-diagonal of T and S
  double c = 0.0;            // rank-one strength, 1/dx^2 on circles
  int n = 0;

  void apply(const std::vector<double>& v, std::vector<double>& out) const {
    out.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = diag[i] * v[i];
      if (i > 0) acc += off[i - 1] * v[i - 1];
      if (i + 1 < n) acc += off[i] * v[i + 1];
      out[i] = acc;
    }
    if (c != 0.0) {
      const double qv = v[0] + v[n - 1];
      out[0] -= c * qv;
      out[n - 1] -= c * qv;
    }
  }
};

// dirichlet: close the domain ends with zero boundary values instead
// of zero flux (used for the bottom eigenvalue of infinite-measure
// truncations, where admissible functions have bounded support). The
// ghost weight extrapolates log-linearly.
SymMatrix sym_matrix(const WeightedLine& s, bool dirichlet = false) {
  const int n = s.size();
  const double inv_dx2 = 1.0 / (s.dx * s.dx);
  SymMatrix m;
  m.n = n;
  m.diag.assign(n, 0.0);
  m.off.assign(n - 1, -inv_dx2);
  const auto ratio = [&](int from, int to) {
    return std::sqrt(s.weight[from] / s.weight[to]);
  };
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    if (i > 0) d += ratio(i - 1, i);
    if (i + 1 < n) d += ratio(i + 1, i);
    m.diag[i] = d * inv_dx2;
  }
  if (dirichlet && s.topology != Topology::circle) {
    m.diag[0] += ratio(0, 1) * inv_dx2;
    m.diag[n - 1] += ratio(n - 1, n - 2) * inv_dx2;
  }
  if (s.topology == Topology::circle) {
    m.diag[0] += ratio(n - 1, 0) * inv_dx2;
    m.diag[n - 1] += ratio(0, n - 1) * inv_dx2;
    m.c = inv_dx2;
    // absorb the +c q q^T diagonal part into T
    m.diag[0] += m.c;
    m.diag[n - 1] += m.c;
    // The wrap entry -c and the q q^T corner cancel; T is tridiagonal.
  }
  return m;
}

// Number of negative pivots of the LDL^T of (T - sigma I).
int sturm_count_tridiag(const SymMatrix& m, double sigma) {
  int count = 0;
  double d = m.diag[0] - sigma;
  if (d == 0.0) d = -1e-300;
  if (d < 0.0) ++count;
  for (int i = 1; i < m.n; ++i) {
    d = (m.diag[i] - sigma) - m.off[i - 1] * m.off[i - 1] / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

// Tridiagonal LU with partial pivoting (dgttrf-style).
struct TriLU {
  int n = 0;
  std::vector<double> dl, d, du, du2;
  std::vector<int> piv;
  bool singular = false;

  void factor(const SymMatrix& m, double sigma) {
    n = m.n;
    dl.assign(std::max(0, n - 1), 0.0);
    du.assign(std::max(0, n - 1), 0.0);
    du2.assign(std::max(0, n - 2), 0.0);
    d.assign(n, 0.0);
    piv.assign(n, 0);
    for (int i = 0; i < n; ++i) d[i] = m.diag[i] - sigma;
    for (int i = 0; i + 1 < n; ++i) {
      dl[i] = m.off[i];
      du[i] = m.off[i];
    }
    singular = false;
    for (int i = 0; i + 1 < n; ++i) {
      piv[i] = i;
      if (std::fabs(d[i]) >= std::fabs(dl[i])) {
        if (d[i] == 0.0) {
          d[i] = 1e-300;
          singular = true;
        }
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
        if (i + 2 < n) du2[i] = 0.0;
      } else {
        piv[i] = i + 1;
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
      }
    }
    if (n > 0 && d[n - 1] == 0.0) {
      d[n - 1] = 1e-300;
      singular = true;
    }
    if (n > 0) piv[n - 1] = n - 1;
  }

  void solve(std::vector<double>& b) const {
    for (int i = 0; i + 1 < n; ++i) {
      if (piv[i] == i) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl[i] * b[i];
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      double x = b[i];
      if (i + 1 < n) x -= du[i] * b[i + 1];
      if (i + 2 < n) x -= du2[i] * b[i + 2];
      b[i] = x / d[i];
    }
  }
};

// Eigenvalue count of S = T - c q q^T below sigma: the Haynsworth
// inertia step adds one negative when 1/c - q^T (T - sigma)^{-1} q < 0.
int sturm_count(const SymMatrix& m, double sigma) {
  int count = sturm_count_tridiag(m, sigma);
  if (m.c != 0.0) {
    TriLU lu;
    lu.factor(m, sigma);
    std::vector<double> z(m.n, 0.0);
    z[0] = 1.0;
    z[m.n - 1] += 1.0;
    lu.solve(z);
    const double s = 1.0 / m.c - (z[0] + z[m.n - 1]);
    if (s < 0.0) ++count;
  }
  return count;
}

// Solve (S - sigma I) x = b through Sherman-Morrison on the rank-one part.
bool shifted_solve(const SymMatrix& m, double sigma, const std::vector<double>& b,
                   std::vector<double>& x) {
  TriLU lu;
  lu.factor(m, sigma);
  x = b;
  lu.solve(x);
  if (m.c != 0.0) {
    std::vector<double> z(m.n, 0.0);
    z[0] = 1.0;
    z[m.n - 1] += 1.0;
    lu.solve(z);
    const double denom = 1.0 - m.c * (z[0] + z[m.n - 1]);
    if (denom == 0.0 || !std::isfinite(denom)) return false;
    const double alpha = m.c * (x[0] + x[m.n - 1]) / denom;
    for (int i = 0; i < m.n; ++i) x[i] += alpha * z[i];
  }
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

uint64_t xorshift64(uint64_t& state) {
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return state;
}

EigenResult bottom_eigen(const WeightedLine& space, int index, bool deflate_constant,
                         bool dirichlet = false) {
  const SymMatrix m = sym_matrix(space, dirichlet);
  const int n = m.n;

  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(m.diag[i]);
    if (i > 0) row += std::fabs(m.off[i - 1]);
    if (i + 1 < n) row += std::fabs(m.off[i]);
    row += 2.0 * m.c;
    scale = std::max(scale, row);
  }

  // Bisection for the (index)-th smallest eigenvalue.
  double lo = -1e-9 * scale - 1e-30;
  double hi = scale;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(m, mid) >= index + 1) hi = mid; else lo = mid;
  }
  double lambda_hat = 0.5 * (lo + hi);

  // Constant-mode deflation vector: sqrt(w) spans the kernel.
  std::vector<double> v0(n);
  if (deflate_constant) {
    for (int i = 0; i < n; ++i) v0[i] = std::sqrt(space.weight[i]);
    const double nv = norm2(v0);
    for (double& x : v0) x /= nv;
  }
  const auto project = [&](std::vector<double>& v) {
    if (!deflate_constant) return;
    const double p = dot(v, v0);
    for (int i = 0; i < n; ++i) v[i] -= p * v0[i];
  };

  // Deterministic start vector.
  std::vector<double> v(n);
  uint64_t state = 0x9e3779b97f4a7c15ULL ^ (uint64_t)n;
  for (int i = 0; i < n; ++i) {
    v[i] = (double)(xorshift64(state) >> 11) / 9007199254740992.0 - 0.5;
  }
  project(v);
  {
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
  }

  std::vector<double> x, Sv;
  double rho = lambda_hat;
  double resid = std::numeric_limits<double>::infinity();
  double shift = lambda_hat + 1e-11 * scale;
  for (int it = 0; it < 60; ++it) {
    if (!shifted_solve(m, shift, v, x)) {
      shift += 1e-10 * scale * (it + 1);
      continue;
    }
    project(x);
    const double nx = norm2(x);
    if (!(nx > 0.0) || !std::isfinite(nx)) {
      shift += 1e-10 * scale * (it + 1);
      continue;
    }
    for (double& y : x) y /= nx;
    v = x;
    m.apply(v, Sv);
    rho = dot(v, Sv);
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = Sv[i] - rho * v[i];
      r2 += d * d;
    }
    resid = std::sqrt(r2);
    if (resid <= 1e-11 * scale) break;
  }
  if (!(resid <= 1e-8 * std::max(1.0, std::fabs(rho)) + 1e-8 * scale)) {
    throw std::runtime_error("eigen solve failed to converge");
  }

  EigenResult out;
  out.eigenvalue = rho;
  out.residual_norm = resid;  // ||S v - rho v|| / ||v||, ||v|| = 1

  // Back to the original coordinates, deterministic normalization.
  GridFunction u(n);
  for (int i = 0; i < n; ++i) u[i] = v[i] / std::sqrt(space.weight[i]);
  if (deflate_constant) {
    const double mean = weighted_mean(space, u);
    for (double& y : u) y -= mean;
  }
  int arg = 0;
  for (int i = 1; i < n; ++i) {
    if (std::fabs(u[i]) > std::fabs(u[arg]) + 1e-300) arg = i;
  }
  const double s = u[arg] < 0.0 ? -1.0 : 1.0;
  const double amp = std::fabs(u[arg]);
  for (double& y : u) y = s * y / amp;
  out.eigenfunction = std::move(u);
  return out;
}

}  // namespace

TridiagonalOperator assemble(const WeightedLine& space) {
  const SymMatrix m = sym_matrix(space);
  TridiagonalOperator op;
  op.dx = space.dx;
  op.symmetrized = true;
  op.periodic = space.topology == Topology::circle;
  op.off = m.off;
  op.diag = m.diag;
  if (op.periodic) {
    // report the plain symmetrized matrix: undo the q q^T absorption
    op.diag[0] -= m.c;
    op.diag[m.n - 1] -= m.c;
    op.corner = -m.c;
  }
  return op;
}

GridFunction apply_generator(const WeightedLine& space, const GridFunction& f) {
  const int n = space.size();
  if (static_cast<int>(f.size()) != n) {
    throw std::invalid_argument("apply_generator: grid function has wrong length");
  }
  const Stencil st = generator_stencil(space);
  GridFunction out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    if (i > 0) {
      acc += st.lower[i] * (f[i - 1] - f[i]);
    } else if (st.periodic) {
      acc += st.lower[0] * (f[n - 1] - f[0]);
    }
    if (i + 1 < n) {
      acc += st.upper[i] * (f[i + 1] - f[i]);
    } else if (st.periodic) {
      acc += st.upper[n - 1] * (f[0] - f[n - 1]);
    }
    out[i] = acc;
  }
  return out;
}

EigenResult lambda1(const WeightedLine& space) {
  if (!space.normalizable) {
    throw std::invalid_argument("lambda1: infinite-measure space, use lambda0");
  }
  return bottom_eigen(space, 1, true);
}

EigenResult lambda0(const WeightedLine& space) {
  if (space.normalizable) {
    throw std::invalid_argument("lambda0: finite-measure space, use lambda1");
  }
  // Admissible functions have bounded support, so the truncation is
  // closed with Dirichlet ends; a zero-flux closure would readmit the
  // constants and report 0.
  return bottom_eigen(space, 0, false, true);
}

double rayleigh(const WeightedLine& space, const GridFunction& f, bool mean_zero) {
  const int n = space.size();
  if (static_cast<int>(f.size()) != n) {
    throw std::invalid_argument("rayleigh: grid function has wrong length");
  }
  GridFunction g = f;
  if (mean_zero) {
    const double mean = weighted_mean(space, g);
    for (double& y : g) y -= mean;
  }
  double denom = 0.0;
  for (int i = 0; i < n; ++i) denom += g[i] * g[i] * space.weight[i];
  denom *= space.dx;
  if (!(denom > 0.0)) throw std::invalid_argument("rayleigh: function vanishes");
  double energy = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double df = g[i + 1] - g[i];
    energy += std::sqrt(space.weight[i] * space.weight[i + 1]) * df * df;
  }
  if (space.topology == Topology::circle) {
    const double df = g[0] - g[n - 1];
    energy += std::sqrt(space.weight[n - 1] * space.weight[0]) * df * df;
  } else if (!space.normalizable) {
    // grid functions on an infinite-measure truncation stand for
    // bounded-support functions extended by zero; the edge jumps carry
    // energy, with the same log-extrapolated face weights as lambda0
    energy += space.weight[0] * std::sqrt(space.weight[0] / space.weight[1]) * g[0] * g[0];
    energy += space.weight[n - 1] * std::sqrt(space.weight[n - 1] / space.weight[n - 2]) *
              g[n - 1] * g[n - 1];
  }
  energy /= space.dx;
  return energy / denom;
}

}  // namespace buser
