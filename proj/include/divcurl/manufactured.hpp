#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "divcurl/bvp.hpp"

namespace divcurl {

/// Smooth reference problems on the unit square with known solutions.
///
/// normal:      v* = ∇⊥s − ∇s + ∇(x² − y²),  s = sin πx sin πy
/// tangential:  v* = ∇⊥s − ∇s − ∇⊥(x² − y²)
/// mixed:       v* = ∇⊥ψ* − ∇φ*, φ* = sin πx cos(πy/2), ψ* = sin(πy/2) cos πx,
///              with Γ_ν the bottom side and Γ_τ the rest
/// poisson:     −Δφ = 2π² s, φ = s on the zero-trace space
struct ManufacturedCase {
  std::string name;
  DivCurlData data;
  std::function<Vec2(Vec2)> exact_field;
  std::function<double(Vec2)> exact_scalar;
};

namespace detail {
constexpr double pi = std::numbers::pi;
inline double s_fn(Vec2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); }
inline Vec2 s_grad(Vec2 p) {
  return {pi * std::cos(pi * p.x) * std::sin(pi * p.y), pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
}
}  // namespace detail

inline ManufacturedCase make_manufactured(const Mesh& m, const std::string& name) {
  using detail::pi;
  ManufacturedCase c;
  c.name = name;
  auto source = [](Vec2 p) { return 2.0 * pi * pi * detail::s_fn(p); };
  if (name == "normal" || name == "tangential") {
    const bool normal = name == "normal";
    c.exact_field = [normal](Vec2 p) {
      const Vec2 g = detail::s_grad(p);
      const Vec2 gc{2.0 * p.x, -2.0 * p.y};
      return perp(g) - g + (normal ? gc : -perp(gc));
    };
    c.data.rho = interpolate(m, source);
    c.data.omega = interpolate(m, source);
    auto exact = c.exact_field;
    BoundaryFunction eta = project_boundary(m, [&](int e, Vec2 p) {
      const auto f = m.boundary_frame(e);
      return dot(exact(p), normal ? f.nu : f.tau);
    });
    // Shift by a constant so the discrete compatibility identity holds exactly.
    const double gap = integral(normal ? c.data.rho : c.data.omega) - boundary_integral(eta);
    const double shift = gap / m.perimeter();
    for (double& x : eta.values) x += shift;
    (normal ? c.data.eta_nu : c.data.eta_tau) = eta;
  } else if (name == "mixed") {
    const double k2 = pi * pi * 1.25;
    auto phi = [](Vec2 p) { return std::sin(pi * p.x) * std::cos(0.5 * pi * p.y); };
    auto psi = [](Vec2 p) { return std::sin(0.5 * pi * p.y) * std::cos(pi * p.x); };
    c.exact_field = [](Vec2 p) {
      const Vec2 gphi{pi * std::cos(pi * p.x) * std::cos(0.5 * pi * p.y),
                      -0.5 * pi * std::sin(pi * p.x) * std::sin(0.5 * pi * p.y)};
      const Vec2 gpsi{-pi * std::sin(0.5 * pi * p.y) * std::sin(pi * p.x),
                      0.5 * pi * std::cos(0.5 * pi * p.y) * std::cos(pi * p.x)};
      return perp(gpsi) - gphi;
    };
    c.data.rho = interpolate(m, [&](Vec2 p) { return k2 * phi(p); });
    c.data.omega = interpolate(m, [&](Vec2 p) { return k2 * psi(p); });
    auto exact = c.exact_field;
    c.data.eta_nu = project_boundary(m, [&](int e, Vec2 p) { return dot(exact(p), m.boundary_frame(e).nu); });
    c.data.eta_tau = project_boundary(m, [&](int e, Vec2 p) { return dot(exact(p), m.boundary_frame(e).tau); });
    c.data.partition = make_partition(m, parse_arc_list(m, "bottom"));
  } else if (name == "poisson") {
    c.data.rho = interpolate(m, source);
    c.data.omega = ScalarField::zero(m);
    c.exact_scalar = detail::s_fn;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown manufactured case '" + name + "'", "manufactured_case");
  }
  return c;
}

/// Relative L² error of a P0 field against a smooth one (edge-midpoint rule
/// per triangle).
inline double relative_field_error(const VectorField& v, const std::function<Vec2(Vec2)>& exact) {
  const Mesh& m = *v.mesh;
  double err = 0.0, ref = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    const double w = m.signed_area(t) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 q = 0.5 * (m.vertex(tri[k]) + m.vertex(tri[(k + 1) % 3]));
      const Vec2 e = exact(q);
      const Vec2 d = v[t] - e;
      err += w * dot(d, d);
      ref += w * dot(e, e);
    }
  }
  return std::sqrt(err / ref);
}

/// Relative L² error of a P1 field against a smooth one (edge-midpoint rule).
inline double relative_scalar_error(const ScalarField& f, const std::function<double(Vec2)>& exact) {
  const Mesh& m = *f.mesh;
  double err = 0.0, ref = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    const double w = m.signed_area(t) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      const Vec2 q = 0.5 * (m.vertex(a) + m.vertex(b));
      const double fh = 0.5 * (f[a] + f[b]);
      const double e = exact(q);
      err += w * (fh - e) * (fh - e);
      ref += w * e * e;
    }
  }
  return std::sqrt(err / ref);
}

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double error = 0.0;
  double rate = std::numeric_limits<double>::quiet_NaN();
};

/// Error of the named case on `levels` successive uniform refinements of
/// `base`, with observed rates log₂(e_{k−1}/e_k)·(h_{k−1}/h_k scaling).
inline std::vector<ConvergenceRow> convergence_study(const Mesh& base, const std::string& name, int levels,
                                                     double tol = 1e-12) {
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "need at least one level");
  std::vector<ConvergenceRow> rows;
  Mesh m = base;
  BvpOptions opt;
  opt.tol = tol;
  opt.report = false;
  for (int l = 0; l < levels; ++l) {
    if (l > 0) m = refine_uniform(m);
    auto c = make_manufactured(m, name);
    ConvergenceRow row;
    row.level = l;
    row.h = m.max_edge_length();
    if (name == "poisson") {
      row.error = relative_scalar_error(solve_dirichlet_poisson(c.data.rho, tol), c.exact_scalar);
    } else {
      const auto sol = name == "normal"       ? solve_normal(c.data, opt)
                       : name == "tangential" ? solve_tangential(c.data, opt)
                                              : solve_mixed(c.data, opt);
      row.error = relative_field_error(sol.v, c.exact_field);
    }
    if (!rows.empty()) row.rate = std::log(rows.back().error / row.error) / std::log(rows.back().h / row.h);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace divcurl
