#pragma once

#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "divcurl/fem.hpp"
#include "divcurl/linsolve.hpp"
#include "divcurl/mesh.hpp"

namespace divcurl {

/// Potential together with the projected field it generates.
struct Projection {
  ScalarField potential;
  VectorField field;
};

namespace detail {
inline Vector volume_weights(const Mesh& m) {
  return assemble_mass(m) * Vector(static_cast<std::size_t>(m.num_vertices()), 1.0);
}
inline Constraint zero_trace(const Mesh& m) {
  return Constraint::dirichlet({m.boundary_vertices().begin(), m.boundary_vertices().end()});
}
inline Vector negated(Vector v) {
  for (double& x : v) x = -x;
  return v;
}
}  // namespace detail

/// P_G v = −∇φ_v with φ_v mean-zero and ∫∇φ_v·∇χ = −∫v·∇χ for all χ.
inline Projection project_G(const VectorField& v, double tol = 1e-12) {
  const Mesh& m = *v.mesh;
  ScalarField phi{m, solve_spd(assemble_stiffness(m), detail::negated(load_grad(v)),
                               Constraint::mean_zero(detail::volume_weights(m)), {tol, 0})};
  return {phi, -gradient(phi)};
}

/// As project_G on the zero-trace space.
inline Projection project_G0(const VectorField& v, double tol = 1e-12) {
  const Mesh& m = *v.mesh;
  ScalarField phi{m, solve_spd(assemble_stiffness(m), detail::negated(load_grad(v)), detail::zero_trace(m),
                               {tol, 0})};
  return {phi, -gradient(phi)};
}

/// P_C v = ∇⊥ψ_v with ψ_v mean-zero and ∫∇⊥ψ_v·∇⊥χ = ∫v·∇⊥χ for all χ.
inline Projection project_C(const VectorField& v, double tol = 1e-12) {
  const Mesh& m = *v.mesh;
  ScalarField psi{m, solve_spd(assemble_stiffness(m), load_perp(v),
                               Constraint::mean_zero(detail::volume_weights(m)), {tol, 0})};
  return {psi, perp_gradient(psi)};
}

inline Projection project_C0(const VectorField& v, double tol = 1e-12) {
  const Mesh& m = *v.mesh;
  ScalarField psi{m, solve_spd(assemble_stiffness(m), load_perp(v), detail::zero_trace(m), {tol, 0})};
  return {psi, perp_gradient(psi)};
}

/// v = ∇⊥ψ₀ − ∇φ₀ + h with ψ₀, φ₀ vanishing on ∂Ω. h is the residual, so
/// the reconstruction is exact by construction.
struct HarmonicDecomposition {
  ScalarField psi0;
  ScalarField phi0;
  VectorField h;

  VectorField curl_part() const { return perp_gradient(psi0); }
  VectorField grad_part() const { return -gradient(phi0); }
};

inline HarmonicDecomposition harmonic_decompose(const VectorField& v, double tol = 1e-12) {
  auto c = project_C0(v, tol);
  auto g = project_G0(v, tol);
  VectorField h = v - c.field - g.field;
  return {std::move(c.potential), std::move(g.potential), std::move(h)};
}

struct HarmonicityReport {
  bool harmonic = true;
  /// max_i |∫h·∇χ_i| / (‖h‖‖∇χ_i‖) over interior vertices.
  double div_residual = 0.0;
  double curl_residual = 0.0;
  int worst_vertex = -1;
};

/// Tests both weak conditions (irrotational and solenoidal) against every
/// interior hat function.
inline HarmonicityReport is_harmonic(const VectorField& v, double tol = 1e-8) {
  const Mesh& m = *v.mesh;
  HarmonicityReport rep;
  const double vn = l2_norm(v);
  if (vn == 0.0) return rep;
  const auto K = assemble_stiffness(m);
  const Vector lg = load_grad(v);
  const Vector lp = load_perp(v);
  double worst = -1.0;
  for (int i = 0; i < m.num_vertices(); ++i) {
    if (m.is_boundary_vertex(i)) continue;
    const double s = vn * std::sqrt(K(i, i));
    const double d = std::abs(lg[static_cast<std::size_t>(i)]) / s;
    const double c = std::abs(lp[static_cast<std::size_t>(i)]) / s;
    rep.div_residual = std::max(rep.div_residual, d);
    rep.curl_residual = std::max(rep.curl_residual, c);
    if (std::max(d, c) > worst) {
      worst = std::max(d, c);
      rep.worst_vertex = i;
    }
  }
  rep.harmonic = rep.div_residual <= tol && rep.curl_residual <= tol;
  return rep;
}

enum class PotentialKind { Grad, Curl };

/// Nodal potential whose gradient (Grad) or perp-gradient (Curl) is v.
///
/// Integrates the 1-form v₁dx₁ + v₂dx₂ (Grad) or v₁dx₂ − v₂dx₁ (Curl) along
/// a breadth-first spanning tree of mesh edges rooted at vertex 0. A P0
/// field is integrated along an edge with the average of the values on the
/// adjacent triangles, which is exact for gradients of P1 functions. Every
/// non-tree edge closes a cycle; a mismatch above tol·‖v‖_∞·|e| means v has
/// circulation. The result is normalized to zero mean.
inline ScalarField poincare_potential(const VectorField& v, PotentialKind kind, double tol = 1e-8) {
  const Mesh& m = *v.mesh;
  if (m.num_holes() > 0) {
    throw Error(ErrorCode::NotSimplyConnected,
                "potential reconstruction needs a simply connected mesh; this one has " +
                    std::to_string(m.num_holes()) + " hole(s)",
                "simply_connected");
  }
  auto edge_integral = [&](int ei, int from) {
    const auto& e = m.edges()[static_cast<std::size_t>(ei)];
    Vec2 w = v[e.triangles[0]];
    if (e.triangles[1] >= 0) w = 0.5 * (w + v[e.triangles[1]]);
    if (kind == PotentialKind::Curl) w = {-w.y, w.x};
    const int to = from == e.a ? e.b : e.a;
    return dot(w, m.vertex(to) - m.vertex(from));
  };

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m.num_vertices()));
  for (int ei = 0; ei < m.num_edges(); ++ei) {
    const auto& e = m.edges()[static_cast<std::size_t>(ei)];
    adj[static_cast<std::size_t>(e.a)].push_back(ei);
    adj[static_cast<std::size_t>(e.b)].push_back(ei);
  }
  Vector f(static_cast<std::size_t>(m.num_vertices()), 0.0);
  std::vector<char> seen(f.size(), 0), tree(static_cast<std::size_t>(m.num_edges()), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int ei : adj[static_cast<std::size_t>(a)]) {
      const auto& e = m.edges()[static_cast<std::size_t>(ei)];
      const int b = e.a == a ? e.b : e.a;
      if (seen[static_cast<std::size_t>(b)]) continue;
      seen[static_cast<std::size_t>(b)] = 1;
      tree[static_cast<std::size_t>(ei)] = 1;
      f[static_cast<std::size_t>(b)] = f[static_cast<std::size_t>(a)] + edge_integral(ei, a);
      queue.push_back(b);
    }
  }

  double vmax = 0.0;
  for (const auto& x : v.values) vmax = std::max(vmax, norm(x));
  double worst = 0.0;
  int worst_edge = -1;
  for (int ei = 0; ei < m.num_edges(); ++ei) {
    if (tree[static_cast<std::size_t>(ei)]) continue;
    const auto& e = m.edges()[static_cast<std::size_t>(ei)];
    const double len = norm(m.vertex(e.b) - m.vertex(e.a));
    const double gap = std::abs(f[static_cast<std::size_t>(e.b)] - f[static_cast<std::size_t>(e.a)] - edge_integral(ei, e.a));
    const double rel = vmax > 0.0 ? gap / (vmax * len) : 0.0;
    if (rel > worst) {
      worst = rel;
      worst_edge = ei;
    }
  }
  if (worst > tol) {
    const auto& e = m.edges()[static_cast<std::size_t>(worst_edge)];
    throw Error(ErrorCode::CirculationDetected,
                "field has nonzero circulation: the cycle closed by edge (" + std::to_string(e.a) + "," +
                    std::to_string(e.b) + ") misses by " + format_number(worst) + " relative",
                "path_independence", worst);
  }
  ScalarField out{m, std::move(f)};
  const double mean = integral(out) / m.total_area();
  for (double& x : out.coeffs) x -= mean;
  return out;
}

}  // namespace divcurl
