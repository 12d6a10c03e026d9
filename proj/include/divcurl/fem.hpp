#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "divcurl/linsolve.hpp"
#include "divcurl/mesh.hpp"
#include "divcurl/sparse.hpp"

namespace divcurl {

namespace detail {
inline void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a non-finite value");
  }
}
inline void same_mesh(const Mesh* a, const Mesh* b) {
  if (a != b) throw Error(ErrorCode::MeshMismatch, "fields live on different meshes", "mesh_mismatch");
}
}  // namespace detail

/// Continuous piecewise-linear function given by its nodal values.
struct ScalarField {
  const Mesh* mesh = nullptr;
  Vector coeffs;

  ScalarField() = default;
  ScalarField(const Mesh& m, Vector c) : mesh(&m), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != m.num_vertices()) {
      throw Error(ErrorCode::InvalidArgument, "scalar field length differs from vertex count");
    }
    detail::check_finite(coeffs, "scalar field");
  }
  static ScalarField zero(const Mesh& m) {
    return {m, Vector(static_cast<std::size_t>(m.num_vertices()), 0.0)};
  }
  double operator[](int i) const { return coeffs[static_cast<std::size_t>(i)]; }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    detail::same_mesh(a.mesh, b.mesh);
    ScalarField r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
  }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) { return a + (-1.0) * b; }
  friend ScalarField operator*(double s, const ScalarField& a) {
    ScalarField r = a;
    for (double& x : r.coeffs) x *= s;
    return r;
  }
};

/// Piecewise-constant planar vector field, one value per triangle.
struct VectorField {
  const Mesh* mesh = nullptr;
  std::vector<Vec2> values;

  VectorField() = default;
  VectorField(const Mesh& m, std::vector<Vec2> v) : mesh(&m), values(std::move(v)) {
    if (static_cast<int>(values.size()) != m.num_triangles()) {
      throw Error(ErrorCode::InvalidArgument, "vector field length differs from triangle count");
    }
    for (const auto& x : values) {
      if (!std::isfinite(x.x) || !std::isfinite(x.y)) {
        throw Error(ErrorCode::InvalidArgument, "vector field has a non-finite value");
      }
    }
  }
  static VectorField zero(const Mesh& m) {
    return {m, std::vector<Vec2>(static_cast<std::size_t>(m.num_triangles()))};
  }
  const Vec2& operator[](int t) const { return values[static_cast<std::size_t>(t)]; }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    detail::same_mesh(a.mesh, b.mesh);
    VectorField r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-1.0) * b; }
  friend VectorField operator-(const VectorField& a) { return (-1.0) * a; }
  friend VectorField operator*(double s, const VectorField& a) {
    VectorField r = a;
    for (auto& x : r.values) x = s * x;
    return r;
  }
};

/// Values at the boundary vertices, in the order of Mesh::boundary_vertices().
struct BoundaryFunction {
  const Mesh* mesh = nullptr;
  Vector values;

  BoundaryFunction() = default;
  BoundaryFunction(const Mesh& m, Vector v) : mesh(&m), values(std::move(v)) {
    if (static_cast<int>(values.size()) != m.num_boundary_vertices()) {
      throw Error(ErrorCode::InvalidArgument, "boundary function length differs from boundary vertex count");
    }
    detail::check_finite(values, "boundary function");
  }
  static BoundaryFunction zero(const Mesh& m) {
    return {m, Vector(static_cast<std::size_t>(m.num_boundary_vertices()), 0.0)};
  }
  static BoundaryFunction constant(const Mesh& m, double c) {
    return {m, Vector(static_cast<std::size_t>(m.num_boundary_vertices()), c)};
  }

  friend BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b) {
    detail::same_mesh(a.mesh, b.mesh);
    BoundaryFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
  }
  friend BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b) {
    return a + (-1.0) * b;
  }
  friend BoundaryFunction operator*(double s, const BoundaryFunction& a) {
    BoundaryFunction r = a;
    for (double& x : r.values) x *= s;
    return r;
  }
};

// ---------------------------------------------------------------------------
// Element geometry.

/// Gradients of the three barycentric coordinates of triangle t.
inline std::array<Vec2, 3> basis_gradients(const Mesh& m, int t) {
  const auto& tri = m.triangle(t);
  const double a2 = 2.0 * m.signed_area(t);
  std::array<Vec2, 3> g;
  for (int i = 0; i < 3; ++i) {
    const Vec2 pj = m.vertex(tri[(i + 1) % 3]);
    const Vec2 pk = m.vertex(tri[(i + 2) % 3]);
    g[static_cast<std::size_t>(i)] = {(pj.y - pk.y) / a2, (pk.x - pj.x) / a2};
  }
  return g;
}

// ---------------------------------------------------------------------------
// Assembly. All integrals are exact for the P1/P0 pair.

inline SparseSymMatrix assemble_stiffness(const Mesh& m) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(9 * m.num_triangles()));
  for (int e = 0; e < m.num_triangles(); ++e) {
    const auto& tri = m.triangle(e);
    const auto g = basis_gradients(m, e);
    const double area = m.signed_area(e);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        t.push_back({tri[i], tri[j], area * dot(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)])});
  }
  return {m.num_vertices(), std::move(t)};
}

inline SparseSymMatrix assemble_mass(const Mesh& m) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(9 * m.num_triangles()));
  for (int e = 0; e < m.num_triangles(); ++e) {
    const auto& tri = m.triangle(e);
    const double a = m.signed_area(e) / 12.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.push_back({tri[i], tri[j], i == j ? 2.0 * a : a});
  }
  return {m.num_vertices(), std::move(t)};
}

/// ∫_Γ χ_i χ_j ds over the given boundary edges (indices into
/// Mesh::boundary_edges()); full vertex-sized matrix.
inline SparseSymMatrix assemble_boundary_mass(const Mesh& m, std::span<const int> subset) {
  std::vector<Triplet> t;
  t.reserve(4 * subset.size());
  for (int e : subset) {
    if (e < 0 || e >= m.num_boundary_edges()) {
      throw Error(ErrorCode::InvalidArgument, "boundary mass subset names a non-boundary edge");
    }
    const auto& be = m.boundary_edge(e);
    const double l = m.boundary_edge_length(e) / 6.0;
    t.push_back({be.a, be.a, 2.0 * l});
    t.push_back({be.a, be.b, l});
    t.push_back({be.b, be.a, l});
    t.push_back({be.b, be.b, 2.0 * l});
  }
  return {m.num_vertices(), std::move(t)};
}

inline SparseSymMatrix assemble_boundary_mass(const Mesh& m) {
  return assemble_boundary_mass(m, all_boundary_edges(m));
}

// ---------------------------------------------------------------------------
// Differential operators.

inline VectorField gradient(const ScalarField& f) {
  const Mesh& m = *f.mesh;
  std::vector<Vec2> out(static_cast<std::size_t>(m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    const auto g = basis_gradients(m, t);
    Vec2 s;
    for (int i = 0; i < 3; ++i) s += f[tri[i]] * g[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(t)] = s;
  }
  return {m, std::move(out)};
}

/// ∇⊥f = (D₂f, −D₁f).
inline VectorField perp_gradient(const ScalarField& f) {
  VectorField g = gradient(f);
  for (auto& v : g.values) v = perp(v);
  return g;
}

inline double l2_inner(const VectorField& v, const VectorField& w) {
  detail::same_mesh(v.mesh, w.mesh);
  double s = 0.0;
  for (int t = 0; t < v.mesh->num_triangles(); ++t) s += v.mesh->signed_area(t) * dot(v[t], w[t]);
  return s;
}
inline double l2_norm(const VectorField& v) { return std::sqrt(l2_inner(v, v)); }

inline double l2_inner(const ScalarField& f, const ScalarField& g, const SparseSymMatrix& M) {
  detail::same_mesh(f.mesh, g.mesh);
  return vdot(f.coeffs, M * g.coeffs);
}
inline double l2_norm(const ScalarField& f, const SparseSymMatrix& M) {
  return std::sqrt(std::max(0.0, M.quadratic_form(f.coeffs)));
}
inline double l2_norm(const ScalarField& f) { return l2_norm(f, assemble_mass(*f.mesh)); }

/// Energy ‖∇f‖₂.
inline double energy_norm(const ScalarField& f) { return l2_norm(gradient(f)); }

/// Σ_i a_i χ_i evaluated as a full vertex vector for a boundary function
/// (interior values zero).
inline Vector extend_by_zero(const BoundaryFunction& g) {
  const Mesh& m = *g.mesh;
  Vector x(static_cast<std::size_t>(m.num_vertices()), 0.0);
  const auto bv = m.boundary_vertices();
  for (std::size_t i = 0; i < bv.size(); ++i) x[static_cast<std::size_t>(bv[i])] = g.values[i];
  return x;
}

inline BoundaryFunction trace(const ScalarField& f) {
  const Mesh& m = *f.mesh;
  Vector v;
  v.reserve(static_cast<std::size_t>(m.num_boundary_vertices()));
  for (int i : m.boundary_vertices()) v.push_back(f[i]);
  return {m, std::move(v)};
}

inline ScalarField interpolate(const Mesh& m, const std::function<double(Vec2)>& fn) {
  Vector c;
  c.reserve(static_cast<std::size_t>(m.num_vertices()));
  for (const auto& p : m.vertices()) c.push_back(fn(p));
  return {m, std::move(c)};
}

inline VectorField sample_centroids(const Mesh& m, const std::function<Vec2(Vec2)>& fn) {
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); ++t) v.push_back(fn(m.centroid(t)));
  return {m, std::move(v)};
}

/// Boundary function from nodal samples of fn.
inline BoundaryFunction interpolate_boundary(const Mesh& m, const std::function<double(Vec2)>& fn) {
  Vector v;
  for (int i : m.boundary_vertices()) v.push_back(fn(m.vertex(i)));
  return {m, std::move(v)};
}

/// ∫ ∇χ_i · v for every vertex i.
inline Vector load_grad(const VectorField& v) {
  const Mesh& m = *v.mesh;
  Vector b(static_cast<std::size_t>(m.num_vertices()), 0.0);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    const auto g = basis_gradients(m, t);
    const double a = m.signed_area(t);
    for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(tri[i])] += a * dot(g[static_cast<std::size_t>(i)], v[t]);
  }
  return b;
}

/// ∫ ∇⊥χ_i · v for every vertex i.
inline Vector load_perp(const VectorField& v) {
  const Mesh& m = *v.mesh;
  Vector b(static_cast<std::size_t>(m.num_vertices()), 0.0);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    const auto g = basis_gradients(m, t);
    const double a = m.signed_area(t);
    for (int i = 0; i < 3; ++i)
      b[static_cast<std::size_t>(tri[i])] += a * dot(perp(g[static_cast<std::size_t>(i)]), v[t]);
  }
  return b;
}

/// Mass-matrix Riesz representative of a dual vector.
inline ScalarField riesz(const Mesh& m, std::span<const double> dual, double tol = 1e-13) {
  return {m, solve_spd(assemble_mass(m), dual, Constraint::none(), {tol, 0})};
}

/// ρ with ∫ρχ_i = −∫∇χ_i·v for all i: the weak divergence as a P1 function.
inline ScalarField weak_divergence(const VectorField& v) {
  Vector b = load_grad(v);
  for (double& x : b) x = -x;
  return riesz(*v.mesh, b);
}

/// ω with ∫ωχ_i = ∫∇⊥χ_i·v for all i.
inline ScalarField weak_curl(const VectorField& v) { return riesz(*v.mesh, load_perp(v)); }

inline double integral(const ScalarField& f) {
  const Mesh& m = *f.mesh;
  double s = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangle(t);
    s += m.signed_area(t) * (f[tri[0]] + f[tri[1]] + f[tri[2]]) / 3.0;
  }
  return s;
}

/// ∫_Γ g ds over a subset of boundary edges (all edges by default).
inline double boundary_integral(const BoundaryFunction& g, std::span<const int> subset) {
  const Mesh& m = *g.mesh;
  double s = 0.0;
  for (int e : subset) {
    const auto& be = m.boundary_edge(e);
    s += 0.5 * m.boundary_edge_length(e) *
         (g.values[static_cast<std::size_t>(m.boundary_index(be.a))] +
          g.values[static_cast<std::size_t>(m.boundary_index(be.b))]);
  }
  return s;
}
inline double boundary_integral(const BoundaryFunction& g) {
  return boundary_integral(g, all_boundary_edges(*g.mesh));
}

/// ‖g‖_{L²(Γ)} over a subset of boundary edges, exact for P1 traces.
inline double boundary_l2_norm(const BoundaryFunction& g, std::span<const int> subset) {
  const Mesh& m = *g.mesh;
  double s = 0.0;
  for (int e : subset) {
    const auto& be = m.boundary_edge(e);
    const double a = g.values[static_cast<std::size_t>(m.boundary_index(be.a))];
    const double b = g.values[static_cast<std::size_t>(m.boundary_index(be.b))];
    s += m.boundary_edge_length(e) * (a * a + a * b + b * b) / 3.0;
  }
  return std::sqrt(s);
}
inline double boundary_l2_norm(const BoundaryFunction& g) {
  return boundary_l2_norm(g, all_boundary_edges(*g.mesh));
}

/// Boundary mass matrix restricted to boundary vertices (SPD on each loop).
inline SparseSymMatrix boundary_mass_on_trace(const Mesh& m) {
  return assemble_boundary_mass(m).principal(m.boundary_vertices());
}

/// Variational conormal derivative D_ν f.
///
/// Returns the trace-space function g with ∫_∂Ω g ξ ds = ∫∇f·∇ξ − ⟨rho_dual, ξ⟩
/// for every P1 ξ supported on the boundary; when f solves the Galerkin
/// problem with load rho_dual this is the identity for all P1 ξ.
inline BoundaryFunction conormal_flux(const ScalarField& f, std::span<const double> rho_dual,
                                      double tol = 1e-13) {
  const Mesh& m = *f.mesh;
  if (static_cast<int>(rho_dual.size()) != m.num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "dual load length differs from vertex count");
  }
  const Vector kf = assemble_stiffness(m) * f.coeffs;
  Vector r;
  r.reserve(static_cast<std::size_t>(m.num_boundary_vertices()));
  for (int i : m.boundary_vertices()) r.push_back(kf[static_cast<std::size_t>(i)] - rho_dual[static_cast<std::size_t>(i)]);
  return {m, solve_spd(boundary_mass_on_trace(m), r, Constraint::none(), {tol, 0})};
}

/// Variational normal trace of v given its divergence ρ: the boundary q with
/// ∫_∂Ω q ξ ds = ∫ρξ + ∫v·∇ξ for boundary hat functions ξ.
inline BoundaryFunction normal_trace(const VectorField& v, const ScalarField& rho, double tol = 1e-13) {
  const Mesh& m = *v.mesh;
  detail::same_mesh(v.mesh, rho.mesh);
  const Vector r = assemble_mass(m) * rho.coeffs;
  const Vector lg = load_grad(v);
  Vector b;
  for (int i : m.boundary_vertices()) b.push_back(r[static_cast<std::size_t>(i)] + lg[static_cast<std::size_t>(i)]);
  return {m, solve_spd(boundary_mass_on_trace(m), b, Constraint::none(), {tol, 0})};
}

/// Variational tangential trace of v given its curl ω: the boundary q with
/// ∫_∂Ω q ξ ds = ∫ωξ − ∫v·∇⊥ξ for boundary hat functions ξ.
inline BoundaryFunction tangential_trace(const VectorField& v, const ScalarField& omega, double tol = 1e-13) {
  const Mesh& m = *v.mesh;
  detail::same_mesh(v.mesh, omega.mesh);
  const Vector r = assemble_mass(m) * omega.coeffs;
  const Vector lp = load_perp(v);
  Vector b;
  for (int i : m.boundary_vertices()) b.push_back(r[static_cast<std::size_t>(i)] - lp[static_cast<std::size_t>(i)]);
  return {m, solve_spd(boundary_mass_on_trace(m), b, Constraint::none(), {tol, 0})};
}

/// L²(∂Ω) projection onto boundary P1 of an edgewise function
/// fn(boundary_edge, point), integrated with 3-point Gauss per edge.
inline BoundaryFunction project_boundary(const Mesh& m, const std::function<double(int, Vec2)>& fn,
                                         double tol = 1e-13) {
  static constexpr std::array<double, 3> xg{0.1127016653792583, 0.5, 0.8872983346207417};
  static constexpr std::array<double, 3> wg{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  Vector b(static_cast<std::size_t>(m.num_boundary_vertices()), 0.0);
  for (int e = 0; e < m.num_boundary_edges(); ++e) {
    const auto& be = m.boundary_edge(e);
    const Vec2 pa = m.vertex(be.a), pb = m.vertex(be.b);
    const double len = m.boundary_edge_length(e);
    for (int q = 0; q < 3; ++q) {
      const double s = xg[static_cast<std::size_t>(q)];
      const double val = fn(e, (1.0 - s) * pa + s * pb) * wg[static_cast<std::size_t>(q)] * len;
      b[static_cast<std::size_t>(m.boundary_index(be.a))] += (1.0 - s) * val;
      b[static_cast<std::size_t>(m.boundary_index(be.b))] += s * val;
    }
  }
  return {m, solve_spd(boundary_mass_on_trace(m), b, Constraint::none(), {tol, 0})};
}

/// L² projection of per-triangle values onto P1.
inline ScalarField lift_p0(const Mesh& m, std::span<const double> per_triangle) {
  if (static_cast<int>(per_triangle.size()) != m.num_triangles()) {
    throw Error(ErrorCode::InvalidArgument, "P0 data length differs from triangle count");
  }
  Vector b(static_cast<std::size_t>(m.num_vertices()), 0.0);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double c = m.signed_area(t) * per_triangle[static_cast<std::size_t>(t)] / 3.0;
    for (int v : m.triangle(t)) b[static_cast<std::size_t>(v)] += c;
  }
  return riesz(m, b);
}

/// Vertices that are not on the boundary.
inline std::vector<int> interior_vertices(const Mesh& m) {
  std::vector<int> out;
  for (int i = 0; i < m.num_vertices(); ++i)
    if (!m.is_boundary_vertex(i)) out.push_back(i);
  return out;
}

}  // namespace divcurl
