#pragma once

// Dense reference computations used to check the sparse/iterative code paths.
// They share only the assembled matrices with the library.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "divcurl/divcurl.hpp"

namespace oracle {

using divcurl::Mesh;

inline Eigen::MatrixXd dense(const divcurl::SparseSymMatrix& A) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(A.size(), A.size());
  for (int i = 0; i < A.size(); ++i) {
    const auto c = A.row_cols(i);
    const auto v = A.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) D(i, c[k]) = v[k];
  }
  return D;
}

inline Eigen::MatrixXd sub(const Eigen::MatrixXd& A, const std::vector<int>& r, const std::vector<int>& c) {
  Eigen::MatrixXd S(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A(r[i], c[j]);
  return S;
}

inline std::vector<int> boundary(const Mesh& m) { return {m.boundary_vertices().begin(), m.boundary_vertices().end()}; }

/// Dense generalized eigenvalues of K x = λ M x on interior vertices.
inline Eigen::VectorXd dirichlet_spectrum(const Mesh& m) {
  const auto I = divcurl::interior_vertices(m);
  const auto K = sub(dense(divcurl::assemble_stiffness(m)), I, I);
  const auto M = sub(dense(divcurl::assemble_mass(m)), I, I);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  return es.eigenvalues();
}

/// Steklov spectrum through the dense Dirichlet-to-Neumann map
/// S = K_BB − K_BI K_II⁻¹ K_IB against the boundary mass B_BB.
inline Eigen::VectorXd steklov_spectrum(const Mesh& m) {
  const auto I = divcurl::interior_vertices(m);
  const auto B = boundary(m);
  const auto K = dense(divcurl::assemble_stiffness(m));
  const auto Bm = dense(divcurl::assemble_boundary_mass(m));
  const Eigen::MatrixXd Kii = sub(K, I, I), Kib = sub(K, I, B), Kbb = sub(K, B, B);
  Eigen::MatrixXd S = Kbb - Kib.transpose() * Kii.ldlt().solve(Kib);
  S = 0.5 * (S + S.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, sub(Bm, B, B));
  return es.eigenvalues();
}

/// Largest singular value of ρ ↦ flux(G_D ρ) from (P1, M) to (trace, B_BB),
/// by dense assembly of the flux operator.
inline double flux_operator_norm(const Mesh& m) {
  const auto I = divcurl::interior_vertices(m);
  const auto B = boundary(m);
  const int n = m.num_vertices();
  const auto K = dense(divcurl::assemble_stiffness(m));
  const auto M = dense(divcurl::assemble_mass(m));
  const Eigen::MatrixXd Bbb = sub(dense(divcurl::assemble_boundary_mass(m)), B, B);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  // R = K_BI K_II⁻¹ M_I· − M_B·
  const Eigen::MatrixXd R = sub(K, B, I) * sub(K, I, I).ldlt().solve(sub(M, I, all)) - sub(M, B, all);
  Eigen::MatrixXd A = R.transpose() * Bbb.ldlt().solve(R);
  A = 0.5 * (A + A.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M);
  return std::sqrt(es.eigenvalues().maxCoeff());
}

/// Area of the regular n-gon inscribed in a circle of radius r.
inline double inscribed_polygon_area(int n, double r) {
  return 0.5 * n * r * r * std::sin(2.0 * std::numbers::pi / n);
}

/// ∫∇⊥ψ·∇φ by integration by parts: Σ over boundary edges of
/// (ψ_b − ψ_a)(φ_a + φ_b)/2. Interior edges cancel.
inline double perp_grad_pairing_by_parts(const Mesh& m, const divcurl::ScalarField& psi, const divcurl::ScalarField& phi) {
  double s = 0.0;
  for (const auto& e : m.boundary_edges()) s += (psi[e.b] - psi[e.a]) * 0.5 * (phi[e.a] + phi[e.b]);
  return s;
}

inline divcurl::ScalarField random_scalar(const Mesh& m, std::mt19937_64& g, bool zero_trace = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  divcurl::Vector c(static_cast<std::size_t>(m.num_vertices()));
  for (auto& x : c) x = u(g);
  if (zero_trace)
    for (int i : m.boundary_vertices()) c[static_cast<std::size_t>(i)] = 0.0;
  return {m, std::move(c)};
}

inline divcurl::VectorField random_field(const Mesh& m, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<divcurl::Vec2> v(static_cast<std::size_t>(m.num_triangles()));
  for (auto& x : v) x = {u(g), u(g)};
  return {m, std::move(v)};
}

inline divcurl::BoundaryFunction random_boundary(const Mesh& m, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  divcurl::Vector v(static_cast<std::size_t>(m.num_boundary_vertices()));
  for (auto& x : v) x = u(g);
  return {m, std::move(v)};
}

/// Smooth boundary data Σ_k (a_k cos kθ + b_k sin kθ)/k² about the origin,
/// k = 1..kmax, with random a_k, b_k ∈ [−1, 1]. Mean zero on circles.
inline divcurl::BoundaryFunction smooth_boundary(const Mesh& m, std::mt19937_64& g, int kmax = 30) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(kmax) + 1), b(a.size());
  for (int k = 1; k <= kmax; ++k) {
    a[static_cast<std::size_t>(k)] = u(g);
    b[static_cast<std::size_t>(k)] = u(g);
  }
  return divcurl::interpolate_boundary(m, [&](divcurl::Vec2 p) {
    const double th = std::atan2(p.y, p.x);
    double s = 0.0;
    for (int k = 1; k <= kmax; ++k)
      s += (a[static_cast<std::size_t>(k)] * std::cos(k * th) + b[static_cast<std::size_t>(k)] * std::sin(k * th)) / (k * k);
    return s;
  });
}

inline double max_abs_diff(const divcurl::Vector& a, const divcurl::Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

inline double max_abs(const divcurl::Vector& a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace oracle
