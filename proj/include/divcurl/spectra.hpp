#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "divcurl/fem.hpp"
#include "divcurl/linsolve.hpp"
#include "divcurl/mesh.hpp"

namespace divcurl {

/// Smallest eigenvalue of K x = λ M x with zero boundary values (the
/// Poincaré constant of H¹₀).
inline double dirichlet_lambda1(const Mesh& m, const EigenOptions& opt = {}) {
  const std::vector<int> bv(m.boundary_vertices().begin(), m.boundary_vertices().end());
  return smallest_eigs(assemble_stiffness(m), assemble_mass(m), 1, Constraint::dirichlet(bv), opt)
      .front()
      .value;
}

/// First nonzero eigenvalue of K x = λ M x on mean-zero functions.
inline double neumann_lambda_m(const Mesh& m, const EigenOptions& opt = {}) {
  const auto M = assemble_mass(m);
  Vector ones(static_cast<std::size_t>(m.num_vertices()), 1.0);
  return smallest_eigs(assemble_stiffness(m), M, 1, Constraint::mean_zero(M * ones), opt).front().value;
}

/// Discrete Steklov eigenpairs K s = δ B_∂ s, starting with δ₀ = 0.
/// Eigenfunctions are discretely harmonic and their traces are
/// L²(∂Ω)-orthonormal.
struct SteklovBasis {
  std::vector<double> eigenvalues;
  std::vector<ScalarField> fields;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double delta(int j) const { return eigenvalues[static_cast<std::size_t>(j)]; }
  const ScalarField& field(int j) const { return fields[static_cast<std::size_t>(j)]; }
};

inline SteklovBasis steklov_basis(const Mesh& m, int k, const EigenOptions& opt = {}) {
  if (k > m.num_boundary_vertices()) {
    throw Error(ErrorCode::DegenerateB,
                "requested " + std::to_string(k) + " Steklov pairs but the boundary carries only " +
                    std::to_string(m.num_boundary_vertices()) + " vertices",
                "b_rank", k);
  }
  EigenOptions o = opt;
  if (std::isnan(o.shift)) o.shift = 1.0;
  auto pairs = smallest_eigs(assemble_stiffness(m), assemble_boundary_mass(m), k, Constraint::none(), o);
  SteklovBasis basis;
  for (auto& p : pairs) {
    basis.eigenvalues.push_back(p.value);
    basis.fields.emplace_back(m, std::move(p.vector));
  }
  return basis;
}

/// Least eigenvalue λ₁(Ω,Γ) of K x = λ (M + B_Γ̃) x over functions vanishing
/// on the vertices of Γ, where Γ̃ is the rest of the boundary.
inline double mixed_lambda1(const Mesh& m, std::span<const int> gamma, const EigenOptions& opt = {}) {
  if (gamma.empty()) {
    throw Error(ErrorCode::EmptyGamma, "the Dirichlet arc Γ is empty", "mixed_eigenproblem");
  }
  const auto dir = edge_vertices(m, gamma);
  const auto rest = complement_edges(m, gamma);
  const auto B = assemble_mass(m).plus(assemble_boundary_mass(m, rest));
  return smallest_eigs(assemble_stiffness(m), B, 1, Constraint::dirichlet(dir), opt).front().value;
}

/// q = 2 embedding constant M₂(Γ) = 1/λ₁(Ω,Γ).
inline double m2_gamma(const Mesh& m, std::span<const int> gamma, const EigenOptions& opt = {}) {
  return 1.0 / mixed_lambda1(m, gamma, opt);
}

}  // namespace divcurl
