#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>

#include "divcurl/decompose.hpp"
#include "divcurl/fem.hpp"
#include "divcurl/linsolve.hpp"
#include "divcurl/mesh.hpp"
#include "divcurl/spectra.hpp"

namespace divcurl {

/// Data of a planar div-curl system: div v = ρ, curl v = ω in Ω plus
/// boundary data. η_ν is v·ν and η_τ is v·τ; for the mixed problem each
/// is read only on its own partition piece.
struct DivCurlData {
  ScalarField rho;
  ScalarField omega;
  std::optional<BoundaryFunction> eta_nu;
  std::optional<BoundaryFunction> eta_tau;
  std::optional<BoundaryPartition> partition;
};

/// One energy inequality lhs ≤ rhs, with rhs the sum of the named terms.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  std::map<std::string, double> terms;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = true;
  /// Auxiliary quantities (alternative readings, corollary constants).
  std::map<std::string, double> extra;
};

inline BoundReport make_bound(std::string name, double lhs, std::map<std::string, double> terms) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.terms = std::move(terms);
  for (const auto& [k, v] : r.terms) r.rhs += v;
  r.slack = r.rhs - r.lhs;
  r.satisfied = r.slack >= -1e-9 * r.rhs;
  return r;
}

/// Mesh constants entering the bounds: λ₁ʰ, δ₁ʰ and C₀ʰ.
struct BoundConstants {
  double lambda1 = 0.0;
  double delta1 = 0.0;
  double c0 = 0.0;
};

struct C0Estimate {
  double value = 0.0;
  int iterations = 0;
};

/// Operator norm of ρ ↦ D_ν(G_D ρ) from L²(Ω) to L²(∂Ω).
///
/// With R ρ = K_BI K_II⁻¹ (Mρ)_I − (Mρ)_B the flux is B_BB⁻¹Rρ, so C₀² is the
/// largest eigenvalue of Rᵀ B_BB⁻¹ R against M. Power iteration from a
/// seeded start; the Rayleigh quotient is monotone from below.
inline C0Estimate estimate_C0(const Mesh& m, double tol = 1e-12, int max_iterations = 20000,
                              std::uint64_t seed = 2024) {
  using SpMat = Eigen::SparseMatrix<double>;
  const auto K = assemble_stiffness(m);
  const auto M = assemble_mass(m);
  const auto interior = interior_vertices(m);
  const std::vector<int> bv(m.boundary_vertices().begin(), m.boundary_vertices().end());
  if (interior.empty()) throw Error(ErrorCode::InvalidArgument, "mesh has no interior vertices");
  const SpMat Me = M.to_eigen();
  const SpMat Kii = K.principal(interior).to_eigen();
  const SpMat Bbb = boundary_mass_on_trace(m).to_eigen();
  // K_BI as an explicit rectangular block.
  std::vector<int> pos(static_cast<std::size_t>(m.num_vertices()), -1);
  for (std::size_t i = 0; i < interior.size(); ++i) pos[static_cast<std::size_t>(interior[i])] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> tk;
  for (std::size_t r = 0; r < bv.size(); ++r) {
    const auto c = K.row_cols(bv[r]);
    const auto v = K.row_values(bv[r]);
    for (std::size_t q = 0; q < c.size(); ++q)
      if (pos[static_cast<std::size_t>(c[q])] >= 0) tk.emplace_back(static_cast<int>(r), pos[static_cast<std::size_t>(c[q])], v[q]);
  }
  SpMat Kbi(static_cast<Eigen::Index>(bv.size()), static_cast<Eigen::Index>(interior.size()));
  Kbi.setFromTriplets(tk.begin(), tk.end());

  Eigen::SimplicialLDLT<SpMat> kii(Kii), mm(Me), bbb(Bbb);
  if (kii.info() != Eigen::Success || mm.info() != Eigen::Success || bbb.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "factorization failed while estimating C0", "flux_operator_norm");
  }
  auto apply_R = [&](const Eigen::VectorXd& rho) {
    const Eigen::VectorXd mr = Me * rho;
    Eigen::VectorXd mi(static_cast<Eigen::Index>(interior.size())), mb(static_cast<Eigen::Index>(bv.size()));
    for (std::size_t i = 0; i < interior.size(); ++i) mi[static_cast<Eigen::Index>(i)] = mr[interior[i]];
    for (std::size_t i = 0; i < bv.size(); ++i) mb[static_cast<Eigen::Index>(i)] = mr[bv[i]];
    return Eigen::VectorXd(Kbi * kii.solve(mi) - mb);
  };
  auto apply_Rt = [&](const Eigen::VectorXd& y) {
    // Rᵀy = M (E_I K_II⁻¹ K_IB y − E_B y).
    const Eigen::VectorXd zi = kii.solve(Kbi.transpose() * y);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(m.num_vertices());
    for (std::size_t i = 0; i < interior.size(); ++i) full[interior[i]] = zi[static_cast<Eigen::Index>(i)];
    for (std::size_t i = 0; i < bv.size(); ++i) full[bv[i]] -= y[static_cast<Eigen::Index>(i)];
    return Eigen::VectorXd(Me * full);
  };

  std::mt19937_64 gen(seed);
  Eigen::VectorXd x(m.num_vertices());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = detail::uniform01(gen) - 0.5;
  x /= std::sqrt(x.dot(Me * x));
  double lambda = 0.0;
  int it = 0;
  for (; it < max_iterations; ++it) {
    const Eigen::VectorXd rx = apply_R(x);
    const Eigen::VectorXd g = bbb.solve(rx);
    const double q = rx.dot(g);  // xᵀRᵀB⁻¹Rx with xᵀMx = 1
    Eigen::VectorXd y = mm.solve(apply_Rt(g));
    const double yn = std::sqrt(y.dot(Me * y));
    if (!(yn > 0.0)) break;
    x = y / yn;
    if (it > 0 && std::abs(q - lambda) <= tol * q) {
      lambda = q;
      ++it;
      return {std::sqrt(lambda), it};
    }
    lambda = q;
  }
  throw Error(ErrorCode::NonConvergence,
              "power iteration for C0 did not settle in " + std::to_string(it) + " steps",
              "flux_operator_norm", std::sqrt(lambda));
}

inline BoundConstants discrete_constants(const Mesh& m, const EigenOptions& eig = {1e-10}) {
  BoundConstants c;
  c.lambda1 = dirichlet_lambda1(m, eig);
  c.delta1 = steklov_basis(m, 2, eig).delta(1);
  c.c0 = estimate_C0(m).value;
  return c;
}

// ---------------------------------------------------------------------------
// Compatibility.

namespace detail {
// Absolute part of the compatibility scale: with tolerance 1e-9 it accepts residuals up to 1e-15,
// the roundoff left when data are shifted to exact compatibility.
inline constexpr double compat_floor = 1e-6;

inline double abs_integral(const ScalarField& f) {
  const Mesh& m = *f.mesh;
  const Vector w = assemble_mass(m) * Vector(static_cast<std::size_t>(m.num_vertices()), 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::abs(f.coeffs[i]);
  return s;
}
inline double abs_boundary_integral(const BoundaryFunction& g) {
  BoundaryFunction a = g;
  for (double& x : a.values) x = std::abs(x);
  return boundary_integral(a);
}
inline double compat_scale(const ScalarField& f, const BoundaryFunction& g) {
  return abs_integral(f) + abs_boundary_integral(g) + compat_floor;
}
}  // namespace detail

/// ∫ρ dx − ∫η_ν ds.
inline double check_compat_normal(const ScalarField& rho, const BoundaryFunction& eta_nu) {
  detail::same_mesh(rho.mesh, eta_nu.mesh);
  return integral(rho) - boundary_integral(eta_nu);
}

/// ∫ω dx − ∫η_τ ds.
inline double check_compat_tangential(const ScalarField& omega, const BoundaryFunction& eta_tau) {
  detail::same_mesh(omega.mesh, eta_tau.mesh);
  return integral(omega) - boundary_integral(eta_tau);
}

inline void require_compat(double residual, double scale, double tol, const char* condition,
                           const std::string& identity) {
  if (!(std::abs(residual) <= tol * scale)) {
    throw Error(ErrorCode::IncompatibleData,
                "compatibility " + identity + " violated: residual = " + format_number(residual),
                condition, residual);
  }
}

// ---------------------------------------------------------------------------
// Scalar building blocks.

/// G_D ρ: zero-trace Galerkin solution of K φ = M ρ.
inline ScalarField solve_dirichlet_poisson(const ScalarField& rho, double tol = 1e-12) {
  const Mesh& m = *rho.mesh;
  return {m, solve_spd(assemble_stiffness(m), assemble_mass(m) * rho.coeffs, detail::zero_trace(m), {tol, 0})};
}

/// Both inequalities ‖φ₀‖ ≤ ‖ρ‖/λ₁ and ‖∇φ₀‖ ≤ ‖ρ‖/√λ₁.
inline std::vector<BoundReport> dirichlet_bounds(const ScalarField& rho, const ScalarField& phi0,
                                                 double lambda1) {
  const double rn = l2_norm(rho);
  return {make_bound("dirichlet_potential", l2_norm(phi0), {{"lambda1_term", rn / lambda1}}),
          make_bound("dirichlet_gradient", energy_norm(phi0), {{"lambda1_term", rn / std::sqrt(lambda1)}})};
}

/// Harmonic decomposition through the sources: ψ₀ = G_D(weak curl v),
/// φ₀ = G_D(weak div v), h the residual. Agrees with harmonic_decompose.
inline HarmonicDecomposition harmonic_decompose_from_sources(const VectorField& v, double tol = 1e-12) {
  ScalarField psi0 = solve_dirichlet_poisson(weak_curl(v), tol);
  ScalarField phi0 = solve_dirichlet_poisson(weak_divergence(v), tol);
  VectorField h = v - perp_gradient(psi0) + gradient(phi0);
  return {std::move(psi0), std::move(phi0), std::move(h)};
}

namespace detail {
/// Mean-zero χ with K χ = B_∂ η after removing the boundary mean of η.
inline ScalarField neumann_deflated(const BoundaryFunction& eta, double tol) {
  const Mesh& m = *eta.mesh;
  BoundaryFunction e = eta;
  const double mean = boundary_integral(e) / m.perimeter();
  for (double& x : e.values) x -= mean;
  const Vector b = assemble_boundary_mass(m) * extend_by_zero(e);
  return {m, solve_spd(assemble_stiffness(m), b, Constraint::mean_zero(volume_weights(m)), {tol, 0})};
}
inline void neumann_compat(const BoundaryFunction& eta, double compat_tol) {
  const double res = boundary_integral(eta);
  require_compat(res, abs_boundary_integral(eta) + compat_floor, compat_tol, "neumann_compatibility",
                 "∫η ds = 0");
}
}  // namespace detail

/// Discrete Neumann problem: harmonic χ, zero mean, D_ν χ = η.
inline ScalarField solve_neumann_fem(const BoundaryFunction& eta, double tol = 1e-12, double compat_tol = 1e-9) {
  detail::neumann_compat(eta, compat_tol);
  return detail::neumann_deflated(eta, tol);
}

/// Truncated Steklov series χ_M = Σ_{j=1..M} (η̂_j/δ_j) s_j, η̂_j = ∫η s_j ds,
/// shifted to zero mean.
inline ScalarField solve_neumann_steklov(const BoundaryFunction& eta, int M, const SteklovBasis& basis,
                                         double compat_tol = 1e-9) {
  detail::neumann_compat(eta, compat_tol);
  if (M < 0) throw Error(ErrorCode::InvalidArgument, "series length must be nonnegative");
  if (basis.size() < M + 1) {
    throw Error(ErrorCode::InsufficientBasis,
                "series with " + std::to_string(M) + " terms needs " + std::to_string(M + 1) +
                    " Steklov pairs, basis has " + std::to_string(basis.size()),
                "steklov_series", basis.size());
  }
  const Mesh& m = *eta.mesh;
  const Vector beta = assemble_boundary_mass(m) * extend_by_zero(eta);
  ScalarField chi = ScalarField::zero(m);
  for (int j = 1; j <= M; ++j) {
    const auto& s = basis.field(j);
    const double c = vdot(s.coeffs, beta) / basis.delta(j);
    axpy(c, s.coeffs, chi.coeffs);
  }
  const double mean = integral(chi) / m.total_area();
  for (double& x : chi.coeffs) x -= mean;
  return chi;
}

/// ‖∇χ‖ ≤ ‖η‖_∂/√δ₁ for the Neumann solution.
inline BoundReport neumann_bound(const BoundaryFunction& eta, const ScalarField& chi, double delta1) {
  return make_bound("neumann_energy", energy_norm(chi),
                    {{"delta1_term", boundary_l2_norm(eta) / std::sqrt(delta1)}});
}

// ---------------------------------------------------------------------------
// Div-curl solvers.

struct BvpOptions {
  double tol = 1e-12;
  double compat_tol = 1e-9;
  /// Compute the bound report (needs the mesh constants).
  bool report = true;
  /// Precomputed constants; computed on demand when null.
  const BoundConstants* constants = nullptr;
  /// Use an M-term Steklov series for the Neumann step instead of the FEM solve.
  int steklov_terms = 0;
  const SteklovBasis* basis = nullptr;
  EigenOptions eig{1e-10};
};

struct DivCurlSolution {
  VectorField v;
  ScalarField phi;
  ScalarField psi;
  ScalarField chi;
  BoundReport report;
  std::vector<BoundReport> sub_reports;
  double compat_residual = 0.0;
};

namespace detail {

inline ScalarField neumann_step(const BoundaryFunction& eta, const BvpOptions& opt) {
  if (opt.steklov_terms <= 0) return neumann_deflated(eta, opt.tol);
  const Mesh& m = *eta.mesh;
  BoundaryFunction e = eta;
  const double mean = boundary_integral(e) / m.perimeter();
  for (double& x : e.values) x -= mean;
  if (opt.basis) return solve_neumann_steklov(e, opt.steklov_terms, *opt.basis, opt.compat_tol);
  const auto basis = steklov_basis(m, opt.steklov_terms + 1, opt.eig);
  return solve_neumann_steklov(e, opt.steklov_terms, basis, opt.compat_tol);
}

inline BoundConstants constants_for(const Mesh& m, const BvpOptions& opt) {
  return opt.constants ? *opt.constants : discrete_constants(m, opt.eig);
}

inline void check_data_mesh(const DivCurlData& d) {
  same_mesh(d.rho.mesh, d.omega.mesh);
  if (d.eta_nu) same_mesh(d.rho.mesh, d.eta_nu->mesh);
  if (d.eta_tau) same_mesh(d.rho.mesh, d.eta_tau->mesh);
}

/// Shared body of the normal and tangential constructions. `source` is ρ
/// (normal) or ω (tangential); `eta` the matching boundary datum.
inline DivCurlSolution flux_problem(const DivCurlData& data, bool normal, const BvpOptions& opt) {
  check_data_mesh(data);
  const Mesh& m = *data.rho.mesh;
  const auto& eta_opt = normal ? data.eta_nu : data.eta_tau;
  if (!eta_opt) {
    throw Error(ErrorCode::InvalidArgument,
                normal ? "normal problem needs η_ν" : "tangential problem needs η_τ", "missing_data");
  }
  const BoundaryFunction& eta = *eta_opt;
  const ScalarField& source = normal ? data.rho : data.omega;
  const double residual = normal ? check_compat_normal(source, eta) : check_compat_tangential(source, eta);
  require_compat(residual, compat_scale(source, eta), opt.compat_tol,
                 normal ? "normal_compatibility" : "tangential_compatibility",
                 normal ? "∫ρ dx = ∫η_ν ds" : "∫ω dx = ∫η_τ ds");

  DivCurlSolution sol;
  sol.compat_residual = residual;
  sol.phi = solve_dirichlet_poisson(data.rho, opt.tol);
  sol.psi = solve_dirichlet_poisson(data.omega, opt.tol);
  const ScalarField& pot = normal ? sol.phi : sol.psi;
  const Vector dual = assemble_mass(m) * source.coeffs;
  const BoundaryFunction g = conormal_flux(pot, dual);
  const BoundaryFunction neumann_data = eta + g;
  sol.chi = neumann_step(neumann_data, opt);
  sol.v = perp_gradient(sol.psi) - gradient(sol.phi) +
          (normal ? gradient(sol.chi) : -perp_gradient(sol.chi));

  if (opt.report) {
    const auto k = constants_for(m, opt);
    const double a = 1.0 / std::sqrt(k.lambda1);
    const double b = 1.0 / std::sqrt(k.delta1);
    const double rn = l2_norm(data.rho), wn = l2_norm(data.omega), en = boundary_l2_norm(eta);
    const double sn = normal ? rn : wn;
    sol.report = make_bound(normal ? "normal_energy" : "tangential_energy", l2_norm(sol.v),
                            {{"lambda1_term", a * (rn + wn)}, {"delta1_term", b * en}, {"C0_term", b * k.c0 * sn}});
    sol.report.extra["lambda1"] = k.lambda1;
    sol.report.extra["delta1"] = k.delta1;
    sol.report.extra["C0"] = k.c0;
    // Cauchy–Schwarz form ‖v‖² ≤ C (‖div v‖² + ‖curl v‖² + ‖η‖²_∂).
    const double ca = normal ? (a + b * k.c0) : a;
    const double cw = normal ? a : (a + b * k.c0);
    const double corollary_c = ca * ca + cw * cw + b * b;
    sol.report.extra["corollary_C"] = corollary_c;
    sol.report.extra["corollary_rhs"] = corollary_c * (rn * rn + wn * wn + en * en);
    sol.report.extra["corollary_lhs"] = sol.report.lhs * sol.report.lhs;
    if (!normal) {
      // Literal reading with ‖η_ν‖ in the boundary term (absent η_ν counts as 0).
      const double enu = data.eta_nu ? boundary_l2_norm(*data.eta_nu) : 0.0;
      const double rhs_lit = a * (rn + wn) + b * (enu + k.c0 * wn);
      sol.report.extra["rhs_literal"] = rhs_lit;
      sol.report.extra["satisfied_literal"] = (rhs_lit - sol.report.lhs >= -1e-9 * rhs_lit) ? 1.0 : 0.0;
    }
    auto d1 = dirichlet_bounds(data.rho, sol.phi, k.lambda1);
    auto d2 = dirichlet_bounds(data.omega, sol.psi, k.lambda1);
    for (auto& r : d1) r.name = "phi0_" + r.name;
    for (auto& r : d2) r.name = "psi0_" + r.name;
    sol.sub_reports = {d1[0], d1[1], d2[0], d2[1], neumann_bound(neumann_data, sol.chi, k.delta1)};
    sol.sub_reports.push_back(make_bound("flux_operator_norm", boundary_l2_norm(g), {{"C0_term", k.c0 * sn}}));
  }
  return sol;
}

}  // namespace detail

/// Normal problem: v·ν = η_ν. v = ∇⊥ψ₀ − ∇φ₀ + ∇χ, with χ the Neumann
/// solution for η_ν + D_νφ₀.
inline DivCurlSolution solve_normal(const DivCurlData& data, const BvpOptions& opt = {}) {
  return detail::flux_problem(data, true, opt);
}

/// Tangential problem: v·τ = η_τ. v = ∇⊥ψ₀ − ∇φ₀ − ∇⊥χ, with χ the Neumann
/// solution for η_τ + D_νψ₀.
inline DivCurlSolution solve_tangential(const DivCurlData& data, const BvpOptions& opt = {}) {
  return detail::flux_problem(data, false, opt);
}

struct MixedConstants {
  double m2_tau = 0.0;  // M₂(Γ_τ), controls φ̃
  double m2_nu = 0.0;   // M₂(Γ_ν), controls ψ̃
};

inline MixedConstants mixed_constants(const Mesh& m, const BoundaryPartition& p, const EigenOptions& eig = {1e-10}) {
  return {m2_gamma(m, p.gamma_tau, eig), m2_gamma(m, p.gamma_nu, eig)};
}

/// Mixed problem: v·ν = η_ν on Γ_ν and v·τ = η_τ on Γ_τ, no compatibility.
///
/// φ̃ vanishes on the closure of Γ_τ and solves K φ = M ρ − B_{Γν} η_ν;
/// ψ̃ vanishes on the closure of Γ_ν and solves K ψ = M ω − B_{Γτ} η_τ;
/// v = ∇⊥ψ̃ − ∇φ̃, and the two parts are exactly L²-orthogonal.
inline DivCurlSolution solve_mixed(const DivCurlData& data, const BvpOptions& opt = {},
                                   const MixedConstants* constants = nullptr) {
  detail::check_data_mesh(data);
  const Mesh& m = *data.rho.mesh;
  if (!data.partition) throw Error(ErrorCode::InvalidArgument, "mixed problem needs a boundary partition", "missing_data");
  const auto& p = *data.partition;
  validate_partition(m, p);
  if (p.gamma_nu.empty() || p.gamma_tau.empty()) {
    throw Error(ErrorCode::EmptyPartitionPiece,
                std::string("boundary partition piece ") + (p.gamma_nu.empty() ? "Γ_ν" : "Γ_τ") + " is empty",
                "partition");
  }
  const BoundaryFunction eta_nu = data.eta_nu ? *data.eta_nu : BoundaryFunction::zero(m);
  const BoundaryFunction eta_tau = data.eta_tau ? *data.eta_tau : BoundaryFunction::zero(m);
  const auto K = assemble_stiffness(m);
  const auto M = assemble_mass(m);

  auto solve_piece = [&](const ScalarField& src, const BoundaryFunction& eta, const std::vector<int>& natural,
                         const std::vector<int>& essential) {
    Vector b = M * src.coeffs;
    const Vector be = assemble_boundary_mass(m, natural) * extend_by_zero(eta);
    axpy(-1.0, be, b);
    return ScalarField{m, solve_spd(K, b, Constraint::dirichlet(edge_vertices(m, essential)), {opt.tol, 0})};
  };

  DivCurlSolution sol;
  sol.phi = solve_piece(data.rho, eta_nu, p.gamma_nu, p.gamma_tau);
  sol.psi = solve_piece(data.omega, eta_tau, p.gamma_tau, p.gamma_nu);
  sol.chi = ScalarField::zero(m);
  sol.v = perp_gradient(sol.psi) - gradient(sol.phi);

  if (opt.report) {
    const MixedConstants k = constants ? *constants : mixed_constants(m, p, opt.eig);
    const double rn = l2_norm(data.rho), wn = l2_norm(data.omega);
    const double en = boundary_l2_norm(eta_nu, p.gamma_nu), et = boundary_l2_norm(eta_tau, p.gamma_tau);
    const double gphi = energy_norm(sol.phi), gpsi = energy_norm(sol.psi);
    const double t_phi = k.m2_tau * (rn * rn + en * en);
    const double t_psi = k.m2_nu * (wn * wn + et * et);
    // Squared-norm form on both sides.
    sol.report = make_bound("mixed_energy_squared", l2_norm(sol.v) * l2_norm(sol.v),
                            {{"m2_tau_term", t_phi}, {"m2_nu_term", t_psi}});
    sol.report.extra["M2_tau"] = k.m2_tau;
    sol.report.extra["M2_nu"] = k.m2_nu;
    sol.report.extra["pythagoras_defect"] = sol.report.lhs - (gphi * gphi + gpsi * gpsi);
    sol.sub_reports = {make_bound("mixed_phi_energy_squared", gphi * gphi, {{"m2_tau_term", t_phi}}),
                       make_bound("mixed_psi_energy_squared", gpsi * gpsi, {{"m2_nu_term", t_psi}})};
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Least energy on multiply connected domains.

/// Centroid samples of (−y, x)/(x² + y²) about `center`.
inline VectorField circulation_field(const Mesh& m, Vec2 center = {0.0, 0.0}) {
  return sample_centroids(m, [&](Vec2 p) {
    const Vec2 d = p - center;
    const double r2 = dot(d, d);
    return Vec2{-d.y / r2, d.x / r2};
  });
}

struct LeastEnergyReport {
  std::vector<double> cosines;
  /// ‖v + t b‖² − ‖v‖² for t ∈ {−1, −0.5, 0.5, 1}, per basis field.
  std::vector<std::vector<double>> energy_increase;
  bool increases = true;
  double max_abs_cosine = 0.0;
};

inline LeastEnergyReport least_energy_check(const VectorField& v, const std::vector<VectorField>& basis) {
  LeastEnergyReport rep;
  const double vv = l2_inner(v, v);
  for (const auto& b : basis) {
    const double bb = l2_inner(b, b);
    const double vb = l2_inner(v, b);
    const double c = (vv > 0.0 && bb > 0.0) ? vb / std::sqrt(vv * bb) : 0.0;
    rep.cosines.push_back(c);
    rep.max_abs_cosine = std::max(rep.max_abs_cosine, std::abs(c));
    std::vector<double> inc;
    for (double t : {-1.0, -0.5, 0.5, 1.0}) {
      const double d = l2_inner(v + t * b, v + t * b) - vv;
      inc.push_back(d);
      if (!(d > 0.0)) rep.increases = false;
    }
    rep.energy_increase.push_back(std::move(inc));
  }
  return rep;
}

}  // namespace divcurl
