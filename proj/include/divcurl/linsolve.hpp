#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "divcurl/error.hpp"
#include "divcurl/sparse.hpp"

namespace divcurl {

/// Subspace on which a variational problem is posed.
///
/// DirichletZero pins `nodes` to zero. MeanZero and BoundaryMeanZero remove
/// the constants: the right-hand side must annihilate them and the solution
/// satisfies weightsᵀx = 0 (pass M·1 for the volume mean, B_∂·1 for the
/// boundary mean; an empty weight vector means the plain coefficient mean).
struct Constraint {
  enum class Kind { None, DirichletZero, MeanZero, BoundaryMeanZero };
  Kind kind = Kind::None;
  std::vector<int> nodes;
  Vector weights;

  static Constraint none() { return {}; }
  static Constraint dirichlet(std::vector<int> nodes) {
    return {Kind::DirichletZero, std::move(nodes), {}};
  }
  static Constraint mean_zero(Vector weights = {}) { return {Kind::MeanZero, {}, std::move(weights)}; }
  static Constraint boundary_mean_zero(Vector weights) {
    return {Kind::BoundaryMeanZero, {}, std::move(weights)};
  }
  bool removes_constants() const { return kind == Kind::MeanZero || kind == Kind::BoundaryMeanZero; }
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 0;  // 0 means 10·n
};

struct SolveInfo {
  int iterations = 0;
  double relative_residual = 0.0;
};

namespace detail {

inline std::vector<char> dirichlet_mask(int n, const Constraint& c) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  if (c.kind == Constraint::Kind::DirichletZero) {
    for (int i : c.nodes) {
      if (i < 0 || i >= n) throw Error(ErrorCode::InvalidArgument, "Dirichlet node out of range");
      mask[static_cast<std::size_t>(i)] = 1;
    }
  }
  return mask;
}

/// x ← x − 1·(wᵀx)/(wᵀ1).
inline void remove_weighted_mean(Vector& x, const Vector& w) {
  double num = 0.0, den = 0.0;
  if (w.empty()) {
    for (double v : x) num += v;
    den = static_cast<double>(x.size());
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      num += w[i] * x[i];
      den += w[i];
    }
  }
  const double s = num / den;
  for (double& v : x) v -= s;
}

inline void remove_plain_mean(Vector& x) { remove_weighted_mean(x, {}); }

}  // namespace detail

/// Jacobi-preconditioned conjugate gradients for A x = b on the subspace
/// selected by `c`.
///
/// Dirichlet rows and columns are eliminated (the corresponding entries of b
/// are ignored and of x are exactly zero). For the mean constraints A is
/// expected to be singular with the constants as kernel; b must be
/// orthogonal to them up to `tol`, is then deflated, and the result is
/// shifted so that weightsᵀx = 0 holds exactly up to rounding.
inline Vector solve_spd(const SparseSymMatrix& A, std::span<const double> b_in, const Constraint& c,
                        const SolveOptions& opt = {}, SolveInfo* info = nullptr) {
  const int n = A.size();
  if (static_cast<int>(b_in.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "right-hand side length differs from matrix dimension");
  }
  if (!(opt.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver tolerance must be positive");
  if (c.removes_constants() && !c.weights.empty() && static_cast<int>(c.weights.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "constraint weight length differs from matrix dimension");
  }
  for (double v : b_in) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "right-hand side is not finite");
  }
  const auto mask = detail::dirichlet_mask(n, c);
  Vector b(b_in.begin(), b_in.end());
  for (int i = 0; i < n; ++i)
    if (mask[static_cast<std::size_t>(i)]) b[static_cast<std::size_t>(i)] = 0.0;

  if (c.removes_constants()) {
    double s = 0.0;
    for (double v : b) s += v;
    const double bn = vnorm(b);
    // Roundoff floor: relative to b, and to the matrix scale for right-hand sides that are pure noise.
    double amax = 0.0;
    for (int i = 0; i < n; ++i) amax = std::max(amax, std::abs(A(i, i)));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(double(n)) * (bn + amax);
    const double comp = std::abs(s) / std::sqrt(double(n));
    if (comp > opt.tol * bn + floor) {
      throw Error(ErrorCode::IncompatibleRhs,
                  "right-hand side has a constant component " + format_number(comp) +
                      " on a singular system",
                  "constant_kernel_compatibility", comp);
    }
    detail::remove_plain_mean(b);
  }

  Vector x(static_cast<std::size_t>(n), 0.0);
  const double bnorm = vnorm(b);
  if (bnorm == 0.0) {
    if (info) *info = {0, 0.0};
    return x;
  }

  Vector dinv = A.diagonal();
  for (int i = 0; i < n; ++i) {
    const double d = dinv[static_cast<std::size_t>(i)];
    dinv[static_cast<std::size_t>(i)] = (mask[static_cast<std::size_t>(i)] || !(d > 0.0)) ? 0.0 : 1.0 / d;
  }
  auto apply = [&](const Vector& p, Vector& q) {
    A.multiply(p, q);
    for (int i = 0; i < n; ++i)
      if (mask[static_cast<std::size_t>(i)]) q[static_cast<std::size_t>(i)] = 0.0;
  };

  Vector r = b, z(r.size()), p(r.size()), q(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = dinv[i] * r[i];
  p = z;
  double rz = vdot(r, z);
  const int max_it = opt.max_iterations > 0 ? opt.max_iterations : std::max(10 * n, 50);
  double rel = 1.0;
  int it = 0;
  for (; it < max_it; ++it) {
    apply(p, q);
    const double pq = vdot(p, q);
    if (!(pq > 0.0)) break;
    const double alpha = rz / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    if (c.removes_constants() && (it % 50) == 49) detail::remove_plain_mean(r);
    rel = vnorm(r) / bnorm;
    if (rel <= opt.tol) {
      ++it;
      break;
    }
    for (std::size_t i = 0; i < r.size(); ++i) z[i] = dinv[i] * r[i];
    const double rz_new = vdot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  // Confirm with the true residual; the recursive one drifts.
  {
    Vector ax(x.size());
    apply(x, ax);
    for (std::size_t i = 0; i < ax.size(); ++i) ax[i] = b[i] - ax[i];
    if (c.removes_constants()) detail::remove_plain_mean(ax);
    rel = vnorm(ax) / bnorm;
  }
  if (info) *info = {it, rel};
  if (!(rel <= opt.tol * 10.0)) {
    throw Error(ErrorCode::NonConvergence,
                "conjugate gradients stopped after " + std::to_string(it) +
                    " iterations with relative residual " + format_number(rel),
                "linear_solve", rel);
  }
  if (c.removes_constants()) detail::remove_weighted_mean(x, c.weights);
  for (int i = 0; i < n; ++i)
    if (mask[static_cast<std::size_t>(i)]) x[static_cast<std::size_t>(i)] = 0.0;
  return x;
}

// ---------------------------------------------------------------------------
// Generalized symmetric eigenproblems.

struct EigenPair {
  double value = 0.0;
  Vector vector;
};

struct EigenOptions {
  double tol = 1e-8;
  /// Shift σ of the inverted operator (A + σB)⁻¹B. NaN selects 0 for
  /// Dirichlet-constrained problems and 1 otherwise.
  double shift = std::numeric_limits<double>::quiet_NaN();
  int block = 0;  // 0 selects max(2k, k + 8)
  int max_iterations = 2000;
  std::uint64_t seed = 12345;
};

namespace detail {

inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Sparse Cholesky of a principal submatrix, kept together with the index map.
class RestrictedFactor {
 public:
  RestrictedFactor(const SparseSymMatrix& C, std::vector<int> free) : free_(std::move(free)) {
    const auto sub = C.principal(free_);
    matrix_ = sub.to_eigen();
    ldlt_.compute(matrix_);
    if (ldlt_.info() != Eigen::Success) {
      throw Error(ErrorCode::NonConvergence, "sparse factorization failed (operator not definite)",
                  "factorization");
    }
  }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return ldlt_.solve(rhs); }
  const std::vector<int>& free() const { return free_; }
  int size() const { return static_cast<int>(free_.size()); }

 private:
  std::vector<int> free_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

}  // namespace detail

/// k smallest eigenpairs of A x = λ B x on the subspace selected by `c`.
///
/// Shift-inverted subspace iteration: the block Y ← (A + σB)⁻¹ B X is
/// B-orthonormalized and Rayleigh-Ritz projected every sweep. Only the
/// B-nondegenerate part of the space is seen, so singular B (boundary mass)
/// is fine. Eigenvectors come back B-orthonormal with their largest-magnitude
/// coefficient positive; the start block is drawn from `seed`.
inline std::vector<EigenPair> smallest_eigs(const SparseSymMatrix& A, const SparseSymMatrix& B, int k,
                                            const Constraint& c, const EigenOptions& opt = {}) {
  const int n = A.size();
  if (B.size() != n) throw Error(ErrorCode::InvalidArgument, "A and B differ in size");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "eigenpair count must be positive");
  const auto mask = detail::dirichlet_mask(n, c);
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (!mask[static_cast<std::size_t>(i)]) free.push_back(i);
  const int nf = static_cast<int>(free.size());

  const auto Bf = B.principal(free);
  const auto Af = A.principal(free);
  int brank = 0;
  for (double d : Bf.diagonal())
    if (d > 0.0) ++brank;
  if (c.removes_constants()) --brank;
  if (brank < k) {
    throw Error(ErrorCode::DegenerateB,
                "requested " + std::to_string(k) + " eigenpairs but the B-positive subspace has dimension " +
                    std::to_string(std::max(brank, 0)),
                "b_rank", brank);
  }
  const int p = std::min(opt.block > 0 ? std::max(opt.block, k) : std::max(2 * k, k + 8), brank);

  double sigma = opt.shift;
  if (std::isnan(sigma)) sigma = c.kind == Constraint::Kind::DirichletZero ? 0.0 : 1.0;
  const auto C = Af.plus(Bf, sigma);
  std::vector<int> all(static_cast<std::size_t>(nf));
  for (int i = 0; i < nf; ++i) all[static_cast<std::size_t>(i)] = i;
  detail::RestrictedFactor factor(C, all);

  const Eigen::SparseMatrix<double> Ae = Af.to_eigen();
  const Eigen::SparseMatrix<double> Be = Bf.to_eigen();

  // Constraint direction for the mean constraints: remove span{1} in the
  // weighted sense, x ← x − 1 (wᵀx)/(wᵀ1).
  Eigen::VectorXd w;
  if (c.removes_constants()) {
    if (!c.weights.empty()) {
      if (static_cast<int>(c.weights.size()) != n) {
        throw Error(ErrorCode::InvalidArgument, "constraint weight length differs from matrix dimension");
      }
      w.resize(nf);
      for (int i = 0; i < nf; ++i) w[i] = c.weights[static_cast<std::size_t>(free[static_cast<std::size_t>(i)])];
    } else {
      w = Be * Eigen::VectorXd::Ones(nf);
    }
  }
  auto constrain = [&](Eigen::MatrixXd& Y) {
    if (w.size() == 0) return;
    const double den = w.sum();
    for (int j = 0; j < Y.cols(); ++j) Y.col(j).array() -= w.dot(Y.col(j)) / den;
  };

  std::mt19937_64 gen(opt.seed);
  Eigen::MatrixXd X(nf, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < nf; ++i) X(i, j) = detail::uniform01(gen) - 0.5;
  constrain(X);

  Eigen::VectorXd theta;
  Eigen::MatrixXd V;
  const double a_scale = [&] {
    double s = 0.0;
    for (double d : Af.diagonal()) s = std::max(s, std::abs(d));
    return s;
  }();

  // Rayleigh–Ritz on span(Y): B-orthonormalize, then solve the projected pencil.
  auto rayleigh_ritz = [&](const Eigen::MatrixXd& Y) -> bool {
    const Eigen::MatrixXd BY = Be * Y;
    Eigen::MatrixXd G = Y.transpose() * BY;
    G = 0.5 * (G + G.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(G);
    const double gmax = gs.eigenvalues().maxCoeff();
    std::vector<int> keep;
    for (int j = 0; j < G.cols(); ++j)
      if (gs.eigenvalues()[j] > 1e-13 * gmax) keep.push_back(j);
    if (static_cast<int>(keep.size()) < k) return false;
    Eigen::MatrixXd T(G.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t q = 0; q < keep.size(); ++q)
      T.col(static_cast<Eigen::Index>(q)) = gs.eigenvectors().col(keep[q]) / std::sqrt(gs.eigenvalues()[keep[q]]);
    const Eigen::MatrixXd Q = Y * T;
    Eigen::MatrixXd H = Q.transpose() * (Ae * Q);
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(H);
    theta = hs.eigenvalues();
    V = Q * hs.eigenvectors();
    return true;
  };

  bool converged = false;
  int it = 0;
  double worst = 0.0;
  for (; it < opt.max_iterations; ++it) {
    const Eigen::MatrixXd BX = Be * X;
    Eigen::MatrixXd Y(nf, X.cols());
    for (int j = 0; j < X.cols(); ++j) Y.col(j) = factor.solve(BX.col(j));
    constrain(Y);
    if (!rayleigh_ritz(Y)) {
      throw Error(ErrorCode::DegenerateB, "iteration subspace lost B-rank", "b_rank");
    }
    X = V;
    worst = 0.0;
    bool ok = true;
    for (int j = 0; j < k; ++j) {
      const Eigen::VectorXd ax = Ae * V.col(j);
      const Eigen::VectorXd bx = Be * V.col(j);
      const double r = (ax - theta[j] * bx).norm();
      const double scale = ax.norm() + std::abs(theta[j]) * bx.norm();
      const double floor = 1e-3 * opt.tol * a_scale * V.col(j).norm();
      const double rel = r / std::max(scale, std::numeric_limits<double>::min());
      worst = std::max(worst, std::min(rel, r / std::max(floor, std::numeric_limits<double>::min())));
      if (r > opt.tol * scale + floor) ok = false;
    }
    if (ok) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NonConvergence,
                "subspace iteration did not converge in " + std::to_string(it) +
                    " sweeps (worst relative residual " + format_number(worst) + ")",
                "eigen_solve", worst);
  }

  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    Vector v(static_cast<std::size_t>(n), 0.0);
    Eigen::Index imax = 0;
    V.col(j).cwiseAbs().maxCoeff(&imax);
    const double sgn = V(imax, j) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < nf; ++i) v[static_cast<std::size_t>(free[static_cast<std::size_t>(i)])] = sgn * V(i, j);
    out.push_back({theta[j], std::move(v)});
  }
  return out;
}

}  // namespace divcurl
