#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "divcurl/spectra.hpp"
#include "oracles.hpp"

using namespace divcurl;

namespace {
constexpr double pi2 = std::numbers::pi * std::numbers::pi;
}

TEST(DirichletLambda1, SquareWithinOnePercent) {
  const Mesh m = generate_square(64);
  const double l1 = dirichlet_lambda1(m, {1e-10});
  EXPECT_LT(std::abs(l1 - 2.0 * pi2) / (2.0 * pi2), 0.01);
  EXPECT_GE(l1, 2.0 * pi2);
}

TEST(DirichletLambda1, ConformingUpperBoundAtAllResolutions) {
  for (int n : {4, 8, 16, 32}) EXPECT_GE(dirichlet_lambda1(generate_square(n)), 2.0 * pi2) << n;
}

TEST(DirichletLambda1, MatchesDenseOracle) {
  for (const Mesh& m : {generate_square(10), generate_disk(4, 20, 1.0), generate_annulus(0.5, 1.0, 3, 20)}) {
    const double dense = oracle::dirichlet_spectrum(m)[0];
    EXPECT_NEAR(dirichlet_lambda1(m, {1e-10}), dense, 1e-8 * dense);
  }
}

TEST(DirichletLambda1, ScalingByTwoDividesByFour) {
  const Mesh m = generate_disk(4, 24, 1.0);
  const Mesh big = m.mapped([](Vec2 p) { return 2.0 * p; });
  EXPECT_NEAR(dirichlet_lambda1(big, {1e-10}), dirichlet_lambda1(m, {1e-10}) / 4.0, 1e-8);
}

TEST(NeumannLambdaM, SquareWithinOnePercent) {
  const double lm = neumann_lambda_m(generate_square(64), {1e-10});
  EXPECT_LT(std::abs(lm - pi2) / pi2, 0.01);
}

TEST(NeumannLambdaM, BelowDirichlet) {
  const Mesh m = generate_annulus(0.5, 1.0, 3, 24);
  EXPECT_LT(neumann_lambda_m(m), dirichlet_lambda1(m));
}

TEST(Steklov, DiskSpectrum) {
  const Mesh m = generate_disk(32, 128, 1.0);
  const auto b = steklov_basis(m, 7, {1e-10});
  const double expect[] = {0, 1, 1, 2, 2, 3, 3};
  EXPECT_NEAR(b.delta(0), 0.0, 1e-8);
  for (int j = 1; j < 7; ++j) EXPECT_LT(std::abs(b.delta(j) - expect[j]) / expect[j], 0.02) << j;
}

TEST(Steklov, MatchesDenseDirichletToNeumannMap) {
  for (const Mesh& m : {generate_square(8), generate_disk(4, 24, 1.0), generate_annulus(0.5, 1.0, 3, 24)}) {
    const auto dense = oracle::steklov_spectrum(m);
    const auto b = steklov_basis(m, 6, {1e-11});
    for (int j = 1; j < 6; ++j) EXPECT_NEAR(b.delta(j), dense[j], 1e-7 * dense[j]) << j;
  }
}

TEST(Steklov, ConstantModeNormalized) {
  for (const Mesh& m : {generate_square(6), generate_annulus(0.5, 1.0, 2, 16)}) {
    const auto b = steklov_basis(m, 3);
    const double c = 1.0 / std::sqrt(m.perimeter());
    for (int i : m.boundary_vertices()) EXPECT_NEAR(b.field(0)[i], c, 1e-7);
  }
}

TEST(Steklov, TracesOrthonormalAndHarmonic) {
  const Mesh m = generate_disk(5, 30, 1.0);
  const auto b = steklov_basis(m, 6, {1e-10});
  const auto B = assemble_boundary_mass(m);
  const auto K = assemble_stiffness(m);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j)
      EXPECT_NEAR(vdot(b.field(i).coeffs, B * b.field(j).coeffs), i == j ? 1.0 : 0.0, 1e-9);
    const auto ks = K * b.field(i).coeffs;
    for (int v : interior_vertices(m)) EXPECT_NEAR(ks[static_cast<std::size_t>(v)], 0.0, 1e-7);
  }
}

TEST(Steklov, FirstNonzeroIsBestTraceConstant) {
  // Rayleigh quotient ‖∇φ‖² / ‖φ‖²_∂ over random boundary-mean-zero functions never drops below δ₁.
  std::mt19937_64 g(21);
  const Mesh m = generate_square(8);
  const auto b = steklov_basis(m, 2, {1e-11});
  const auto K = assemble_stiffness(m);
  const auto B = assemble_boundary_mass(m);
  const Vector bw = B * Vector(static_cast<std::size_t>(m.num_vertices()), 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    auto f = oracle::random_scalar(m, g);
    const double mean = vdot(bw, f.coeffs) / m.perimeter();
    for (double& x : f.coeffs) x -= mean;
    best = std::min(best, K.quadratic_form(f.coeffs) / B.quadratic_form(f.coeffs));
  }
  EXPECT_GE(best, b.delta(1) * (1.0 - 1e-10));
  const auto& s1 = b.field(1).coeffs;
  EXPECT_NEAR(K.quadratic_form(s1) / B.quadratic_form(s1), b.delta(1), 1e-9);
}

TEST(Steklov, TooManyPairsRejected) {
  const Mesh m = generate_square(2);
  try {
    steklov_basis(m, m.num_boundary_vertices() + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateB);
  }
}

TEST(Mixed, FullBoundaryIsDirichletProblem) {
  const Mesh m = generate_square(12);
  EXPECT_NEAR(mixed_lambda1(m, all_boundary_edges(m), {1e-10}), dirichlet_lambda1(m, {1e-10}), 1e-8);
}

TEST(Mixed, GrowingArcShrinksConstant) {
  const Mesh m = generate_square(12);
  const double bottom = m2_gamma(m, parse_arc_list(m, "bottom"));
  const double two = m2_gamma(m, parse_arc_list(m, "bottom,left"));
  EXPECT_LT(two, bottom);
}

TEST(Mixed, PositiveForAnyArc) {
  const Mesh m = generate_annulus(0.5, 1.0, 2, 16);
  for (const char* arc : {"0", "loop1", "loop0", "half", "3-7"}) EXPECT_GT(mixed_lambda1(m, parse_arc_list(m, arc)), 0.0) << arc;
}

TEST(Mixed, EmptyArcRejected) {
  const Mesh m = generate_square(4);
  try {
    mixed_lambda1(m, std::vector<int>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyGamma);
    EXPECT_EQ(e.condition(), "mixed_eigenproblem");
  }
}
