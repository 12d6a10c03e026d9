#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "divcurl/bvp.hpp"
#include "divcurl/decompose.hpp"
#include "oracles.hpp"

using namespace divcurl;

namespace {

std::vector<Mesh> test_meshes() {
  return {generate_square(8), generate_disk(4, 24, 1.0), generate_annulus(0.5, 1.0, 3, 24)};
}

double field_diff(const VectorField& a, const VectorField& b) { return l2_norm(a - b); }

ScalarField mean_zero(ScalarField f) {
  const double mean = integral(f) / f.mesh->total_area();
  for (double& x : f.coeffs) x -= mean;
  return f;
}

}  // namespace

TEST(ProjectG, FixedPointOnGradients) {
  std::mt19937_64 g(1);
  for (const Mesh& m : test_meshes()) {
    const auto f = mean_zero(oracle::random_scalar(m, g));
    const auto p = project_G(-gradient(f));
    EXPECT_LT(oracle::max_abs_diff(p.potential.coeffs, f.coeffs), 1e-10);
    EXPECT_LT(field_diff(p.field, -gradient(f)), 1e-10);
  }
}

TEST(ProjectG, KillsZeroTraceCurls) {
  std::mt19937_64 g(2);
  for (const Mesh& m : test_meshes()) {
    const auto f = oracle::random_scalar(m, g, true);
    EXPECT_LT(l2_norm(project_G(perp_gradient(f)).field), 1e-10 * energy_norm(f));
  }
}

TEST(ProjectG, NonExpansive) {
  std::mt19937_64 g(3);
  for (const Mesh& m : test_meshes()) {
    for (int k = 0; k < 5; ++k) {
      const auto v = oracle::random_field(m, g);
      EXPECT_LE(l2_norm(project_G(v).field), l2_norm(v) + 1e-12);
      EXPECT_LE(l2_norm(project_G0(v).field), l2_norm(v) + 1e-12);
    }
  }
}

TEST(ProjectG0, ZeroTracePotential) {
  std::mt19937_64 g(4);
  const Mesh m = generate_disk(4, 20, 1.0);
  const auto p = project_G0(oracle::random_field(m, g));
  for (int i : m.boundary_vertices()) EXPECT_EQ(p.potential[i], 0.0);
}

TEST(ProjectC, RecoversStreamFunction) {
  std::mt19937_64 g(5);
  for (const Mesh& m : test_meshes()) {
    const auto f = oracle::random_scalar(m, g);
    const auto p = project_C(perp_gradient(f));
    const auto d = p.potential - f;
    for (double x : d.coeffs) EXPECT_NEAR(x, d.coeffs[0], 1e-9);
  }
}

TEST(ProjectC0, KillsZeroTraceGradients) {
  std::mt19937_64 g(6);
  for (const Mesh& m : test_meshes()) {
    const auto f = oracle::random_scalar(m, g, true);
    EXPECT_LT(l2_norm(project_C0(gradient(f)).field), 1e-10 * energy_norm(f));
  }
}

TEST(ProjectC0, Idempotent) {
  std::mt19937_64 g(7);
  for (const Mesh& m : test_meshes()) {
    const auto c = project_C0(oracle::random_field(m, g)).field;
    EXPECT_LT(field_diff(project_C0(c).field, c), 1e-10 * l2_norm(c));
    const auto gg = project_G0(oracle::random_field(m, g)).field;
    EXPECT_LT(field_diff(project_G0(gg).field, gg), 1e-10 * l2_norm(gg));
  }
}

TEST(ProjectC, ConstantsAreInBothRanges) {
  // P_G and P_C share exactly the constant fields.
  const Mesh m = generate_annulus(0.5, 1.0, 2, 16);
  const auto c = sample_centroids(m, [](Vec2) { return Vec2{0.3, -0.8}; });
  EXPECT_LT(field_diff(project_G(c).field, c), 1e-10);
  EXPECT_LT(field_diff(project_C(c).field, c), 1e-10);
}

TEST(ProjectC, LinearHarmonicPairConverges) {
  // (2x, −2y) = ∇(x² − y²) = ∇⊥(2xy): both projections approach the field.
  std::vector<double> eg, ec;
  for (int n : {8, 16, 32}) {
    const Mesh m = generate_square(n);
    const auto v = sample_centroids(m, [](Vec2 p) { return Vec2{2.0 * p.x, -2.0 * p.y}; });
    eg.push_back(field_diff(project_G(v).field, v) / l2_norm(v));
    ec.push_back(field_diff(project_C(v).field, v) / l2_norm(v));
  }
  for (std::size_t k = 1; k < eg.size(); ++k) {
    EXPECT_LT(eg[k], 0.6 * eg[k - 1]);
    EXPECT_LT(ec[k], 0.6 * ec[k - 1]);
  }
  EXPECT_LT(eg.back(), 0.05);
  EXPECT_LT(ec.back(), 0.05);
}

TEST(Harmonic, ZeroField) {
  const Mesh m = generate_square(4);
  const auto d = harmonic_decompose(VectorField::zero(m));
  EXPECT_EQ(oracle::max_abs(d.psi0.coeffs), 0.0);
  EXPECT_EQ(oracle::max_abs(d.phi0.coeffs), 0.0);
  EXPECT_EQ(l2_norm(d.h), 0.0);
}

TEST(Harmonic, ReconstructionPythagorasAndHarmonicity) {
  std::mt19937_64 g(8);
  for (const Mesh& m : test_meshes()) {
    for (int k = 0; k < 4; ++k) {
      const auto v = oracle::random_field(m, g);
      const auto d = harmonic_decompose(v);
      const auto c = d.curl_part(), gr = d.grad_part();
      EXPECT_LT(field_diff(c + gr + d.h, v), 1e-12 * l2_norm(v));
      const double vv = l2_inner(v, v);
      const double parts = l2_inner(c, c) + l2_inner(gr, gr) + l2_inner(d.h, d.h);
      EXPECT_NEAR(parts, vv, 1e-9 * vv);
      EXPECT_TRUE(is_harmonic(d.h).harmonic);
      const auto s = harmonic_decompose_from_sources(v);
      EXPECT_LT(field_diff(s.h, d.h), 1e-9 * l2_norm(v));
    }
  }
}

TEST(Harmonic, QuadraticHarmonicPotentialOnSquare) {
  // ∇(x² − y²) is divergence- and curl-free, and the crossed-grid stiffness stencil is exact on
  // x² − y², so the interpolant's gradient is discretely harmonic: ψ₀ = φ₀ = 0 up to roundoff.
  for (int n : {8, 16, 32}) {
    const Mesh m = generate_square(n);
    const auto v = gradient(interpolate(m, [](Vec2 p) { return p.x * p.x - p.y * p.y; }));
    const auto d = harmonic_decompose(v);
    EXPECT_LT((l2_norm(d.curl_part()) + l2_norm(d.grad_part())) / l2_norm(v), 1e-12) << n;
    EXPECT_LT(l2_norm(d.h - v) / l2_norm(v), 1e-12) << n;
    EXPECT_TRUE(is_harmonic(v).harmonic);
  }
}

TEST(Harmonic, CirculationFieldOnAnnulus) {
  Mesh m = generate_annulus(0.5, 1.0, 2, 16);
  double last = 0.0, prev = 0.0;
  for (int l = 0; l < 4; ++l) {
    if (l > 0) m = refine_uniform(m);
    const auto v = circulation_field(m);
    const auto d = harmonic_decompose(v);
    prev = last;
    last = l2_inner(d.h, d.h) / l2_inner(v, v);
  }
  EXPECT_GE(last, 0.99);
  EXPECT_GE(last, prev);
}

TEST(IsHarmonic, DetectsNonHarmonic) {
  std::mt19937_64 g(9);
  const Mesh m = generate_square(6);
  const auto rep = is_harmonic(perp_gradient(oracle::random_scalar(m, g, true)));
  EXPECT_FALSE(rep.harmonic);
  EXPECT_GE(rep.worst_vertex, 0);
  EXPECT_TRUE(is_harmonic(sample_centroids(m, [](Vec2) { return Vec2{1.0, 2.0}; })).harmonic);
}

TEST(Poincare, GradientRecoveredExactly) {
  std::mt19937_64 g(10);
  for (const Mesh& m : {generate_square(8), generate_disk(4, 24, 1.0)}) {
    const auto f = mean_zero(oracle::random_scalar(m, g));
    const auto p = poincare_potential(gradient(f), PotentialKind::Grad);
    EXPECT_LT(oracle::max_abs_diff(p.coeffs, f.coeffs), 1e-10);
  }
}

TEST(Poincare, CurlRecoveredUpToConstant) {
  std::mt19937_64 g(11);
  const Mesh m = generate_square(8);
  const auto f = oracle::random_scalar(m, g);
  const auto p = poincare_potential(perp_gradient(f), PotentialKind::Curl);
  const auto d = p - f;
  for (double x : d.coeffs) EXPECT_NEAR(x, d.coeffs[0], 1e-10);
}

TEST(Poincare, RotationHasCirculation) {
  const Mesh m = generate_square(8);
  const auto v = sample_centroids(m, [](Vec2 p) { return Vec2{-p.y, p.x}; });
  // Oracle: the loop around one grid cell encloses h², and curl (−y, x) = 2.
  double circ = 0.0;
  const Vec2 c[] = {{0.25, 0.25}, {0.375, 0.25}, {0.375, 0.375}, {0.25, 0.375}};
  for (int k = 0; k < 4; ++k) {
    const Vec2 a = c[k], b = c[(k + 1) % 4], mid = 0.5 * (a + b);
    circ += dot(Vec2{-mid.y, mid.x}, b - a);
  }
  EXPECT_NEAR(circ, 2.0 / 64.0, 1e-15);
  try {
    poincare_potential(v, PotentialKind::Grad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CirculationDetected);
    EXPECT_EQ(e.condition(), "path_independence");
  }
}

TEST(Poincare, HoledMeshRejected) {
  const Mesh m = generate_annulus(0.5, 1.0, 2, 12);
  try {
    poincare_potential(VectorField::zero(m), PotentialKind::Grad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSimplyConnected);
  }
}
