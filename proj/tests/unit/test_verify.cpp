#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../support/fixtures.hpp"
#include "orthoexp/constructions.hpp"
#include "orthoexp/error.hpp"
#include "orthoexp/examples.hpp"
#include "orthoexp/verify.hpp"
#include "orthoexp/zonotope.hpp"

using namespace orthoexp;
using orthoexp::testing::cube;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec> lattice_points(const Eigen::MatrixXd& basis, int radius) {
  std::vector<Vec> out;
  for (int i = -radius; i <= radius; ++i)
    for (int j = -radius; j <= radius; ++j) out.push_back(basis * Vec{{double(i), double(j)}});
  return out;
}

}  // namespace

TEST(Orthogonality, CubeCounterexample) {
  const VerificationReport r = orthogonality_report(cube(2), std::vector<Vec>{Vec::Zero(2), Vec{{1.0, 0.0}}});
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.pair_count, 1u);
  EXPECT_NEAR(r.max_residual * 4, 4 * std::sin(1.0), 1e-12);
  EXPECT_NEAR(r.max_residual * 4, 3.37, 5e-3);
  ASSERT_EQ(r.failing.size(), 1u);
}

TEST(Orthogonality, SinglePointIsVacuous) {
  const VerificationReport r = orthogonality_report(cube(2), std::vector<Vec>{Vec::Zero(2)});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.pair_count, 0u);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(Orthogonality, ConstructionsPassAndCorruptionFails) {
  const Polytope p = examples::fig1_polygon();
  const OrthoSet s = construct_thm21(p, 20);
  const VerificationReport r = orthogonality_report(p, s);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.pair_count, 190u);
  EXPECT_LE(r.max_residual, 1e-8);
  std::vector<Vec> bad = s.points;
  bad[3](0) += 0.1;
  const VerificationReport c = orthogonality_report(p, bad);
  EXPECT_FALSE(c.pass);
  for (const auto& f : c.failing) EXPECT_TRUE(f.i == 3 || f.j == 3);

  const Thm22Result t = construct_thm22(hull_from_vertices(std::vector<RatVector>{{0, 0}, {1, 0}, {2, 1}}), 0, 8);
  EXPECT_TRUE(orthogonality_report(t.scaled, t.set).pass);
}

TEST(Density, ScaledSquareLattice) {
  const Eigen::MatrixXd b = 2 * kPi * Eigen::MatrixXd::Identity(2, 2);
  const DensityEstimate e = density_estimate_lattice(b, {100});
  const double want = 1 / (4 * kPi * kPi);
  EXPECT_EQ(e.dim, 2u);
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_NEAR(e.rows[0].sup_ratio, want, 0.05 * want);
  // 100 / 2pi = 15.9, so every box holds 15 or 16 points per axis
  EXPECT_EQ(e.rows[0].sup_count, 256u);
  EXPECT_EQ(e.rows[0].inf_count, 225u);
}

TEST(Density, PointListMatchesLattice) {
  const Eigen::MatrixXd b{{2.0, 0.5}, {0.0, 1.5}};
  const std::vector<double> rhos{10, 20};
  const DensityEstimate a = density_estimate_lattice(b, rhos);
  const DensityEstimate p = density_estimate(lattice_points(b, 60), 1.5 * 60 - 1, rhos);
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    EXPECT_EQ(a.rows[i].sup_count, p.rows[i].sup_count);
    EXPECT_EQ(a.rows[i].inf_count, p.rows[i].inf_count);
  }
}

TEST(Density, HalfOpenBoxes) {
  const DensityEstimate e = density_estimate_lattice(Eigen::MatrixXd::Identity(2, 2), {8});
  EXPECT_EQ(e.rows[0].sup_count, 64u);
  EXPECT_EQ(e.rows[0].inf_count, 64u);
}

TEST(Density, HexagonLatticeConverges) {
  const ZonotopeSpec spec = make_spec(examples::hexagon_matrix(1, 1), 2);
  const LambdaData l = build_lambda(spec, integer_kernel(spec));
  const DensityEstimate e = density_estimate_lattice(kPi * l.sigma.transpose(), {50, 100, 200});
  const double want = 1 / (kPi * kPi * std::sqrt(3.0));
  EXPECT_NEAR(e.rows[2].sup_ratio, want, 0.05 * want);
  EXPECT_NEAR(e.rows[2].inf_ratio, want, 0.05 * want);
  const double gap50 = e.rows[0].sup_ratio - e.rows[0].inf_ratio;
  const double gap200 = e.rows[2].sup_ratio - e.rows[2].inf_ratio;
  EXPECT_LT(gap200, gap50);
}

TEST(Density, RandomLatticesWithinFivePercent) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 5; ++t) {
    Eigen::MatrixXd b(2, 2);
    do {
      b << u(rng), u(rng), u(rng), u(rng);
    } while (std::fabs(b.determinant()) < 0.2);
    const double rho = 200 * b.colwise().norm().maxCoeff();
    const DensityEstimate e = density_estimate_lattice(b, {rho});
    const double want = 1 / std::fabs(b.determinant());
    EXPECT_NEAR(e.rows[0].sup_ratio, want, 0.05 * want);
    EXPECT_NEAR(e.rows[0].inf_ratio, want, 0.05 * want);
  }
}

TEST(Density, GreedyLineDecays) {
  const Polytope p = examples::fig1_polygon();
  const OrthoSet s = construct_thm21_box(p, 201);
  const double cover = 2 * kPi * 201;
  const DensityEstimate e = density_estimate(s.points, cover, {50 * kPi, 200 * kPi});
  EXPECT_LT(e.rows[1].sup_ratio, e.rows[0].sup_ratio);
}

TEST(Density, SourceTooSmall) {
  const std::vector<Vec> pts{Vec::Zero(2)};
  try {
    density_estimate(pts, 10, {10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SourceTooSmall);
  }
}
