#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/fixtures.hpp"
#include "orthoexp/error.hpp"
#include "orthoexp/examples.hpp"
#include "orthoexp/fourier.hpp"

using namespace orthoexp;
using orthoexp::testing::cube;
using orthoexp::testing::square_pyramid;
using orthoexp::testing::unit_triangle;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t vertex_index(const Polytope& p, const RatVector& v) {
  for (std::size_t i = 0; i < p.num_vertices(); ++i)
    if (p.exact_vertices()[i] == v) return i;
  throw std::runtime_error("vertex not found");
}

double sinc_product(const Vec& w) {
  double r = 1;
  for (Eigen::Index i = 0; i < w.size(); ++i) r *= w(i) == 0 ? 2.0 : 2 * std::sin(w(i)) / w(i);
  return r;
}

}  // namespace

TEST(DV, Examples) {
  const Polytope t = unit_triangle();
  EXPECT_DOUBLE_EQ(d_v(t, vertex_index(t, {0, 0}), Vec{{1.0, 2.0}}), 0.5);
  EXPECT_DOUBLE_EQ(d_v(t, vertex_index(t, {0, 0}), Vec{{2.0, 4.0}}), 0.125);
  const Polytope c = cube(2);
  EXPECT_DOUBLE_EQ(d_v(c, vertex_index(c, {1, 1}), Vec{{1.0, 1.0}}), 1.0);
  try {
    d_v(c, 0, Vec{{1.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularFrequency);
  }
}

TEST(DV, Homogeneity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const Polytope p = orthoexp::testing::random_simple_polytope(rng, 3);
    const Vec w = orthoexp::testing::random_frequency(rng, p);
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
      const double base = d_v(p, v, w);
      for (double r : {2.0, 3.0, 10.0})
        EXPECT_NEAR(d_v(p, v, r * w), base / std::pow(r, 3), 1e-12 * std::fabs(base) / std::pow(r, 3));
    }
  }
}

TEST(Lawrence, CubeProductFormula) {
  const Polytope c = cube(2);
  const FourierValue f = fourier_lawrence(c, Vec{{1.0, 1.0}});
  EXPECT_EQ(f.method, FourierMethod::Lawrence);
  EXPECT_NEAR(f.value.real(), 4 * std::sin(1.0) * std::sin(1.0), 1e-14);
  EXPECT_NEAR(f.value.imag(), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(fourier_lawrence(c, Vec{{kPi, kPi / 2}}).value), 0.0, 1e-14);
  const Vec w{{1.0, 2.0, 3.0}};
  EXPECT_NEAR(fourier_lawrence(cube(3), w).value.real(), sinc_product(w), 1e-14);
}

TEST(Lawrence, Fig1ZeroAtLatticePoint) {
  const Polytope p = examples::fig1_polygon();
  EXPECT_NEAR(std::abs(fourier_lawrence(p, 2 * kPi * Vec{{1.0, 2.0}}).value), 0.0, 1e-12);
}

TEST(Lawrence, RefusesSingularAndNonSimple) {
  try {
    fourier_lawrence(examples::fig1_polygon(), Vec{{1.0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularFrequency);
  }
  try {
    fourier_lawrence(square_pyramid(), Vec{{1.0, 2.0, 3.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSimple);
  }
  EXPECT_TRUE(is_singular_frequency(cube(2), Vec{{0.0, 0.0}}));
  EXPECT_TRUE(is_singular_frequency(cube(2), Vec{{0.0, 3.0}}));
  EXPECT_FALSE(is_singular_frequency(cube(2), Vec{{1.0, 3.0}}));
}

// Reference values from adaptive high-precision quadrature of the defining integral.
TEST(Oracle, FrozenFig1Values) {
  const Polytope p = examples::fig1_polygon();
  const Complex a = fourier_oracle(p, Vec{{1.0, 2.0}}).value;
  EXPECT_NEAR(a.real(), 0.85767966970911083, 1e-13);
  EXPECT_NEAR(a.imag(), -1.3742288115131714, 1e-13);
  const Complex b = fourier_oracle(p, Vec{{0.3, -0.7}}).value;
  EXPECT_NEAR(b.real(), 2.6233561696068933, 1e-13);
  EXPECT_NEAR(b.imag(), 1.067820265048553, 1e-13);
  const Complex c = fourier_oracle(p, Vec{{5.0, 1.0}}).value;
  EXPECT_NEAR(c.real(), 0.069047505283234345, 1e-13);
  EXPECT_NEAR(c.imag(), -0.069921002391496918, 1e-13);
}

TEST(Oracle, FrozenPyramidValues) {
  const Polytope p = square_pyramid();
  const Complex a = fourier_oracle(p, Vec{{1.0, 0.0, 0.0}}).value;
  EXPECT_NEAR(a.real(), 0.28527932749530659, 1e-13);
  EXPECT_NEAR(a.imag(), -0.15584880691164812, 1e-13);
  const Complex b = fourier_oracle(p, Vec{{1.0, 2.0, 3.0}}).value;
  EXPECT_NEAR(b.real(), -0.15572497649144167, 1e-13);
  EXPECT_NEAR(b.imag(), -0.19142888769161314, 1e-13);
}

TEST(Oracle, VolumeAtZeroAndAgreement) {
  EXPECT_NEAR(fourier_oracle(unit_triangle(), Vec::Zero(2)).value.real(), 0.5, 1e-15);
  const Polytope c = cube(2);
  const Complex o = fourier_oracle(c, Vec{{1.0, 1.0}}).value;
  const Complex l = fourier_lawrence(c, Vec{{1.0, 1.0}}).value;
  EXPECT_LE(std::abs(o - l), 1e-10 * std::abs(o));
  EXPECT_EQ(fourier_oracle(c, Vec{{1.0, 1.0}}).method, FourierMethod::Oracle);
}

TEST(Oracle, FiniteOnSingularSet) {
  const Polytope c = cube(2);
  EXPECT_NEAR(fourier_oracle(c, Vec{{0.0, 1.0}}).value.real(), 2 * 2 * std::sin(1.0), 1e-14);
  const Polytope p = examples::fig1_polygon();
  const Complex v = fourier_oracle(p, Vec{{1.0, 1.0}}).value;
  EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
}

TEST(Oracle, Additivity) {
  const Polytope whole = cube(2);
  auto half = [](int sign) {
    RatMatrix a(5, 2);
    RatVector b(5, 1);
    a(0, 0) = 1;
    a(1, 0) = -1;
    a(2, 1) = 1;
    a(3, 1) = -1;
    a(4, 0) = sign;
    a(4, 1) = 2 * sign;
    b[4] = sign * Rat(1, 3);
    return polytope_from_halfspaces(a, b);
  };
  const Polytope p1 = half(1), p2 = half(-1);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int t = 0; t < 20; ++t) {
    const Vec w{{u(rng), u(rng)}};
    const Complex total = fourier_oracle(whole, w).value;
    const Complex parts = fourier_oracle(p1, w).value + fourier_oracle(p2, w).value;
    EXPECT_LE(std::abs(total - parts), 1e-10 * std::max(std::abs(total), 1e-3 * whole.volume()));
  }
}

TEST(Oracle, ConjugateSymmetry) {
  std::mt19937_64 rng(23);
  const Polytope p = orthoexp::testing::random_simple_polytope(rng, 3);
  for (int t = 0; t < 20; ++t) {
    const Vec w = orthoexp::testing::random_frequency(rng, p);
    EXPECT_LE(std::abs(fourier_oracle(p, -w).value - std::conj(fourier_oracle(p, w).value)), 1e-12);
  }
}

TEST(Oracle, MatchesLawrenceOnRandomPolytopes) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 6; ++t) {
    const Polytope p = t < 3 ? orthoexp::testing::random_polygon(rng) : orthoexp::testing::random_simple_polytope(rng, 3);
    for (int k = 0; k < 50; ++k) {
      const Vec w = orthoexp::testing::random_frequency(rng, p);
      const Complex o = fourier_oracle(p, w).value;
      const Complex l = fourier_lawrence(p, w).value;
      EXPECT_LE(std::abs(o - l), 1e-9 * (std::abs(o) + p.volume()));
    }
  }
}

TEST(DividedDifference, ClosedForms) {
  // f[x0, x1] = (e^{-i x1} - e^{-i x0}) / (x1 - x0); f[x, x, x] = f''(x)/2.
  const Complex a = exp_divided_difference({0.3, 2.0});
  const Complex expect = (std::exp(Complex(0, -2.0)) - std::exp(Complex(0, -0.3))) / 1.7;
  EXPECT_LE(std::abs(a - expect), 1e-15);
  const Complex b = exp_divided_difference({1.1, 1.1, 1.1});
  EXPECT_LE(std::abs(b - (-std::exp(Complex(0, -1.1)) / 2.0)), 1e-15);
  const Complex c = exp_divided_difference({0.0, 0.0, 0.0, 0.0});
  EXPECT_LE(std::abs(c - Complex(0, 1.0 / 6.0)), 1e-15);
  const Complex near = exp_divided_difference({1.0, 1.0 + 1e-9});
  EXPECT_LE(std::abs(near - Complex(0, -1) * std::exp(Complex(0, -1.0 - 5e-10))), 1e-12);
}

TEST(Moment, Examples) {
  const MomentResult t = moment(unit_triangle(), Vec{{1.0, 2.0}}, 0);
  EXPECT_NEAR(t.rhs, 0.5, 1e-14);
  EXPECT_NEAR(t.lhs, 0.5, 1e-14);
  const MomentResult c = moment(cube(2), Vec{{1.0, 0.5}}, 1);
  EXPECT_NEAR(c.lhs, 0.0, 1e-14);
  EXPECT_NEAR(c.rhs, 0.0, 1e-13);
  const MomentResult f = moment(examples::fig1_polygon(), Vec{{1.0, 3.0}}, 2);
  EXPECT_NEAR(f.lhs, f.rhs, 1e-9 * std::max(1.0, std::fabs(f.lhs)));
  try {
    moment(examples::fig1_polygon(), Vec{{1.0, 1.0}}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularFrequency);
  }
}

TEST(Moment, CubeSecondMomentClosedForm) {
  // int_{[-1,1]^2} (a x + b y)^2 = 4 (a^2 + b^2) / 3
  const MomentResult r = moment(cube(2), Vec{{1.5, 0.5}}, 2);
  EXPECT_NEAR(r.lhs, 4 * (2.25 + 0.25) / 3, 1e-13);
  EXPECT_NEAR(r.rhs, r.lhs, 1e-12);
}

TEST(Companion, Examples) {
  const CompanionResult t = companion_sum(unit_triangle(), Vec{{1.0, 2.0}}, 0);
  EXPECT_NEAR(t.value, 0.0, 1e-15);
  EXPECT_NEAR(t.mass, 2.0, 1e-15);
  const CompanionResult c = companion_sum(cube(3), Vec{{1.0, 2.0, 3.0}}, 1);
  EXPECT_LE(std::fabs(c.value), 1e-9 * c.mass);
  std::mt19937_64 rng(31);
  const Polytope p = orthoexp::testing::random_simple_polytope(rng, 3);
  for (int k = 0; k < 100; ++k) {
    const CompanionResult r = companion_sum(p, orthoexp::testing::random_frequency(rng, p), 0);
    EXPECT_LE(std::fabs(r.value), 1e-9 * r.mass);
  }
}

TEST(FourierZero, Examples) {
  const Polytope c = cube(2);
  EXPECT_TRUE(is_fourier_zero(c, Vec{{kPi, 1.0}}, 1e-8));
  EXPECT_FALSE(is_fourier_zero(c, Vec{{1.0, 1.0}}, 1e-8));
  EXPECT_TRUE(is_fourier_zero(examples::fig1_polygon(), Vec{{2 * kPi, 0.0}}, 1e-8));
}
