#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "orthoexp/quadrature.hpp"
#include "orthoexp/special_functions.hpp"

using namespace orthoexp;
using C = std::complex<double>;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

void expect_close(C got, C want, double rel) { EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << got << " vs " << want; }

}  // namespace

// Reference values from arbitrary-precision evaluation.
TEST(ExpIntEn, FrozenValues) {
  expect_close(expint_en(1, {0.5, 0.3}), {0.42221132422501794, -0.30537113617426665}, 1e-13);
  expect_close(expint_en(2, {0.0, 3.0}), {-0.15642389298673055, 0.21776934996413376}, 1e-13);
  expect_close(expint_en(3, {2.0, -5.0}), {0.017298363471826248, -0.0082952682031136147}, 1e-13);
  expect_close(expint_en(1, {0.0, 40.0}), {-0.019020007896208767, 0.016188792559887888}, 1e-13);
  expect_close(expint_en(4, {0.01, 0.02}), {0.32819297569291515, -0.0098003342655367877}, 1e-13);
}

TEST(ExpIntEn, Identities) {
  // E_n(0) = 1/(n-1); E_{n+1}(z) = (e^{-z} - z E_n(z)) / n
  EXPECT_NEAR(expint_en(3, {0.0, 0.0}).real(), 0.5, 1e-15);
  for (C z : {C(0.2, 0.1), C(1.5, -2.0), C(0.0, 7.0), C(12.0, 3.0)})
    for (int n = 1; n < 5; ++n) expect_close(expint_en(n + 1, z), (std::exp(-z) - z * expint_en(n, z)) / double(n), 1e-12);
  // Real axis: E_1(1) = 0.21938393439552027...
  EXPECT_NEAR(expint_en(1, {1.0, 0.0}).real(), 0.21938393439552027, 1e-15);
}

TEST(ExpIntEn, ConjugateSymmetry) {
  for (C z : {C(0.3, 0.9), C(4.0, 2.5), C(0.0, 0.5)})
    expect_close(expint_en(2, std::conj(z)), std::conj(expint_en(2, z)), 1e-14);
}

TEST(GaussLegendre, ExactForPolynomials) {
  for (std::size_t n : {1u, 2u, 5u, 10u, 20u}) {
    const GaussRule& g = gauss_legendre(n);
    ASSERT_EQ(g.nodes.size(), n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], static_cast<double>(k));
      const double want = k % 2 ? 0.0 : 2.0 / static_cast<double>(k + 1);
      EXPECT_NEAR(s, want, 1e-14) << "n=" << n << " k=" << k;
    }
  }
  EXPECT_EQ(&gauss_legendre(7), &gauss_legendre(7));
}

TEST(SimplexRule, WeightsAndDirichletMoments) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const std::size_t q = 4;
    const SimplexRule& r = collapsed_simplex_rule(m, q);
    double total = 0;
    for (double w : r.weights) total += w;
    EXPECT_NEAR(total, 1.0 / factorial(static_cast<int>(m)), 1e-15);
    // int prod lambda_i^{a_i} = prod a_i! / (sum a_i + m)!
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b + a <= 3; ++b) {
        double s = 0;
        for (std::size_t i = 0; i < r.weights.size(); ++i) {
          ASSERT_NEAR(r.barycentric[i].sum(), 1.0, 1e-15);
          s += r.weights[i] * std::pow(r.barycentric[i](0), a) * std::pow(r.barycentric[i](1), b);
        }
        EXPECT_NEAR(s, factorial(a) * factorial(b) / factorial(a + b + static_cast<int>(m)), 1e-15) << m << " " << a << " " << b;
      }
  }
}
