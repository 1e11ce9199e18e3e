#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace orthoexp {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Golub-Welsch), cached per order.
const GaussRule& gauss_legendre(std::size_t n);

/// Collapsed-coordinate product rule on the reference simplex of dimension m
/// with q points per direction. Weights sum to 1/m!.
struct SimplexRule {
  std::vector<Eigen::VectorXd> barycentric;  // m+1 coefficients per node
  std::vector<double> weights;
};

const SimplexRule& collapsed_simplex_rule(std::size_t m, std::size_t q);

}  // namespace orthoexp
