#pragma once

#include <cstddef>
#include <vector>

#include "orthoexp/constructions.hpp"
#include "orthoexp/polytope.hpp"

namespace orthoexp {

inline constexpr double kOrthogonalityTol = 1e-8;

struct PairResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  double residual = 0;  // |F_P(lambda_i - lambda_j)| / |P|
};

struct VerificationReport {
  std::size_t pair_count = 0;
  double max_residual = 0;
  std::vector<PairResidual> failing;
  double tol = kOrthogonalityTol;
  bool weighted = false;
  bool pass = true;
};

/// Oracle evaluation of F_P at every difference of two distinct points.
VerificationReport orthogonality_report(const Polytope& p, const std::vector<Vec>& points,
                                        double tol = kOrthogonalityTol);
VerificationReport orthogonality_report(const Polytope& p, const OrthoSet& set, double tol = kOrthogonalityTol);

struct DensityRow {
  double rho = 0;
  std::size_t sup_count = 0;
  std::size_t inf_count = 0;
  double sup_ratio = 0;  // sup_count / rho^d
  double inf_ratio = 0;
};

struct DensityEstimate {
  std::size_t dim = 0;
  std::size_t anchors_per_axis = 17;
  std::vector<DensityRow> rows;
};

/// Counts |points in x + [0, rho)^d| over anchors x on the grid of pitch
/// rho/8 in [-rho, rho]^d. `coverage` is the sup-norm radius up to which
/// the point list is complete; it must reach 2 rho. Throws SourceTooSmall.
DensityEstimate density_estimate(const std::vector<Vec>& points, double coverage, const std::vector<double>& rhos);

/// Same estimate for the lattice spanned by the columns of `basis`.
DensityEstimate density_estimate_lattice(const Eigen::MatrixXd& basis, const std::vector<double>& rhos);

}  // namespace orthoexp
