#pragma once

#include <vector>

#include "orthoexp/polytope.hpp"
#include "orthoexp/rational.hpp"

namespace orthoexp::examples {

/// Quadrilateral with vertices (+-1, 0), (+-2, 1).
Polytope fig1_polygon();

/// Orthogonal 3x3 matrix whose projection of C_3 onto the first two
/// coordinates is sqrt(2) times the hexagon P_{p,q}; p, q coprime positive.
Eigen::MatrixXd hexagon_matrix(long p, long q);

/// M with (M^{-1})^T the Vandermonde matrix on the given distinct nodes.
RatMatrix vandermonde_matrix(const RatVector& nodes);

/// Vandermonde example on the nodes 0, 1, -1, 2, -2.
RatMatrix vandermonde5_matrix();

}  // namespace orthoexp::examples
