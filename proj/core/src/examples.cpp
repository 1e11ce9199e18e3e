#include "orthoexp/examples.hpp"

#include <cmath>
#include <numeric>

#include "orthoexp/error.hpp"

namespace orthoexp::examples {

Polytope fig1_polygon() {
  return hull_from_vertices(std::vector<RatVector>{{-1, 0}, {1, 0}, {-2, 1}, {2, 1}});
}

Eigen::MatrixXd hexagon_matrix(long p, long q) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1)
    throw Error(ErrorCode::InvalidArgument, "p and q must be coprime positive integers");
  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  const double delta = std::sqrt(qd * qd + 2 * pd * pd);
  const double r2 = std::sqrt(2.0);
  Eigen::MatrixXd m(3, 3);
  m << qd / r2, qd / r2, r2 * pd,
       -delta / r2, delta / r2, 0,
       -pd, -pd, qd;
  return m / delta;
}

RatMatrix vandermonde_matrix(const RatVector& nodes) {
  const std::size_t d = nodes.size();
  RatMatrix v(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    Rat x = 1;
    for (std::size_t j = 0; j < d; ++j) {
      v(i, j) = x;
      x *= nodes[i];
    }
  }
  return inverse(v).transpose();
}

RatMatrix vandermonde5_matrix() { return vandermonde_matrix({0, 1, -1, 2, -2}); }

}  // namespace orthoexp::examples
