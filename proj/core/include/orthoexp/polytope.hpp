#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orthoexp/rational.hpp"

namespace orthoexp {

using Vec = Eigen::VectorXd;

/// Largest ambient dimension accepted by the facet enumerator.
inline constexpr std::size_t kMaxHullDim = 8;
/// Largest cube dimension accepted by project_zonotope.
inline constexpr std::size_t kMaxZonotopeDim = 20;
/// Coordinates closer than this are merged in numeric mode.
inline constexpr double kDedupTol = 1e-12;

struct Facet {
  Vec normal;          // unit, outward
  double offset = 0;   // <normal, x> <= offset on P
  std::vector<std::size_t> vertices;
  IntVector exact_normal;  // primitive integer outward normal (exact mode)
  Rat exact_offset;        // <exact_normal, x> <= exact_offset (exact mode)
};

/// Full-dimensional convex polytope with its face lattice down to edges.
/// Vertices are stored in lexicographic order, so vertex 0 is the
/// lexicographically smallest one.
class Polytope {
 public:
  std::size_t dim() const { return dim_; }
  bool exact() const { return exact_; }
  std::size_t num_vertices() const { return vertices_.size(); }

  const std::vector<Vec>& vertices() const { return vertices_; }
  /// Throws Error(NumericModeUnsupported) in numeric mode.
  const std::vector<RatVector>& exact_vertices() const;

  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }

  /// Pulling triangulation: recursive fan from the lexicographically
  /// smallest vertex of every face. Each simplex lists d+1 vertex indices.
  const std::vector<std::vector<std::size_t>>& simplices() const { return simplices_; }

  double volume() const { return volume_; }
  std::optional<Rat> exact_volume() const { return exact_volume_; }

 private:
  friend struct PolytopeBuilder;

  std::size_t dim_ = 0;
  bool exact_ = false;
  std::vector<Vec> vertices_;
  std::vector<RatVector> exact_vertices_;
  std::vector<Facet> facets_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::vector<std::size_t>> simplices_;
  double volume_ = 0;
  std::optional<Rat> exact_volume_;
};

/// Convex hull of rational points. Non-extreme and repeated points are dropped.
Polytope hull_from_vertices(const std::vector<RatVector>& points);
/// Numeric-mode hull; coordinates within kDedupTol are merged.
Polytope hull_from_vertices(const std::vector<Vec>& points);

/// Polytope {x : A x <= b}. Throws DegenerateInput when the set is empty,
/// unbounded in the sampled directions or not full-dimensional.
Polytope polytope_from_halfspaces(const RatMatrix& a, const RatVector& b);
Polytope polytope_from_halfspaces(const Eigen::MatrixXd& a, const Vec& b);

/// Extreme points of a finite point set of any affine rank (numeric mode).
std::vector<Vec> extreme_points(const std::vector<Vec>& points);
std::vector<RatVector> extreme_points(const std::vector<RatVector>& points);

bool is_simple(const Polytope& p);

struct Rationality {
  bool fully_rational = false;
  std::optional<Int> common_denominator;
  std::vector<bool> per_axis;
};

/// Throws NumericModeUnsupported for numeric-mode polytopes.
Rationality rationality(const Polytope& p);
/// Vertex table where an absent entry marks a coordinate known to be irrational.
Rationality rationality(const std::vector<std::vector<std::optional<Rat>>>& coords);

/// True iff no edge keeps coordinate `axis` (0-based) constant.
bool axis_edge_condition(const Polytope& p, std::size_t axis);

struct EdgeFan {
  std::size_t vertex = 0;
  std::vector<std::size_t> neighbors;
  std::vector<Vec> vectors;              // v_i - v
  std::vector<RatVector> exact_vectors;  // exact mode only
  double abs_det = 0;
  std::optional<Rat> exact_abs_det;
};

/// Throws NotSimpleAtVertex when v does not have exactly d neighbours.
EdgeFan edge_fan(const Polytope& p, std::size_t v);

/// Vertex-wise image x -> M x + t. Throws SingularMatrix.
Polytope affine_map(const Polytope& p, const RatMatrix& m, const RatVector& t);
Polytope affine_map(const Polytope& p, const Eigen::MatrixXd& m, const Vec& t);

/// Image of M C_d under projection onto the first `target` coordinates,
/// built as an incremental Minkowski sum of the segments [-Proj(Me_i), Proj(Me_i)].
Polytope project_zonotope(const RatMatrix& m, std::size_t target);
Polytope project_zonotope(const Eigen::MatrixXd& m, std::size_t target);

}  // namespace orthoexp
