#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "orthoexp/polytope.hpp"

namespace orthoexp {

using IntPoint = std::vector<std::int64_t>;

/// {omega : <normal, omega> = 0} with a primitive integer normal whose first
/// nonzero entry is positive.
struct Hyperplane0 {
  IntPoint normal;
  friend bool operator==(const Hyperplane0&, const Hyperplane0&) = default;
  friend auto operator<=>(const Hyperplane0&, const Hyperplane0&) = default;
};

enum class Provenance { Thm21, Thm22, Thm25 };
std::string_view to_string(Provenance p);

/// Finite ordered set of frequencies. Every point equals
/// scale * basis * integer_coords[i]; the first point is the origin.
struct OrthoSet {
  std::size_t dim = 0;
  Provenance provenance = Provenance::Thm21;
  double scale = 1;
  Eigen::MatrixXd basis;
  std::vector<IntPoint> integer_coords;
  std::vector<Vec> points;
};

/// Integer points of [-radius, radius]^d by increasing sup-norm, then
/// lexicographically inside each shell.
std::vector<IntPoint> box_points_by_shell(std::size_t d, std::int64_t radius);

/// Set built from integer coordinates; fills `points`.
OrthoSet make_ortho_set(Provenance prov, double scale, const Eigen::MatrixXd& basis,
                        std::vector<IntPoint> coords);

/// One hyperplane per distinct edge direction, sorted.
/// Throws NotSimple or NotRational (numeric-mode input).
std::vector<Hyperplane0> edge_hyperplanes(const Polytope& p);

/// Default greedy search radius (sup-norm of integer coordinates).
std::int64_t default_enum_bound(const Polytope& p);

/// Greedy sequence in L = 2 pi n Z^d: candidates in order of increasing
/// sup-norm, lexicographic inside each shell, a candidate accepted when no
/// difference with an earlier point lies on an edge hyperplane.
/// Throws EnumerationExhausted when fewer than `count` points fit in the box.
OrthoSet construct_thm21(const Polytope& p, std::size_t count, std::optional<std::int64_t> enum_bound = {});

/// Same greedy rule, run until the box of sup-norm `radius` is exhausted.
OrthoSet construct_thm21_box(const Polytope& p, std::int64_t radius);

struct Thm22Result {
  OrthoSet set;       // {2 pi j e_axis}, valid for the scaled polytope
  Int scaling;        // N, common denominator of the axis components
  Polytope scaled;    // N P
};

/// Rank-one set for the axis (0-based). Throws IrrationalAxis or
/// AxisEdgeViolation.
Thm22Result construct_thm22(const Polytope& p, std::size_t axis, std::size_t count);

struct WitnessRecord {
  Vec omega;
  bool witnessed = false;
  std::size_t v = 0;
  std::size_t v_prime = 0;
  std::int64_t m = 0;
  double deviation = 0;  // |<omega, v - v'>/2pi - m|
};

struct NecessaryConditionReport {
  std::vector<WitnessRecord> records;
  bool all_witnessed = true;
};

inline constexpr double kWitnessTol = 1e-9;

/// For every nonzero point searches the vertex pairs for <omega, v - v'> = 2 pi m.
/// Throws NotSimple.
NecessaryConditionReport check_thm24(const Polytope& p, const OrthoSet& set, double tol = kWitnessTol);

}  // namespace orthoexp
