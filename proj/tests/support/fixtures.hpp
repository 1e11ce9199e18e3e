#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "orthoexp/polytope.hpp"
#include "orthoexp/rational.hpp"

namespace orthoexp::testing {

inline Polytope cube(std::size_t d) {
  std::vector<RatVector> pts;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    RatVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1u ? 1 : -1;
    pts.push_back(v);
  }
  return hull_from_vertices(pts);
}

inline Polytope unit_triangle() { return hull_from_vertices(std::vector<RatVector>{{0, 0}, {1, 0}, {0, 1}}); }

inline Polytope square_pyramid() {
  return hull_from_vertices(std::vector<RatVector>{
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {Rat(1, 2), Rat(1, 2), 1}});
}

inline Rat random_rat(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> num(lo * den, hi * den);
  return Rat(num(rng), den);
}

/// Cube [-1,1]^d cut by up to `cuts` random rational halfspaces, retried
/// until the result is simple.
inline Polytope random_simple_polytope(std::mt19937_64& rng, std::size_t d, int cuts = 2) {
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<long> off(2, 7);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::size_t rows = 2 * d + static_cast<std::size_t>(cuts);
    RatMatrix a(rows, d);
    RatVector b(rows);
    for (std::size_t i = 0; i < d; ++i) {
      a(2 * i, i) = 1;
      a(2 * i + 1, i) = -1;
      b[2 * i] = b[2 * i + 1] = 1;
    }
    for (std::size_t r = 2 * d; r < rows; ++r) {
      long l1 = 0;
      for (std::size_t i = 0; i < d; ++i) {
        const long c = coef(rng);
        a(r, i) = c;
        l1 += std::abs(c);
      }
      if (l1 == 0) a(r, 0) = l1 = 1;
      b[r] = Rat(off(rng) * l1, 8);
    }
    try {
      Polytope p = polytope_from_halfspaces(a, b);
      if (is_simple(p)) return p;
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error("no simple polytope found");
}

/// Convex hull of random rational points in the plane.
inline Polytope random_polygon(std::mt19937_64& rng, int points = 8) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<RatVector> pts;
    for (int i = 0; i < points; ++i) pts.push_back({random_rat(rng, -3, 3, 4), random_rat(rng, -3, 3, 4)});
    try {
      return hull_from_vertices(pts);
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error("no polygon found");
}

/// Random frequency with |omega| in [0.5, 20], away from edge-orthogonal directions.
inline Vec random_frequency(std::mt19937_64& rng, const Polytope& p) {
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> r(0.5, 20);
  const auto d = static_cast<Eigen::Index>(p.dim());
  while (true) {
    Vec w(d);
    for (Eigen::Index i = 0; i < d; ++i) w(i) = g(rng);
    w *= r(rng) / w.norm();
    bool ok = true;
    for (const auto& [a, b] : p.edges()) {
      const Vec xi = p.vertices()[b] - p.vertices()[a];
      if (std::fabs(xi.dot(w)) < 1e-6 * xi.norm() * w.norm()) ok = false;
    }
    if (ok) return w;
  }
}

}  // namespace orthoexp::testing
