#include "orthoexp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "orthoexp/error.hpp"

namespace orthoexp {

namespace {

template <class S>
struct Field;

template <>
struct Field<Rat> {
  static int sign(const Rat& x, double) { return sgn(x); }
  static double mag(const Rat& x) { return std::fabs(x.get_d()); }
};

template <>
struct Field<double> {
  static int sign(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
  static double mag(double x) { return std::fabs(x); }
};

template <class S>
using Row = std::vector<S>;
template <class S>
using Rows = std::vector<Row<S>>;

// Forward elimination with largest-magnitude pivoting. Returns pivot columns
// and accumulates the determinant sign/product when `det` is given.
template <class S>
std::vector<std::size_t> eliminate(Rows<S>& a, double tol, S* det = nullptr) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  if (det) *det = S(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    double best_mag = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (Field<S>::sign(a[i][c], tol) == 0) continue;
      double mg = Field<S>::mag(a[i][c]);
      if (best == rows || mg > best_mag) {
        best = i;
        best_mag = mg;
      }
    }
    if (best == rows) {
      if (det) *det = S(0);
      continue;
    }
    if (best != r) {
      std::swap(a[best], a[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (Field<S>::sign(a[i][c], tol) == 0) continue;
      S f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
S det_of(Rows<S> a, double tol) {
  S det;
  auto piv = eliminate(a, tol, &det);
  if (piv.size() < a.size()) return S(0);
  return det;
}

template <class S>
std::size_t rank_of(Rows<S> a, double tol) {
  if (a.empty()) return 0;
  return eliminate(a, tol).size();
}

template <class S>
std::optional<Row<S>> solve(Rows<S> a, Row<S> b, double tol) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    double best_mag = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (Field<S>::sign(a[i][c], tol) == 0) continue;
      double mg = Field<S>::mag(a[i][c]);
      if (best == n || mg > best_mag) {
        best = i;
        best_mag = mg;
      }
    }
    if (best == n) return std::nullopt;
    std::swap(a[best], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || Field<S>::sign(a[i][c], 0) == 0) continue;
      S f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  Row<S> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

template <class S>
S dot_of(const Row<S>& a, const Row<S>& b) {
  S s = S(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class S>
Row<S> sub(const Row<S>& a, const Row<S>& b) {
  Row<S> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

double scale_of(const Rows<double>& pts) {
  double s = 1;
  for (const auto& p : pts)
    for (double x : p) s = std::max(s, std::fabs(x));
  return s;
}

double scale_of(const Rows<Rat>&) { return 1; }

Rows<double> dedup(const Rows<double>& pts) {
  Rows<double> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      bool same = true;
      for (std::size_t i = 0; i < p.size() && same; ++i) same = std::fabs(p[i] - q[i]) <= kDedupTol;
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

Rows<Rat> dedup(const Rows<Rat>& pts) {
  Rows<Rat> out = pts;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class S>
struct Tolerances {
  double plane = 0;  // point-on-hyperplane test
  double rank = 0;   // rank of unit normals
  double affine = 0; // affine rank of point differences
};

template <class S>
Tolerances<S> tolerances(double scale) {
  if constexpr (std::is_same_v<S, double>) return {1e-9 * scale, 1e-9, 1e-9 * scale};
  else return {0, 0, 0};
}

template <class S>
std::size_t affine_rank(const Rows<S>& pts, const std::vector<std::size_t>& idx, double tol) {
  if (idx.size() <= 1) return 0;
  Rows<S> diffs;
  for (std::size_t k = 1; k < idx.size(); ++k) diffs.push_back(sub(pts[idx[k]], pts[idx[0]]));
  return rank_of(diffs, tol);
}

template <class S>
struct HullFacet {
  Row<S> normal;  // outward; unit in numeric mode
  S offset;
  std::vector<std::size_t> verts;
};

template <class S>
struct Hull {
  Rows<S> vertices;  // lexicographically sorted
  std::vector<HullFacet<S>> facets;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> simplices;
  S abs_det_sum = S(0);
};

template <class S>
void triangulate_face(const Rows<S>& verts, const std::vector<std::vector<std::size_t>>& facet_sets,
                      const std::vector<std::size_t>& face, std::size_t k, double tol,
                      std::vector<std::vector<std::size_t>>& out) {
  if (face.size() == k + 1) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.front();  // faces are kept sorted, vertices are lex-sorted
  std::set<std::vector<std::size_t>> subfaces;
  for (const auto& fs : facet_sets) {
    std::vector<std::size_t> g;
    std::set_intersection(face.begin(), face.end(), fs.begin(), fs.end(), std::back_inserter(g));
    if (g.size() < k || g.size() == face.size()) continue;
    if (std::binary_search(g.begin(), g.end(), apex)) continue;
    if (affine_rank(verts, g, tol) != k - 1) continue;
    subfaces.insert(std::move(g));
  }
  for (const auto& g : subfaces) {
    std::vector<std::vector<std::size_t>> sub_simplices;
    triangulate_face(verts, facet_sets, g, k - 1, tol, sub_simplices);
    for (auto& s : sub_simplices) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

template <class S>
Hull<S> hull_1d(Rows<S> pts) {
  std::sort(pts.begin(), pts.end());
  Hull<S> h;
  h.vertices = {pts.front(), pts.back()};
  h.facets.push_back({Row<S>{S(-1)}, -pts.front()[0], {0}});
  h.facets.push_back({Row<S>{S(1)}, pts.back()[0], {1}});
  h.edges = {{0, 1}};
  h.simplices = {{0, 1}};
  h.abs_det_sum = pts.back()[0] - pts.front()[0];
  return h;
}

template <class S>
Hull<S> compute_hull(const Rows<S>& input) {
  if (input.empty()) throw Error(ErrorCode::EmptyInput, "no points given");
  const std::size_t d = input.front().size();
  if (d == 0) throw Error(ErrorCode::DegenerateInput, "zero-dimensional points");
  for (const auto& p : input)
    if (p.size() != d) throw Error(ErrorCode::InvalidArgument, "points of mixed dimension");
  if (d > kMaxHullDim)
    throw Error(ErrorCode::DimensionTooLarge,
                "facet enumeration supports d <= " + std::to_string(kMaxHullDim) + ", got " + std::to_string(d));
  Rows<S> pts = dedup(input);
  const auto tol = tolerances<S>(scale_of(pts));
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  if (pts.size() < d + 1 || affine_rank(pts, all, tol.affine) < d)
    throw Error(ErrorCode::DegenerateInput, "points lie in a proper affine subspace");
  if (d == 1) return hull_1d(pts);

  const std::size_t n = pts.size();
  std::vector<HullFacet<S>> facets;
  std::vector<std::vector<bool>> on_facet;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    bool known = false;
    for (const auto& mask : on_facet) {
      known = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return mask[i]; });
      if (known) break;
    }
    if (!known) {
      Rows<S> rows;
      for (std::size_t k = 1; k < d; ++k) rows.push_back(sub(pts[idx[k]], pts[idx[0]]));
      Row<S> normal(d);
      bool nonzero = false;
      for (std::size_t j = 0; j < d; ++j) {
        Rows<S> minor(d - 1, Row<S>(d - 1));
        for (std::size_t r = 0; r + 1 < d; ++r)
          for (std::size_t c = 0, cc = 0; c < d; ++c)
            if (c != j) minor[r][cc++] = rows[r][c];
        S det = d == 1 ? S(1) : det_of(minor, 0.0);
        normal[j] = (j % 2 == 0) ? det : S(-det);
        if (Field<S>::sign(normal[j], 0.0) != 0) nonzero = true;
      }
      if constexpr (std::is_same_v<S, double>) {
        double len = 0;
        for (double x : normal) len += x * x;
        len = std::sqrt(len);
        nonzero = len > 1e-14 * std::pow(scale_of(pts), static_cast<double>(d - 1));
        if (nonzero)
          for (double& x : normal) x /= len;
      }
      if (nonzero) {
        S base = dot_of(normal, pts[idx[0]]);
        int pos = 0, neg = 0;
        std::vector<bool> mask(n, false);
        for (std::size_t p = 0; p < n; ++p) {
          int s = Field<S>::sign(dot_of(normal, pts[p]) - base, tol.plane);
          if (s > 0) ++pos;
          else if (s < 0) ++neg;
          else mask[p] = true;
        }
        if (pos == 0 || neg == 0) {
          if (pos > 0) {
            for (auto& x : normal) x = -x;
            base = -base;
          }
          HullFacet<S> f{normal, base, {}};
          for (std::size_t p = 0; p < n; ++p)
            if (mask[p]) f.verts.push_back(p);
          facets.push_back(std::move(f));
          on_facet.push_back(std::move(mask));
        }
      }
    }
    // next combination
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }

  // Extreme points lie on d facets with independent normals.
  std::vector<std::size_t> extreme;
  for (std::size_t p = 0; p < n; ++p) {
    Rows<S> normals;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (on_facet[f][p]) normals.push_back(facets[f].normal);
    if (normals.size() >= d && rank_of(normals, tol.rank) == d) extreme.push_back(p);
  }
  std::sort(extreme.begin(), extreme.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  std::vector<std::size_t> remap(n, n);
  Hull<S> h;
  for (std::size_t k = 0; k < extreme.size(); ++k) {
    remap[extreme[k]] = k;
    h.vertices.push_back(pts[extreme[k]]);
  }
  for (auto& f : facets) {
    std::vector<std::size_t> vs;
    for (auto p : f.verts)
      if (remap[p] != n) vs.push_back(remap[p]);
    std::sort(vs.begin(), vs.end());
    f.verts = std::move(vs);
    h.facets.push_back(std::move(f));
  }
  std::sort(h.facets.begin(), h.facets.end(),
            [](const HullFacet<S>& a, const HullFacet<S>& b) { return a.verts < b.verts; });

  const std::size_t nv = h.vertices.size();
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& f : h.facets) facet_sets.push_back(f.verts);
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t f = 0; f < facet_sets.size(); ++f)
    for (auto v : facet_sets[f]) incident[v].push_back(f);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      std::vector<std::size_t> shared;
      std::set_intersection(incident[a].begin(), incident[a].end(), incident[b].begin(), incident[b].end(),
                            std::back_inserter(shared));
      if (shared.size() + 1 < d) continue;
      Rows<S> normals;
      for (auto f : shared) normals.push_back(h.facets[f].normal);
      if (rank_of(normals, tol.rank) == d - 1) h.edges.emplace_back(a, b);
    }

  std::vector<std::size_t> whole(nv);
  std::iota(whole.begin(), whole.end(), 0);
  triangulate_face(h.vertices, facet_sets, whole, d, tol.affine, h.simplices);
  for (const auto& s : h.simplices) {
    Rows<S> m;
    for (std::size_t k = 1; k <= d; ++k) m.push_back(sub(h.vertices[s[k]], h.vertices[s[0]]));
    S det = det_of(m, 0.0);
    h.abs_det_sum += Field<S>::sign(det, 0.0) < 0 ? S(-det) : det;
  }
  return h;
}

template <class S>
std::vector<std::size_t> extreme_indices(const Rows<S>& pts) {
  // pts already deduplicated
  const auto tol = tolerances<S>(scale_of(pts));
  if (pts.size() <= 1) return pts.empty() ? std::vector<std::size_t>{} : std::vector<std::size_t>{0};
  Rows<S> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back(sub(pts[k], pts[0]));
  auto piv = eliminate(diffs, tol.affine);
  const std::size_t r = piv.size();
  Rows<S> reduced;
  for (const auto& p : pts) {
    Row<S> q;
    for (auto c : piv) q.push_back(p[c]);
    reduced.push_back(std::move(q));
  }
  if (r == 0) return {0};
  auto h = compute_hull(reduced);
  std::vector<std::size_t> out;
  for (const auto& v : h.vertices)
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      bool same = true;
      for (std::size_t c = 0; c < r && same; ++c) same = Field<S>::sign(reduced[i][c] - v[c], kDedupTol) == 0;
      if (same) {
        out.push_back(i);
        break;
      }
    }
  return out;
}

double factorial(std::size_t d) {
  double f = 1;
  for (std::size_t k = 2; k <= d; ++k) f *= static_cast<double>(k);
  return f;
}

Vec to_vec(const Row<double>& r) { return Eigen::Map<const Vec>(r.data(), static_cast<Eigen::Index>(r.size())); }
Row<double> to_row(const Vec& v) { return Row<double>(v.data(), v.data() + v.size()); }

}  // namespace

struct PolytopeBuilder {
  static void fill_common(Polytope& p, std::size_t d, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                          const std::vector<std::vector<std::size_t>>& simplices) {
    p.dim_ = d;
    p.edges_ = edges;
    p.simplices_ = simplices;
    p.adjacency_.assign(p.vertices_.size(), {});
    for (auto [a, b] : edges) {
      p.adjacency_[a].push_back(b);
      p.adjacency_[b].push_back(a);
    }
    for (auto& adj : p.adjacency_) std::sort(adj.begin(), adj.end());
  }

  static Polytope from(const Hull<Rat>& h) {
    Polytope p;
    p.exact_ = true;
    const std::size_t d = h.vertices.front().size();
    p.exact_vertices_ = h.vertices;
    for (const auto& v : h.vertices) p.vertices_.push_back(to_double(v));
    for (const auto& f : h.facets) {
      Facet out;
      out.exact_normal = primitive_integer(f.normal);
      RatVector en(out.exact_normal.begin(), out.exact_normal.end());
      out.exact_offset = dot(en, h.vertices[f.verts.front()]);
      out.normal = to_double(en);
      double len = out.normal.norm();
      out.normal /= len;
      out.offset = out.exact_offset.get_d() / len;
      out.vertices = f.verts;
      p.facets_.push_back(std::move(out));
    }
    fill_common(p, d, h.edges, h.simplices);
    Rat vol = h.abs_det_sum;
    for (std::size_t k = 2; k <= d; ++k) vol /= static_cast<long>(k);
    p.exact_volume_ = vol;
    p.volume_ = vol.get_d();
    return p;
  }

  static Polytope from(const Hull<double>& h) {
    Polytope p;
    p.exact_ = false;
    const std::size_t d = h.vertices.front().size();
    for (const auto& v : h.vertices) p.vertices_.push_back(to_vec(v));
    for (const auto& f : h.facets) {
      Facet out;
      out.normal = to_vec(f.normal);
      out.offset = f.offset;
      out.vertices = f.verts;
      p.facets_.push_back(std::move(out));
    }
    fill_common(p, d, h.edges, h.simplices);
    p.volume_ = h.abs_det_sum / factorial(d);
    return p;
  }
};

const std::vector<RatVector>& Polytope::exact_vertices() const {
  if (!exact_) throw Error(ErrorCode::NumericModeUnsupported, "polytope is in numeric mode");
  return exact_vertices_;
}

Polytope hull_from_vertices(const std::vector<RatVector>& points) {
  return PolytopeBuilder::from(compute_hull<Rat>(points));
}

Polytope hull_from_vertices(const std::vector<Vec>& points) {
  Rows<double> rows;
  for (const auto& v : points) {
    if (!v.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    rows.push_back(to_row(v));
  }
  return PolytopeBuilder::from(compute_hull<double>(rows));
}

namespace {

template <class S>
Rows<S> halfspace_vertices(const Rows<S>& a, const Row<S>& b, double feas_tol) {
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "no halfspaces given");
  const std::size_t d = a.front().size();
  const std::size_t r = a.size();
  if (r < d + 1) throw Error(ErrorCode::DegenerateInput, "too few halfspaces for a bounded polytope");
  Rows<S> pts;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Rows<S> sa;
    Row<S> sb;
    for (auto i : idx) {
      sa.push_back(a[i]);
      sb.push_back(b[i]);
    }
    if (auto x = solve(sa, sb, 0.0)) {
      bool feasible = true;
      for (std::size_t i = 0; i < r && feasible; ++i)
        feasible = Field<S>::sign(dot_of(a[i], *x) - b[i], feas_tol) <= 0;
      if (feasible) pts.push_back(std::move(*x));
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == r - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (pts.empty()) throw Error(ErrorCode::DegenerateInput, "halfspace system has no vertices");
  return pts;
}

}  // namespace

Polytope polytope_from_halfspaces(const RatMatrix& a, const RatVector& b) {
  Rows<Rat> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  return hull_from_vertices(halfspace_vertices<Rat>(rows, b, 0));
}

Polytope polytope_from_halfspaces(const Eigen::MatrixXd& a, const Vec& b) {
  Rows<double> rows;
  for (Eigen::Index i = 0; i < a.rows(); ++i) rows.push_back(to_row(a.row(i).transpose()));
  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  auto pts = halfspace_vertices<double>(rows, to_row(b), 1e-10 * scale);
  std::vector<Vec> vs;
  for (const auto& p : pts) vs.push_back(to_vec(p));
  return hull_from_vertices(vs);
}

std::vector<Vec> extreme_points(const std::vector<Vec>& points) {
  Rows<double> rows;
  for (const auto& v : points) rows.push_back(to_row(v));
  rows = dedup(rows);
  std::vector<Vec> out;
  for (auto i : extreme_indices(rows)) out.push_back(to_vec(rows[i]));
  return out;
}

std::vector<RatVector> extreme_points(const std::vector<RatVector>& points) {
  Rows<Rat> rows = dedup(points);
  std::vector<RatVector> out;
  for (auto i : extreme_indices(rows)) out.push_back(rows[i]);
  return out;
}

bool is_simple(const Polytope& p) {
  return std::all_of(p.adjacency().begin(), p.adjacency().end(),
                     [&](const auto& adj) { return adj.size() == p.dim(); });
}

Rationality rationality(const std::vector<std::vector<std::optional<Rat>>>& coords) {
  Rationality r;
  if (coords.empty()) throw Error(ErrorCode::EmptyInput, "no vertices given");
  const std::size_t d = coords.front().size();
  r.per_axis.assign(d, true);
  Int n = 1;
  for (const auto& v : coords)
    for (std::size_t k = 0; k < d; ++k) {
      if (!v[k]) {
        r.per_axis[k] = false;
        continue;
      }
      mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), v[k]->get_den_mpz_t());
    }
  r.fully_rational = std::all_of(r.per_axis.begin(), r.per_axis.end(), [](bool b) { return b; });
  if (r.fully_rational) r.common_denominator = n;
  return r;
}

Rationality rationality(const Polytope& p) {
  std::vector<std::vector<std::optional<Rat>>> coords;
  for (const auto& v : p.exact_vertices()) coords.emplace_back(v.begin(), v.end());
  return rationality(coords);
}

bool axis_edge_condition(const Polytope& p, std::size_t axis) {
  if (axis >= p.dim())
    throw Error(ErrorCode::AxisOutOfRange,
                "axis " + std::to_string(axis) + " out of range for dimension " + std::to_string(p.dim()));
  for (auto [a, b] : p.edges()) {
    bool flat = p.exact() ? p.exact_vertices()[a][axis] == p.exact_vertices()[b][axis]
                          : std::fabs(p.vertices()[a](static_cast<Eigen::Index>(axis)) -
                                      p.vertices()[b](static_cast<Eigen::Index>(axis))) <= kDedupTol;
    if (flat) return false;
  }
  return true;
}

EdgeFan edge_fan(const Polytope& p, std::size_t v) {
  if (v >= p.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
  const auto& adj = p.adjacency()[v];
  if (adj.size() != p.dim())
    throw Error(ErrorCode::NotSimpleAtVertex, "vertex " + std::to_string(v) + " has " +
                                                  std::to_string(adj.size()) + " neighbours in dimension " +
                                                  std::to_string(p.dim()));
  EdgeFan fan;
  fan.vertex = v;
  fan.neighbors = adj;
  const auto d = static_cast<Eigen::Index>(p.dim());
  Eigen::MatrixXd m(d, d);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    fan.vectors.push_back(p.vertices()[adj[i]] - p.vertices()[v]);
    m.col(static_cast<Eigen::Index>(i)) = fan.vectors.back();
  }
  if (p.exact()) {
    RatMatrix em(p.dim(), p.dim());
    for (std::size_t i = 0; i < adj.size(); ++i) {
      fan.exact_vectors.push_back(p.exact_vertices()[adj[i]] - p.exact_vertices()[v]);
      for (std::size_t r = 0; r < p.dim(); ++r) em(r, i) = fan.exact_vectors.back()[r];
    }
    Rat det = determinant(em);
    fan.exact_abs_det = abs(det);
    fan.abs_det = fan.exact_abs_det->get_d();
  } else {
    fan.abs_det = std::fabs(m.determinant());
  }
  return fan;
}

Polytope affine_map(const Polytope& p, const RatMatrix& m, const RatVector& t) {
  if (m.rows() != p.dim() || m.cols() != p.dim() || t.size() != p.dim())
    throw Error(ErrorCode::InvalidArgument, "affine map shape does not match polytope dimension");
  if (determinant(m) == 0) throw Error(ErrorCode::SingularMatrix, "affine map matrix is singular");
  std::vector<RatVector> image;
  for (const auto& v : p.exact_vertices()) image.push_back(m * v + t);
  return hull_from_vertices(image);
}

Polytope affine_map(const Polytope& p, const Eigen::MatrixXd& m, const Vec& t) {
  const auto d = static_cast<Eigen::Index>(p.dim());
  if (m.rows() != d || m.cols() != d || t.size() != d)
    throw Error(ErrorCode::InvalidArgument, "affine map shape does not match polytope dimension");
  if (Eigen::FullPivLU<Eigen::MatrixXd>(m).rank() < d)
    throw Error(ErrorCode::SingularMatrix, "affine map matrix is singular");
  std::vector<Vec> image;
  for (const auto& v : p.vertices()) image.push_back(m * v + t);
  return hull_from_vertices(image);
}

namespace {

void check_zonotope_shape(std::size_t rows, std::size_t cols, std::size_t target) {
  if (rows != cols) throw Error(ErrorCode::InvalidArgument, "zonotope matrix must be square");
  if (rows > kMaxZonotopeDim)
    throw Error(ErrorCode::DimensionTooLarge,
                "zonotope projection supports d <= " + std::to_string(kMaxZonotopeDim));
  if (target < 1 || target >= rows)
    throw Error(ErrorCode::InvalidArgument, "target dimension must satisfy 1 <= m <= d-1");
}

template <class S>
Rows<S> minkowski_segments(const Rows<S>& generators) {
  Rows<S> pts{Row<S>(generators.front().size(), S(0))};
  for (const auto& g : generators) {
    Rows<S> next;
    for (const auto& p : pts) {
      Row<S> plus(p.size()), minus(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        plus[i] = p[i] + g[i];
        minus[i] = p[i] - g[i];
      }
      next.push_back(std::move(plus));
      next.push_back(std::move(minus));
    }
    next = dedup(next);
    Rows<S> reduced;
    for (auto i : extreme_indices(next)) reduced.push_back(next[i]);
    pts = std::move(reduced);
  }
  return pts;
}

}  // namespace

Polytope project_zonotope(const RatMatrix& m, std::size_t target) {
  check_zonotope_shape(m.rows(), m.cols(), target);
  if (determinant(m) == 0) throw Error(ErrorCode::SingularMatrix, "zonotope matrix is singular");
  Rows<Rat> gens;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    Row<Rat> g(target);
    for (std::size_t r = 0; r < target; ++r) g[r] = m(r, i);
    gens.push_back(std::move(g));
  }
  return hull_from_vertices(minkowski_segments(gens));
}

Polytope project_zonotope(const Eigen::MatrixXd& m, std::size_t target) {
  check_zonotope_shape(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()), target);
  if (Eigen::FullPivLU<Eigen::MatrixXd>(m).rank() < m.rows())
    throw Error(ErrorCode::SingularMatrix, "zonotope matrix is singular");
  Rows<double> gens;
  for (Eigen::Index i = 0; i < m.cols(); ++i) gens.push_back(to_row(m.col(i).head(static_cast<Eigen::Index>(target))));
  std::vector<Vec> pts;
  for (const auto& p : minkowski_segments(gens)) pts.push_back(to_vec(p));
  return hull_from_vertices(pts);
}

}  // namespace orthoexp
