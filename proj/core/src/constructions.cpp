#include "orthoexp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_set>

#include "orthoexp/error.hpp"

namespace orthoexp {

namespace {

std::int64_t to_int64(const Int& x) {
  if (!x.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "integer coordinate exceeds 64 bits");
  return x.get_si();
}

void require_simple_rational(const Polytope& p) {
  if (!p.exact()) throw Error(ErrorCode::NotRational, "construction needs exact rational vertices");
  if (!is_simple(p)) throw Error(ErrorCode::NotSimple, "construction needs a simple polytope");
}

// Visits the integer points of sup-norm exactly r in lexicographic order.
template <class F>
bool for_each_in_shell(std::size_t d, std::int64_t r, F&& visit) {
  IntPoint k(d, -r);
  while (true) {
    bool on_shell = r == 0 || std::any_of(k.begin(), k.end(), [r](std::int64_t x) { return x == r || x == -r; });
    if (on_shell && !visit(k)) return false;
    std::size_t i = d;
    while (i > 0 && k[i - 1] == r) --i;
    if (i == 0) return true;
    ++k[i - 1];
    for (std::size_t j = i; j < d; ++j) k[j] = -r;
  }
}

class Greedy {
 public:
  explicit Greedy(std::vector<Hyperplane0> planes) : planes_(std::move(planes)), forbidden_(planes_.size()) {}

  bool admissible(const IntPoint& k) const {
    for (std::size_t h = 0; h < planes_.size(); ++h)
      if (forbidden_[h].count(value(h, k))) return false;
    return true;
  }

  void accept(const IntPoint& k) {
    for (std::size_t h = 0; h < planes_.size(); ++h) forbidden_[h].insert(value(h, k));
    chosen_.push_back(k);
  }

  const std::vector<IntPoint>& chosen() const { return chosen_; }

 private:
  std::int64_t value(std::size_t h, const IntPoint& k) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += planes_[h].normal[i] * k[i];
    return s;
  }

  std::vector<Hyperplane0> planes_;
  std::vector<std::unordered_set<std::int64_t>> forbidden_;
  std::vector<IntPoint> chosen_;
};

OrthoSet thm21_set(const Polytope& p, std::vector<IntPoint> coords) {
  const Int n = *rationality(p).common_denominator;
  const auto d = static_cast<Eigen::Index>(p.dim());
  return make_ortho_set(Provenance::Thm21, 2 * std::numbers::pi * n.get_d(), Eigen::MatrixXd::Identity(d, d),
                        std::move(coords));
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Thm21: return "thm21";
    case Provenance::Thm22: return "thm22";
    case Provenance::Thm25: return "thm25";
  }
  return "unknown";
}

std::vector<IntPoint> box_points_by_shell(std::size_t d, std::int64_t radius) {
  std::vector<IntPoint> out;
  for (std::int64_t r = 0; r <= radius; ++r)
    for_each_in_shell(d, r, [&](const IntPoint& k) {
      out.push_back(k);
      return true;
    });
  return out;
}

OrthoSet make_ortho_set(Provenance prov, double scale, const Eigen::MatrixXd& basis, std::vector<IntPoint> coords) {
  OrthoSet s;
  s.dim = static_cast<std::size_t>(basis.rows());
  s.provenance = prov;
  s.scale = scale;
  s.basis = basis;
  s.integer_coords = std::move(coords);
  for (const auto& k : s.integer_coords) {
    Vec c(static_cast<Eigen::Index>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) c(static_cast<Eigen::Index>(i)) = static_cast<double>(k[i]);
    s.points.push_back(scale * (basis * c));
  }
  return s;
}

std::vector<Hyperplane0> edge_hyperplanes(const Polytope& p) {
  require_simple_rational(p);
  std::set<Hyperplane0> planes;
  for (auto [a, b] : p.edges()) {
    IntVector dir = primitive_integer(p.exact_vertices()[b] - p.exact_vertices()[a]);
    auto first = std::find_if(dir.begin(), dir.end(), [](const Int& x) { return x != 0; });
    if (*first < 0)
      for (auto& x : dir) x = -x;
    Hyperplane0 h;
    for (const auto& x : dir) h.normal.push_back(to_int64(x));
    planes.insert(std::move(h));
  }
  return {planes.begin(), planes.end()};
}

std::int64_t default_enum_bound(const Polytope& p) {
  require_simple_rational(p);
  return 64 * to_int64(*rationality(p).common_denominator);
}

OrthoSet construct_thm21(const Polytope& p, std::size_t count, std::optional<std::int64_t> enum_bound) {
  Greedy greedy(edge_hyperplanes(p));
  const std::int64_t bound = enum_bound.value_or(default_enum_bound(p));
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "enumeration bound must be nonnegative");
  for (std::int64_t r = 0; r <= bound && greedy.chosen().size() < count; ++r) {
    for_each_in_shell(p.dim(), r, [&](const IntPoint& k) {
      if (greedy.admissible(k)) greedy.accept(k);
      return greedy.chosen().size() < count;
    });
  }
  if (greedy.chosen().size() < count)
    throw Error(ErrorCode::EnumerationExhausted,
                "found " + std::to_string(greedy.chosen().size()) + " of " + std::to_string(count) +
                    " points within sup-norm " + std::to_string(bound) + "; increase the enumeration bound");
  return thm21_set(p, greedy.chosen());
}

OrthoSet construct_thm21_box(const Polytope& p, std::int64_t radius) {
  Greedy greedy(edge_hyperplanes(p));
  for (std::int64_t r = 0; r <= radius; ++r)
    for_each_in_shell(p.dim(), r, [&](const IntPoint& k) {
      if (greedy.admissible(k)) greedy.accept(k);
      return true;
    });
  return thm21_set(p, greedy.chosen());
}

Thm22Result construct_thm22(const Polytope& p, std::size_t axis, std::size_t count) {
  if (axis >= p.dim())
    throw Error(ErrorCode::AxisOutOfRange, "axis " + std::to_string(axis) + " out of range");
  if (!p.exact()) throw Error(ErrorCode::IrrationalAxis, "axis components are not known to be rational");
  auto rat = rationality(p);
  if (!rat.per_axis[axis]) throw Error(ErrorCode::IrrationalAxis, "axis components are not rational");
  if (!axis_edge_condition(p, axis))
    throw Error(ErrorCode::AxisEdgeViolation,
                "an edge lies in a hyperplane x_" + std::to_string(axis + 1) + " = const");
  Int n = 1;
  for (const auto& v : p.exact_vertices()) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), v[axis].get_den_mpz_t());
  const std::size_t d = p.dim();
  RatMatrix scale(d, d);
  for (std::size_t i = 0; i < d; ++i) scale(i, i) = Rat(n);
  Polytope scaled = affine_map(p, scale, RatVector(d, Rat(0)));
  std::vector<IntPoint> coords;
  for (std::size_t j = 0; j < count; ++j) {
    IntPoint k(d, 0);
    k[axis] = static_cast<std::int64_t>(j);
    coords.push_back(std::move(k));
  }
  const auto dd = static_cast<Eigen::Index>(d);
  return {make_ortho_set(Provenance::Thm22, 2 * std::numbers::pi, Eigen::MatrixXd::Identity(dd, dd), std::move(coords)),
          n, std::move(scaled)};
}

NecessaryConditionReport check_thm24(const Polytope& p, const OrthoSet& set, double tol) {
  if (!is_simple(p)) throw Error(ErrorCode::NotSimple, "necessary condition is stated for simple polytopes");
  NecessaryConditionReport report;
  const auto& vs = p.vertices();
  for (const auto& omega : set.points) {
    if (omega.isZero(0)) continue;
    WitnessRecord rec;
    rec.omega = omega;
    for (std::size_t a = 0; a < vs.size() && !rec.witnessed; ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        const double t = omega.dot(vs[a] - vs[b]) / (2 * std::numbers::pi);
        const double m = std::round(t);
        if (std::fabs(t - m) <= tol) {
          rec.witnessed = true;
          rec.v = a;
          rec.v_prime = b;
          rec.m = static_cast<std::int64_t>(m);
          rec.deviation = std::fabs(t - m);
          break;
        }
      }
    report.all_witnessed = report.all_witnessed && rec.witnessed;
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace orthoexp
