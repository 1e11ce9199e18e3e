#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <boost/math/special_functions/sin_pi.hpp>

#include "orthoexp/error.hpp"
#include "orthoexp/quadrature.hpp"
#include "orthoexp/special_functions.hpp"
#include "orthoexp/zonotope.hpp"

namespace orthoexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourierCutoff = 1000.0;
constexpr std::size_t kPanelNodes = 30;

}  // namespace

std::string_view to_string(WeightMethod m) {
  switch (m) {
    case WeightMethod::SlicePolytope: return "slice_polytope";
    case WeightMethod::LineLength: return "line_length";
    case WeightMethod::FourierSlice: return "fourier_slice";
  }
  return "unknown";
}

bool is_orthogonal(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

double interior_param(const Vec& u, const Vec& v) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (v(i) == 0) {
      if (std::fabs(u(i)) >= 1) throw Error(ErrorCode::NoIntersection, "line misses the open cube");
      continue;
    }
    double a = (-1 - u(i)) / v(i);
    double b = (1 - u(i)) / v(i);
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  if (!(lo < hi)) throw Error(ErrorCode::NoIntersection, "line misses the open cube");
  if (std::isinf(lo) && std::isinf(hi)) return 0;
  return 0.5 * (lo + hi);
}

double line_cube_length(const Vec& u, const Vec& v) {
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::fabs(u(i)) >= 1) throw Error(ErrorCode::NotInterior, "base point is not inside the cube");
    if (v(i) == 0) continue;
    for (double r : {v(i) / (1 - u(i)), -v(i) / (1 + u(i))}) {
      mx = std::max(mx, r);
      mn = std::min(mn, r);
    }
  }
  if (std::isinf(mx)) throw Error(ErrorCode::InvalidArgument, "direction vector is zero");
  const double t1 = 1 / mx;
  const double t2 = 1 / mn;
  return std::fabs(t1 - t2) * v.norm();
}

WeightEvaluator::WeightEvaluator(ZonotopeSpec spec, WeightMethod method)
    : spec_(std::move(spec)), method_(method) {
  inverse_ = spec_.exact_matrix ? inverse(*spec_.exact_matrix).to_double() : spec_.matrix.inverse();
  const std::size_t d = spec_.d();
  if (method_ == WeightMethod::LineLength && (spec_.m + 1 != d || !is_orthogonal(spec_.matrix)))
    throw Error(ErrorCode::MethodUnavailable, "line_length needs m = d-1 and an orthogonal M");
  if (method_ == WeightMethod::FourierSlice && (spec_.m != 1 || !is_orthogonal(spec_.matrix)))
    throw Error(ErrorCode::MethodUnavailable, "fourier_slice needs m = 1 and an orthogonal M");
}

double WeightEvaluator::operator()(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != spec_.m)
    throw Error(ErrorCode::InvalidArgument, "weight argument must have m coordinates");
  switch (method_) {
    case WeightMethod::SlicePolytope: return slice_polytope(x);
    case WeightMethod::LineLength: return line_length(x);
    case WeightMethod::FourierSlice: return fourier_slice(x);
  }
  return 0;
}

double WeightEvaluator::slice_polytope(const Vec& x) const {
  const auto d = static_cast<Eigen::Index>(spec_.d());
  const auto m = static_cast<Eigen::Index>(spec_.m);
  const Eigen::MatrixXd by = inverse_.rightCols(d - m);
  const Vec shift = inverse_.leftCols(m) * x;
  // |shift + by y|_inf <= 1
  Eigen::MatrixXd a(2 * d, d - m);
  Vec b(2 * d);
  a.topRows(d) = by;
  a.bottomRows(d) = -by;
  b.head(d) = Vec::Ones(d) - shift;
  b.tail(d) = Vec::Ones(d) + shift;
  if (d - m == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < 2 * d; ++i) {
      if (a(i, 0) > 0) hi = std::min(hi, b(i) / a(i, 0));
      else if (a(i, 0) < 0) lo = std::max(lo, b(i) / a(i, 0));
      else if (b(i) < 0) return 0;
    }
    return std::max(0.0, hi - lo);
  }
  try {
    return polytope_from_halfspaces(a, b).volume();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateInput || e.code() == ErrorCode::EmptyInput) return 0;
    throw;
  }
}

double WeightEvaluator::line_length(const Vec& x) const {
  const auto d = static_cast<Eigen::Index>(spec_.d());
  Vec full = Vec::Zero(d);
  full.head(d - 1) = x;
  const Vec u = spec_.matrix.transpose() * full;
  const Vec v = spec_.matrix.transpose().col(d - 1);
  double s = 0;
  try {
    s = interior_param(u, v);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoIntersection) return 0;
    throw;
  }
  return line_cube_length(u + s * v, v);
}

double WeightEvaluator::fourier_slice(const Vec& x) const {
  const Vec a = spec_.matrix.row(0).transpose();
  const double x1 = x(0);
  std::vector<double> nz;
  int zero_count = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::fabs(a(k)) < 1e-14) ++zero_count;
    else nz.push_back(a(k));
  }
  const double zero_factor = std::pow(2.0, zero_count);
  auto integrand = [&](double lam) {
    double prod = zero_factor;
    for (double ak : nz) prod *= std::sin(2 * kPi * lam * ak) / (kPi * lam * ak);
    return prod * std::cos(2 * kPi * lam * x1);
  };
  const GaussRule& g = gauss_legendre(kPanelNodes);
  double body = 0;
  for (int panel = 0; panel < static_cast<int>(kFourierCutoff); ++panel)
    for (std::size_t i = 0; i < g.nodes.size(); ++i) body += 0.5 * g.weights[i] * integrand(panel + 0.5 * (g.nodes[i] + 1));

  // tail: expand prod sin(2 pi lam a_k) cos(2 pi lam x) into exponentials e^{i beta lam}
  const int kk = static_cast<int>(nz.size());
  double denom = zero_factor;
  for (double ak : nz) denom /= kPi * ak;
  std::map<long long, std::pair<double, Complex>> terms;  // keyed by rounded beta
  const Complex coef0 = std::pow(Complex(0, 2), -kk) * 0.5;
  for (unsigned mask = 0; mask < (1u << (kk + 1)); ++mask) {
    double beta = 0;
    double sign = 1;
    for (int k = 0; k < kk; ++k) {
      const double s = (mask >> k) & 1u ? -1.0 : 1.0;
      sign *= s;
      beta += s * nz[static_cast<std::size_t>(k)];
    }
    beta += ((mask >> kk) & 1u ? -1.0 : 1.0) * x1;
    beta *= 2 * kPi;
    auto key = static_cast<long long>(std::llround(beta * 1e9));
    auto& slot = terms[key];
    slot.first = beta;
    slot.second += coef0 * sign;
  }
  Complex tail = 0;
  for (const auto& [key, term] : terms) {
    const auto& [beta, c] = term;
    if (std::abs(c) < 1e-15) continue;
    if (key == 0) {
      if (kk == 1) continue;
      tail += c * std::pow(kFourierCutoff, 1 - kk) / (kk - 1.0);
      continue;
    }
    tail += c * std::pow(kFourierCutoff, 1 - kk) * expint_en(kk, Complex(0, -beta * kFourierCutoff));
  }
  return std::max(0.0, 2 * (body + denom * tail.real()));
}

double weight_monte_carlo(const ZonotopeSpec& spec, const Vec& x, std::size_t samples, std::uint64_t seed) {
  const std::size_t d = spec.d();
  const std::size_t m = spec.m;
  const std::size_t k = d - m;
  const Eigen::MatrixXd inv = spec.exact_matrix ? inverse(*spec.exact_matrix).to_double() : spec.matrix.inverse();
  const Vec shift = inv.leftCols(static_cast<Eigen::Index>(m)) * x;
  const Eigen::MatrixXd by = inv.rightCols(static_cast<Eigen::Index>(k));
  // fiber coordinates are rows m..d-1 of M c with c in C_d
  Vec bound(static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) bound(static_cast<Eigen::Index>(j)) = spec.matrix.row(static_cast<Eigen::Index>(m + j)).cwiseAbs().sum();
  const auto strata = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(samples), 1.0 / static_cast<double>(k)) + 1e-9));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::size_t> cell(k, 0);
  std::size_t hits = 0, total = 0;
  Vec y(static_cast<Eigen::Index>(k));
  while (true) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      y(jj) = bound(jj) * (-1 + 2 * (static_cast<double>(cell[j]) + unif(rng)) / static_cast<double>(strata));
    }
    if ((shift + by * y).cwiseAbs().maxCoeff() <= 1) ++hits;
    ++total;
    std::size_t j = k;
    while (j > 0 && cell[j - 1] == strata - 1) --j;
    if (j == 0) break;
    ++cell[j - 1];
    for (std::size_t t = j; t < k; ++t) cell[t] = 0;
  }
  double box = 1;
  for (Eigen::Index j = 0; j < bound.size(); ++j) box *= 2 * bound(j);
  return box * static_cast<double>(hits) / static_cast<double>(total);
}

struct ProjectedWeightModel::Impl {
  // W restricted to one simplex of a cell, as sum_beta c_beta b^beta over
  // barycentric monomials of total degree d - m.
  struct Piece {
    std::vector<Vec> vertices;
    double jac = 0;  // |det| = m! vol
    Vec coeffs;
  };

  ZonotopeSpec spec;
  WeightEvaluator weight;
  Polytope zonotope;
  std::vector<std::vector<int>> exponents;
  std::vector<double> exponent_factorials;
  std::vector<Piece> pieces;
  std::size_t cell_count = 0;
  double fit_residual = 0;
  double mass = 0;

  explicit Impl(const ZonotopeSpec& s)
      : spec(s),
        weight(s, WeightMethod::SlicePolytope),
        zonotope(s.exact_matrix ? project_zonotope(*s.exact_matrix, s.m) : project_zonotope(s.matrix, s.m)) {
    build_exponents();
    auto cells = build_cells();
    cell_count = cells.size();
    for (const auto& c : cells) fit_cell(c);
    mass = integrate(Vec::Zero(static_cast<Eigen::Index>(spec.m))).real();
  }

  void build_exponents() {
    const std::size_t n = spec.m + 1;
    const int deg = static_cast<int>(spec.d() - spec.m);
    std::vector<int> e(n, 0);
    while (true) {
      int total = 0;
      for (int x : e) total += x;
      if (total == deg) {
        exponents.push_back(e);
        double f = 1;
        for (int x : e)
          for (int k = 2; k <= x; ++k) f *= k;
        exponent_factorials.push_back(f);
      }
      std::size_t i = n;
      while (i > 0 && e[i - 1] == deg) --i;
      if (i == 0) break;
      ++e[i - 1];
      for (std::size_t j = i; j < n; ++j) e[j] = 0;
    }
  }

  std::vector<std::pair<Vec, double>> arrangement() const {
    const std::size_t d = spec.d();
    const std::size_t m = spec.m;
    const auto mm = static_cast<Eigen::Index>(m);
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < d; ++k) gens.push_back(spec.matrix.col(static_cast<Eigen::Index>(k)).head(mm));
    std::map<std::vector<long long>, std::pair<Vec, double>> planes;
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m - 1), true);
    do {
      Vec normal;
      if (m == 1) {
        normal = Vec::Ones(1);
      } else {
        Eigen::MatrixXd rows(mm - 1, mm);
        for (std::size_t k = 0, r = 0; k < d; ++k)
          if (pick[k]) rows.row(static_cast<Eigen::Index>(r++)) = gens[k].transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
        lu.setThreshold(1e-10);
        if (lu.rank() < mm - 1) continue;
        normal = lu.kernel().col(0).normalized();
      }
      for (Eigen::Index i = 0; i < normal.size(); ++i)
        if (std::fabs(normal(i)) > 1e-12) {
          if (normal(i) < 0) normal = -normal;
          break;
        }
      std::vector<std::size_t> rest;
      for (std::size_t k = 0; k < d; ++k)
        if (!pick[k]) rest.push_back(k);
      for (unsigned long mask = 0; mask < (1ul << rest.size()); ++mask) {
        double c = 0;
        for (std::size_t t = 0; t < rest.size(); ++t) c += ((mask >> t) & 1ul ? -1.0 : 1.0) * normal.dot(gens[rest[t]]);
        std::vector<long long> key;
        for (Eigen::Index i = 0; i < normal.size(); ++i) key.push_back(std::llround(normal(i) * 1e9));
        key.push_back(std::llround(c * 1e9));
        planes.emplace(std::move(key), std::make_pair(normal, c));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::vector<std::pair<Vec, double>> out;
    for (auto& [key, plane] : planes) out.push_back(plane);
    return out;
  }

  static std::pair<Eigen::MatrixXd, Vec> hrep(const Polytope& p) {
    const auto& f = p.facets();
    Eigen::MatrixXd a(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(p.dim()));
    Vec b(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
      a.row(static_cast<Eigen::Index>(i)) = f[i].normal.transpose();
      b(static_cast<Eigen::Index>(i)) = f[i].offset;
    }
    return {a, b};
  }

  std::vector<Polytope> build_cells() const {
    std::vector<Polytope> current{zonotope};
    double scale = 1;
    for (const auto& v : zonotope.vertices()) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;
    for (const auto& [normal, offset] : arrangement()) {
      std::vector<Polytope> next;
      for (auto& cell : current) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& v : cell.vertices()) {
          const double s = normal.dot(v) - offset;
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        if (!(lo < -tol && hi > tol)) {
          next.push_back(std::move(cell));
          continue;
        }
        auto [a, b] = hrep(cell);
        for (double side : {1.0, -1.0}) {
          Eigen::MatrixXd a2(a.rows() + 1, a.cols());
          Vec b2(b.size() + 1);
          a2.topRows(a.rows()) = a;
          a2.row(a.rows()) = side * normal.transpose();
          b2.head(b.size()) = b;
          b2(b.size()) = side * offset;
          try {
            next.push_back(polytope_from_halfspaces(a2, b2));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateInput) throw;
          }
        }
      }
      current = std::move(next);
    }
    return current;
  }

  double monomial(const Vec& bary, std::size_t term) const {
    double v = 1;
    for (std::size_t j = 0; j < exponents[term].size(); ++j)
      v *= std::pow(bary(static_cast<Eigen::Index>(j)), exponents[term][j]);
    return v;
  }

  void fit_cell(const Polytope& cell) {
    const std::size_t m = spec.m;
    const SimplexRule& rule = collapsed_simplex_rule(m, spec.d() - m + 2);
    const auto nodes = static_cast<Eigen::Index>(rule.barycentric.size());
    const auto terms = static_cast<Eigen::Index>(exponents.size());
    Eigen::MatrixXd vand(nodes, terms);
    for (Eigen::Index i = 0; i < nodes; ++i)
      for (Eigen::Index t = 0; t < terms; ++t)
        vand(i, t) = monomial(rule.barycentric[static_cast<std::size_t>(i)], static_cast<std::size_t>(t));
    const auto qr = vand.colPivHouseholderQr();
    for (const auto& s : cell.simplices()) {
      Piece piece;
      Eigen::MatrixXd edges(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t j = 0; j <= m; ++j) piece.vertices.push_back(cell.vertices()[s[j]]);
      for (std::size_t j = 1; j <= m; ++j) edges.col(static_cast<Eigen::Index>(j - 1)) = piece.vertices[j] - piece.vertices[0];
      piece.jac = std::fabs(edges.determinant());
      Vec w(nodes);
      for (Eigen::Index i = 0; i < nodes; ++i) {
        Vec x = Vec::Zero(static_cast<Eigen::Index>(m));
        for (std::size_t j = 0; j <= m; ++j)
          x += rule.barycentric[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(j)) * piece.vertices[j];
        w(i) = weight(x);
      }
      piece.coeffs = qr.solve(w);
      fit_residual = std::max(fit_residual, (vand * piece.coeffs - w).cwiseAbs().maxCoeff());
      pieces.push_back(std::move(piece));
    }
  }

  // int_S b^beta e^{-i<omega, x>} dx = |det| beta! i^N f[t with t_j repeated beta_j + 1 times],
  // f(t) = e^{-it}, t_j = <omega, v_j>, N = m + |beta|.
  Complex integrate(const Vec& lambda) const {
    const Vec omega = -lambda;
    const int n_total = static_cast<int>(spec.m + spec.d() - spec.m);
    const Complex phase = std::pow(Complex(0, 1), n_total);
    Complex total = 0;
    std::vector<double> nodes;
    for (const auto& piece : pieces) {
      std::vector<double> t;
      for (const auto& v : piece.vertices) t.push_back(omega.dot(v));
      Complex sum = 0;
      for (std::size_t term = 0; term < exponents.size(); ++term) {
        nodes.clear();
        for (std::size_t j = 0; j < t.size(); ++j) nodes.insert(nodes.end(), static_cast<std::size_t>(exponents[term][j] + 1), t[j]);
        sum += piece.coeffs(static_cast<Eigen::Index>(term)) * exponent_factorials[term] * exp_divided_difference(nodes);
      }
      total += piece.jac * phase * sum;
    }
    return total;
  }
};

ProjectedWeightModel::ProjectedWeightModel(const ZonotopeSpec& spec) : impl_(std::make_unique<Impl>(spec)) {}
ProjectedWeightModel::~ProjectedWeightModel() = default;
ProjectedWeightModel::ProjectedWeightModel(ProjectedWeightModel&&) noexcept = default;
ProjectedWeightModel& ProjectedWeightModel::operator=(ProjectedWeightModel&&) noexcept = default;

Complex ProjectedWeightModel::integrate(const Vec& lambda) const {
  if (static_cast<std::size_t>(lambda.size()) != impl_->spec.m)
    throw Error(ErrorCode::InvalidArgument, "frequency must have m coordinates");
  return impl_->integrate(lambda);
}
double ProjectedWeightModel::mass() const { return impl_->mass; }
double ProjectedWeightModel::fit_residual() const { return impl_->fit_residual; }
std::size_t ProjectedWeightModel::num_cells() const { return impl_->cell_count; }
const Polytope& ProjectedWeightModel::zonotope() const { return impl_->zonotope; }

WeightedOrthogonality weighted_orthogonality_check(const ZonotopeSpec& spec, const KernelBasis& kb,
                                                   const LambdaData& data, const ProjectedWeightModel& model,
                                                   const Vec& lambda, double tol) {
  const Vec alpha = data.sigma.transpose().fullPivLu().solve(lambda / kPi);
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (std::fabs(alpha(i) - std::round(alpha(i))) > 1e-6)
      throw Error(ErrorCode::LambdaNotInSet, "frequency is not pi times an integer combination of the sigma_i");
  WeightedOrthogonality out;
  out.k.assign(spec.d(), Int(0));
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    const Int a(static_cast<long>(std::llround(alpha(i))));
    for (std::size_t j = 0; j < spec.d(); ++j) out.k[j] += a * kb.rows[static_cast<std::size_t>(i)][j];
  }
  double prod = 1;
  for (const auto& kj : out.k) {
    if (kj == 0) {
      prod *= 2;
      continue;
    }
    const double x = kj.get_d();
    prod *= 2 * boost::math::sin_pi(x) / (kPi * x);
  }
  out.exact_residual = std::fabs(prod);
  out.projected_integral = model.integrate(lambda);
  out.projected_residual = std::abs(out.projected_integral);
  out.mass = model.mass();
  out.pass = out.projected_residual <= tol * out.mass;
  return out;
}

}  // namespace orthoexp
