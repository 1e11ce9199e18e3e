#include "orthoexp/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "orthoexp/error.hpp"

namespace orthoexp {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

double factorial(unsigned n) {
  double f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

// Complete homogeneous symmetric polynomials h_0..h_max of `y`.
std::vector<double> complete_homogeneous(const std::vector<double>& y, std::size_t max_degree) {
  std::vector<double> h(max_degree + 1, 0.0);
  h[0] = 1;
  for (double yi : y)
    for (std::size_t j = 1; j <= max_degree; ++j) h[j] += yi * h[j - 1];
  return h;
}

// Taylor expansion about the cluster midpoint; valid for any span, used
// when the nodes are within unit distance.
Complex taylor_divided_difference(const std::vector<double>& x) {
  const std::size_t n = x.size() - 1;
  const double c = 0.5 * (x.front() + x.back());
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - c;
  constexpr std::size_t kTerms = 40;
  auto h = complete_homogeneous(y, kTerms);
  Complex sum = 0;
  double inv_fact = 1.0 / factorial(static_cast<unsigned>(n));
  for (std::size_t k = n; k <= n + kTerms; ++k) {
    if (k > n) inv_fact /= static_cast<double>(k);
    sum += i_pow(-static_cast<int>(k)) * (h[k - n] * inv_fact);
  }
  return std::exp(-kI * c) * sum;
}

struct Fan {
  Vec vertex;
  std::vector<Vec> xi;
  double abs_det = 0;
};

std::vector<Fan> fans_of(const Polytope& p) {
  if (!is_simple(p)) throw Error(ErrorCode::NotSimple, "vertex formula requires a simple polytope");
  std::vector<Fan> fans;
  for (std::size_t v = 0; v < p.num_vertices(); ++v) {
    auto ef = edge_fan(p, v);
    fans.push_back({p.vertices()[v], ef.vectors, ef.abs_det});
  }
  return fans;
}

double fan_weight(const Fan& fan, const Vec& omega, std::size_t v) {
  const double wn = omega.norm();
  double denom = 1;
  for (std::size_t i = 0; i < fan.xi.size(); ++i) {
    double s = fan.xi[i].dot(omega);
    if (wn == 0 || std::fabs(s) < kSingularTol * fan.xi[i].norm() * wn)
      throw Error(ErrorCode::SingularFrequency,
                  "frequency is orthogonal to edge " + std::to_string(i) + " at vertex " + std::to_string(v));
    denom *= s;
  }
  return fan.abs_det / denom;
}

}  // namespace

std::string_view to_string(FourierMethod method) {
  return method == FourierMethod::Lawrence ? "lawrence" : "oracle";
}

bool is_singular_frequency(const Polytope& p, const Vec& omega) {
  const double wn = omega.norm();
  if (wn == 0) return true;
  for (auto [a, b] : p.edges()) {
    Vec xi = p.vertices()[b] - p.vertices()[a];
    if (std::fabs(xi.dot(omega)) < kSingularTol * xi.norm() * wn) return true;
  }
  return false;
}

double d_v(const Polytope& p, std::size_t v, const Vec& omega) {
  auto ef = edge_fan(p, v);
  return fan_weight({p.vertices()[v], ef.vectors, ef.abs_det}, omega, v);
}

FourierValue fourier_lawrence(const Polytope& p, const Vec& omega) {
  auto fans = fans_of(p);
  Complex sum = 0;
  for (std::size_t v = 0; v < fans.size(); ++v)
    sum += fan_weight(fans[v], omega, v) * std::exp(-kI * fans[v].vertex.dot(omega));
  return {i_pow(-static_cast<int>(p.dim())) * sum, FourierMethod::Lawrence, false};
}

Complex exp_divided_difference(std::vector<double> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const std::size_t n = nodes.size();
  // table[i] holds f[x_i .. x_{i+len}] for the current len
  std::vector<Complex> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = std::exp(-kI * nodes[i]);
  for (std::size_t len = 1; len < n; ++len) {
    for (std::size_t i = 0; i + len < n; ++i) {
      const double span = nodes[i + len] - nodes[i];
      if (span > 1.0) {
        table[i] = (table[i + 1] - table[i]) / span;
      } else {
        std::vector<double> sub(nodes.begin() + static_cast<std::ptrdiff_t>(i),
                                nodes.begin() + static_cast<std::ptrdiff_t>(i + len + 1));
        table[i] = taylor_divided_difference(sub);
      }
    }
  }
  return table[0];
}

Complex simplex_fourier(const std::vector<Vec>& vertices, const Vec& omega) {
  const std::size_t d = vertices.size() - 1;
  Eigen::MatrixXd m(omega.size(), static_cast<Eigen::Index>(d));
  for (std::size_t k = 1; k <= d; ++k) m.col(static_cast<Eigen::Index>(k - 1)) = vertices[k] - vertices[0];
  const double abs_det = std::fabs(m.determinant());  // d! vol(S)
  std::vector<double> nodes;
  for (const auto& v : vertices) nodes.push_back(v.dot(omega));
  return abs_det * i_pow(static_cast<int>(d)) * exp_divided_difference(std::move(nodes));
}

FourierValue fourier_oracle(const Polytope& p, const Vec& omega) {
  Complex sum = 0;
  std::vector<Vec> simplex(p.dim() + 1);
  for (const auto& s : p.simplices()) {
    for (std::size_t k = 0; k < s.size(); ++k) simplex[k] = p.vertices()[s[k]];
    sum += simplex_fourier(simplex, omega);
  }
  return {sum, FourierMethod::Oracle, is_singular_frequency(p, omega)};
}

MomentResult moment(const Polytope& p, const Vec& omega, unsigned j) {
  const unsigned d = static_cast<unsigned>(p.dim());
  MomentResult r;
  // exact simplex rule: vol * j! d! / (j+d)! * h_j(l(v_0), ..., l(v_d))
  const double coef = factorial(j) * factorial(d) / factorial(j + d);
  for (const auto& s : p.simplices()) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<double> ell;
    for (std::size_t k = 0; k < s.size(); ++k) {
      ell.push_back(p.vertices()[s[k]].dot(omega));
      if (k > 0) m.col(static_cast<Eigen::Index>(k - 1)) = p.vertices()[s[k]] - p.vertices()[s[0]];
    }
    const double vol = std::fabs(m.determinant()) / factorial(d);
    r.lhs += vol * coef * complete_homogeneous(ell, j)[j];
  }
  auto fans = fans_of(p);
  double sum = 0;
  for (std::size_t v = 0; v < fans.size(); ++v)
    sum += std::pow(fans[v].vertex.dot(omega), static_cast<double>(j + d)) * fan_weight(fans[v], omega, v);
  r.rhs = factorial(j) * ((d % 2) ? -1.0 : 1.0) / factorial(j + d) * sum;
  return r;
}

CompanionResult companion_sum(const Polytope& p, const Vec& omega, unsigned j) {
  if (j >= p.dim()) throw Error(ErrorCode::InvalidArgument, "companion identity holds for j < d only");
  auto fans = fans_of(p);
  CompanionResult r;
  for (std::size_t v = 0; v < fans.size(); ++v) {
    double term = std::pow(fans[v].vertex.dot(omega), static_cast<double>(j)) * fan_weight(fans[v], omega, v);
    r.value += term;
    r.mass += std::fabs(term);
  }
  return r;
}

bool is_fourier_zero(const Polytope& p, const Vec& omega, double tol) {
  return std::abs(fourier_oracle(p, omega).value) <= tol * p.volume();
}

}  // namespace orthoexp
