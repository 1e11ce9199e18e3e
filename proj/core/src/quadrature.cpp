#include "orthoexp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "orthoexp/error.hpp"

namespace orthoexp {

namespace {

// P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (std::size_t l = 2; l <= n; ++l) {
    const double p2 = ((2.0 * l - 1) * x * p1 - (l - 1.0) * p0) / static_cast<double>(l);
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

double legendre_derivative(std::size_t n, double x) {
  auto [pn, pm] = legendre(n, x);
  return static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
}

GaussRule golub_welsch(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(nn, nn);
  for (Eigen::Index k = 1; k < nn; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussRule rule;
  for (Eigen::Index k = 0; k < nn; ++k) {
    double x = es.eigenvalues()(k);
    for (int it = 0; it < 2; ++it) x -= legendre(n, x).first / legendre_derivative(n, x);
    const double dp = legendre_derivative(n, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Gauss rule needs at least one node");
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(cache_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, golub_welsch(n)).first;
  return it->second;
}

const SimplexRule& collapsed_simplex_rule(std::size_t m, std::size_t q) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "simplex dimension must be positive");
  const GaussRule g = gauss_legendre(q);
  static std::map<std::pair<std::size_t, std::size_t>, SimplexRule> cache;
  std::lock_guard lock(cache_mutex());
  auto key = std::make_pair(m, q);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  SimplexRule rule;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    Eigen::VectorXd bary(static_cast<Eigen::Index>(m + 1));
    double remaining = 1, weight = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const double t = 0.5 * (g.nodes[idx[i]] + 1.0);
      weight *= 0.5 * g.weights[idx[i]] * std::pow(1.0 - t, static_cast<double>(m - 1 - i));
      bary(static_cast<Eigen::Index>(i + 1)) = remaining * t;
      remaining *= 1.0 - t;
    }
    bary(0) = remaining;
    rule.barycentric.push_back(bary);
    rule.weights.push_back(weight);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == q - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = 0;
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace orthoexp
