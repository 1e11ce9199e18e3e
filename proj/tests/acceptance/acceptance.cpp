// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../support/fixtures.hpp"
#include "orthoexp/constructions.hpp"
#include "orthoexp/examples.hpp"
#include "orthoexp/fourier.hpp"
#include "orthoexp/verify.hpp"
#include "orthoexp/zonotope.hpp"

using namespace orthoexp;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
  double time_limit = INFINITY;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Sweep {
  std::vector<Polytope> polytopes;
  std::vector<std::string> names;
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep out;
    out.polytopes = {examples::fig1_polygon(), testing::cube(2), testing::cube(3)};
    out.names = {"fig1", "C2", "C3"};
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 20; ++i) {
      out.polytopes.push_back(i % 2 ? testing::random_simple_polytope(rng, 3) : testing::random_polygon(rng));
      out.names.push_back("random" + std::to_string(i));
    }
    return out;
  }();
  return s;
}

Outcome lawrence_vs_oracle() {
  std::mt19937_64 rng(1);
  double worst = 0;
  for (const Polytope& p : sweep().polytopes)
    for (int k = 0; k < 500; ++k) {
      const Vec w = testing::random_frequency(rng, p);
      const Complex o = fourier_oracle(p, w).value;
      const Complex l = fourier_lawrence(p, w).value;
      worst = std::max(worst, std::abs(l - o) / (std::abs(o) + p.volume()));
    }
  return {worst <= 1e-9, fmt("max |lawrence - oracle| / (|oracle| + |P|) = %.3g over 23 x 500", worst)};
}

Outcome companion_identities() {
  std::mt19937_64 rng(2);
  double worst = 0;
  for (const Polytope& p : sweep().polytopes)
    for (int k = 0; k < 100; ++k) {
      const Vec w = testing::random_frequency(rng, p);
      for (unsigned j = 0; j < p.dim(); ++j) {
        const CompanionResult c = companion_sum(p, w, j);
        worst = std::max(worst, std::fabs(c.value) / c.mass);
      }
    }
  return {worst <= 1e-9, fmt("max |sum| / sum|terms| = %.3g", worst)};
}

Outcome moment_formula() {
  std::mt19937_64 rng(3);
  double worst = 0;
  for (const Polytope& p : sweep().polytopes)
    for (int k = 0; k < 100; ++k) {
      const Vec w = testing::random_frequency(rng, p);
      double reach = 0;
      for (const Vec& v : p.vertices()) reach = std::max(reach, std::fabs(v.dot(w)));
      for (unsigned j = 0; j <= 2; ++j) {
        const MomentResult m = moment(p, w, j);
        const double scale = std::max(std::fabs(m.lhs), p.volume() * std::pow(reach, j));
        worst = std::max(worst, std::fabs(m.lhs - m.rhs) / scale);
      }
    }
  return {worst <= 1e-9, fmt("max relative difference = %.3g", worst)};
}

OrthoSet& fig1_set() {
  static OrthoSet s = construct_thm21(examples::fig1_polygon(), 50);
  return s;
}

Outcome thm21_fig1() {
  const Polytope p = examples::fig1_polygon();
  const OrthoSet& s = fig1_set();
  const VerificationReport r = orthogonality_report(p, s);
  const bool ok = r.pass && r.pair_count == 1225 && s.points.size() == 50;
  return {ok, std::to_string(r.pair_count) + " pairs, max residual " + fmt("%.3g", r.max_residual)};
}

const Polytope& thm22_triangle() {
  static const Polytope t = hull_from_vertices(std::vector<RatVector>{{0, 0}, {1, 0}, {2, 1}});
  return t;
}

Outcome thm22_rank_one() {
  double worst = 0;
  bool ok = true;
  for (const Polytope* p : {&thm22_triangle(), &sweep().polytopes[0]}) {
    const Thm22Result r = construct_thm22(*p, 0, 21);
    ok = ok && r.scaling == 1;
    for (std::size_t j = 1; j <= 20; ++j)
      worst = std::max(worst, std::abs(fourier_oracle(r.scaled, r.set.points[j]).value) / r.scaled.volume());
  }
  return {ok && worst <= 1e-8, fmt("max |F(2 pi j e1)| / |P| = %.3g", worst)};
}

Outcome thm24_witnesses() {
  std::size_t records = 0;
  double worst = 0;
  bool all = true;
  auto scan = [&](const Polytope& p, const OrthoSet& s) {
    const NecessaryConditionReport r = check_thm24(p, s);
    all = all && r.all_witnessed;
    for (const auto& rec : r.records) {
      ++records;
      worst = std::max(worst, rec.witnessed ? rec.deviation : 1.0);
    }
  };
  scan(examples::fig1_polygon(), fig1_set());
  for (const Polytope* p : {&thm22_triangle(), &sweep().polytopes[0]}) {
    const Thm22Result r = construct_thm22(*p, 0, 21);
    scan(r.scaled, r.set);
  }
  return {all && worst <= 1e-9 && records == 49 + 40, std::to_string(records) + " points, max deviation " + fmt("%.3g", worst)};
}

double set_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0;
  for (const Vec& x : a) {
    double best = INFINITY;
    for (const Vec& y : b) best = std::min(best, (x - y).cwiseAbs().maxCoeff());
    worst = std::max(worst, best);
  }
  return worst;
}

Outcome example32() {
  std::string detail;
  bool ok = true;
  for (auto [p, q] : {std::pair{1L, 1L}, {1L, 2L}}) {
    const ZonotopeSpec spec = make_spec(examples::hexagon_matrix(p, q), 2);
    const KernelBasis k = integer_kernel(spec);
    const LambdaData l = build_lambda(spec, k);
    const double pd = double(p), qd = double(q), delta = std::sqrt(qd * qd + 2 * pd * pd), r2 = std::sqrt(2.0);
    const double want = 1 / (kPi * kPi * delta);
    const double counting = 1 / std::fabs((kPi * l.sigma).determinant());
    const double exact_rel = std::fabs(counting - want) / want;
    const DensityEstimate e = density_estimate_lattice(kPi * l.sigma.transpose(), {200});
    const double box_rel = std::max(std::fabs(e.rows[0].sup_ratio - want), std::fabs(e.rows[0].inf_ratio - want)) / want;
    std::vector<Vec> reference;
    for (double s : {1.0, -1.0}) {
      reference.push_back(s * r2 * Vec{{(pd + qd) / delta, 0.0}});
      reference.push_back(s * r2 * Vec{{pd / delta, 1.0}});
      reference.push_back(s * r2 * Vec{{pd / delta, -1.0}});
    }
    const double vdist = set_distance(project_zonotope(spec.matrix, 2).vertices(), reference);
    ok = ok && exact_rel <= 1e-10 && box_rel <= 0.05 && vdist <= 1e-10;
    detail += "(" + std::to_string(p) + "," + std::to_string(q) + "): box " + fmt("%.3g", box_rel) + " exact " +
              fmt("%.3g", exact_rel) + " vertices " + fmt("%.3g", vdist) + "; ";
  }
  return {ok, detail};
}

bool same_lattice(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  auto member = [](const Eigen::MatrixXd& rows, const Eigen::MatrixXd& basis) {
    const Eigen::MatrixXd t = basis.transpose().colPivHouseholderQr().solve(rows.transpose());
    return (basis.transpose() * t - rows.transpose()).cwiseAbs().maxCoeff() <= 1e-9 &&
           (t - t.array().round().matrix()).cwiseAbs().maxCoeff() <= 1e-9;
  };
  return member(a, b) && member(b, a);
}

Outcome example33() {
  const ZonotopeSpec spec = make_spec(examples::vandermonde5_matrix(), 3);
  const KernelBasis k = integer_kernel(spec);
  Eigen::MatrixXd rows(3, 5), reference_k(3, 5), reference_l(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) rows(i, j) = k.rows[i][j].get_d();
  reference_k << -4, 0, 1, 0, 0, 0, -4, 0, 1, 0, 0, 0, -4, 0, 1;
  reference_l << 4, 3, 3, 0, 3, -3, 0, 3, 3;
  const bool kernel_ok = same_lattice(rows, reference_k);
  const bool lambda_ok = same_lattice(build_lambda(spec, k).sigma, reference_l);
  std::vector<Vec> reference;
  for (double s : {1.0, -1.0}) {
    reference.push_back(s * Vec{{2.5, 0, -5.0 / 3}});
    reference.push_back(s * Vec{{2.5, -5.0 / 3, 0}});
    reference.push_back(s * Vec{{2, -4.0 / 3, 1.0 / 3}});
    reference.push_back(s * Vec{{2, 1.0 / 3, -4.0 / 3}});
    reference.push_back(s * Vec{{0.5, -5.0 / 3, 0}});
    reference.push_back(s * Vec{{0.5, 0, -5.0 / 3}});
  }
  const double vdist = set_distance(project_zonotope(spec.matrix, 3).vertices(), reference);
  return {kernel_ok && lambda_ok && vdist <= 1e-10,
          std::string("kernel ") + (kernel_ok ? "equal" : "differs") + ", lattice " + (lambda_ok ? "equal" : "differs") +
              ", vertex deviation " + fmt("%.3g", vdist)};
}

Outcome weight_cross_validation() {
  const long p = 1, q = 1;
  const Eigen::MatrixXd mat = examples::hexagon_matrix(p, q);
  const ZonotopeSpec spec = make_spec(mat, 2);
  const WeightEvaluator slice(spec, WeightMethod::SlicePolytope), line(spec, WeightMethod::LineLength);
  const double pd = double(p), qd = double(q), delta = std::sqrt(qd * qd + 2 * pd * pd), r2 = std::sqrt(2.0);
  const Vec v = mat.transpose().col(2);
  double line_diff = 0, mc_diff = 0;
  int s_ok = 0;
  std::uint64_t seed = 100;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) {
      // cell centres of the inscribed rectangle |x1| <= sqrt(2) p / delta, |x2| <= sqrt(2)
      const double x1 = r2 * pd / delta * (-0.8 + 0.4 * i), x2 = r2 * (-0.8 + 0.4 * k);
      const Vec x{{x1, x2}};
      const double w = slice(x);
      line_diff = std::max(line_diff, std::fabs(w - line(x)));
      mc_diff = std::max(mc_diff, std::fabs(w - weight_monte_carlo(spec, x, 1000000, seed++)));
      const Vec u = mat.transpose() * Vec{{x1, x2, 0.0}};
      const double a = (2 * pd * pd - qd * qd) * x1 / (r2 * delta), b = qd * std::fabs(x2) / r2, c = qd - pd;
      const double s[4] = {qd * x1 / (r2 * pd), r2 * pd * x1 / qd,
                           delta / (2 * pd) - delta / (2 * qd) - delta * std::fabs(x2) / (2 * r2 * pd) +
                               delta * delta * x1 / (2 * r2 * pd * qd),
                           -delta / (2 * pd) + delta / (2 * qd) + delta * std::fabs(x2) / (2 * r2 * pd) +
                               delta * delta * x1 / (2 * r2 * pd * qd)};
      const bool applies[4] = {a + b >= c || -a + b >= c, a - b >= -c || -a - b >= -c, a + b >= c || a - b >= -c,
                               -a + b >= c || -a - b >= -c};
      bool found = false;
      for (int j = 0; j < 4; ++j)
        if (applies[j] && (u + s[j] * v).cwiseAbs().maxCoeff() < 1) found = true;
      s_ok += found;
    }
  const bool ok = line_diff <= 1e-8 && mc_diff <= 1e-3 && s_ok == 25;
  return {ok, "line vs slice " + fmt("%.3g", line_diff) + ", Monte Carlo " + fmt("%.3g", mc_diff) +
                  ", s feasible at " + std::to_string(s_ok) + "/25"};
}

Outcome weighted_orthogonality() {
  double worst = 0;
  std::size_t checked = 0;
  auto run = [&](const ZonotopeSpec& spec) {
    const KernelBasis k = integer_kernel(spec);
    const LambdaData l = build_lambda(spec, k);
    const ProjectedWeightModel model(spec);
    const OrthoSet s = lambda_sample(l, 1);
    for (std::size_t i = 1; i <= 10 && i < s.points.size(); ++i) {
      const WeightedOrthogonality r = weighted_orthogonality_check(spec, k, l, model, s.points[i]);
      worst = std::max(worst, r.projected_residual / r.mass);
      ++checked;
    }
  };
  run(make_spec(examples::hexagon_matrix(1, 1), 2));
  run(make_spec(examples::hexagon_matrix(1, 2), 2));
  run(make_spec(examples::vandermonde5_matrix(), 3));
  return {worst <= 1e-6 && checked == 26, std::to_string(checked) + " points, max residual / mass " + fmt("%.3g", worst)};
}

Outcome density_decay() {
  const std::vector<double> rhos{50 * kPi, 200 * kPi};
  const OrthoSet s = construct_thm21_box(examples::fig1_polygon(), 201);
  const DensityEstimate g = density_estimate(s.points, 2 * kPi * 201, rhos);
  const ZonotopeSpec spec = make_spec(examples::hexagon_matrix(1, 1), 2);
  const LambdaData l = build_lambda(spec, integer_kernel(spec));
  const DensityEstimate h = density_estimate_lattice(kPi * l.sigma.transpose(), rhos);
  const double change = std::max(std::fabs(h.rows[1].sup_ratio - h.rows[0].sup_ratio) / h.rows[0].sup_ratio,
                                 std::fabs(h.rows[1].inf_ratio - h.rows[0].inf_ratio) / h.rows[0].inf_ratio);
  const bool ok = g.rows[1].sup_ratio < g.rows[0].sup_ratio && change < 0.10;
  return {ok, "greedy " + fmt("%.4g", g.rows[0].sup_ratio) + " -> " + fmt("%.4g", g.rows[1].sup_ratio) +
                  ", lattice change " + fmt("%.3g", change)};
}

Outcome det_identity() {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  double worst = 0;
  int done = 0;
  while (done < 50) {
    const std::size_t d = dim(rng);
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = testing::random_rat(rng, -4, 4, 3);
    if (determinant(m) == 0) continue;
    const ZonotopeSpec spec = make_spec(m, 1 + rng() % (d - 1));
    const KernelBasis k = integer_kernel(spec);
    if (k.source != KernelSource::Lemma42Exact) return {false, "kernel not from the exact path"};
    const LambdaData l = build_lambda(spec, k);
    worst = std::max(worst, std::fabs(std::fabs(l.det_a) * std::fabs(l.det_m) - std::fabs(l.det_u)) / std::fabs(l.det_u));
    ++done;
  }
  return {worst <= 1e-9, fmt("max relative defect %.3g over 50 instances", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 lawrence/oracle agreement", lawrence_vs_oracle, 60},
      {"2 companion identities", companion_identities},
      {"3 moment formula", moment_formula},
      {"4 greedy lattice on the quadrilateral", thm21_fig1, 120},
      {"5 rank-one sets", thm22_rank_one},
      {"6 vertex-pair witnesses", thm24_witnesses},
      {"7 hexagon example", example32},
      {"8 vandermonde example", example33},
      {"9 weight cross-validation", weight_cross_validation},
      {"10 weighted orthogonality", weighted_orthogonality},
      {"11 density decay", density_decay},
      {"12 det identity", det_identity},
  };
  int failures = 0;
  for (const auto& [name, run, limit] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit) {
      o.pass = false;
      o.detail += fmt(" (time limit %.0fs exceeded)", limit);
    }
    std::printf("%s criterion %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
