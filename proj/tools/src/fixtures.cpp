#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "common.hpp"
#include "orthoexp/error.hpp"
#include "orthoexp/examples.hpp"
#include "orthoexp/fourier.hpp"

namespace orthoexp::cli {

using namespace detail;

namespace {

struct CheckList {
  Json items = Json::array();
  bool pass = true;

  void add(const std::string& name, bool ok, Json detail = {}) {
    Json j{{"name", name}, {"pass", ok}};
    if (!detail.is_null()) j["detail"] = std::move(detail);
    items.push_back(std::move(j));
    pass = pass && ok;
  }
};

// Largest distance from a point of `a` to its nearest point of `b`, both ways.
double set_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto one_way = [](const std::vector<Vec>& x, const std::vector<Vec>& y) {
    double worst = 0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, (p - q).cwiseAbs().maxCoeff());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

bool in_integer_span(const std::vector<IntVector>& rows, const IntVector& v) {
  const std::size_t n = v.size();
  RatMatrix aug(n, rows.size() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < rows.size(); ++r) aug(i, r) = rows[r][i];
    aug(i, rows.size()) = v[i];
  }
  const auto piv = rref(aug);
  if (!piv.empty() && piv.back() == rows.size()) return false;
  if (piv.size() < rows.size()) return false;
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (aug(i, rows.size()).get_den() != 1) return false;
  return true;
}

bool same_integer_lattice(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  for (const auto& v : a)
    if (!in_integer_span(b, v)) return false;
  for (const auto& v : b)
    if (!in_integer_span(a, v)) return false;
  return true;
}

// Rows of `a` and `b` generate the same lattice in R^m (numeric, tolerance on integrality).
bool same_real_lattice(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  auto contained = [tol](const Eigen::MatrixXd& gens, const Eigen::MatrixXd& in) {
    const Eigen::MatrixXd coeffs = in * gens.inverse();
    return (coeffs.array() - coeffs.array().round()).abs().maxCoeff() <= tol;
  };
  return contained(a, b) && contained(b, a);
}

Json matrix_json_input(const Eigen::MatrixXd& m, std::size_t target) {
  return {{"matrix", matrix_rows_json(m)}, {"m", target}};
}

Json matrix_json_input(const RatMatrix& m, std::size_t target) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return {{"matrix", rows}, {"m", target}};
}

RunResult fixture_fig1(const RunConfig& config) {
  RunResult result;
  Artifacts out(config, result, "fig1");
  Inputs in;
  const Polytope p = examples::fig1_polygon();
  const Json pj = polytope_to_json(p);
  in.add_embedded("polytope", pj.dump());
  CheckList checks;

  const OrthoSet set = construct_thm21(p, config.count, config.enum_bound);
  const VerificationReport ver = orthogonality_report(p, set, config.tol);
  checks.add("orthogonality", ver.pass, {{"pairs", ver.pair_count}, {"max_residual", ver.max_residual}});
  const auto wit = check_thm24(p, set);
  checks.add("necessary_condition", wit.all_witnessed);

  const auto t22 = construct_thm22(p, 0, config.count);
  double worst = 0;
  for (std::size_t j = 1; j < t22.set.points.size(); ++j)
    worst = std::max(worst, std::abs(fourier_oracle(t22.scaled, t22.set.points[j]).value) / t22.scaled.volume());
  checks.add("rank_one_axis_1", worst <= config.tol, {{"scaling", t22.scaling.get_str()}, {"max_residual", worst}});

  out.write_json("polygon.json", pj);
  out.write("lambda.csv", ortho_set_csv(set));
  out.write("rank_one_lambda.csv", ortho_set_csv(t22.set));
  out.write("outline.csv", points_csv(p.vertices()));
  Json rep = report_header(config, in.hashes);
  rep["fixture"] = "fig1";
  rep["count"] = set.points.size();
  rep["verification"] = verification_json(ver);
  rep["necessary_condition"] = witness_json(wit);
  rep["checks"] = checks.items;
  rep["pass"] = checks.pass;
  out.write_json("fixture.json", rep);
  result.summary = rep;
  result.status = checks.pass ? kExitOk : kExitCheckFailed;
  return result;
}

RunResult fixture_ex32(const RunConfig& config) {
  const long p = config.p, q = config.q;
  RunResult result;
  Artifacts out(config, result, fmt::format("ex32_p{}_q{}", p, q));
  Inputs in;
  const Eigen::MatrixXd mat = examples::hexagon_matrix(p, q);
  const Json input = matrix_json_input(mat, 2);
  in.add_embedded("matrix", input.dump());
  const ZonotopeSpec spec = make_spec(mat, 2);
  CheckList checks;
  ZonotopeRun z = zonotope_pipeline(spec, config);

  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  const double delta = std::sqrt(qd * qd + 2 * pd * pd);
  const double r2 = std::sqrt(2.0);
  std::vector<Vec> reference;
  for (double s : {1.0, -1.0}) {
    reference.push_back(s * r2 * Vec{{(pd + qd) / delta, 0.0}});
    reference.push_back(s * r2 * Vec{{pd / delta, 1.0}});
    reference.push_back(s * r2 * Vec{{pd / delta, -1.0}});
  }
  ProjectedWeightModel model(spec);
  const double vdist = set_distance(model.zonotope().vertices(), reference);
  checks.add("hexagon_vertices", vdist <= 1e-10, {{"max_deviation", vdist}});

  const double expected = 1.0 / (std::numbers::pi * std::numbers::pi * delta);
  const double counting = z.report["density_bound"]["counting_density"].get<double>();
  const double rel = std::fabs(counting - expected) / expected;
  checks.add("lattice_density", rel <= 1e-10, {{"expected", expected}, {"computed", counting}, {"relative", rel}});

  const Json& rows = z.report["box_counting"]["rows"];
  const Json& last = rows.back();
  const double sup_rel = std::fabs(last["sup_ratio"].get<double>() - expected) / expected;
  const double inf_rel = std::fabs(last["inf_ratio"].get<double>() - expected) / expected;
  checks.add("box_counting", sup_rel <= 0.05 && inf_rel <= 0.05,
             {{"rho", last["rho"]}, {"sup_relative", sup_rel}, {"inf_relative", inf_rel}});

  const WeightEvaluator slice(spec, WeightMethod::SlicePolytope);
  const WeightEvaluator line(spec, WeightMethod::LineLength);
  // cell centres of a 5x5 grid on the inscribed rectangle |x1| <= sqrt(2) p / delta, |x2| <= sqrt(2)
  double wdiff = 0;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) {
      const Vec x{{r2 * pd / delta * (-0.8 + 0.4 * i), r2 * (-0.8 + 0.4 * k)}};
      wdiff = std::max(wdiff, std::fabs(slice(x) - line(x)));
    }
  checks.add("weight_line_vs_slice", wdiff <= 1e-8, {{"max_difference", wdiff}});
  checks.add("weighted_orthogonality", z.pass);

  std::string outline = points_csv(reference);
  out.write_json("matrix.json", input);
  out.write("lambda_sample.csv", z.lambda_csv);
  out.write("projected_vertices.csv", z.vertices_csv);
  out.write("hexagon_outline.csv", outline);
  if (!z.weight_grid_csv.empty()) out.write("weight_grid.csv", z.weight_grid_csv);
  Json rep = report_header(config, in.hashes);
  rep["fixture"] = "ex32";
  rep["p"] = p;
  rep["q"] = q;
  for (auto& [k, v] : z.report.items()) rep[k] = v;
  rep["checks"] = checks.items;
  rep["pass"] = checks.pass;
  out.write_json("fixture.json", rep);
  result.summary = rep;
  result.status = checks.pass ? kExitOk : kExitCheckFailed;
  return result;
}

RunResult fixture_ex33(const RunConfig& config) {
  RunResult result;
  Artifacts out(config, result, "ex33");
  Inputs in;
  const RatMatrix mat = examples::vandermonde5_matrix();
  const Json input = matrix_json_input(mat, 3);
  in.add_embedded("matrix", input.dump());
  const ZonotopeSpec spec = make_spec(mat, 3);
  CheckList checks;
  RunConfig cfg = config;
  cfg.grid = 0;
  ZonotopeRun z = zonotope_pipeline(spec, cfg);

  std::vector<IntVector> kernel;
  for (const auto& row : z.report["kernel"]["rows"]) {
    IntVector r;
    for (const auto& e : row) r.emplace_back(e.get<long>());
    kernel.push_back(std::move(r));
  }
  const std::vector<IntVector> reference_k{{-4, 0, 1, 0, 0}, {0, -4, 0, 1, 0}, {0, 0, -4, 0, 1}};
  checks.add("kernel_span", same_integer_lattice(kernel, reference_k));

  Eigen::MatrixXd sigma(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 3; ++k)
      sigma(i, k) = z.report["sigma"][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
  Eigen::MatrixXd reference_sigma(3, 3);
  reference_sigma << 4, 3, 3, 0, 3, -3, 0, 3, 3;
  checks.add("lambda_prime_lattice", same_real_lattice(sigma, reference_sigma, 1e-9));

  std::vector<Vec> reference_v;
  for (double s : {1.0, -1.0}) {
    reference_v.push_back(s * Vec{{0.5, -5.0 / 3, 0}});
    reference_v.push_back(s * Vec{{-2.5, 0, 5.0 / 3}});
    reference_v.push_back(s * Vec{{-2, -1.0 / 3, 4.0 / 3}});
    reference_v.push_back(s * Vec{{0.5, 0, -5.0 / 3}});
    reference_v.push_back(s * Vec{{-2.5, 5.0 / 3, 0}});
    reference_v.push_back(s * Vec{{-2, 4.0 / 3, -1.0 / 3}});
  }
  std::vector<Vec> verts;
  for (const auto& row : z.report["projected_vertices"]) {
    Vec v(3);
    for (Eigen::Index i = 0; i < 3; ++i) v(i) = parse_rat(row[static_cast<std::size_t>(i)].get<std::string>()).get_d();
    verts.push_back(v);
  }
  const double vdist = set_distance(verts, reference_v);
  checks.add("projected_vertices", vdist <= 1e-10, {{"count", verts.size()}, {"max_deviation", vdist}});
  checks.add("weighted_orthogonality", z.pass);

  out.write_json("matrix.json", input);
  out.write("lambda_sample.csv", z.lambda_csv);
  out.write("projected_vertices.csv", z.vertices_csv);
  Json rep = report_header(config, in.hashes);
  rep["fixture"] = "ex33";
  for (auto& [k, v] : z.report.items()) rep[k] = v;
  rep["checks"] = checks.items;
  rep["pass"] = checks.pass;
  out.write_json("fixture.json", rep);
  result.summary = rep;
  result.status = checks.pass ? kExitOk : kExitCheckFailed;
  return result;
}

}  // namespace

RunResult run_fixtures(const RunConfig& config) {
  if (config.fixture == "fig1") return fixture_fig1(config);
  if (config.fixture == "ex32") return fixture_ex32(config);
  if (config.fixture == "ex33") return fixture_ex33(config);
  throw Error(ErrorCode::InvalidArgument, "fixture must be fig1, ex32 or ex33");
}

}  // namespace orthoexp::cli
