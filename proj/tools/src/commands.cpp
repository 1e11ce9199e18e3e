#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "common.hpp"
#include "orthoexp/error.hpp"
#include "orthoexp/fourier.hpp"

namespace orthoexp::cli {
namespace detail {

std::string Inputs::load(const std::string& name, const std::string& path) {
  std::string text = read_text(path);
  hashes[name] = sha256_hex(text);
  return text;
}

void Inputs::add_embedded(const std::string& name, std::string_view bytes) { hashes[name] = sha256_hex(bytes); }

Artifacts::Artifacts(const RunConfig& config, RunResult& result, std::filesystem::path subdir)
    : result_(result), root_(output_dir(config)), dir_(root_ / subdir), subdir_(std::move(subdir)) {}

void Artifacts::write(const std::string& name, std::string_view text) {
  write_text(dir_ / name, text);
  result_.files.push_back((subdir_ / name).generic_string());
}

void Artifacts::write_json(const std::string& name, const Json& j) { write(name, dump(j)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json int_vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) a.push_back(x.get_si());
    else a.push_back(x.get_str());
  }
  return a;
}

Json matrix_rows_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

std::string points_csv(const std::vector<Vec>& points, std::string_view prefix) {
  std::string s;
  const Eigen::Index d = points.empty() ? 0 : points.front().size();
  for (Eigen::Index i = 0; i < d; ++i) s += fmt::format("{}{}{}", i ? "," : "", prefix, i + 1);
  s += "\n";
  for (const auto& p : points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) s += (i ? "," : "") + format_double(p(i));
    s += "\n";
  }
  return s;
}

std::string ortho_set_csv(const OrthoSet& set) {
  std::string s = fmt::format("# scale={}\n", format_double(set.scale));
  for (std::size_t i = 0; i < set.dim; ++i) s += fmt::format("x{},", i + 1);
  for (std::size_t i = 0; i < set.dim; ++i) s += fmt::format("k{}{}", i + 1, i + 1 < set.dim ? "," : "\n");
  for (std::size_t r = 0; r < set.points.size(); ++r) {
    for (std::size_t i = 0; i < set.dim; ++i) s += format_double(set.points[r](static_cast<Eigen::Index>(i))) + ",";
    for (std::size_t i = 0; i < set.dim; ++i)
      s += fmt::format("{}{}", set.integer_coords[r][i], i + 1 < set.dim ? "," : "\n");
  }
  return s;
}

std::string density_csv(const DensityEstimate& est) {
  std::string s = "rho,sup_count,inf_count,sup_ratio,inf_ratio\n";
  for (const auto& r : est.rows)
    s += fmt::format("{},{},{},{},{}\n", format_double(r.rho), r.sup_count, r.inf_count, format_double(r.sup_ratio),
                     format_double(r.inf_ratio));
  return s;
}

Json verification_json(const VerificationReport& r) {
  Json j;
  j["pair_count"] = r.pair_count;
  j["max_residual"] = r.max_residual;
  j["tol"] = r.tol;
  j["weighted"] = r.weighted;
  j["pass"] = r.pass;
  Json failing = Json::array();
  for (const auto& f : r.failing) failing.push_back({{"i", f.i}, {"j", f.j}, {"residual", f.residual}});
  j["failing"] = failing;
  return j;
}

Json witness_json(const NecessaryConditionReport& r) {
  Json recs = Json::array();
  for (const auto& w : r.records)
    recs.push_back({{"omega", vec_json(w.omega)},
                    {"witnessed", w.witnessed},
                    {"v", w.v},
                    {"v_prime", w.v_prime},
                    {"m", w.m},
                    {"deviation", w.deviation}});
  return {{"all_witnessed", r.all_witnessed}, {"records", recs}};
}

Json density_json(const DensityEstimate& est) {
  Json rows = Json::array();
  for (const auto& r : est.rows)
    rows.push_back({{"rho", r.rho},
                    {"sup_count", r.sup_count},
                    {"inf_count", r.inf_count},
                    {"sup_ratio", r.sup_ratio},
                    {"inf_ratio", r.inf_ratio}});
  return {{"dim", est.dim}, {"anchors_per_axis", est.anchors_per_axis}, {"anchor_pitch", "rho/8"}, {"rows", rows}};
}

Json density_bound_json(const DensityBound& b) {
  return {{"bound_m", b.bound_m},
          {"bound_d", b.bound_d},
          {"counting_density", b.counting_density},
          {"det_a_identity", b.det_a_identity},
          {"det_a_direct", b.det_a_direct},
          {"exponent_discrepancy", b.exponent_discrepancy}};
}

std::vector<Vec> rows_to_points(const std::vector<std::vector<double>>& rows, std::size_t dim) {
  std::vector<Vec> pts;
  for (const auto& r : rows) {
    if (r.size() < dim) throw Error(ErrorCode::ParseError, fmt::format("CSV row has {} columns, need {}", r.size(), dim));
    Vec v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = r[i];
    pts.push_back(v);
  }
  return pts;
}

namespace {

WeightMethod parse_weight_method(const std::string& s) {
  if (s == "slice") return WeightMethod::SlicePolytope;
  if (s == "line") return WeightMethod::LineLength;
  if (s == "fourier") return WeightMethod::FourierSlice;
  throw Error(ErrorCode::InvalidArgument, "weight method must be slice, line or fourier");
}

OrthoSet sample_with_at_least(const LambdaData& data, std::size_t points) {
  for (std::int64_t r = 1;; ++r) {
    OrthoSet s = lambda_sample(data, r);
    if (s.points.size() >= points) return s;
  }
}

}  // namespace

ZonotopeRun zonotope_pipeline(const ZonotopeSpec& spec, const RunConfig& config) {
  ZonotopeRun run;
  Json& rep = run.report;
  const std::size_t m = spec.m;
  KernelPolicy policy{config.max_denominator, config.accept_residual, config.reject_residual};
  const KernelBasis kb = spec.kernel ? user_kernel(spec, *spec.kernel) : integer_kernel(spec, policy);
  const LambdaData data = build_lambda(spec, kb);
  const DensityBound bound = density_bound(spec, kb);

  rep["d"] = spec.d();
  rep["m"] = m;
  rep["exact"] = spec.exact_matrix.has_value();
  Json rows = Json::array();
  for (const auto& r : kb.rows) rows.push_back(int_vector_json(r));
  rep["kernel"] = {{"rows", rows}, {"source", std::string(to_string(kb.source))}, {"residual", kb.residual}};
  rep["sigma"] = matrix_rows_json(data.sigma);
  rep["det_u"] = data.det_u;
  rep["det_m"] = data.det_m;
  rep["det_a"] = data.det_a;
  rep["block_residual"] = data.block_residual;
  rep["density_bound"] = density_bound_json(bound);

  const OrthoSet sample = lambda_sample(data, config.radius);
  run.lambda_csv = ortho_set_csv(sample);

  ProjectedWeightModel model(spec);
  const Polytope& zono = model.zonotope();
  run.vertices_csv = points_csv(zono.vertices());
  rep["projected_vertices"] = polytope_to_json(zono)["vertices"];
  rep["weight"] = {{"mass", model.mass()},
                   {"expected_mass", std::fabs(data.det_m) * std::pow(2.0, static_cast<double>(spec.d()))},
                   {"cells", model.num_cells()},
                   {"fit_residual", model.fit_residual()}};

  Json checks = Json::array();
  bool all_pass = true;
  const OrthoSet wsample = sample_with_at_least(data, config.weighted_count + 1);
  for (std::size_t i = 1; i <= config.weighted_count; ++i) {
    const auto w = weighted_orthogonality_check(spec, kb, data, model, wsample.points[i], config.weighted_tol);
    all_pass = all_pass && w.pass;
    checks.push_back({{"lambda", vec_json(wsample.points[i])},
                      {"k", int_vector_json(w.k)},
                      {"exact_residual", w.exact_residual},
                      {"projected_residual", w.projected_residual},
                      {"relative_residual", w.projected_residual / w.mass},
                      {"pass", w.pass}});
  }
  rep["weighted_orthogonality"] = {{"tol", config.weighted_tol}, {"pass", all_pass}, {"points", checks}};
  run.pass = all_pass;

  const WeightEvaluator weight(spec, parse_weight_method(config.weight_method));
  Vec lo = zono.vertices().front(), hi = lo;
  for (const auto& v : zono.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  Json mc = Json::array();
  for (int s = 0; s < 5; ++s) {
    const Vec x = (0.15 * s) * zono.vertices().front();
    const double exact = weight(x);
    const double est = weight_monte_carlo(spec, x, config.mc_samples, config.seed + static_cast<std::uint64_t>(s));
    mc.push_back({{"x", vec_json(x)}, {"weight", exact}, {"monte_carlo", est}});
  }
  rep["monte_carlo"] = {{"samples", config.mc_samples}, {"points", mc}};

  if (m <= 2 && config.grid >= 2) {
    std::string csv;
    for (std::size_t i = 0; i < m; ++i) csv += fmt::format("x{},", i + 1);
    csv += "weight\n";
    const std::size_t n = config.grid;
    const std::size_t total = m == 1 ? n : n * n;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Vec x(static_cast<Eigen::Index>(m));
      std::size_t rest = idx;
      for (std::size_t a = 0; a < m; ++a) {
        const auto ai = static_cast<Eigen::Index>(a);
        const double t = static_cast<double>(rest % n) / static_cast<double>(n - 1);
        rest /= n;
        x(ai) = lo(ai) + t * (hi(ai) - lo(ai));
      }
      for (std::size_t a = 0; a < m; ++a) csv += format_double(x(static_cast<Eigen::Index>(a))) + ",";
      csv += format_double(weight(x)) + "\n";
    }
    run.weight_grid_csv = std::move(csv);
  }

  Eigen::MatrixXd basis = std::numbers::pi * data.sigma.transpose();
  rep["box_counting"] = density_json(density_estimate_lattice(basis, config.rhos));
  return run;
}

}  // namespace detail

using namespace detail;

RunResult run_construct(const RunConfig& config) {
  if (config.polytope.empty()) throw Error(ErrorCode::InvalidArgument, "construct needs --polytope");
  Inputs in;
  const Polytope p = parse_polytope(parse_json(in.load("polytope", config.polytope), "polytope"));
  RunResult result;
  Artifacts out(config, result);
  Json prov = report_header(config, in.hashes);
  prov["theorem"] = config.theorem;
  OrthoSet set;
  if (config.theorem == 21) {
    set = construct_thm21(p, config.count, config.enum_bound);
    prov["enum_bound"] = config.enum_bound ? *config.enum_bound : default_enum_bound(p);
    Json planes = Json::array();
    for (const auto& h : edge_hyperplanes(p)) planes.push_back(h.normal);
    prov["edge_hyperplane_normals"] = planes;
    prov["necessary_condition"] = witness_json(check_thm24(p, set));
  } else if (config.theorem == 22) {
    if (config.axis < 1 || config.axis > p.dim())
      throw Error(ErrorCode::AxisOutOfRange, fmt::format("axis {} outside 1..{}", config.axis, p.dim()));
    auto r = construct_thm22(p, config.axis - 1, config.count);
    prov["axis"] = config.axis;
    prov["scaling"] = r.scaling.get_str();
    prov["scaled_polytope"] = polytope_to_json(r.scaled);
    prov["necessary_condition"] = witness_json(check_thm24(r.scaled, r.set));
    set = std::move(r.set);
  } else {
    throw Error(ErrorCode::InvalidArgument, "--theorem must be 21 or 22");
  }
  prov["provenance"] = std::string(to_string(set.provenance));
  prov["count"] = set.points.size();
  prov["scale"] = set.scale;
  prov["basis"] = matrix_rows_json(set.basis);
  out.write("lambda.csv", ortho_set_csv(set));
  out.write_json("construct.json", prov);
  result.summary = prov;
  return result;
}

RunResult run_verify(const RunConfig& config) {
  if (config.polytope.empty() || config.points.empty())
    throw Error(ErrorCode::InvalidArgument, "verify needs --polytope and --points");
  Inputs in;
  const Polytope p = parse_polytope(parse_json(in.load("polytope", config.polytope), "polytope"));
  const auto pts = rows_to_points(parse_csv_rows(in.load("points", config.points)), p.dim());
  const VerificationReport r = orthogonality_report(p, pts, config.tol);
  RunResult result;
  Artifacts out(config, result);
  Json rep = report_header(config, in.hashes);
  rep["points"] = pts.size();
  rep["volume"] = p.volume();
  rep["verification"] = verification_json(r);
  out.write_json("verify.json", rep);
  result.summary = rep;
  result.status = r.pass ? kExitOk : kExitCheckFailed;
  return result;
}

RunResult run_fourier(const RunConfig& config) {
  if (config.polytope.empty() || config.frequencies.empty())
    throw Error(ErrorCode::InvalidArgument, "fourier needs --polytope and --frequencies");
  if (config.method != "auto" && config.method != "lawrence" && config.method != "oracle")
    throw Error(ErrorCode::InvalidArgument, "--method must be auto, lawrence or oracle");
  Inputs in;
  const Polytope p = parse_polytope(parse_json(in.load("polytope", config.polytope), "polytope"));
  const auto omegas = rows_to_points(parse_csv_rows(in.load("frequencies", config.frequencies)), p.dim());
  const bool simple = is_simple(p);
  std::string csv;
  for (std::size_t i = 0; i < p.dim(); ++i) csv += fmt::format("w{},", i + 1);
  csv += "re,im,method,singular\n";
  std::size_t singular_count = 0;
  for (const auto& w : omegas) {
    const bool singular = is_singular_frequency(p, w);
    singular_count += singular;
    FourierValue f;
    if (config.method == "lawrence" || (config.method == "auto" && simple && !singular)) f = fourier_lawrence(p, w);
    else f = fourier_oracle(p, w);
    for (Eigen::Index i = 0; i < w.size(); ++i) csv += format_double(w(i)) + ",";
    csv += fmt::format("{},{},{},{}\n", format_double(f.value.real()), format_double(f.value.imag()),
                       to_string(f.method), singular ? 1 : 0);
  }
  RunResult result;
  Artifacts out(config, result);
  Json rep = report_header(config, in.hashes);
  rep["frequencies"] = omegas.size();
  rep["singular"] = singular_count;
  rep["simple"] = simple;
  rep["volume"] = p.volume();
  out.write("fourier.csv", csv);
  out.write_json("fourier.json", rep);
  result.summary = rep;
  return result;
}

RunResult run_density(const RunConfig& config) {
  Inputs in;
  DensityEstimate est;
  Json rep;
  std::optional<double> exact;
  if (!config.lattice.empty()) {
    const auto rows = parse_csv_rows(in.load("lattice", config.lattice));
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "empty lattice basis");
    const std::size_t d = rows.front().size();
    if (rows.size() != d) throw Error(ErrorCode::InvalidArgument, "lattice basis must have d rows of length d");
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      if (rows[i].size() != d) throw Error(ErrorCode::InvalidArgument, "lattice basis must be square");
      for (std::size_t k = 0; k < d; ++k) basis(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[i][k];
    }
    est = density_estimate_lattice(basis, config.rhos);
    exact = 1.0 / std::fabs(basis.determinant());
  } else if (!config.points.empty()) {
    if (!(config.coverage > 0)) throw Error(ErrorCode::InvalidArgument, "--points needs a positive --coverage radius");
    const auto rows = parse_csv_rows(in.load("points", config.points));
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "empty point list");
    est = density_estimate(rows_to_points(rows, rows.front().size()), config.coverage, config.rhos);
  } else {
    throw Error(ErrorCode::InvalidArgument, "density needs --lattice or --points");
  }
  rep = report_header(config, in.hashes);
  rep["estimate"] = density_json(est);
  if (exact) rep["lattice_density"] = *exact;
  if (!config.polytope.empty()) {
    const Polytope p = parse_polytope(parse_json(in.load("polytope", config.polytope), "polytope"));
    rep["landau_reference"] = p.volume() / std::pow(2 * std::numbers::pi, static_cast<double>(p.dim()));
    rep["inputs"] = in.hashes;
  }
  RunResult result;
  Artifacts out(config, result);
  out.write("density.csv", density_csv(est));
  out.write_json("density.json", rep);
  result.summary = rep;
  return result;
}

RunResult run_zonotope(const RunConfig& config) {
  if (config.zonotope.empty()) throw Error(ErrorCode::InvalidArgument, "zonotope needs --matrix");
  Inputs in;
  Json zj = parse_json(in.load("matrix", config.zonotope), "zonotope");
  if (config.m) zj["m"] = *config.m;
  if (!config.kernel.empty()) zj["kernel"] = parse_json(in.load("kernel", config.kernel), "kernel");
  const ZonotopeSpec spec = parse_zonotope(zj);
  ZonotopeRun z = zonotope_pipeline(spec, config);
  RunResult result;
  Artifacts out(config, result);
  Json rep = report_header(config, in.hashes);
  for (auto& [k, v] : z.report.items()) rep[k] = v;
  out.write("lambda_sample.csv", z.lambda_csv);
  out.write("projected_vertices.csv", z.vertices_csv);
  if (!z.weight_grid_csv.empty()) out.write("weight_grid.csv", z.weight_grid_csv);
  out.write_json("zonotope.json", rep);
  result.summary = rep;
  result.status = z.pass ? kExitOk : kExitCheckFailed;
  return result;
}

}  // namespace orthoexp::cli
