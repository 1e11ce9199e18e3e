#include "orthoexp_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "orthoexp/error.hpp"

namespace orthoexp::cli {

const char* tool_version() { return ORTHOEXP_VERSION; }

namespace {

template <class T>
void take(const Json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

void apply_config(RunConfig& c, const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  static const std::vector<std::string> known{
      "polytope", "points", "frequencies", "lattice", "matrix", "kernel", "fixture", "theorem", "axis",
      "count", "enum_bound", "method", "tol", "weighted_tol", "max_denominator", "accept_residual",
      "reject_residual", "rho", "coverage", "m", "radius", "grid", "weighted_count", "mc_samples",
      "weight_method", "p", "q", "out", "seed"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
  try {
    take(j, "polytope", c.polytope);
    take(j, "points", c.points);
    take(j, "frequencies", c.frequencies);
    take(j, "lattice", c.lattice);
    take(j, "matrix", c.zonotope);
    take(j, "kernel", c.kernel);
    take(j, "fixture", c.fixture);
    take(j, "theorem", c.theorem);
    take(j, "axis", c.axis);
    take(j, "count", c.count);
    if (j.contains("enum_bound")) c.enum_bound = j.at("enum_bound").get<std::int64_t>();
    take(j, "method", c.method);
    take(j, "tol", c.tol);
    take(j, "weighted_tol", c.weighted_tol);
    take(j, "max_denominator", c.max_denominator);
    take(j, "accept_residual", c.accept_residual);
    take(j, "reject_residual", c.reject_residual);
    take(j, "rho", c.rhos);
    take(j, "coverage", c.coverage);
    if (j.contains("m")) c.m = j.at("m").get<std::size_t>();
    take(j, "radius", c.radius);
    take(j, "grid", c.grid);
    take(j, "weighted_count", c.weighted_count);
    take(j, "mc_samples", c.mc_samples);
    take(j, "weight_method", c.weight_method);
    take(j, "p", c.p);
    take(j, "q", c.q);
    take(j, "out", c.out_dir);
    take(j, "seed", c.seed);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  auto put_path = [&j](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put_path("polytope", c.polytope);
  put_path("points", c.points);
  put_path("frequencies", c.frequencies);
  put_path("lattice", c.lattice);
  put_path("matrix", c.zonotope);
  put_path("kernel", c.kernel);
  put_path("fixture", c.fixture);
  if (c.command == "construct") {
    j["theorem"] = c.theorem;
    j["axis"] = c.axis;
    j["count"] = c.count;
    if (c.enum_bound) j["enum_bound"] = *c.enum_bound;
  }
  if (c.command == "fourier") j["method"] = c.method;
  j["tol"] = c.tol;
  if (c.command == "zonotope" || c.command == "fixtures") {
    j["weighted_tol"] = c.weighted_tol;
    j["max_denominator"] = c.max_denominator;
    j["accept_residual"] = c.accept_residual;
    j["reject_residual"] = c.reject_residual;
    if (c.m) j["m"] = *c.m;
    j["radius"] = c.radius;
    j["grid"] = c.grid;
    j["weighted_count"] = c.weighted_count;
    j["mc_samples"] = c.mc_samples;
    j["weight_method"] = c.weight_method;
  }
  if (c.command == "fixtures") {
    j["count"] = c.count;
    if (c.fixture == "ex32") {
      j["p"] = c.p;
      j["q"] = c.q;
    }
  }
  if (c.command == "density" || c.command == "zonotope" || c.command == "fixtures") j["rho"] = c.rhos;
  if (c.command == "density" && c.coverage > 0) j["coverage"] = c.coverage;
  j["seed"] = c.seed;
  return j;
}

std::filesystem::path output_dir(const RunConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv("ORTHOEXP_OUT_DIR"); env && *env) return env;
  return ".";
}

Json report_header(const RunConfig& config, const std::map<std::string, std::string>& input_hashes) {
  Json j;
  j["tool"] = {{"name", "orthoexp"}, {"version", tool_version()}};
  j["command"] = config.command;
  j["seed"] = config.seed;
  Json hashes = Json::object();
  for (const auto& [k, v] : input_hashes) hashes[k] = {{"sha256", v}};
  if (!config.config_sha256.empty()) hashes["config"] = {{"sha256", config.config_sha256}};
  j["inputs"] = hashes;
  j["config"] = config_to_json(config);
  return j;
}

RunResult run(const RunConfig& config) {
  if (!(config.tol > 0) || !(config.weighted_tol > 0) || !(config.accept_residual > 0) ||
      !(config.reject_residual >= config.accept_residual) || config.max_denominator < 1)
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  if (config.command == "construct") return run_construct(config);
  if (config.command == "verify") return run_verify(config);
  if (config.command == "fourier") return run_fourier(config);
  if (config.command == "density") return run_density(config);
  if (config.command == "zonotope") return run_zonotope(config);
  if (config.command == "fixtures") return run_fixtures(config);
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + config.command + "'");
}

namespace {

void error_json(std::ostream& err, std::string_view code, std::string_view message) {
  Json e{{"error", {{"code", code}, {"message", message}, {"tool", "orthoexp"}, {"version", tool_version()}}}};
  err << e.dump() << "\n";
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string config_path;
  std::int64_t enum_bound = 0;
  std::size_t m = 0;

  CLI::App app{"Orthogonal exponentials on convex polytopes"};
  app.set_version_flag("--version", std::string("orthoexp ") + tool_version());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", config_path, "JSON file whose keys override flags");
  app.add_option("--out", c.out_dir, "Output directory (default $ORTHOEXP_OUT_DIR, then .)");
  app.add_option("--seed", c.seed, "Seed for randomized sweeps")->capture_default_str();
  app.add_option("--tol", c.tol, "Orthogonality tolerance")->capture_default_str();

  auto* construct = app.add_subcommand("construct", "Build a frequency set for a rational polytope");
  construct->add_option("--polytope", c.polytope, "Polytope JSON")->required();
  construct->add_option("--theorem", c.theorem, "21 (greedy lattice) or 22 (rank one)")->capture_default_str();
  construct->add_option("--axis", c.axis, "Axis for the rank-one set (1-based)")->capture_default_str();
  construct->add_option("--count", c.count, "Number of points")->capture_default_str();
  auto* eb = construct->add_option("--enum-bound", enum_bound, "Greedy search radius (default 64n)");

  auto* verify = app.add_subcommand("verify", "Oracle orthogonality report for a point set");
  verify->add_option("--polytope", c.polytope, "Polytope JSON")->required();
  verify->add_option("--points", c.points, "CSV of frequencies (first d columns)")->required();

  auto* fourier = app.add_subcommand("fourier", "Evaluate the Fourier transform of a polytope");
  fourier->add_option("--polytope", c.polytope, "Polytope JSON")->required();
  fourier->add_option("--frequencies", c.frequencies, "CSV with one frequency per row")->required();
  fourier->add_option("--method", c.method, "auto, lawrence or oracle")->capture_default_str();

  auto* density = app.add_subcommand("density", "Box-count density estimate");
  density->add_option("--lattice", c.lattice, "CSV with one basis vector per row");
  density->add_option("--points", c.points, "CSV point list");
  density->add_option("--coverage", c.coverage, "Sup-norm radius up to which the point list is complete");
  density->add_option("--rho", c.rhos, "Box sizes")->capture_default_str();
  density->add_option("--polytope", c.polytope, "Polytope JSON for the Landau reference line");

  auto* zonotope = app.add_subcommand("zonotope", "Weighted construction for a projected cube");
  zonotope->add_option("--matrix", c.zonotope, "Zonotope JSON with matrix, m and optional kernel")->required();
  auto* mopt = zonotope->add_option("--m", m, "Target dimension (overrides the file)");
  zonotope->add_option("--kernel", c.kernel, "JSON array of integer kernel rows");
  zonotope->add_option("--radius", c.radius, "Sup-norm radius of the lambda sample")->capture_default_str();
  zonotope->add_option("--grid", c.grid, "Weight grid points per axis (m <= 2)")->capture_default_str();
  zonotope->add_option("--weighted-count", c.weighted_count, "Nonzero lambdas in the weighted check")
      ->capture_default_str();
  zonotope->add_option("--weighted-tol", c.weighted_tol, "Relative weighted orthogonality tolerance")
      ->capture_default_str();
  zonotope->add_option("--weight-method", c.weight_method, "slice, line or fourier")->capture_default_str();
  zonotope->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples per spot check")->capture_default_str();
  zonotope->add_option("--max-denominator", c.max_denominator, "Rationalization bound")->capture_default_str();
  zonotope->add_option("--accept-residual", c.accept_residual, "Kernel acceptance residual")->capture_default_str();
  zonotope->add_option("--reject-residual", c.reject_residual, "Kernel rejection residual")->capture_default_str();
  zonotope->add_option("--rho", c.rhos, "Box sizes for the lattice count")->capture_default_str();

  auto* fixtures = app.add_subcommand("fixtures", "Reproduce a worked example and assert its checks");
  fixtures->add_option("name", c.fixture, "fig1, ex32 or ex33")->required()->check(CLI::IsMember({"fig1", "ex32", "ex33"}));
  fixtures->add_option("--p", c.p, "Hexagon parameter p")->capture_default_str();
  fixtures->add_option("--q", c.q, "Hexagon parameter q")->capture_default_str();
  fixtures->add_option("--count", c.count, "Points in the fig1 construction")->capture_default_str();
  fixtures->add_option("--radius", c.radius, "Sup-norm radius of the lambda sample")->capture_default_str();
  fixtures->add_option("--grid", c.grid, "Weight grid points per axis")->capture_default_str();
  fixtures->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples per spot check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << "orthoexp " << tool_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_json(err, "UsageError", e.what());
    return kExitError;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (*eb) c.enum_bound = enum_bound;
    if (*mopt) c.m = m;
    if (!config_path.empty()) {
      const std::string text = read_text(config_path);
      c.config_sha256 = sha256_hex(text);
      apply_config(c, parse_json(text, "config"));
    }
    RunResult r = run(c);
    out << r.summary.dump(2) << "\n";
    if (r.status == kExitCheckFailed) error_json(err, "CheckFailed", "one or more checks failed; see the report");
    return r.status;
  } catch (const Error& e) {
    error_json(err, to_string(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    error_json(err, "IoError", e.what());
  } catch (const std::exception& e) {
    error_json(err, "InternalError", e.what());
  }
  return kExitError;
}

}  // namespace orthoexp::cli
