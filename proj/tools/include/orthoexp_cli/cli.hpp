#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orthoexp_cli/io.hpp"

namespace orthoexp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

struct RunConfig {
  std::string command;

  std::string polytope;
  std::string points;
  std::string frequencies;
  std::string lattice;
  std::string zonotope;
  std::string kernel;
  std::string fixture;

  int theorem = 21;
  std::size_t axis = 1;  // 1-based
  std::size_t count = 20;
  std::optional<std::int64_t> enum_bound;
  std::string method = "auto";

  double tol = 1e-8;
  double weighted_tol = 1e-6;
  long max_denominator = 1000000;
  double accept_residual = 1e-8;
  double reject_residual = 1e-4;

  std::vector<double> rhos{50, 100, 200};
  double coverage = 0;

  std::optional<std::size_t> m;
  std::int64_t radius = 1;
  std::size_t grid = 41;
  std::size_t weighted_count = 10;
  std::size_t mc_samples = 100000;
  std::string weight_method = "slice";

  long p = 1;
  long q = 1;

  std::string out_dir;
  std::uint64_t seed = 0;
  std::string config_sha256;  // hash of the --config file, when given
};

/// Overrides fields named in a JSON object; unknown keys are rejected.
void apply_config(RunConfig& config, const Json& j);
Json config_to_json(const RunConfig& config);

/// Resolved output directory: config value, else ORTHOEXP_OUT_DIR, else ".".
std::filesystem::path output_dir(const RunConfig& config);

struct RunResult {
  int status = kExitOk;
  Json summary;
  std::vector<std::string> files;  // written artifacts, relative to the output dir
};

/// Shared report header: tool name and version, seed, input hashes.
Json report_header(const RunConfig& config, const std::map<std::string, std::string>& input_hashes);

RunResult run_construct(const RunConfig& config);
RunResult run_verify(const RunConfig& config);
RunResult run_fourier(const RunConfig& config);
RunResult run_density(const RunConfig& config);
RunResult run_zonotope(const RunConfig& config);
RunResult run_fixtures(const RunConfig& config);

RunResult run(const RunConfig& config);

/// Full command line entry point. Writes the summary JSON to `out` and
/// error records to `err`; returns the process exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* tool_version();

}  // namespace orthoexp::cli
