#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orthoexp/constructions.hpp"
#include "orthoexp/polytope.hpp"
#include "orthoexp/verify.hpp"
#include "orthoexp/zonotope.hpp"
#include "orthoexp_cli/cli.hpp"

namespace orthoexp::cli::detail {

struct Inputs {
  std::map<std::string, std::string> hashes;

  std::string load(const std::string& name, const std::string& path);
  void add_embedded(const std::string& name, std::string_view bytes);
};

class Artifacts {
 public:
  Artifacts(const RunConfig& config, RunResult& result, std::filesystem::path subdir = {});
  void write(const std::string& name, std::string_view text);
  void write_json(const std::string& name, const Json& j);
  const std::filesystem::path& dir() const { return dir_; }

 private:
  RunResult& result_;
  std::filesystem::path root_;
  std::filesystem::path dir_;
  std::filesystem::path subdir_;
};

std::string dump(const Json& j);

Json vec_json(const Vec& v);
Json int_vector_json(const IntVector& v);
Json matrix_rows_json(const Eigen::MatrixXd& m);

/// Header "# scale=..." then x..., k... columns.
std::string ortho_set_csv(const OrthoSet& set);
std::string points_csv(const std::vector<Vec>& points, std::string_view prefix = "x");
std::string density_csv(const DensityEstimate& est);

Json verification_json(const VerificationReport& r);
Json witness_json(const NecessaryConditionReport& r);
Json density_json(const DensityEstimate& est);
Json density_bound_json(const DensityBound& b);

std::vector<Vec> rows_to_points(const std::vector<std::vector<double>>& rows, std::size_t dim);

struct ZonotopeRun {
  Json report;
  std::string lambda_csv;
  std::string vertices_csv;
  std::string weight_grid_csv;  // empty when m > 2
  bool pass = true;
};

/// Shared zonotope pipeline used by the `zonotope` command and the fixtures.
ZonotopeRun zonotope_pipeline(const ZonotopeSpec& spec, const RunConfig& config);

}  // namespace orthoexp::cli::detail
