#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orthoexp/polytope.hpp"
#include "orthoexp/zonotope.hpp"

namespace orthoexp::cli {

using Json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

std::string sha256_hex(std::string_view bytes);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// {"dim": d, "vertices": [[...], ...]}; string entries are exact rationals,
/// numbers switch to numeric mode. Mixing the two is rejected.
Polytope parse_polytope(const Json& j);
Json polytope_to_json(const Polytope& p);

/// {"matrix": [[...]], "m": m, "kernel": [[int, ...], ...]} with the same
/// exact/numeric convention as polytopes.
ZonotopeSpec parse_zonotope(const Json& j);

std::vector<IntVector> parse_kernel(const Json& j);

/// Numeric rows of a CSV file. Blank lines, lines starting with '#' and a
/// non-numeric header row are skipped.
std::vector<std::vector<double>> parse_csv_rows(std::string_view text);

Json parse_json(std::string_view text, std::string_view what);

}  // namespace orthoexp::cli
