#include "orthoexp_cli/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "orthoexp/error.hpp"

namespace orthoexp::cli {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::IoError, "sha256 failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string format_double(double x) { return fmt::format("{}", x); }

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", what, e.what()));
  }
}

namespace {

struct Table {
  bool exact = true;
  std::vector<RatVector> rat;
  std::vector<std::vector<double>> num;
};

Table parse_table(const Json& rows, std::string_view what) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::ParseError, fmt::format("{} must be a non-empty array", what));
  bool any_string = false, any_number = false;
  for (const auto& row : rows) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, fmt::format("{} rows must be arrays", what));
    for (const auto& e : row) {
      if (e.is_string()) any_string = true;
      else if (e.is_number()) any_number = true;
      else throw Error(ErrorCode::ParseError, fmt::format("{} entries must be strings or numbers", what));
    }
  }
  if (any_string && any_number)
    throw Error(ErrorCode::ParseError, fmt::format("{} mixes rational strings and numbers", what));
  Table t;
  t.exact = !any_number;
  for (const auto& row : rows) {
    if (t.exact) {
      RatVector r;
      for (const auto& e : row) r.push_back(parse_rat(e.get<std::string>()));
      t.rat.push_back(std::move(r));
    } else {
      std::vector<double> r;
      for (const auto& e : row) r.push_back(e.get<double>());
      t.num.push_back(std::move(r));
    }
  }
  return t;
}

}  // namespace

Polytope parse_polytope(const Json& j) {
  if (!j.is_object() || !j.contains("vertices")) throw Error(ErrorCode::ParseError, "polytope JSON needs \"vertices\"");
  Table t = parse_table(j.at("vertices"), "vertices");
  const std::size_t dim = t.exact ? t.rat.front().size() : t.num.front().size();
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != dim)
    throw Error(ErrorCode::ParseError, "\"dim\" does not match the vertex length");
  if (t.exact) {
    for (const auto& r : t.rat)
      if (r.size() != dim) throw Error(ErrorCode::ParseError, "ragged vertex list");
    return hull_from_vertices(t.rat);
  }
  std::vector<Vec> pts;
  for (const auto& r : t.num) {
    if (r.size() != dim) throw Error(ErrorCode::ParseError, "ragged vertex list");
    pts.push_back(Eigen::Map<const Vec>(r.data(), static_cast<Eigen::Index>(r.size())));
  }
  return hull_from_vertices(pts);
}

Json polytope_to_json(const Polytope& p) {
  Json j;
  j["dim"] = p.dim();
  Json verts = Json::array();
  if (p.exact()) {
    for (const auto& v : p.exact_vertices()) {
      Json row = Json::array();
      for (const auto& x : v) row.push_back(to_string(x));
      verts.push_back(row);
    }
  } else {
    for (const auto& v : p.vertices()) {
      Json row = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
      verts.push_back(row);
    }
  }
  j["vertices"] = verts;
  return j;
}

std::vector<IntVector> parse_kernel(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "kernel must be an array of integer rows");
  std::vector<IntVector> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "kernel rows must be arrays");
    IntVector r;
    for (const auto& e : row) {
      if (e.is_number_integer()) r.emplace_back(e.get<long>());
      else if (e.is_string()) r.emplace_back(e.get<std::string>(), 10);
      else throw Error(ErrorCode::ParseError, "kernel entries must be integers");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

ZonotopeSpec parse_zonotope(const Json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("m"))
    throw Error(ErrorCode::ParseError, "zonotope JSON needs \"matrix\" and \"m\"");
  Table t = parse_table(j.at("matrix"), "matrix");
  const std::size_t m = j.at("m").get<std::size_t>();
  ZonotopeSpec spec;
  if (t.exact) {
    for (const auto& r : t.rat)
      if (r.size() != t.rat.size()) throw Error(ErrorCode::ParseError, "matrix must be square");
    spec = make_spec(RatMatrix(t.rat), m);
  } else {
    const auto n = static_cast<Eigen::Index>(t.num.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(t.num[static_cast<std::size_t>(i)].size()) != n)
        throw Error(ErrorCode::ParseError, "matrix must be square");
      for (Eigen::Index k = 0; k < n; ++k) a(i, k) = t.num[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    spec = make_spec(a, m);
  }
  if (j.contains("kernel") && !j.at("kernel").is_null()) spec.kernel = parse_kernel(j.at("kernel"));
  return spec;
}

std::vector<std::vector<double>> parse_csv_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    bool numeric = true;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const std::string trimmed = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      double v = 0;
      const char* end = trimmed.data() + trimmed.size();
      auto [ptr, ec] = std::from_chars(trimmed.data(), end, v);
      if (trimmed.empty() || ec != std::errc() || ptr != end) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty()) continue;
      throw Error(ErrorCode::ParseError, fmt::format("non-numeric CSV row at line {}", line_no));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace orthoexp::cli
