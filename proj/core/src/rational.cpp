#include "orthoexp/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orthoexp/error.hpp"

namespace orthoexp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NumericModeUnsupported: return "NumericModeUnsupported";
    case ErrorCode::AxisOutOfRange: return "AxisOutOfRange";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotSimpleAtVertex: return "NotSimpleAtVertex";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::SingularFrequency: return "SingularFrequency";
    case ErrorCode::EnumerationExhausted: return "EnumerationExhausted";
    case ErrorCode::AxisEdgeViolation: return "AxisEdgeViolation";
    case ErrorCode::IrrationalAxis: return "IrrationalAxis";
    case ErrorCode::NoIntegerKernel: return "NoIntegerKernel";
    case ErrorCode::AmbiguousReconstruction: return "AmbiguousReconstruction";
    case ErrorCode::DependentSigmas: return "DependentSigmas";
    case ErrorCode::SingularU: return "SingularU";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::MethodUnavailable: return "MethodUnavailable";
    case ErrorCode::LambdaNotInSet: return "LambdaNotInSet";
    case ErrorCode::SourceTooSmall: return "SourceTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
  try {
    if (auto dot_pos = s.find('.'); dot_pos != std::string::npos) {
      if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
        throw Error(ErrorCode::ParseError, "unsupported rational literal '" + s + "'");
      std::string digits = s.substr(0, dot_pos) + s.substr(dot_pos + 1);
      std::size_t frac_len = s.size() - dot_pos - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        throw Error(ErrorCode::ParseError, "malformed decimal '" + s + "'");
      if (digits[0] == '+') digits.erase(0, 1);
      Int num(digits, 10);
      Int den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    if (s[0] == '+') s.erase(0, 1);
    Rat r(s, 10);
    if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
  }
}

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

RatMatrix::RatMatrix(const std::vector<RatVector>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVector RatMatrix::col(std::size_t j) const {
  RatVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Eigen::MatrixXd RatMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

RatVector operator*(const RatMatrix& a, const RatVector& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::InvalidArgument, "matrix/vector shape mismatch");
  RatVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Rat dot(const RatVector& a, const RatVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
  return out;
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

Rat determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Int common_denominator(const RatVector& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

IntVector primitive_integer(const RatVector& v) {
  Int l = common_denominator(v);
  IntVector out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * l;
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

namespace {

// Column-style Hermite reduction: returns unimodular U and the rank r such
// that the last d - r columns of U span the integer kernel of `a`.
std::pair<std::vector<IntVector>, std::size_t> column_hermite(std::vector<IntVector> a, std::size_t d) {
  std::vector<IntVector> u(d, IntVector(d));  // u[row][col]
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  auto column_op = [&](std::size_t p, std::size_t j, const Int& s, const Int& t, const Int& x, const Int& y) {
    // new col p = s*col_p + t*col_j ; new col j = x*col_p + y*col_j
    for (auto& row : a) {
      Int cp = row[p], cj = row[j];
      row[p] = s * cp + t * cj;
      row[j] = x * cp + y * cj;
    }
    for (auto& row : u) {
      Int cp = row[p], cj = row[j];
      row[p] = s * cp + t * cj;
      row[j] = x * cp + y * cj;
    }
  };
  std::size_t p = 0;
  for (std::size_t i = 0; i < a.size() && p < d; ++i) {
    for (std::size_t j = p + 1; j < d; ++j) {
      if (a[i][j] == 0) continue;
      if (a[i][p] == 0) {
        column_op(p, j, 0, 1, 1, 0);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][p].get_mpz_t(), a[i][j].get_mpz_t());
      Int x = -a[i][j] / g;
      Int y = a[i][p] / g;
      column_op(p, j, s, t, x, y);
    }
    if (a[i][p] != 0) ++p;
  }
  return {u, p};
}

}  // namespace

Int maximal_minor_gcd(const std::vector<IntVector>& rows) {
  if (rows.empty()) return 1;
  const std::size_t m = rows.size();
  const std::size_t d = rows.front().size();
  Int g = 0;
  std::vector<bool> mask(d, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(m), true);
  do {
    RatMatrix sub(m, m);
    std::size_t c = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (!mask[j]) continue;
      for (std::size_t i = 0; i < m; ++i) sub(i, c) = Rat(rows[i][j]);
      ++c;
    }
    Int det = determinant(sub).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return g;
}

std::vector<IntVector> integer_kernel_basis(const RatMatrix& m) {
  const std::size_t d = m.cols();
  std::vector<IntVector> pretty;
  for (const auto& v : nullspace(m)) pretty.push_back(primitive_integer(v));
  if (pretty.empty() || maximal_minor_gcd(pretty) == 1) return pretty;

  std::vector<IntVector> a;
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(primitive_integer(m.row(i)));
  auto [u, r] = column_hermite(std::move(a), d);
  std::vector<IntVector> basis;
  for (std::size_t c = r; c < d; ++c) {
    IntVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = u[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction; stop before k exceeds max_den.
  long double rem = x;
  Int h_prev = 1, h = static_cast<long>(std::floor(rem));
  Int k_prev = 0, k = 1;
  rem -= std::floor(rem);
  for (int iter = 0; iter < 64 && rem > 1e-18L; ++iter) {
    rem = 1.0L / rem;
    if (rem > static_cast<long double>(max_den) + 1) break;
    long a = static_cast<long>(std::floor(rem));
    rem -= a;
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rat r(h, k);
  r.canonicalize();
  return r;
}

}  // namespace orthoexp
