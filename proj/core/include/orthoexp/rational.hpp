#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace orthoexp {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
using Rat = mpq_class;
using Int = mpz_class;
using RatVector = std::vector<Rat>;
using IntVector = std::vector<Int>;

/// Parses "p/q", "p" or a finite decimal such as "-0.125" exactly.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& value);

/// Dense row-major matrix of rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit RatMatrix(const std::vector<RatVector>& rows);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;
  RatMatrix transpose() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

  Eigen::MatrixXd to_double() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

RatVector operator*(const RatMatrix& a, const RatVector& x);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator+(const RatVector& a, const RatVector& b);
Rat dot(const RatVector& a, const RatVector& b);
Eigen::VectorXd to_double(const RatVector& v);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);
std::size_t rank(RatMatrix m);
Rat determinant(RatMatrix m);
/// Throws Error(SingularMatrix) when `m` is not invertible.
RatMatrix inverse(const RatMatrix& m);

/// Basis of the rational nullspace {x : m x = 0}, one vector per free column
/// of the echelon form (free variable set to one, the others to zero).
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Least common multiple of all denominators.
Int common_denominator(const RatVector& v);
/// Scales a rational vector to the primitive integer vector on the same ray.
IntVector primitive_integer(const RatVector& v);

/// Basis of the lattice {k in Z^d : m k = 0}. The returned vectors generate
/// every integer solution (the lattice is saturated), not just a
/// finite-index sublattice.
std::vector<IntVector> integer_kernel_basis(const RatMatrix& m);

/// gcd of all maximal minors of an integer matrix given by rows; equals one
/// exactly when the rows span a saturated lattice.
Int maximal_minor_gcd(const std::vector<IntVector>& rows);

/// Continued-fraction approximation with denominator at most `max_den`.
Rat rationalize(double x, long max_den);

}  // namespace orthoexp
