#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "orthoexp/polytope.hpp"

namespace orthoexp {

using Complex = std::complex<double>;

enum class FourierMethod { Lawrence, Oracle };

std::string_view to_string(FourierMethod method);

struct FourierValue {
  Complex value;
  FourierMethod method = FourierMethod::Oracle;
  bool singular = false;  // omega orthogonal to some edge
};

/// Relative threshold for |<xi, omega>| below which omega counts as
/// orthogonal to the edge xi.
inline constexpr double kSingularTol = 1e-12;

/// True when omega is zero or orthogonal to some edge of P.
bool is_singular_frequency(const Polytope& p, const Vec& omega);

/// Vertex weight |det(xi_1..xi_d)| / prod <xi_i, omega>.
/// Throws NotSimpleAtVertex or SingularFrequency.
double d_v(const Polytope& p, std::size_t v, const Vec& omega);

/// Vertex-sum formula i^{-d} sum_v D_v(omega) e^{-i<v, omega>}.
/// Throws NotSimple or SingularFrequency.
FourierValue fourier_lawrence(const Polytope& p, const Vec& omega);

/// Integral of e^{-i<x, omega>} over P through its triangulation and the
/// closed-form simplex integral. Defined for every omega.
FourierValue fourier_oracle(const Polytope& p, const Vec& omega);

/// Integral of e^{-i<x, omega>} over the simplex with the given d+1 vertices.
Complex simplex_fourier(const std::vector<Vec>& vertices, const Vec& omega);

/// Divided difference f[x_0, ..., x_n] of f(t) = e^{-it}.
Complex exp_divided_difference(std::vector<double> nodes);

struct MomentResult {
  double lhs = 0;  // integral of <x, omega>^j over P (triangulation)
  double rhs = 0;  // vertex-sum form
};

MomentResult moment(const Polytope& p, const Vec& omega, unsigned j);

struct CompanionResult {
  double value = 0;  // sum_v <v, omega>^j D_v(omega)
  double mass = 0;   // sum_v |<v, omega>|^j |D_v(omega)|
};

CompanionResult companion_sum(const Polytope& p, const Vec& omega, unsigned j);

/// |F_P(omega)| <= tol |P|, evaluated with the oracle.
bool is_fourier_zero(const Polytope& p, const Vec& omega, double tol);

}  // namespace orthoexp
