#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "orthoexp/constructions.hpp"
#include "orthoexp/fourier.hpp"
#include "orthoexp/polytope.hpp"

namespace orthoexp {

/// Nondegenerate d x d matrix M (numeric, optionally exact), target
/// dimension m and an optional user kernel.
struct ZonotopeSpec {
  Eigen::MatrixXd matrix;
  std::optional<RatMatrix> exact_matrix;
  std::size_t m = 1;
  std::optional<std::vector<IntVector>> kernel;

  std::size_t d() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Throws SingularMatrix or InvalidArgument.
ZonotopeSpec make_spec(const RatMatrix& m, std::size_t target);
ZonotopeSpec make_spec(const Eigen::MatrixXd& m, std::size_t target);

enum class KernelSource { Lemma42Exact, Lemma42Reconstructed, User };
std::string_view to_string(KernelSource s);

struct KernelBasis {
  std::vector<IntVector> rows;  // m integer vectors
  KernelSource source = KernelSource::Lemma42Exact;
  double residual = 0;  // max |<k_j, M^{-1} e_i>| over i > m
};

struct KernelPolicy {
  long max_denominator = 1000000;
  double accept_residual = 1e-8;
  double reject_residual = 1e-4;
};

/// Integer vectors k with <k, M^{-1} e_i> = 0 for i = m+1..d, spanning the
/// full lattice of such vectors. Exact nullspace for rational M; otherwise
/// the ratio matrix of the constraint columns is rationalized by continued
/// fractions. Throws NoIntegerKernel or AmbiguousReconstruction.
KernelBasis integer_kernel(const ZonotopeSpec& spec, const KernelPolicy& policy = {});

/// Validates a user kernel against the constraints (tolerance 1e-9).
KernelBasis user_kernel(const ZonotopeSpec& spec, std::vector<IntVector> rows);

/// Max |<k, M^{-1} e_i>| over kernel rows and i > m.
double condition_residual(const ZonotopeSpec& spec, const std::vector<IntVector>& rows);

struct LambdaData {
  Eigen::MatrixXd sigma;   // m x m, row i is sigma_i
  Eigen::MatrixXd u;       // d x d, rows (K; e_{m+1} M; ...; e_d M)
  double det_u = 0;
  double det_m = 0;
  double det_a = 0;        // determinant of sigma assembled directly
  double block_residual = 0;  // max |(A 0; 0 I) - U M^{-1}|, in exact arithmetic for rational M
};

/// Generators of Lambda' and the matrix U. Throws DependentSigmas.
LambdaData build_lambda(const ZonotopeSpec& spec, const KernelBasis& k);

/// Points pi * sum alpha_i sigma_i for |alpha|_inf <= radius, origin first,
/// then by sup-norm shell and lexicographic order.
OrthoSet lambda_sample(const LambdaData& data, std::int64_t radius);

struct DensityBound {
  double bound_m = 0;          // pi^{-m} |det M| / |det U|
  double bound_d = 0;          // pi^{-d} |det M| / |det U|
  double counting_density = 0; // 1 / |det(pi A)|
  double det_a_identity = 0;   // det U / det M
  double det_a_direct = 0;
  bool exponent_discrepancy = false;
};

/// Throws SingularU.
DensityBound density_bound(const ZonotopeSpec& spec, const KernelBasis& k);

/// s with |u_i + s v_i| < 1 for all i: midpoint of the feasible interval.
/// Throws NoIntersection.
double interior_param(const Vec& u, const Vec& v);

/// Length of the chord of C_d along u + t v, u strictly inside; zero
/// components of v are dropped first. Throws NotInterior.
double line_cube_length(const Vec& u, const Vec& v);

enum class WeightMethod { SlicePolytope, LineLength, FourierSlice };
std::string_view to_string(WeightMethod m);

/// W(x*) = volume of {y : M^{-1}(x*, y) in C_d}.
class WeightEvaluator {
 public:
  /// Throws MethodUnavailable when the method's preconditions fail
  /// (line_length: m = d-1 and M orthogonal; fourier_slice: m = 1 and M orthogonal).
  WeightEvaluator(ZonotopeSpec spec, WeightMethod method);

  double operator()(const Vec& x) const;
  const ZonotopeSpec& spec() const { return spec_; }
  WeightMethod method() const { return method_; }

 private:
  double slice_polytope(const Vec& x) const;
  double line_length(const Vec& x) const;
  double fourier_slice(const Vec& x) const;

  ZonotopeSpec spec_;
  WeightMethod method_;
  Eigen::MatrixXd inverse_;
};

bool is_orthogonal(const Eigen::MatrixXd& m, double tol = 1e-10);

/// Stratified jittered Monte Carlo estimate of W(x*) over the fiber's
/// bounding box.
double weight_monte_carlo(const ZonotopeSpec& spec, const Vec& x, std::size_t samples, std::uint64_t seed);

/// Piecewise-polynomial model of W on the cells cut out of the projected
/// zonotope by the projections of the (m-1)-faces of M C_d. Supports
/// m-dimensional integrals of W against exponentials.
class ProjectedWeightModel {
 public:
  explicit ProjectedWeightModel(const ZonotopeSpec& spec);
  ~ProjectedWeightModel();
  ProjectedWeightModel(ProjectedWeightModel&&) noexcept;
  ProjectedWeightModel& operator=(ProjectedWeightModel&&) noexcept;

  /// Integral of e^{i<lambda, x>} W(x) over the projected zonotope.
  Complex integrate(const Vec& lambda) const;
  double mass() const;
  double fit_residual() const;  // max sample misfit over all cells
  std::size_t num_cells() const;
  const Polytope& zonotope() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct WeightedOrthogonality {
  IntVector k;                 // integer vector generating lambda
  double exact_residual = 0;   // |prod 2 sin(pi k_i)/(pi k_i)|
  Complex projected_integral;
  double projected_residual = 0;  // |projected_integral|
  double mass = 0;                // integral of W
  bool pass = false;              // projected_residual <= tol * mass
};

inline constexpr double kWeightedTol = 1e-6;

/// Throws LambdaNotInSet when lambda is not pi times an integer combination of the sigma_i.
WeightedOrthogonality weighted_orthogonality_check(const ZonotopeSpec& spec, const KernelBasis& k,
                                                   const LambdaData& data, const ProjectedWeightModel& model,
                                                   const Vec& lambda, double tol = kWeightedTol);

}  // namespace orthoexp
