#include "orthoexp/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orthoexp/error.hpp"

namespace orthoexp {

namespace {

void check_target(std::size_t d, std::size_t m) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "zonotope construction needs d >= 2");
  if (m < 1 || m >= d) throw Error(ErrorCode::InvalidArgument, "target dimension must satisfy 1 <= m <= d-1");
}

Eigen::MatrixXd numeric_inverse(const ZonotopeSpec& spec) {
  if (spec.exact_matrix) return inverse(*spec.exact_matrix).to_double();
  return spec.matrix.inverse();
}

Eigen::MatrixXd kernel_matrix(const std::vector<IntVector>& rows, std::size_t d) {
  Eigen::MatrixXd k(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get_d();
  return k;
}

KernelBasis checked(const ZonotopeSpec& spec, std::vector<IntVector> rows, KernelSource source,
                    const KernelPolicy& policy) {
  KernelBasis kb{std::move(rows), source, 0};
  if (kb.rows.size() != spec.m)
    throw Error(ErrorCode::NoIntegerKernel, "constraint system has a kernel of rank " +
                                                std::to_string(kb.rows.size()) + ", expected " +
                                                std::to_string(spec.m));
  kb.residual = condition_residual(spec, kb.rows);
  if (kb.residual > policy.reject_residual)
    throw Error(ErrorCode::NoIntegerKernel, "no integer kernel: reconstructed residual " +
                                                std::to_string(kb.residual));
  if (kb.residual > policy.accept_residual)
    throw Error(ErrorCode::AmbiguousReconstruction,
                "rationalized kernel residual " + std::to_string(kb.residual) + " lies in the ambiguous window");
  return kb;
}

}  // namespace

ZonotopeSpec make_spec(const RatMatrix& m, std::size_t target) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  check_target(m.rows(), target);
  if (determinant(m) == 0) throw Error(ErrorCode::SingularMatrix, "matrix M is singular");
  ZonotopeSpec spec;
  spec.matrix = m.to_double();
  spec.exact_matrix = m;
  spec.m = target;
  return spec;
}

ZonotopeSpec make_spec(const Eigen::MatrixXd& m, std::size_t target) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  check_target(static_cast<std::size_t>(m.rows()), target);
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (lu.rank() < m.rows()) throw Error(ErrorCode::SingularMatrix, "matrix M is singular");
  ZonotopeSpec spec;
  spec.matrix = m;
  spec.m = target;
  return spec;
}

std::string_view to_string(KernelSource s) {
  switch (s) {
    case KernelSource::Lemma42Exact: return "lemma42_exact";
    case KernelSource::Lemma42Reconstructed: return "lemma42_reconstructed";
    case KernelSource::User: return "user";
  }
  return "unknown";
}

double condition_residual(const ZonotopeSpec& spec, const std::vector<IntVector>& rows) {
  const std::size_t d = spec.d();
  if (spec.exact_matrix) {
    const RatMatrix inv = inverse(*spec.exact_matrix);
    double worst = 0;
    for (const auto& row : rows)
      for (std::size_t i = spec.m; i < d; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc += Rat(row[j]) * inv(j, i);
        worst = std::max(worst, std::fabs(acc.get_d()));
      }
    return worst;
  }
  const Eigen::MatrixXd inv = numeric_inverse(spec);
  const Eigen::MatrixXd k = kernel_matrix(rows, d);
  const auto m = static_cast<Eigen::Index>(spec.m);
  const Eigen::MatrixXd r = k * inv.rightCols(static_cast<Eigen::Index>(d) - m);
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

KernelBasis integer_kernel(const ZonotopeSpec& spec, const KernelPolicy& policy) {
  const std::size_t d = spec.d();
  const std::size_t m = spec.m;
  if (spec.exact_matrix) {
    const RatMatrix inv = inverse(*spec.exact_matrix);
    RatMatrix c(d - m, d);
    for (std::size_t r = 0; r < d - m; ++r)
      for (std::size_t j = 0; j < d; ++j) c(r, j) = inv(j, m + r);
    return checked(spec, integer_kernel_basis(c), KernelSource::Lemma42Exact, policy);
  }
  // rows of v are (M^{-1} e_i)^T, i > m
  const Eigen::MatrixXd inv = spec.matrix.inverse();
  const Eigen::MatrixXd v = inv.rightCols(static_cast<Eigen::Index>(d - m)).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  std::vector<std::size_t> cols(d);
  for (std::size_t i = 0; i < d; ++i) cols[i] = static_cast<std::size_t>(qr.colsPermutation().indices()(static_cast<Eigen::Index>(i)));
  std::vector<std::size_t> j_cols(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(d - m));
  std::vector<std::size_t> s_cols(cols.begin() + static_cast<std::ptrdiff_t>(d - m), cols.end());
  std::sort(j_cols.begin(), j_cols.end());
  std::sort(s_cols.begin(), s_cols.end());
  Eigen::MatrixXd vj(static_cast<Eigen::Index>(d - m), static_cast<Eigen::Index>(d - m));
  Eigen::MatrixXd vs(static_cast<Eigen::Index>(d - m), static_cast<Eigen::Index>(m));
  for (std::size_t c = 0; c < d - m; ++c) vj.col(static_cast<Eigen::Index>(c)) = v.col(static_cast<Eigen::Index>(j_cols[c]));
  for (std::size_t c = 0; c < m; ++c) vs.col(static_cast<Eigen::Index>(c)) = v.col(static_cast<Eigen::Index>(s_cols[c]));
  const Eigen::MatrixXd ratio = vj.fullPivLu().solve(vs);
  // k_J + R k_S = 0 with R rationalized
  RatMatrix c(d - m, d);
  for (std::size_t r = 0; r < d - m; ++r) {
    c(r, j_cols[r]) = 1;
    for (std::size_t s = 0; s < m; ++s)
      c(r, s_cols[s]) = rationalize(ratio(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)),
                                    policy.max_denominator);
  }
  return checked(spec, integer_kernel_basis(c), KernelSource::Lemma42Reconstructed, policy);
}

KernelBasis user_kernel(const ZonotopeSpec& spec, std::vector<IntVector> rows) {
  const std::size_t d = spec.d();
  if (rows.size() != spec.m) throw Error(ErrorCode::InvalidArgument, "kernel must have exactly m rows");
  RatMatrix k(spec.m, d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw Error(ErrorCode::InvalidArgument, "kernel row has wrong length");
    for (std::size_t j = 0; j < d; ++j) k(i, j) = Rat(rows[i][j]);
  }
  if (rank(k) < spec.m) throw Error(ErrorCode::InvalidArgument, "kernel rows are linearly dependent");
  KernelBasis kb{std::move(rows), KernelSource::User, 0};
  kb.residual = condition_residual(spec, kb.rows);
  if (kb.residual > 1e-9)
    throw Error(ErrorCode::InvalidArgument,
                "kernel violates <k, M^{-1} e_i> = 0, residual " + std::to_string(kb.residual));
  return kb;
}

LambdaData build_lambda(const ZonotopeSpec& spec, const KernelBasis& kb) {
  const std::size_t d = spec.d();
  const auto m = static_cast<Eigen::Index>(spec.m);
  const auto dd = static_cast<Eigen::Index>(d);
  const Eigen::MatrixXd inv = numeric_inverse(spec);
  const Eigen::MatrixXd k = kernel_matrix(kb.rows, d);
  LambdaData out;
  out.sigma = k * inv.leftCols(m);
  bool independent = true;
  if (spec.exact_matrix) {
    const RatMatrix minv = inverse(*spec.exact_matrix);
    RatMatrix a(spec.m, spec.m);
    for (std::size_t i = 0; i < spec.m; ++i)
      for (std::size_t j = 0; j < spec.m; ++j)
        for (std::size_t c = 0; c < d; ++c) a(i, j) += Rat(kb.rows[i][c]) * minv(c, j);
    independent = rank(a) == spec.m;
    out.sigma = a.to_double();
    if (independent) out.det_a = determinant(a).get_d();
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(out.sigma);
    lu.setThreshold(1e-9);
    independent = lu.rank() == m;
  }
  if (!independent) throw Error(ErrorCode::DependentSigmas, "sigma vectors are linearly dependent");
  out.u.resize(dd, dd);
  out.u.topRows(m) = k;
  out.u.bottomRows(dd - m) = spec.matrix.bottomRows(dd - m);
  if (spec.exact_matrix) {
    RatMatrix u(d, d);
    for (std::size_t i = 0; i < spec.m; ++i)
      for (std::size_t j = 0; j < d; ++j) u(i, j) = Rat(kb.rows[i][j]);
    for (std::size_t i = spec.m; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) u(i, j) = (*spec.exact_matrix)(i, j);
    out.det_u = determinant(u).get_d();
    out.det_m = determinant(*spec.exact_matrix).get_d();
    const RatMatrix minv = inverse(*spec.exact_matrix);
    RatMatrix prod(d, d), block(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) prod(i, j) += u(i, k) * minv(k, j);
        if (i >= spec.m || j >= spec.m) block(i, j) = i == j ? 1 : 0;
      }
    for (std::size_t i = 0; i < spec.m; ++i)
      for (std::size_t j = 0; j < spec.m; ++j) block(i, j) = prod(i, j);  // sigma_i, exactly
    double worst = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) worst = std::max(worst, std::fabs(Rat(prod(i, j) - block(i, j)).get_d()));
    out.block_residual = worst;
  } else {
    out.det_u = out.u.determinant();
    out.det_m = spec.matrix.determinant();
    Eigen::MatrixXd block = Eigen::MatrixXd::Identity(dd, dd);
    block.topLeftCorner(m, m) = out.sigma;
    out.block_residual = (block - out.u * inv).cwiseAbs().maxCoeff();
  }
  if (!spec.exact_matrix) out.det_a = out.sigma.determinant();
  return out;
}

OrthoSet lambda_sample(const LambdaData& data, std::int64_t radius) {
  return make_ortho_set(Provenance::Thm25, std::numbers::pi, data.sigma.transpose(),
                        box_points_by_shell(static_cast<std::size_t>(data.sigma.rows()), radius));
}

DensityBound density_bound(const ZonotopeSpec& spec, const KernelBasis& kb) {
  LambdaData data = build_lambda(spec, kb);
  const double scale = data.u.cwiseAbs().maxCoeff();
  if (std::fabs(data.det_u) <= 1e-12 * std::pow(std::max(scale, 1.0), static_cast<double>(spec.d())))
    throw Error(ErrorCode::SingularU, "matrix U is singular");
  DensityBound b;
  const double ratio = std::fabs(data.det_m) / std::fabs(data.det_u);
  b.bound_m = std::pow(std::numbers::pi, -static_cast<double>(spec.m)) * ratio;
  b.bound_d = std::pow(std::numbers::pi, -static_cast<double>(spec.d())) * ratio;
  b.det_a_identity = data.det_u / data.det_m;
  b.det_a_direct = data.det_a;
  b.counting_density = std::pow(std::numbers::pi, -static_cast<double>(spec.m)) / std::fabs(data.det_a);
  b.exponent_discrepancy = std::fabs(b.bound_m - b.bound_d) > 1e-12 * b.bound_m;
  return b;
}

}  // namespace orthoexp
