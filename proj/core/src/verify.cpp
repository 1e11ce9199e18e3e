#include "orthoexp/verify.hpp"

#include <algorithm>
#include <cmath>

#include "orthoexp/error.hpp"
#include "orthoexp/fourier.hpp"

namespace orthoexp {

VerificationReport orthogonality_report(const Polytope& p, const std::vector<Vec>& points, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  VerificationReport r;
  r.tol = tol;
  const double vol = p.volume();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double res = std::abs(fourier_oracle(p, points[i] - points[j]).value) / vol;
      ++r.pair_count;
      r.max_residual = std::max(r.max_residual, res);
      if (res > tol) r.failing.push_back({i, j, res});
    }
  r.pass = r.failing.empty();
  return r;
}

VerificationReport orthogonality_report(const Polytope& p, const OrthoSet& set, double tol) {
  return orthogonality_report(p, set.points, tol);
}

namespace {

// Anchors are visited one axis at a time, keeping only the points of the
// current slab; the last axis is counted by binary search.
void count_boxes(const std::vector<const Vec*>& pts, std::size_t axis, std::size_t dim, double rho,
                 std::size_t per_axis, DensityRow& row) {
  if (axis + 1 == dim) {
    std::vector<double> vals;
    vals.reserve(pts.size());
    for (const Vec* p : pts) vals.push_back((*p)(static_cast<Eigen::Index>(axis)));
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i < per_axis; ++i) {
      const double lo = -rho + static_cast<double>(i) * rho / 8.0;
      const auto c = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), lo + rho) -
                                              std::lower_bound(vals.begin(), vals.end(), lo));
      row.sup_count = std::max(row.sup_count, c);
      row.inf_count = std::min(row.inf_count, c);
    }
    return;
  }
  std::vector<const Vec*> slab;
  for (std::size_t i = 0; i < per_axis; ++i) {
    const double lo = -rho + static_cast<double>(i) * rho / 8.0;
    slab.clear();
    for (const Vec* p : pts) {
      const double x = (*p)(static_cast<Eigen::Index>(axis));
      if (x >= lo && x < lo + rho) slab.push_back(p);
    }
    count_boxes(slab, axis + 1, dim, rho, per_axis, row);
  }
}

// LLL reduction (delta = 3/4) of the columns; integer column operations only.
Eigen::MatrixXd lll_reduce(Eigen::MatrixXd b) {
  const Eigen::Index n = b.cols();
  auto gram_schmidt = [&](Eigen::MatrixXd& bs, Eigen::MatrixXd& mu) {
    bs = b;
    mu = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < i; ++j) {
        mu(i, j) = b.col(i).dot(bs.col(j)) / bs.col(j).squaredNorm();
        bs.col(i) -= mu(i, j) * bs.col(j);
      }
  };
  Eigen::MatrixXd bs, mu;
  gram_schmidt(bs, mu);
  Eigen::Index k = 1;
  std::size_t guard = 0;
  while (k < n && ++guard < 100000) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      const double r = std::round(mu(k, j));
      if (r != 0) {
        b.col(k) -= r * b.col(j);
        gram_schmidt(bs, mu);
      }
    }
    if (bs.col(k).squaredNorm() >= (0.75 - mu(k, k - 1) * mu(k, k - 1)) * bs.col(k - 1).squaredNorm()) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      gram_schmidt(bs, mu);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace

DensityEstimate density_estimate(const std::vector<Vec>& points, double coverage, const std::vector<double>& rhos) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points to count");
  DensityEstimate est;
  est.dim = static_cast<std::size_t>(points.front().size());
  std::vector<const Vec*> all;
  for (const auto& p : points) all.push_back(&p);
  const std::size_t per_axis = est.anchors_per_axis;
  for (double rho : rhos) {
    if (!(rho > 0)) throw Error(ErrorCode::InvalidArgument, "box size must be positive");
    if (coverage < 2 * rho)
      throw Error(ErrorCode::SourceTooSmall, "point source covers sup-norm " + std::to_string(coverage) +
                                                 " but rho = " + std::to_string(rho) + " needs " +
                                                 std::to_string(2 * rho));
    DensityRow row;
    row.rho = rho;
    row.inf_count = std::numeric_limits<std::size_t>::max();
    count_boxes(all, 0, est.dim, rho, per_axis, row);
    const double vol = std::pow(rho, static_cast<double>(est.dim));
    row.sup_ratio = static_cast<double>(row.sup_count) / vol;
    row.inf_ratio = static_cast<double>(row.inf_count) / vol;
    est.rows.push_back(row);
  }
  return est;
}

DensityEstimate density_estimate_lattice(const Eigen::MatrixXd& basis, const std::vector<double>& rhos) {
  if (basis.rows() != basis.cols() || basis.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "lattice basis must be square");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
  if (lu.rank() < basis.rows()) throw Error(ErrorCode::SingularMatrix, "lattice basis is singular");
  const double reach = 2 * *std::max_element(rhos.begin(), rhos.end());
  const Eigen::MatrixXd reduced = lll_reduce(basis);
  const Eigen::MatrixXd inv = reduced.inverse();
  // |c|_inf <= |B^{-1}|_inf * |x|_inf
  const double row_norm = inv.cwiseAbs().rowwise().sum().maxCoeff();
  const auto cmax = static_cast<std::int64_t>(std::ceil(row_norm * reach)) + 1;
  const auto d = static_cast<std::size_t>(basis.rows());
  std::vector<Vec> pts;
  std::vector<std::int64_t> c(d, -cmax);
  Vec cv(static_cast<Eigen::Index>(d));
  while (true) {
    for (std::size_t k = 0; k < d; ++k) cv(static_cast<Eigen::Index>(k)) = static_cast<double>(c[k]);
    Vec p = reduced * cv;
    if (p.cwiseAbs().maxCoeff() <= reach) pts.push_back(std::move(p));
    std::size_t i = d;
    while (i > 0 && c[i - 1] == cmax) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < d; ++j) c[j] = -cmax;
  }
  return density_estimate(pts, reach, rhos);
}

}  // namespace orthoexp
