/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "shrinkage.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "tprod.hpp"

namespace ffmtk {

namespace {

// Singular values below this fraction of the largest are exact zeros.
constexpr double kZeroSigma = 1e-14;

void check_params(LogShrinkParams p) {
  require(p.alpha >= 0.0 && p.eps >= 0.0, ErrorCode::invalid_argument, "log shrinkage needs alpha >= 0 and eps >= 0");
}

}  // namespace

double soft_threshold(double x, double lam) {
  const double mag = std::abs(x) - lam;
  if (mag <= 0.0) return 0.0;
  return std::copysign(mag, x);
}

double log_shrink_scalar(double x, LogShrinkParams p) {
  const double ax = std::abs(x);
  if (ax <= 2.0 * std::sqrt(p.alpha) - p.eps) return 0.0;
  const double l1 = ax - p.eps;
  const double radicand = (ax + p.eps) * (ax + p.eps) - 4.0 * p.alpha;
  const double l2 = std::sqrt(std::max(radicand, 0.0));
  const double t = 0.5 * (l1 + l2);
  if (t <= 0.0) return 0.0;
  return std::copysign(t, x);
}

double tensor_log_shrink_scalar(double sigma, double lam, double eps) {
  const double delta = (sigma + eps) * (sigma + eps) - 4.0 * lam;
  if (!(delta > 0.0)) return 0.0;
  const double root = std::sqrt(delta);
  if (!(root > eps - sigma)) return 0.0;
  const double gap = root - sigma - eps;
  const double phi = gap * gap / 8.0 + lam * std::log((sigma + root + eps) / (2.0 * eps));
  if (!(sigma * sigma > 2.0 * phi)) return 0.0;
  return 0.5 * (root + sigma - eps);
}

Eigen::MatrixXd matrix_log_shrink(const Eigen::MatrixXd& y, LogShrinkParams p, Eigen::VectorXd* shrunk_sigma) {
  check_params(p);
  require(y.allFinite(), ErrorCode::non_finite, "matrix shrinkage input contains non-finite values");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  require(svd.info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
  Eigen::VectorXd s = svd.singularValues();
  const double floor = s.size() > 0 ? kZeroSigma * s(0) : 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) s(j) = s(j) < floor ? 0.0 : log_shrink_scalar(s(j), p);
  if (shrunk_sigma) *shrunk_sigma = s;
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

DenseTensor matrix_log_shrink(const DenseTensor& y, LogShrinkParams p) {
  require(y.order() == 2, ErrorCode::invalid_argument, "matrix shrinkage needs a 2-order tensor");
  return DenseTensor::from_matrix(matrix_log_shrink(Eigen::MatrixXd(y.matrix()), p));
}

DenseTensor tensor_log_shrink(const DenseTensor& a, double lam, double eps, std::vector<Eigen::VectorXd>* shrunk_sigma) {
  require(a.order() == 3, ErrorCode::invalid_argument, "tensor shrinkage needs a 3-order tensor");
  require(lam >= 0.0 && eps > 0.0, ErrorCode::invalid_argument, "tensor shrinkage needs lam >= 0 and eps > 0");
  require(a.all_finite(), ErrorCode::non_finite, "tensor shrinkage input contains non-finite values");

  const std::size_t i3 = a.dim(2);
  ComplexTensor3 af = dft_mode3(a);
  const std::size_t half = independent_slices(i3);

  // Fourier-domain B slices are U_k diag(shrunk) V_k^H, which is U * S1 * V^H
  // after the inverse transform.
  std::vector<Eigen::BDCSVD<Eigen::MatrixXcd>> svds;
  svds.reserve(half);
  double sigma_max = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    Eigen::MatrixXcd m = af.slice(k);
    svds.emplace_back(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    require(svds.back().info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
    if (svds.back().singularValues().size() > 0) sigma_max = std::max(sigma_max, svds.back().singularValues()(0));
  }

  const double floor = kZeroSigma * sigma_max;
  if (shrunk_sigma) shrunk_sigma->assign(i3, Eigen::VectorXd());
  for (std::size_t k = 0; k < half; ++k) {
    const auto& svd = svds[k];
    Eigen::VectorXd s = svd.singularValues();
    for (Eigen::Index j = 0; j < s.size(); ++j) s(j) = s(j) < floor ? 0.0 : tensor_log_shrink_scalar(s(j), lam, eps);
    af.slice(k) = svd.matrixU() * s.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
    if (k == 0 || 2 * k == i3) af.slice(k) = af.slice(k).real().cast<cplx>();
    if (shrunk_sigma) (*shrunk_sigma)[k] = s;
  }
  for (std::size_t k = half; k < i3; ++k) {
    af.slice(k) = af.slice(i3 - k).conjugate();
    if (shrunk_sigma) (*shrunk_sigma)[k] = (*shrunk_sigma)[i3 - k];
  }
  return idft_mode3(af);
}

}  // namespace ffmtk
