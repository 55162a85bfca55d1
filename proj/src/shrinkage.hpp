/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Closed-form proximal maps used by the ADMM solvers.

#include <vector>

#include <Eigen/Core>

#include "tensor.hpp"

namespace ffmtk {

struct LogShrinkParams {
  double alpha = 0.0;  // penalty weight, >= 0
  double eps = 0.0;    // offset inside the log, >= 0
};

/// sign(x) * max(|x| - lam, 0).
double soft_threshold(double x, double lam);

/// Log-sum thresholding of a scalar: the stationary point of
/// alpha*log(t + eps) + (t - |x|)^2 / 2 nearest |x|, sign restored.
/// Zero when |x| <= 2*sqrt(alpha) - eps. A negative stationary point (only
/// possible for |x| < eps with alpha < eps^2) is clamped to zero.
double log_shrink_scalar(double x, LogShrinkParams p);

/// Log-sum shrinkage of one singular value inside a tensor slice: the global
/// minimiser over t >= 0 of (t - sigma)^2 / 2 + lam*log(t + eps), obtained by
/// comparing the interior stationary point against t = 0.
double tensor_log_shrink_scalar(double sigma, double lam, double eps);

/// SVD of y, log_shrink_scalar on every singular value, reconstruction.
DenseTensor matrix_log_shrink(const DenseTensor& y, LogShrinkParams p);
Eigen::MatrixXd matrix_log_shrink(const Eigen::MatrixXd& y, LogShrinkParams p,
                                  Eigen::VectorXd* shrunk_sigma = nullptr);

/// t-SVD of a 3-order tensor with every Fourier-slice singular value mapped
/// through tensor_log_shrink_scalar. When `shrunk_sigma` is given it receives
/// the output singular values per Fourier slice.
DenseTensor tensor_log_shrink(const DenseTensor& a, double lam, double eps,
                              std::vector<Eigen::VectorXd>* shrunk_sigma = nullptr);

}  // namespace ffmtk
