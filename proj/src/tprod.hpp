/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Fourier-domain algebra of 3-order tensors: tube DFTs, the t-product,
// conjugate transpose, t-SVD and the tubal/multi ranks derived from it.
//
// DFT convention: unnormalised forward transform along mode 3, 1/I3 on the
// inverse.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "fft.hpp"
#include "tensor.hpp"

namespace ffmtk {

/// Complex 3-order tensor, first index fastest.
class ComplexTensor3 {
 public:
  ComplexTensor3() = default;
  ComplexTensor3(std::size_t i1, std::size_t i2, std::size_t i3);

  const std::array<std::size_t, 3>& dims() const noexcept { return dims_; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  Eigen::Map<const Eigen::MatrixXcd> slice(std::size_t k) const;
  Eigen::Map<Eigen::MatrixXcd> slice(std::size_t k);

 private:
  std::array<std::size_t, 3> dims_{0, 0, 0};
  std::vector<cplx> data_;
};

ComplexTensor3 dft_mode3(const DenseTensor& x);

/// Inverse tube DFT. Throws ErrorCode::numerical when the discarded imaginary
/// part exceeds `imag_tol` relative to the largest magnitude.
DenseTensor idft_mode3(const ComplexTensor3& xf, double imag_tol = 1e-8);

DenseTensor t_product(const DenseTensor& a, const DenseTensor& b);
DenseTensor conj_transpose(const DenseTensor& a);
DenseTensor identity_tensor(std::size_t n, std::size_t tubes);

/// Number of Fourier slices that must be computed explicitly for a real
/// tensor; the remaining ones are complex conjugates of these.
constexpr std::size_t independent_slices(std::size_t i3) { return i3 / 2 + 1; }

/// Default relative rank threshold: max(rows, cols) * machine epsilon.
double default_rank_tol(std::size_t rows, std::size_t cols);

struct TsvdFactors {
  DenseTensor u;  // I1 x I1 x I3
  DenseTensor s;  // I1 x I2 x I3, f-diagonal
  DenseTensor v;  // I2 x I2 x I3
};

/// Fourier-domain t-SVD: per-slice SVD factors and singular values.
struct FourierTsvd {
  ComplexTensor3 u;
  ComplexTensor3 v;
  std::vector<Eigen::VectorXd> sigma;  // one nonincreasing vector per slice
};

enum class TsvdPath { conjugate_symmetric, all_slices };

FourierTsvd t_svd_fourier(const DenseTensor& x, TsvdPath path = TsvdPath::conjugate_symmetric);
TsvdFactors t_svd(const DenseTensor& x);

/// Singular values of every Fourier slice (thin, nonincreasing).
std::vector<Eigen::VectorXd> fourier_singular_values(const DenseTensor& x);

/// Count of singular tubes whose largest Fourier singular value exceeds
/// tol * (largest singular value over all slices). Default tol follows
/// default_rank_tol(I1, I2).
std::size_t tubal_rank(const DenseTensor& x, std::optional<double> tol = std::nullopt);
std::vector<std::size_t> multi_rank(const DenseTensor& x, std::optional<double> tol = std::nullopt);

}  // namespace ffmtk
