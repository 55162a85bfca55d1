/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "tprod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace ffmtk {

ComplexTensor3::ComplexTensor3(std::size_t i1, std::size_t i2, std::size_t i3) : dims_{i1, i2, i3} {
  require(i1 >= 1 && i2 >= 1 && i3 >= 1, ErrorCode::invalid_argument, "complex tensor dims must be >= 1");
  data_.assign(i1 * i2 * i3, cplx{0.0, 0.0});
}

Eigen::Map<const Eigen::MatrixXcd> ComplexTensor3::slice(std::size_t k) const {
  const std::size_t n = dims_[0] * dims_[1];
  return {data_.data() + k * n, static_cast<Eigen::Index>(dims_[0]), static_cast<Eigen::Index>(dims_[1])};
}

Eigen::Map<Eigen::MatrixXcd> ComplexTensor3::slice(std::size_t k) {
  const std::size_t n = dims_[0] * dims_[1];
  return {data_.data() + k * n, static_cast<Eigen::Index>(dims_[0]), static_cast<Eigen::Index>(dims_[1])};
}

namespace {

void require_order3(const DenseTensor& x) {
  require(x.order() == 3, ErrorCode::invalid_argument, "operation requires a 3-order tensor");
}

bool self_conjugate(std::size_t k, std::size_t i3) { return k == 0 || (i3 % 2 == 0 && k == i3 / 2); }

// Fills slices [independent_slices(i3), i3) from their conjugate partners.
void mirror_conjugate(ComplexTensor3& t) {
  const std::size_t i3 = t.dims()[2];
  for (std::size_t k = independent_slices(i3); k < i3; ++k) t.slice(k) = t.slice(i3 - k).conjugate();
}

}  // namespace

ComplexTensor3 dft_mode3(const DenseTensor& x) {
  require_order3(x);
  const auto& d = x.dims();
  const std::size_t face = d[0] * d[1];
  ComplexTensor3 out(d[0], d[1], d[2]);
  const FftPlan plan(d[2]);
  std::vector<cplx> tube(d[2]), spec(d[2]);
  auto src = x.data();
  auto dst = out.data();
  for (std::size_t p = 0; p < face; ++p) {
    for (std::size_t k = 0; k < d[2]; ++k) tube[k] = src[p + k * face];
    plan.forward(tube, spec);
    for (std::size_t k = 0; k < d[2]; ++k) dst[p + k * face] = spec[k];
  }
  return out;
}

DenseTensor idft_mode3(const ComplexTensor3& xf, double imag_tol) {
  const auto& d = xf.dims();
  const std::size_t face = d[0] * d[1];
  DenseTensor out({d[0], d[1], d[2]});
  const FftPlan plan(d[2]);
  std::vector<cplx> spec(d[2]), tube(d[2]);
  auto src = xf.data();
  auto dst = out.data();
  const double inv_n = 1.0 / static_cast<double>(d[2]);
  double max_imag = 0.0;
  double max_mag = 0.0;
  for (std::size_t p = 0; p < face; ++p) {
    for (std::size_t k = 0; k < d[2]; ++k) spec[k] = src[p + k * face];
    plan.inverse(spec, tube);
    for (std::size_t k = 0; k < d[2]; ++k) {
      const cplx v = tube[k] * inv_n;
      dst[p + k * face] = v.real();
      max_imag = std::max(max_imag, std::abs(v.imag()));
      max_mag = std::max(max_mag, std::abs(v));
    }
  }
  require(max_imag <= imag_tol * std::max(max_mag, std::numeric_limits<double>::min()), ErrorCode::numerical,
          "inverse DFT has a non-negligible imaginary part; spectrum is not conjugate-symmetric");
  return out;
}

DenseTensor t_product(const DenseTensor& a, const DenseTensor& b) {
  require_order3(a);
  require_order3(b);
  require(a.dim(1) == b.dim(0) && a.dim(2) == b.dim(2), ErrorCode::shape_mismatch,
          "t-product needs A: I1 x I2 x I3 and B: I2 x J x I3");
  const ComplexTensor3 af = dft_mode3(a);
  const ComplexTensor3 bf = dft_mode3(b);
  const std::size_t i3 = a.dim(2);
  ComplexTensor3 cf(a.dim(0), b.dim(1), i3);
  for (std::size_t k = 0; k < independent_slices(i3); ++k) cf.slice(k).noalias() = af.slice(k) * bf.slice(k);
  mirror_conjugate(cf);
  return idft_mode3(cf);
}

DenseTensor conj_transpose(const DenseTensor& a) {
  require_order3(a);
  const std::size_t i3 = a.dim(2);
  DenseTensor out({a.dim(1), a.dim(0), i3});
  for (std::size_t k = 0; k < i3; ++k) out.frontal(k == 0 ? 0 : i3 - k) = a.frontal(k).transpose();
  return out;
}

DenseTensor identity_tensor(std::size_t n, std::size_t tubes) {
  require(n >= 1 && tubes >= 1, ErrorCode::invalid_argument, "identity tensor sizes must be >= 1");
  DenseTensor out({n, n, tubes});
  out.frontal(0).setIdentity();
  return out;
}

double default_rank_tol(std::size_t rows, std::size_t cols) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
}

FourierTsvd t_svd_fourier(const DenseTensor& x, TsvdPath path) {
  require_order3(x);
  require(x.all_finite(), ErrorCode::non_finite, "t-SVD input contains non-finite values");
  const std::size_t i1 = x.dim(0), i2 = x.dim(1), i3 = x.dim(2);
  const ComplexTensor3 xf = dft_mode3(x);

  FourierTsvd out{ComplexTensor3(i1, i1, i3), ComplexTensor3(i2, i2, i3), std::vector<Eigen::VectorXd>(i3)};
  const std::size_t explicit_slices = path == TsvdPath::conjugate_symmetric ? independent_slices(i3) : i3;
  for (std::size_t k = 0; k < explicit_slices; ++k) {
    if (path == TsvdPath::conjugate_symmetric && self_conjugate(k, i3)) {
      // real spectrum slice: keep factors real so the inverse DFT stays real
      Eigen::MatrixXd re = xf.slice(k).real();
      Eigen::BDCSVD<Eigen::MatrixXd> svd(re, Eigen::ComputeFullU | Eigen::ComputeFullV);
      require(svd.info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
      out.u.slice(k) = svd.matrixU().cast<cplx>();
      out.v.slice(k) = svd.matrixV().cast<cplx>();
      out.sigma[k] = svd.singularValues();
    } else {
      Eigen::MatrixXcd m = xf.slice(k);
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      require(svd.info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
      out.u.slice(k) = svd.matrixU();
      out.v.slice(k) = svd.matrixV();
      out.sigma[k] = svd.singularValues();
    }
  }
  if (path == TsvdPath::conjugate_symmetric) {
    mirror_conjugate(out.u);
    mirror_conjugate(out.v);
    for (std::size_t k = explicit_slices; k < i3; ++k) out.sigma[k] = out.sigma[i3 - k];
  }
  return out;
}

TsvdFactors t_svd(const DenseTensor& x) {
  const FourierTsvd f = t_svd_fourier(x, TsvdPath::conjugate_symmetric);
  const std::size_t i1 = x.dim(0), i2 = x.dim(1), i3 = x.dim(2);
  ComplexTensor3 sf(i1, i2, i3);
  for (std::size_t k = 0; k < i3; ++k)
    for (Eigen::Index j = 0; j < f.sigma[k].size(); ++j) sf.slice(k)(j, j) = f.sigma[k](j);
  return {idft_mode3(f.u), idft_mode3(sf), idft_mode3(f.v)};
}

std::vector<Eigen::VectorXd> fourier_singular_values(const DenseTensor& x) {
  require_order3(x);
  const std::size_t i3 = x.dim(2);
  const ComplexTensor3 xf = dft_mode3(x);
  std::vector<Eigen::VectorXd> sigma(i3);
  for (std::size_t k = 0; k < independent_slices(i3); ++k) {
    Eigen::MatrixXcd m = xf.slice(k);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    require(svd.info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
    sigma[k] = svd.singularValues();
  }
  for (std::size_t k = independent_slices(i3); k < i3; ++k) sigma[k] = sigma[i3 - k];
  return sigma;
}

namespace {

double largest(const std::vector<Eigen::VectorXd>& sigma) {
  double m = 0.0;
  for (const auto& s : sigma)
    if (s.size() > 0) m = std::max(m, s.maxCoeff());
  return m;
}

}  // namespace

std::size_t tubal_rank(const DenseTensor& x, std::optional<double> tol) {
  const auto sigma = fourier_singular_values(x);
  const double cut = tol.value_or(default_rank_tol(x.dim(0), x.dim(1))) * largest(sigma);
  const std::size_t tubes = std::min(x.dim(0), x.dim(1));
  std::size_t rank = 0;
  for (std::size_t j = 0; j < tubes; ++j) {
    const bool nonzero =
        std::any_of(sigma.begin(), sigma.end(), [&](const Eigen::VectorXd& s) { return s(static_cast<Eigen::Index>(j)) > cut; });
    if (nonzero) ++rank;
  }
  return rank;
}

std::vector<std::size_t> multi_rank(const DenseTensor& x, std::optional<double> tol) {
  const auto sigma = fourier_singular_values(x);
  const double cut = tol.value_or(default_rank_tol(x.dim(0), x.dim(1))) * largest(sigma);
  std::vector<std::size_t> ranks;
  ranks.reserve(sigma.size());
  for (const auto& s : sigma) ranks.push_back(static_cast<std::size_t>((s.array() > cut).count()));
  return ranks;
}

}  // namespace ffmtk
