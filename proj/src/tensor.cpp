/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace ffmtk {

namespace {

std::string dims_str(const Dims& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

void check_dims(const Dims& dims) {
  require(!dims.empty(), ErrorCode::invalid_argument, "tensor order must be >= 1");
  for (auto d : dims) require(d >= 1, ErrorCode::invalid_argument, "tensor dims must be >= 1, got " + dims_str(dims));
}

void check_same_shape(const DenseTensor& a, const DenseTensor& b) {
  require(a.dims() == b.dims(), ErrorCode::shape_mismatch,
          "shape mismatch: " + dims_str(a.dims()) + " vs " + dims_str(b.dims()));
}

}  // namespace

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

DenseTensor::DenseTensor(Dims dims) : dims_(std::move(dims)) {
  check_dims(dims_);
  data_.assign(product(dims_), 0.0);
}

DenseTensor::DenseTensor(Dims dims, std::vector<double> data) : dims_(std::move(dims)), data_(std::move(data)) {
  check_dims(dims_);
  require(data_.size() == product(dims_), ErrorCode::shape_mismatch,
          "data length " + std::to_string(data_.size()) + " does not match dims " + dims_str(dims_));
}

DenseTensor DenseTensor::filled(Dims dims, double value) {
  DenseTensor t(std::move(dims));
  std::fill(t.data_.begin(), t.data_.end(), value);
  return t;
}

DenseTensor DenseTensor::from_matrix(const Eigen::MatrixXd& m) {
  DenseTensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  t.matrix() = m;
  return t;
}

std::size_t DenseTensor::linear_index(std::span<const std::size_t> index) const {
  require(index.size() == dims_.size(), ErrorCode::out_of_range, "index order does not match tensor order");
  std::size_t lin = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    require(index[k] < dims_[k], ErrorCode::out_of_range, "index out of range");
    lin += index[k] * stride;
    stride *= dims_[k];
  }
  return lin;
}

double DenseTensor::at(std::span<const std::size_t> index) const { return data_[linear_index(index)]; }
double& DenseTensor::at(std::span<const std::size_t> index) { return data_[linear_index(index)]; }

Eigen::Map<const Eigen::MatrixXd> DenseTensor::matrix() const {
  require(order() == 2, ErrorCode::invalid_argument, "matrix view needs a 2-order tensor");
  return {data_.data(), static_cast<Eigen::Index>(dims_[0]), static_cast<Eigen::Index>(dims_[1])};
}

Eigen::Map<Eigen::MatrixXd> DenseTensor::matrix() {
  require(order() == 2, ErrorCode::invalid_argument, "matrix view needs a 2-order tensor");
  return {data_.data(), static_cast<Eigen::Index>(dims_[0]), static_cast<Eigen::Index>(dims_[1])};
}

Eigen::Map<const Eigen::MatrixXd> DenseTensor::frontal(std::size_t k) const {
  require(order() == 3 && k < dims_[2], ErrorCode::out_of_range, "frontal slice needs a 3-order tensor and k < I3");
  const std::size_t n = dims_[0] * dims_[1];
  return {data_.data() + k * n, static_cast<Eigen::Index>(dims_[0]), static_cast<Eigen::Index>(dims_[1])};
}

Eigen::Map<Eigen::MatrixXd> DenseTensor::frontal(std::size_t k) {
  require(order() == 3 && k < dims_[2], ErrorCode::out_of_range, "frontal slice needs a 3-order tensor and k < I3");
  const std::size_t n = dims_[0] * dims_[1];
  return {data_.data() + k * n, static_cast<Eigen::Index>(dims_[0]), static_cast<Eigen::Index>(dims_[1])};
}

DenseTensor DenseTensor::reshaped(Dims dims) const& {
  DenseTensor copy = *this;
  return std::move(copy).reshaped(std::move(dims));
}

DenseTensor DenseTensor::reshaped(Dims dims) && {
  check_dims(dims);
  require(product(dims) == data_.size(), ErrorCode::shape_mismatch,
          "cannot reshape " + dims_str(dims_) + " to " + dims_str(dims));
  dims_ = std::move(dims);
  return std::move(*this);
}

double DenseTensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseTensor::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& rhs) {
  check_same_shape(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& rhs) {
  check_same_shape(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseTensor operator+(DenseTensor lhs, const DenseTensor& rhs) { return lhs += rhs; }
DenseTensor operator-(DenseTensor lhs, const DenseTensor& rhs) { return lhs -= rhs; }
DenseTensor operator*(DenseTensor lhs, double s) { return lhs *= s; }
DenseTensor operator*(double s, DenseTensor rhs) { return rhs *= s; }

std::vector<ModePair> all_mode_pairs(std::size_t order) {
  std::vector<ModePair> pairs;
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = a; b < order; ++b) pairs.push_back({a, b});
  return pairs;
}

std::vector<ModePair> off_diagonal_pairs(std::size_t order) {
  std::vector<ModePair> pairs;
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = a + 1; b < order; ++b) pairs.push_back({a, b});
  return pairs;
}

ObservationMask::ObservationMask(Dims dims, bool value) : dims_(std::move(dims)) {
  check_dims(dims_);
  known_.assign(product(dims_), value ? 1 : 0);
}

ObservationMask::ObservationMask(Dims dims, std::vector<char> known) : dims_(std::move(dims)), known_(std::move(known)) {
  check_dims(dims_);
  require(known_.size() == product(dims_), ErrorCode::shape_mismatch, "mask length does not match dims");
  for (char& c : known_) c = c ? 1 : 0;
}

std::size_t ObservationMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(known_.begin(), known_.end(), char{1}));
}

double frobenius_norm(const DenseTensor& x) {
  double s = 0.0;
  for (double v : x.data()) s += v * v;
  return std::sqrt(s);
}

DenseTensor permute(const DenseTensor& x, std::span<const std::size_t> perm) {
  const std::size_t n = x.order();
  require(perm.size() == n, ErrorCode::invalid_argument, "permutation length must equal tensor order");
  std::vector<char> seen(n, 0);
  for (auto p : perm) {
    require(p < n && !seen[p], ErrorCode::invalid_argument, "not a permutation");
    seen[p] = 1;
  }

  Dims out_dims(n);
  for (std::size_t i = 0; i < n; ++i) out_dims[i] = x.dims()[perm[i]];

  std::vector<std::size_t> in_stride(n);
  std::size_t s = 1;
  for (std::size_t k = 0; k < n; ++k) {
    in_stride[k] = s;
    s *= x.dims()[k];
  }
  // stride into the input for a unit step along each output mode
  std::vector<std::size_t> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = in_stride[perm[i]];

  DenseTensor out(out_dims);
  auto src = x.data();
  auto dst = out.data();
  std::vector<std::size_t> idx(n, 0);
  std::size_t off = 0;
  for (std::size_t lin = 0; lin < dst.size(); ++lin) {
    dst[lin] = src[off];
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < out_dims[i]) {
        off += step[i];
        break;
      }
      off -= (out_dims[i] - 1) * step[i];
      idx[i] = 0;
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> leading_perm(std::size_t order, std::span<const std::size_t> lead) {
  std::vector<std::size_t> perm(lead.begin(), lead.end());
  for (std::size_t k = 0; k < order; ++k)
    if (std::find(lead.begin(), lead.end(), k) == lead.end()) perm.push_back(k);
  return perm;
}

std::vector<std::size_t> inverse_perm(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

}  // namespace

DenseTensor unfold(const DenseTensor& x, std::size_t mode) {
  require(mode < x.order(), ErrorCode::out_of_range, "mode index out of range");
  const std::size_t lead[] = {mode};
  const auto perm = leading_perm(x.order(), lead);
  const std::size_t rows = x.dims()[mode];
  return permute(x, perm).reshaped({rows, x.size() / rows});
}

DenseTensor fold(const DenseTensor& m, std::size_t mode, const Dims& dims) {
  require(mode < dims.size(), ErrorCode::out_of_range, "mode index out of range");
  require(m.order() == 2 && m.dims()[0] == dims[mode] && m.size() == product(dims), ErrorCode::shape_mismatch,
          "matrix shape does not match the mode-n unfolding of the target dims");
  const std::size_t lead[] = {mode};
  const auto perm = leading_perm(dims.size(), lead);
  Dims permuted(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) permuted[i] = dims[perm[i]];
  return permute(m.reshaped(permuted), inverse_perm(perm));
}

DenseTensor mode_n_product(const DenseTensor& x, const Eigen::MatrixXd& u, std::size_t mode) {
  require(mode < x.order(), ErrorCode::out_of_range, "mode index out of range");
  require(static_cast<std::size_t>(u.cols()) == x.dims()[mode], ErrorCode::shape_mismatch,
          "matrix column count must equal the tensor dimension along the mode");
  const DenseTensor xn = unfold(x, mode);
  Eigen::MatrixXd yn = u * xn.matrix();
  Dims out_dims = x.dims();
  out_dims[mode] = static_cast<std::size_t>(u.rows());
  return fold(DenseTensor::from_matrix(yn), mode, out_dims);
}

namespace {

void check_pair(ModePair p, std::size_t order) {
  require(p.k1 < p.k2 && p.k2 < order, ErrorCode::out_of_range, "mode pair must satisfy k1 < k2 <= N");
}

}  // namespace

DenseTensor unfold_pair(const DenseTensor& x, ModePair pair) {
  check_pair(pair, x.order());
  const std::size_t lead[] = {pair.k1, pair.k2};
  const auto perm = leading_perm(x.order(), lead);
  const std::size_t a = x.dims()[pair.k1];
  const std::size_t b = x.dims()[pair.k2];
  return permute(x, perm).reshaped({a, b, x.size() / (a * b)});
}

DenseTensor fold_pair(const DenseTensor& t, ModePair pair, const Dims& dims) {
  check_pair(pair, dims.size());
  require(t.order() == 3 && t.dims()[0] == dims[pair.k1] && t.dims()[1] == dims[pair.k2] && t.size() == product(dims),
          ErrorCode::shape_mismatch, "tensor shape does not match the mode-pair unfolding of the target dims");
  const std::size_t lead[] = {pair.k1, pair.k2};
  const auto perm = leading_perm(dims.size(), lead);
  Dims permuted(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) permuted[i] = dims[perm[i]];
  return permute(t.reshaped(permuted), inverse_perm(perm));
}

DenseTensor project_mask(const DenseTensor& x, const ObservationMask& mask) {
  require(x.dims() == mask.dims(), ErrorCode::shape_mismatch, "mask shape does not match tensor");
  DenseTensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!mask[i]) out[i] = 0.0;
  return out;
}

}  // namespace ffmtk
