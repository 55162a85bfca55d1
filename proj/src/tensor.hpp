/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Dense N-order tensors and the unfolding/folding primitives.
//
// Storage is first-index-fastest (column-major generalised). Mode numbers in
// this C++ layer are 0-based; the C API and CLI speak 1-based modes and
// convert at the boundary.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "error.hpp"

namespace ffmtk {

using Dims = std::vector<std::size_t>;

std::size_t product(std::span<const std::size_t> dims);

class DenseTensor {
 public:
  DenseTensor() = default;
  /// Zero tensor of the given shape.
  explicit DenseTensor(Dims dims);
  DenseTensor(Dims dims, std::vector<double> data);

  static DenseTensor filled(Dims dims, double value);
  /// 2-order tensor holding a copy of `m`.
  static DenseTensor from_matrix(const Eigen::MatrixXd& m);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t mode) const { return dims_.at(mode); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  /// Element access by 0-based multi-index.
  double at(std::span<const std::size_t> index) const;
  double& at(std::span<const std::size_t> index);

  std::size_t linear_index(std::span<const std::size_t> index) const;

  /// Column-major view of a 2-order tensor.
  Eigen::Map<const Eigen::MatrixXd> matrix() const;
  Eigen::Map<Eigen::MatrixXd> matrix();

  /// Frontal slice k of a 3-order tensor as a column-major matrix view.
  Eigen::Map<const Eigen::MatrixXd> frontal(std::size_t k) const;
  Eigen::Map<Eigen::MatrixXd> frontal(std::size_t k);

  /// Same data, new shape of equal element count.
  DenseTensor reshaped(Dims dims) const&;
  DenseTensor reshaped(Dims dims) &&;

  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

  DenseTensor& operator+=(const DenseTensor& rhs);
  DenseTensor& operator-=(const DenseTensor& rhs);
  DenseTensor& operator*=(double s);

 private:
  Dims dims_;
  std::vector<double> data_;
};

DenseTensor operator+(DenseTensor lhs, const DenseTensor& rhs);
DenseTensor operator-(DenseTensor lhs, const DenseTensor& rhs);
DenseTensor operator*(DenseTensor lhs, double s);
DenseTensor operator*(double s, DenseTensor rhs);

/// Pair of modes (k1 <= k2), 0-based. k1 == k2 denotes the matrix unfolding.
struct ModePair {
  std::size_t k1 = 0;
  std::size_t k2 = 0;

  bool is_matrix() const noexcept { return k1 == k2; }
  auto operator<=>(const ModePair&) const = default;
};

/// All pairs 0 <= k1 <= k2 < order, ordered lexicographically.
std::vector<ModePair> all_mode_pairs(std::size_t order);
/// Pairs with k1 < k2 only.
std::vector<ModePair> off_diagonal_pairs(std::size_t order);

/// Known-entry index set, same layout as the tensor it masks.
class ObservationMask {
 public:
  ObservationMask() = default;
  ObservationMask(Dims dims, bool value);
  ObservationMask(Dims dims, std::vector<char> known);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return known_.size(); }
  bool operator[](std::size_t i) const { return known_[i] != 0; }
  void set(std::size_t i, bool v) { known_[i] = v ? 1 : 0; }
  std::size_t count() const noexcept;
  std::span<const char> raw() const noexcept { return known_; }

  friend bool operator==(const ObservationMask&, const ObservationMask&) = default;

 private:
  Dims dims_;
  std::vector<char> known_;
};

double frobenius_norm(const DenseTensor& x);

/// Reorders modes: result mode i is input mode perm[i].
DenseTensor permute(const DenseTensor& x, std::span<const std::size_t> perm);

/// Mode-n unfolding: rows index mode n, columns enumerate remaining modes in
/// increasing order with the lowest mode fastest.
DenseTensor unfold(const DenseTensor& x, std::size_t mode);
DenseTensor fold(const DenseTensor& m, std::size_t mode, const Dims& dims);

/// Y = X x_n U, i.e. unfold(Y, n) = U * unfold(X, n).
DenseTensor mode_n_product(const DenseTensor& x, const Eigen::MatrixXd& u, std::size_t mode);

/// Mode-(k1,k2) unfolding into a 3-order tensor I_k1 x I_k2 x prod(rest).
DenseTensor unfold_pair(const DenseTensor& x, ModePair pair);
DenseTensor fold_pair(const DenseTensor& t, ModePair pair, const Dims& dims);

/// Zeroes every entry outside the mask.
DenseTensor project_mask(const DenseTensor& x, const ObservationMask& mask);

}  // namespace ffmtk
