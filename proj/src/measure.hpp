/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Tensor sparsity measures. The full feature measure (FFM) is a weighted sum
// over all mode pairs k1 <= k2 of the rank of the corresponding unfolding:
// the matrix rank of unfold(X, k1) when k1 == k2, the tubal rank of
// unfold_pair(X, k1, k2) otherwise. Its log-sum relaxation replaces each rank
// with sum(log(sigma + eps)) over the relevant singular values.

#include <map>
#include <optional>
#include <vector>

#include "tensor.hpp"

namespace ffmtk {

class ModePairWeights {
 public:
  ModePairWeights() = default;
  /// Validates coverage of all N(N+1)/2 pairs, nonnegativity and unit sum.
  ModePairWeights(std::size_t order, std::map<ModePair, double> weights);

  static ModePairWeights uniform(std::size_t order);
  /// beta proportional to 1 / (largest attainable rank of the pair's
  /// unfolding), normalised to sum 1.
  static ModePairWeights size_normalized(const Dims& dims);

  std::size_t order() const noexcept { return order_; }
  double operator[](ModePair p) const { return weights_.at(p); }
  const std::map<ModePair, double>& entries() const noexcept { return weights_; }

 private:
  std::size_t order_ = 0;
  std::map<ModePair, double> weights_;
};

struct MeasureReport {
  std::map<ModePair, double> per_pair;
  double total = 0.0;
};

MeasureReport ffm_rank(const DenseTensor& x, const ModePairWeights& beta, std::optional<double> tol = std::nullopt);
MeasureReport ffm_logsum(const DenseTensor& x, const ModePairWeights& beta, double eps);

/// Numerical rank with the default max(rows, cols)*eps*sigma_1 cut unless
/// tol (relative) is supplied.
std::size_t matrix_rank(const DenseTensor& m, std::optional<double> tol = std::nullopt);

/// Weighted sum of nuclear norms of the mode-n unfoldings.
double snn(const DenseTensor& x, std::span<const double> alpha);
/// Sum of nuclear norms of the Fourier slices of a 3-order tensor.
double tnn(const DenseTensor& x);
/// Tubal ranks of every mode-(k1,k2) unfolding, k1 < k2. Needs order >= 3.
std::map<ModePair, std::size_t> n_tubal_rank(const DenseTensor& x, std::optional<double> tol = std::nullopt);

}  // namespace ffmtk
