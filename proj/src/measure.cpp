/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "measure.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "tprod.hpp"

namespace ffmtk {

ModePairWeights::ModePairWeights(std::size_t order, std::map<ModePair, double> weights)
    : order_(order), weights_(std::move(weights)) {
  require(order >= 1, ErrorCode::invalid_argument, "weights need order >= 1");
  const auto pairs = all_mode_pairs(order);
  require(weights_.size() == pairs.size(), ErrorCode::invalid_argument,
          "weights must cover all " + std::to_string(pairs.size()) + " mode pairs exactly once");
  double sum = 0.0;
  for (const auto& p : pairs) {
    auto it = weights_.find(p);
    require(it != weights_.end(), ErrorCode::invalid_argument, "weights are missing a mode pair");
    require(it->second >= 0.0 && std::isfinite(it->second), ErrorCode::invalid_argument, "weights must be >= 0");
    sum += it->second;
  }
  require(std::abs(sum - 1.0) <= 1e-12, ErrorCode::invalid_argument, "weights must sum to 1");
}

ModePairWeights ModePairWeights::uniform(std::size_t order) {
  const auto pairs = all_mode_pairs(order);
  std::map<ModePair, double> w;
  for (const auto& p : pairs) w[p] = 1.0 / static_cast<double>(pairs.size());
  return {order, std::move(w)};
}

ModePairWeights ModePairWeights::size_normalized(const Dims& dims) {
  const std::size_t total = product(dims);
  std::map<ModePair, double> w;
  double sum = 0.0;
  for (const auto& p : all_mode_pairs(dims.size())) {
    const std::size_t cap = p.is_matrix() ? std::min(dims[p.k1], total / dims[p.k1]) : std::min(dims[p.k1], dims[p.k2]);
    w[p] = 1.0 / static_cast<double>(cap);
    sum += w[p];
  }
  for (auto& [p, v] : w) v /= sum;
  return {dims.size(), std::move(w)};
}

namespace {

void check_weights(const DenseTensor& x, const ModePairWeights& beta) {
  require(beta.order() == x.order(), ErrorCode::invalid_argument,
          "weights cover order " + std::to_string(beta.order()) + " but tensor has order " + std::to_string(x.order()));
}

Eigen::VectorXd singular_values(const DenseTensor& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m.matrix());
  require(svd.info() == Eigen::Success, ErrorCode::numerical, "SVD did not converge");
  return svd.singularValues();
}

double log_sum(const Eigen::VectorXd& s, double eps) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) acc += std::log(s(j) + eps);
  return acc;
}

}  // namespace

std::size_t matrix_rank(const DenseTensor& m, std::optional<double> tol) {
  require(m.order() == 2, ErrorCode::invalid_argument, "matrix rank needs a 2-order tensor");
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0) return 0;
  const double cut = tol.value_or(default_rank_tol(m.dim(0), m.dim(1))) * s(0);
  return static_cast<std::size_t>((s.array() > cut).count());
}

MeasureReport ffm_rank(const DenseTensor& x, const ModePairWeights& beta, std::optional<double> tol) {
  check_weights(x, beta);
  MeasureReport r;
  for (const auto& [p, w] : beta.entries()) {
    const double rank = p.is_matrix() ? static_cast<double>(matrix_rank(unfold(x, p.k1), tol))
                                      : static_cast<double>(tubal_rank(unfold_pair(x, p), tol));
    r.per_pair[p] = rank;
    r.total += w * rank;
  }
  return r;
}

MeasureReport ffm_logsum(const DenseTensor& x, const ModePairWeights& beta, double eps) {
  check_weights(x, beta);
  require(eps > 0.0, ErrorCode::invalid_argument, "log-sum needs eps > 0");
  MeasureReport r;
  for (const auto& [p, w] : beta.entries()) {
    double value = 0.0;
    if (p.is_matrix()) {
      value = log_sum(singular_values(unfold(x, p.k1)), eps);
    } else {
      for (const auto& s : fourier_singular_values(unfold_pair(x, p))) value += log_sum(s, eps);
    }
    r.per_pair[p] = value;
    r.total += w * value;
  }
  return r;
}

double snn(const DenseTensor& x, std::span<const double> alpha) {
  require(alpha.size() == x.order(), ErrorCode::invalid_argument, "SNN needs one weight per mode");
  double total = 0.0;
  for (std::size_t n = 0; n < x.order(); ++n) total += alpha[n] * singular_values(unfold(x, n)).sum();
  return total;
}

double tnn(const DenseTensor& x) {
  require(x.order() == 3, ErrorCode::invalid_argument, "TNN needs a 3-order tensor");
  double total = 0.0;
  for (const auto& s : fourier_singular_values(x)) total += s.sum();
  return total;
}

std::map<ModePair, std::size_t> n_tubal_rank(const DenseTensor& x, std::optional<double> tol) {
  require(x.order() >= 3, ErrorCode::invalid_argument, "n-tubal rank needs order >= 3");
  std::map<ModePair, std::size_t> out;
  for (const auto& p : off_diagonal_pairs(x.order())) out[p] = tubal_rank(unfold_pair(x, p), tol);
  return out;
}

}  // namespace ffmtk
