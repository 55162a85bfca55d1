/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// ADMM solvers driven by the log-sum full feature measure.
//
//   FFMTC:    min S*(X)  s.t.  P_Omega(X - Z) = 0
//   FFMTRPCA: min S*(L) + lambda_sparse * ||E||_1  s.t.  T = L + E
//
// Both split the measure into one auxiliary copy per mode pair (k1 <= k2),
// shrink each copy with the matrix or tensor log-sum operator, fuse the copies
// back into the primal variable and ascend on the multipliers while the
// penalties grow geometrically.

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "measure.hpp"
#include "tensor.hpp"

namespace ffmtk {

enum class BetaPreset { uniform, size_normalized };

/// Either a named preset (resolved against the data shape at solve time) or
/// an explicit weight map.
using BetaSpec = std::variant<BetaPreset, ModePairWeights>;

ModePairWeights resolve_beta(const BetaSpec& spec, const Dims& dims);

enum class Termination { tolerance, max_iters };

struct SolveReport {
  std::size_t iterations = 0;
  std::vector<double> change_history;     // ||X^{k+1} - X^k||_inf per iteration
  std::vector<double> objective_history;  // log-sum FFM of the iterate (empty when not tracked)
  Termination terminated_by = Termination::max_iters;
  double wall_time = 0.0;  // seconds
  double fidelity_residual = 0.0;  // ||T - L - E||_F, robust PCA only
};

/// Called after every iteration with the 1-based iteration number, that
/// iteration's change_inf and the current primal iterate.
using IterationObserver = std::function<void(std::size_t, double, const DenseTensor&)>;

struct TcConfig {
  BetaSpec beta = BetaPreset::uniform;
  double mu0 = 0.1;
  std::map<ModePair, double> mu0_overrides;
  double rho = 1.1;
  double eps_log = 1e-6;
  double tol = 1e-4;
  std::size_t max_iters = 500;
  bool track_objective = true;
  std::size_t threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct RpcaConfig {
  BetaSpec beta = BetaPreset::uniform;
  double mu0 = 1e-3;
  std::map<ModePair, double> mu0_overrides;
  double rho0 = 1e-3;
  double growth = 1.1;
  std::optional<double> lambda_sparse;  // default: 1 / sqrt(max over k1 < k2 of I_k1 * I_k2)
  double eps_log = 1e-6;
  double tol = 1e-4;
  std::size_t max_iters = 500;
  bool track_objective = true;
  std::size_t threads = 0;

  void validate() const;
};

double default_lambda_sparse(const Dims& dims);

struct TcResult {
  DenseTensor x;
  SolveReport report;
};

struct RpcaResult {
  DenseTensor low_rank;
  DenseTensor sparse;
  SolveReport report;
};

TcResult ffmtc_solve(const DenseTensor& observed, const ObservationMask& mask, const TcConfig& cfg,
                     const IterationObserver& observer = {});

RpcaResult ffmtrpca_solve(const DenseTensor& t, const RpcaConfig& cfg, const IterationObserver& observer = {});

/// One shrinkage step of the pair split: matrix log-sum thresholding of
/// unfold(w, k1) for k1 == k2, tensor log-sum thresholding of the (k1,k2)
/// unfolding otherwise, folded back to w's shape. `weight` is beta/mu.
DenseTensor pair_shrink(const DenseTensor& w, ModePair pair, double weight, double eps);

}  // namespace ffmtk
