/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "solvers.hpp"

#include <chrono>
#include <cmath>

#include "parallel.hpp"
#include "shrinkage.hpp"

namespace ffmtk {

ModePairWeights resolve_beta(const BetaSpec& spec, const Dims& dims) {
  if (const auto* preset = std::get_if<BetaPreset>(&spec)) {
    return *preset == BetaPreset::uniform ? ModePairWeights::uniform(dims.size()) : ModePairWeights::size_normalized(dims);
  }
  const auto& w = std::get<ModePairWeights>(spec);
  require(w.order() == dims.size(), ErrorCode::invalid_argument, "explicit weights do not match the tensor order");
  return w;
}

namespace {

void validate_common(double mu0, const std::map<ModePair, double>& overrides, double eps_log, double tol,
                     std::size_t max_iters) {
  require(mu0 > 0.0 && std::isfinite(mu0), ErrorCode::invalid_argument, "mu0 must be > 0");
  for (const auto& [p, v] : overrides)
    require(v > 0.0 && std::isfinite(v) && p.k1 <= p.k2, ErrorCode::invalid_argument, "mu0 overrides must be > 0");
  require(eps_log > 0.0, ErrorCode::invalid_argument, "eps_log must be > 0");
  require(tol > 0.0, ErrorCode::invalid_argument, "tol must be > 0");
  require(max_iters >= 1, ErrorCode::invalid_argument, "max_iters must be >= 1");
}

std::vector<double> initial_mu(const std::vector<ModePair>& pairs, double mu0, const std::map<ModePair, double>& overrides) {
  std::vector<double> mu(pairs.size(), mu0);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (auto it = overrides.find(pairs[i]); it != overrides.end()) mu[i] = it->second;
  return mu;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void TcConfig::validate() const {
  validate_common(mu0, mu0_overrides, eps_log, tol, max_iters);
  require(rho > 1.0, ErrorCode::invalid_argument, "rho must be > 1");
}

void RpcaConfig::validate() const {
  validate_common(mu0, mu0_overrides, eps_log, tol, max_iters);
  require(rho0 > 0.0, ErrorCode::invalid_argument, "rho0 must be > 0");
  require(growth > 1.0, ErrorCode::invalid_argument, "growth must be > 1");
  require(!lambda_sparse || *lambda_sparse > 0.0, ErrorCode::invalid_argument, "lambda_sparse must be > 0");
}

double default_lambda_sparse(const Dims& dims) {
  // unfolding faces of distinct mode pairs; a vector has only its length
  std::size_t largest = dims.size() == 1 ? dims[0] : 0;
  for (const auto& p : off_diagonal_pairs(dims.size())) largest = std::max(largest, dims[p.k1] * dims[p.k2]);
  return 1.0 / std::sqrt(static_cast<double>(largest));
}

DenseTensor pair_shrink(const DenseTensor& w, ModePair pair, double weight, double eps) {
  if (pair.is_matrix()) {
    const DenseTensor unfolded = unfold(w, pair.k1);
    const Eigen::MatrixXd shrunk = matrix_log_shrink(Eigen::MatrixXd(unfolded.matrix()), {weight, eps});
    return fold(DenseTensor::from_matrix(shrunk), pair.k1, w.dims());
  }
  return fold_pair(tensor_log_shrink(unfold_pair(w, pair), weight, eps), pair, w.dims());
}

TcResult ffmtc_solve(const DenseTensor& observed, const ObservationMask& mask, const TcConfig& cfg,
                     const IterationObserver& observer) {
  cfg.validate();
  require(observed.dims() == mask.dims(), ErrorCode::shape_mismatch, "observation and mask shapes differ");
  require(mask.count() > 0, ErrorCode::invalid_argument, "mask has no known entries");
  const auto start = std::chrono::steady_clock::now();

  const ModePairWeights beta = resolve_beta(cfg.beta, observed.dims());
  const auto pairs = all_mode_pairs(observed.order());
  const std::size_t np = pairs.size();

  const DenseTensor z = project_mask(observed, mask);
  require(z.all_finite(), ErrorCode::non_finite, "observed entries contain non-finite values");

  DenseTensor x = z;
  std::vector<DenseTensor> m(np, x);
  std::vector<DenseTensor> q(np, DenseTensor(x.dims()));
  std::vector<double> mu = initial_mu(pairs, cfg.mu0, cfg.mu0_overrides);

  SolveReport report;
  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    parallel_for(np, cfg.threads, [&](std::size_t i) {
      DenseTensor w = q[i];
      w *= 1.0 / mu[i];
      w += x;
      m[i] = pair_shrink(w, pairs[i], beta[pairs[i]] / mu[i], cfg.eps_log);
    });

    // X update: mu-weighted fusion of (M - Q/mu) off the mask, data on it.
    double mu_sum = 0.0;
    for (double v : mu) mu_sum += v;
    DenseTensor x_next(x.dims());
    for (std::size_t i = 0; i < np; ++i) {
      auto acc = x_next.data();
      auto mi = m[i].data();
      auto qi = q[i].data();
      for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += mu[i] * mi[e] - qi[e];
    }
    for (std::size_t e = 0; e < x_next.size(); ++e) x_next[e] = mask[e] ? z[e] : x_next[e] / mu_sum;
    require(x_next.all_finite(), ErrorCode::non_finite, "iterate diverged at iteration " + std::to_string(iter));

    for (std::size_t i = 0; i < np; ++i) {
      auto qi = q[i].data();
      auto mi = m[i].data();
      for (std::size_t e = 0; e < qi.size(); ++e) qi[e] += mu[i] * (x_next[e] - mi[e]);
      mu[i] *= cfg.rho;
    }

    const double change = max_abs_diff(x_next, x);
    x = std::move(x_next);
    report.iterations = iter;
    report.change_history.push_back(change);
    if (cfg.track_objective) report.objective_history.push_back(ffm_logsum(x, beta, cfg.eps_log).total);
    if (observer) observer(iter, change, x);
    if (change <= cfg.tol) {
      report.terminated_by = Termination::tolerance;
      break;
    }
  }
  report.wall_time = elapsed(start);
  return {std::move(x), std::move(report)};
}

RpcaResult ffmtrpca_solve(const DenseTensor& t, const RpcaConfig& cfg, const IterationObserver& observer) {
  cfg.validate();
  require(t.all_finite(), ErrorCode::non_finite, "input contains non-finite values");
  const auto start = std::chrono::steady_clock::now();

  const ModePairWeights beta = resolve_beta(cfg.beta, t.dims());
  const auto pairs = all_mode_pairs(t.order());
  const std::size_t np = pairs.size();
  const double lambda = cfg.lambda_sparse.value_or(default_lambda_sparse(t.dims()));

  DenseTensor l = t;
  DenseTensor e(t.dims());
  DenseTensor f(t.dims());
  std::vector<DenseTensor> g(np, l);
  std::vector<DenseTensor> r(np, DenseTensor(t.dims()));
  std::vector<double> mu = initial_mu(pairs, cfg.mu0, cfg.mu0_overrides);
  double rho = cfg.rho0;

  SolveReport report;
  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    parallel_for(np, cfg.threads, [&](std::size_t i) {
      DenseTensor w = r[i];
      w *= 1.0 / mu[i];
      w += l;
      g[i] = pair_shrink(w, pairs[i], beta[pairs[i]] / mu[i], cfg.eps_log);
    });

    double denom = rho;
    for (double v : mu) denom += v;
    DenseTensor l_next(t.dims());
    for (std::size_t i = 0; i < np; ++i) {
      auto acc = l_next.data();
      auto gi = g[i].data();
      auto ri = r[i].data();
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += mu[i] * gi[k] - ri[k];
    }
    for (std::size_t k = 0; k < l_next.size(); ++k) l_next[k] = (l_next[k] + rho * (t[k] - e[k]) + f[k]) / denom;

    for (std::size_t k = 0; k < e.size(); ++k) e[k] = soft_threshold(t[k] - l_next[k] + f[k] / rho, lambda / rho);
    require(l_next.all_finite() && e.all_finite(), ErrorCode::non_finite,
            "iterate diverged at iteration " + std::to_string(iter));

    for (std::size_t i = 0; i < np; ++i) {
      auto ri = r[i].data();
      auto gi = g[i].data();
      for (std::size_t k = 0; k < ri.size(); ++k) ri[k] += mu[i] * (l_next[k] - gi[k]);
      mu[i] *= cfg.growth;
    }
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += rho * (t[k] - l_next[k] - e[k]);
    rho *= cfg.growth;

    const double change = max_abs_diff(l_next, l);
    l = std::move(l_next);
    report.iterations = iter;
    report.change_history.push_back(change);
    if (cfg.track_objective) report.objective_history.push_back(ffm_logsum(l, beta, cfg.eps_log).total);
    if (observer) observer(iter, change, l);
    if (change <= cfg.tol) {
      report.terminated_by = Termination::tolerance;
      break;
    }
  }
  report.fidelity_residual = frobenius_norm(t - l - e);
  report.wall_time = elapsed(start);
  return {std::move(l), std::move(e), std::move(report)};
}

}  // namespace ffmtk
