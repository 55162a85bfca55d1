/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include "io.hpp"
#include "solvers.hpp"
#include "support.hpp"
#include "tprod.hpp"

using namespace ffmtk;
using ffmtk::testing::random_tensor;
using ffmtk::testing::rel_diff;

namespace {

DenseTensor rank_one_cube(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> a(n), b(n), c(n);
  for (auto* v : {&a, &b, &c})
    for (auto& e : *v) e = rng.normal();
  DenseTensor t({n, n, n});
  std::size_t lin = 0;
  for (double z : c)
    for (double y : b)
      for (double x : a) t[lin++] = x * y * z;
  return t;
}

}  // namespace

TEST(TcConfig, ValidationRejectsBadValues) {
  TcConfig c;
  EXPECT_NO_THROW(c.validate());
  c.rho = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.mu0_overrides[{0, 1}] = -1.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(RpcaConfig, ValidationRejectsBadValues) {
  RpcaConfig c;
  EXPECT_NO_THROW(c.validate());
  c.growth = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.lambda_sparse = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.rho0 = 0.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Ffmtc, FullMaskReturnsInput) {
  SplitMix64 rng(501);
  const DenseTensor x = random_tensor({4, 5, 3}, rng);
  const auto res = ffmtc_solve(x, ObservationMask(x.dims(), true), TcConfig{});
  EXPECT_EQ(res.x, x);
  EXPECT_EQ(res.report.terminated_by, Termination::tolerance);
}

TEST(Ffmtc, KeepsObservedEntriesAtEveryIterate) {
  const DenseTensor truth = rank_one_cube(8, 3);
  const ObservationMask mask = gen_mask(truth.dims(), 0.6, 5);
  const DenseTensor z = project_mask(truth, mask);
  TcConfig cfg;
  cfg.max_iters = 40;
  std::size_t calls = 0;
  const auto res = ffmtc_solve(z, mask, cfg, [&](std::size_t iter, double change, const DenseTensor& x) {
    ++calls;
    EXPECT_EQ(iter, calls);
    EXPECT_GE(change, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (mask[i]) ASSERT_EQ(x[i], z[i]);
  });
  EXPECT_EQ(calls, res.report.iterations);
  EXPECT_EQ(res.report.change_history.size(), res.report.iterations);
  EXPECT_EQ(res.report.objective_history.size(), res.report.iterations);
}

TEST(Ffmtc, RecoversSmallRankOneTensor) {
  const DenseTensor truth = rank_one_cube(10, 9);
  const ObservationMask mask = gen_mask(truth.dims(), 0.5, 7);
  const auto res = ffmtc_solve(project_mask(truth, mask), mask, TcConfig{});
  EXPECT_LE(rel_diff(res.x, truth), 1e-2);
  if (res.report.terminated_by == Termination::tolerance) EXPECT_LE(res.report.change_history.back(), 1e-4);
}

TEST(Ffmtc, ThreadCountDoesNotChangeResult) {
  const DenseTensor truth = rank_one_cube(6, 4);
  const ObservationMask mask = gen_mask(truth.dims(), 0.5, 1);
  TcConfig one;
  one.threads = 1;
  one.max_iters = 15;
  TcConfig many = one;
  many.threads = 4;
  EXPECT_EQ(ffmtc_solve(truth, mask, one).x, ffmtc_solve(truth, mask, many).x);
}

TEST(Ffmtc, RejectsBadInputs) {
  const DenseTensor x({2, 2, 2});
  EXPECT_THROW(ffmtc_solve(x, ObservationMask({2, 2}, true), {}), Error);
  EXPECT_THROW(ffmtc_solve(x, ObservationMask(x.dims(), false), {}), Error);
  DenseTensor bad = x;
  bad[0] = std::nan("");
  EXPECT_THROW(ffmtc_solve(bad, ObservationMask(x.dims(), true), {}), Error);
}

TEST(Ffmtc, NoObjectiveWhenNotTracked) {
  const DenseTensor truth = rank_one_cube(4, 2);
  TcConfig cfg;
  cfg.track_objective = false;
  cfg.max_iters = 3;
  const auto res = ffmtc_solve(truth, gen_mask(truth.dims(), 0.5, 2), cfg);
  EXPECT_TRUE(res.report.objective_history.empty());
}

TEST(Ffmtrpca, ZeroInputGivesZeroParts) {
  const DenseTensor t({4, 4, 4});
  const auto res = ffmtrpca_solve(t, RpcaConfig{});
  EXPECT_EQ(res.low_rank, t);
  EXPECT_EQ(res.sparse, t);
  EXPECT_EQ(res.report.fidelity_residual, 0.0);
}

TEST(Ffmtrpca, CleanLowRankInputIsKept) {
  SplitMix64 rng(502);
  const DenseTensor t = t_product(random_tensor({8, 1, 8}, rng), random_tensor({1, 8, 8}, rng));
  // the default penalties collapse the low-rank part within a few steps here
  RpcaConfig cfg;
  cfg.mu0 = 0.03;
  cfg.rho0 = 0.1;
  cfg.growth = 1.05;
  const auto res = ffmtrpca_solve(t, cfg);
  EXPECT_LE(rel_diff(res.low_rank, t), 1e-3);
  EXPECT_LE(res.report.fidelity_residual / frobenius_norm(t), 1e-4);
}

TEST(Ffmtrpca, RejectsNonFiniteInput) {
  DenseTensor t({2, 2, 2});
  t[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ffmtrpca_solve(t, {}), Error);
}

TEST(Solvers, DefaultLambdaUsesLargestFace) {
  EXPECT_DOUBLE_EQ(default_lambda_sparse({20, 20, 20}), 1.0 / 20.0);
  EXPECT_DOUBLE_EQ(default_lambda_sparse({2, 8, 4}), 1.0 / std::sqrt(32.0));
}

TEST(Solvers, ResolveBetaChecksOrder) {
  EXPECT_THROW(resolve_beta(ModePairWeights::uniform(2), {2, 2, 2}), Error);
  EXPECT_EQ(resolve_beta(BetaPreset::uniform, {2, 2, 2}).entries().size(), 6u);
}

TEST(Solvers, PairShrinkWithZeroWeightIsIdentity) {
  SplitMix64 rng(503);
  const DenseTensor w = random_tensor({3, 4, 5}, rng);
  for (const auto& p : all_mode_pairs(3)) EXPECT_LE(rel_diff(pair_shrink(w, p, 0.0, 1e-6), w), 1e-12);
}
