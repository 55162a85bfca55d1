/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include "support.hpp"
#include "tensor.hpp"

using namespace ffmtk;
using ffmtk::testing::random_dims;
using ffmtk::testing::random_tensor;

namespace {

// Multi-index of a linear position, first index fastest.
std::vector<std::size_t> multi_index(std::size_t lin, const Dims& dims) {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    idx[k] = lin % dims[k];
    lin /= dims[k];
  }
  return idx;
}

// Column of an entry once the listed modes are removed, remaining modes in
// increasing order with the first one fastest.
std::size_t rest_column(const std::vector<std::size_t>& idx, const Dims& dims, std::initializer_list<std::size_t> skip) {
  std::size_t col = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
    col += idx[k] * stride;
    stride *= dims[k];
  }
  return col;
}

}  // namespace

TEST(Tensor, ConstructionRejectsBadShapes) {
  EXPECT_THROW(DenseTensor(Dims{}), Error);
  EXPECT_THROW(DenseTensor(Dims{2, 0}), Error);
  EXPECT_THROW(DenseTensor(Dims{2, 2}, std::vector<double>(3)), Error);
}

TEST(Tensor, LinearIndexIsFirstIndexFastest) {
  DenseTensor t({2, 3, 4});
  const std::size_t idx[] = {1, 2, 3};
  EXPECT_EQ(t.linear_index(idx), 1 + 2 * 2 + 3 * 6);
  const std::size_t bad[] = {2, 0, 0};
  EXPECT_THROW((void)t.linear_index(bad), Error);
}

TEST(Tensor, UnfoldMatchesDefinition) {
  SplitMix64 rng(101);
  for (int c = 0; c < 30; ++c) {
    const auto dims = random_dims(rng, 1 + rng.below(4), 5);
    const DenseTensor x = random_tensor(dims, rng);
    for (std::size_t n = 0; n < dims.size(); ++n) {
      const DenseTensor m = unfold(x, n);
      ASSERT_EQ(m.dims(), (Dims{dims[n], x.size() / dims[n]}));
      for (std::size_t lin = 0; lin < x.size(); ++lin) {
        const auto idx = multi_index(lin, dims);
        const std::size_t at[] = {idx[n], rest_column(idx, dims, {n})};
        ASSERT_EQ(m.at(at), x[lin]);
      }
    }
  }
}

TEST(Tensor, UnfoldPairMatchesDefinition) {
  SplitMix64 rng(102);
  for (int c = 0; c < 20; ++c) {
    const auto dims = random_dims(rng, 3 + rng.below(2), 4);
    const DenseTensor x = random_tensor(dims, rng);
    for (const auto& p : off_diagonal_pairs(dims.size())) {
      const DenseTensor t = unfold_pair(x, p);
      for (std::size_t lin = 0; lin < x.size(); ++lin) {
        const auto idx = multi_index(lin, dims);
        const std::size_t at[] = {idx[p.k1], idx[p.k2], rest_column(idx, dims, {p.k1, p.k2})};
        ASSERT_EQ(t.at(at), x[lin]);
      }
    }
  }
}

TEST(Tensor, FoldUnfoldRoundTripIsExact) {
  SplitMix64 rng(103);
  for (int c = 0; c < 100; ++c) {
    const auto dims = random_dims(rng, 1 + rng.below(4), 6);
    const DenseTensor x = random_tensor(dims, rng);
    for (std::size_t n = 0; n < dims.size(); ++n) EXPECT_EQ(fold(unfold(x, n), n, dims), x);
    for (const auto& p : off_diagonal_pairs(dims.size())) EXPECT_EQ(fold_pair(unfold_pair(x, p), p, dims), x);
  }
}

TEST(Tensor, PermuteThenInverseIsIdentity) {
  SplitMix64 rng(104);
  const DenseTensor x = random_tensor({2, 3, 4, 5}, rng);
  const std::size_t perm[] = {2, 0, 3, 1};
  const std::size_t inv[] = {1, 3, 0, 2};
  const DenseTensor y = permute(x, perm);
  EXPECT_EQ(y.dims(), (Dims{4, 2, 5, 3}));
  EXPECT_EQ(permute(y, inv), x);
  const std::size_t dup[] = {0, 0, 1, 2};
  EXPECT_THROW(permute(x, dup), Error);
}

TEST(Tensor, ModeProductMatchesBruteForce) {
  SplitMix64 rng(105);
  const Dims dims{3, 4, 2};
  const DenseTensor x = random_tensor(dims, rng);
  for (std::size_t n = 0; n < 3; ++n) {
    Eigen::MatrixXd u(5, static_cast<Eigen::Index>(dims[n]));
    for (Eigen::Index i = 0; i < u.size(); ++i) u.data()[i] = rng.normal();
    const DenseTensor y = mode_n_product(x, u, n);
    Dims yd = dims;
    yd[n] = 5;
    ASSERT_EQ(y.dims(), yd);
    for (std::size_t lin = 0; lin < y.size(); ++lin) {
      auto idx = multi_index(lin, yd);
      const std::size_t row = idx[n];
      double acc = 0.0;
      for (std::size_t j = 0; j < dims[n]; ++j) {
        idx[n] = j;
        acc += u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) * x.at(idx);
      }
      EXPECT_NEAR(y[lin], acc, 1e-12);
    }
  }
  EXPECT_THROW(mode_n_product(x, Eigen::MatrixXd(2, 2), 0), Error);
}

TEST(Tensor, ModePairsAreLexicographic) {
  const auto pairs = all_mode_pairs(3);
  const std::vector<ModePair> want{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  EXPECT_EQ(pairs, want);
  EXPECT_EQ(all_mode_pairs(4).size(), 10u);
  EXPECT_EQ(off_diagonal_pairs(4).size(), 6u);
}

TEST(Tensor, FoldRejectsWrongShape) {
  EXPECT_THROW(fold(DenseTensor({3, 4}), 0, {3, 5}), Error);
  EXPECT_THROW(unfold(DenseTensor({3, 4}), 2), Error);
  EXPECT_THROW(unfold_pair(DenseTensor({3, 4, 2}), {1, 1}), Error);
}

TEST(Tensor, MaskProjectionZeroesUnknownEntries) {
  SplitMix64 rng(106);
  const DenseTensor x = random_tensor({3, 3}, rng);
  ObservationMask mask({3, 3}, false);
  mask.set(0, true);
  mask.set(4, true);
  EXPECT_EQ(mask.count(), 2u);
  const DenseTensor p = project_mask(x, mask);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(p[i], (i == 0 || i == 4) ? x[i] : 0.0);
  EXPECT_THROW(project_mask(x, ObservationMask({9}, true)), Error);
}

TEST(Tensor, FrobeniusNormOfKnownTensor) {
  const DenseTensor x({2, 2}, {3.0, 0.0, 0.0, 4.0});
  EXPECT_DOUBLE_EQ(frobenius_norm(x), 5.0);
  EXPECT_EQ(x.max_abs(), 4.0);
}
