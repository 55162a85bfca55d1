/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include <numeric>

#include "metrics.hpp"
#include "support.hpp"

using namespace ffmtk;
using ffmtk::testing::random_tensor;

namespace {

MetricConfig fixed_peak(double peak, BandMode bands = BandMode::global) {
  MetricConfig c;
  c.peak_mode = PeakMode::fixed;
  c.peak_value = peak;
  c.band_mode = bands;
  return c;
}

DenseTensor ramp_image(std::size_t n) {
  DenseTensor t({n, n});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t[i + n * j] = 10.0 * static_cast<double>(i + j);
  return t;
}

// Direct per-window evaluation of the local-statistics SSIM formula.
double ssim_reference(const DenseTensor& x, const DenseTensor& y, double peak, int win, double sigma) {
  const int rows = static_cast<int>(x.dim(0)), cols = static_cast<int>(x.dim(1));
  std::vector<double> w(static_cast<std::size_t>(win * win));
  double wsum = 0.0;
  const double c = (win - 1) / 2.0;
  for (int a = 0; a < win; ++a)
    for (int b = 0; b < win; ++b) {
      const double v = std::exp(-((a - c) * (a - c) + (b - c) * (b - c)) / (2 * sigma * sigma));
      w[static_cast<std::size_t>(a * win + b)] = v;
      wsum += v;
    }
  for (auto& v : w) v /= wsum;
  const double c1 = 0.01 * peak * 0.01 * peak, c2 = 0.03 * peak * 0.03 * peak;
  double total = 0.0;
  int count = 0;
  for (int r0 = 0; r0 + win <= rows; ++r0)
    for (int s0 = 0; s0 + win <= cols; ++s0) {
      double mx = 0, my = 0;
      for (int a = 0; a < win; ++a)
        for (int b = 0; b < win; ++b) {
          const double wt = w[static_cast<std::size_t>(a * win + b)];
          mx += wt * x[static_cast<std::size_t>((r0 + a) + rows * (s0 + b))];
          my += wt * y[static_cast<std::size_t>((r0 + a) + rows * (s0 + b))];
        }
      double vx = 0, vy = 0, cxy = 0;
      for (int a = 0; a < win; ++a)
        for (int b = 0; b < win; ++b) {
          const double wt = w[static_cast<std::size_t>(a * win + b)];
          const double dx = x[static_cast<std::size_t>((r0 + a) + rows * (s0 + b))] - mx;
          const double dy = y[static_cast<std::size_t>((r0 + a) + rows * (s0 + b))] - my;
          vx += wt * dx * dx;
          vy += wt * dy * dy;
          cxy += wt * dx * dy;
        }
      total += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  return total / count;
}

}  // namespace

TEST(Psnr, UnitMseAtPeak255) {
  const DenseTensor ref = DenseTensor::filled({8, 8, 3}, 255.0);
  DenseTensor est = ref;
  for (auto& v : est.data()) v += 1.0;
  EXPECT_NEAR(psnr(ref, est, fixed_peak(255.0)), 20.0 * std::log10(255.0), 1e-9);
  EXPECT_NEAR(psnr(ref, est, fixed_peak(255.0, BandMode::per_band_mean)), 48.1308036086791, 1e-9);
}

TEST(Psnr, IdenticalInputsGiveInfinity) {
  SplitMix64 rng(601);
  const DenseTensor ref = random_tensor({5, 5}, rng);
  EXPECT_TRUE(std::isinf(psnr(ref, ref, fixed_peak(1.0))));
}

TEST(Psnr, PerBandMeanMatchesDirectFormula) {
  SplitMix64 rng(602);
  DenseTensor ref = random_tensor({6, 5, 4}, rng);
  for (auto& v : ref.data()) v = std::abs(v);
  DenseTensor est = ref;
  for (auto& v : est.data()) v += 0.1 * rng.normal();
  const double peak = *std::max_element(ref.data().begin(), ref.data().end());
  double want = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double mse = (ref.frontal(k) - est.frontal(k)).squaredNorm() / 30.0;
    want += 10.0 * std::log10(peak * peak / mse) / 4.0;
  }
  EXPECT_NEAR(psnr(ref, est), want, 1e-10);
  const double gmse = frobenius_norm(ref - est) * frobenius_norm(ref - est) / 120.0;
  MetricConfig global;
  global.band_mode = BandMode::global;
  EXPECT_NEAR(psnr(ref, est, global), 10.0 * std::log10(peak * peak / gmse), 1e-10);
}

TEST(Psnr, DecreasesWithNoiseAmplitude) {
  SplitMix64 rng(603);
  const DenseTensor ref = random_tensor({10, 10, 2}, rng);
  const DenseTensor noise = random_tensor(ref.dims(), rng);
  double last = std::numeric_limits<double>::infinity();
  for (double amp : {0.01, 0.1, 1.0}) {
    const double v = psnr(ref, ref + amp * noise, fixed_peak(1.0));
    EXPECT_LT(v, last);
    last = v;
  }
}

TEST(Ssim, IdenticalIsExactlyOneAndSymmetric) {
  SplitMix64 rng(604);
  const DenseTensor a = random_tensor({16, 14, 2}, rng);
  const DenseTensor b = a + 0.3 * random_tensor(a.dims(), rng);
  const auto cfg = fixed_peak(4.0);
  EXPECT_EQ(ssim(a, a, cfg), 1.0);
  EXPECT_NEAR(ssim(a, b, cfg), ssim(b, a, cfg), 1e-12);
}

TEST(Ssim, FlippedImageStaysInBounds) {
  SplitMix64 rng(605);
  DenseTensor ref = random_tensor({12, 12}, rng);
  const double mean = std::accumulate(ref.data().begin(), ref.data().end(), 0.0) / 144.0;
  for (auto& v : ref.data()) v -= mean;
  DenseTensor flip = ref * -1.0;
  for (auto& v : flip.data()) v += 0.5;
  const double s = ssim(ref, flip, fixed_peak(3.0));
  EXPECT_LT(s, 1.0);
  EXPECT_GE(s, -1.0);
}

TEST(Ssim, MatchesDirectWindowEvaluation) {
  const DenseTensor ref = ramp_image(16);
  SplitMix64 rng(3);
  DenseTensor est = ref;
  for (auto& v : est.data()) v += 5.0 * rng.normal();
  const double peak = *std::max_element(ref.data().begin(), ref.data().end());
  EXPECT_NEAR(ssim(ref, est), ssim_reference(ref, est, peak, 11, 1.5), 1e-8);
}

TEST(Ssim, RejectsSmallImagesAndBadWindows) {
  EXPECT_THROW(ssim(DenseTensor::filled({5, 5}, 1.0), DenseTensor::filled({5, 5}, 1.0)), Error);
  MetricConfig even;
  even.ssim_window = 4;
  EXPECT_THROW(even.validate(), Error);
}

TEST(Ergas, ConstantBandScaledByTenPercent) {
  const DenseTensor ref = DenseTensor::filled({4, 4, 1}, 7.0);
  EXPECT_NEAR(ergas(ref, ref * 1.1, 2), 10.0, 1e-12);
  EXPECT_EQ(ergas(ref, ref, 2), 0.0);
}

TEST(Ergas, MatchesDirectRecomputationAndScaleInvariance) {
  SplitMix64 rng(606);
  DenseTensor ref = random_tensor({5, 6, 3}, rng);
  for (auto& v : ref.data()) v = 2.0 + std::abs(v);
  const DenseTensor est = ref + 0.2 * random_tensor(ref.dims(), rng);
  double acc = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double mean = ref.frontal(k).mean();
    acc += (ref.frontal(k) - est.frontal(k)).squaredNorm() / 30.0 / (mean * mean);
  }
  EXPECT_NEAR(ergas(ref, est, 2), 100.0 * std::sqrt(acc / 3.0), 1e-12);
  for (double s : {0.001, 3.0, 255.0}) EXPECT_NEAR(ergas(ref * s, est * s, 2), ergas(ref, est, 2), 1e-12);
}

TEST(Ergas, ZeroBandMeanIsAnError) {
  DenseTensor ref = DenseTensor::filled({2, 2, 2}, 1.0);
  for (std::size_t i = 4; i < 8; ++i) ref[i] = 0.0;
  EXPECT_THROW(ergas(ref, ref, 2), Error);
}

TEST(Rse, Examples) {
  SplitMix64 rng(607);
  const DenseTensor ref = random_tensor({3, 3, 3}, rng);
  EXPECT_EQ(rse(ref, ref), 0.0);
  EXPECT_NEAR(rse(ref, DenseTensor(ref.dims())), 1.0, 1e-15);
  EXPECT_NEAR(rse(ref, ref * 1.5), 0.5, 1e-15);
  EXPECT_THROW(rse(DenseTensor({2, 2}), DenseTensor({2, 2})), Error);
  EXPECT_THROW(rse(ref, DenseTensor({3, 3})), Error);
}
