/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Image quality metrics for recovered tensors. Bands are the slices along the
// last mode for 3-order inputs; matrices are a single band.

#include <cstddef>
#include <optional>

#include "tensor.hpp"

namespace ffmtk {

enum class PeakMode { max_of_reference, fixed };
enum class BandMode { global, per_band_mean };

struct MetricConfig {
  PeakMode peak_mode = PeakMode::max_of_reference;
  double peak_value = 255.0;  // used when peak_mode == fixed
  BandMode band_mode = BandMode::per_band_mean;
  std::size_t ssim_window = 11;
  double ssim_sigma = 1.5;
  double ssim_k1 = 0.01;
  double ssim_k2 = 0.03;

  void validate() const;
};

/// Peak used by psnr and ssim: the configured value or max(ref).
double metric_peak(const DenseTensor& ref, const MetricConfig& cfg);

/// 10 log10(peak^2 / MSE). Zero MSE gives +infinity. per_band_mean averages
/// the per-band values.
double psnr(const DenseTensor& ref, const DenseTensor& est, const MetricConfig& cfg = {});

/// Mean local SSIM over all valid Gaussian windows. 3-order inputs give the
/// mean over bands.
double ssim(const DenseTensor& ref, const DenseTensor& est, const MetricConfig& cfg = {});

/// 100 sqrt(mean_b MSE_b / mean_b^2) over bands along `bands_along` (0-based).
double ergas(const DenseTensor& ref, const DenseTensor& est, std::size_t bands_along);

/// ||est - ref||_F / ||ref||_F.
double rse(const DenseTensor& ref, const DenseTensor& est);

}  // namespace ffmtk
