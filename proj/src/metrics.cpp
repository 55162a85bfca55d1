/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ffmtk {

namespace {

void check_same(const DenseTensor& a, const DenseTensor& b) {
  require(a.dims() == b.dims(), ErrorCode::shape_mismatch, "metric inputs have different shapes");
  require(a.size() > 0, ErrorCode::invalid_argument, "metric inputs are empty");
}

// Contiguous last-mode slices; matrices and vectors are one band.
std::size_t band_count(const DenseTensor& x) { return x.order() >= 3 ? x.dims().back() : 1; }

double band_mse(const DenseTensor& a, const DenseTensor& b, std::size_t band, std::size_t bands) {
  const std::size_t len = a.size() / bands;
  const std::size_t off = band * len;
  double acc = 0.0;
  for (std::size_t i = off; i < off + len; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc / static_cast<double>(len);
}

double psnr_from_mse(double peak, double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

Eigen::VectorXd gaussian_1d(std::size_t w, double sigma) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(w));
  const double c = static_cast<double>(w - 1) / 2.0;
  for (std::size_t i = 0; i < w; ++i) {
    const double d = static_cast<double>(i) - c;
    g(static_cast<Eigen::Index>(i)) = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return g / g.sum();
}

// Separable valid-mode filtering with a symmetric kernel.
Eigen::MatrixXd filter_valid(const Eigen::MatrixXd& x, const Eigen::VectorXd& g) {
  const Eigen::Index w = g.size();
  const Eigen::Index r = x.rows() - w + 1;
  const Eigen::Index c = x.cols() - w + 1;
  Eigen::MatrixXd rows_done = Eigen::MatrixXd::Zero(r, x.cols());
  for (Eigen::Index k = 0; k < w; ++k) rows_done += g(k) * x.middleRows(k, r);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(r, c);
  for (Eigen::Index k = 0; k < w; ++k) out += g(k) * rows_done.middleCols(k, c);
  return out;
}

double ssim_2d(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double peak, const MetricConfig& cfg) {
  const auto w = static_cast<Eigen::Index>(cfg.ssim_window);
  require(x.rows() >= w && x.cols() >= w, ErrorCode::invalid_argument, "image is smaller than the SSIM window");
  const Eigen::VectorXd g = gaussian_1d(cfg.ssim_window, cfg.ssim_sigma);
  const double c1 = (cfg.ssim_k1 * peak) * (cfg.ssim_k1 * peak);
  const double c2 = (cfg.ssim_k2 * peak) * (cfg.ssim_k2 * peak);

  const Eigen::ArrayXXd mx = filter_valid(x, g).array();
  const Eigen::ArrayXXd my = filter_valid(y, g).array();
  const Eigen::ArrayXXd sxx = filter_valid(x.cwiseProduct(x), g).array() - mx * mx;
  const Eigen::ArrayXXd syy = filter_valid(y.cwiseProduct(y), g).array() - my * my;
  const Eigen::ArrayXXd sxy = filter_valid(x.cwiseProduct(y), g).array() - mx * my;

  const Eigen::ArrayXXd num = (2.0 * mx * my + c1) * (2.0 * sxy + c2);
  const Eigen::ArrayXXd den = (mx * mx + my * my + c1) * (sxx + syy + c2);
  return (num / den).mean();
}

}  // namespace

void MetricConfig::validate() const {
  require(ssim_window >= 3 && ssim_window % 2 == 1, ErrorCode::invalid_argument, "ssim_window must be odd and >= 3");
  require(ssim_sigma > 0.0, ErrorCode::invalid_argument, "ssim_sigma must be > 0");
  require(ssim_k1 > 0.0 && ssim_k2 > 0.0, ErrorCode::invalid_argument, "ssim constants must be > 0");
  require(peak_mode != PeakMode::fixed || (peak_value > 0.0 && std::isfinite(peak_value)), ErrorCode::invalid_argument,
          "fixed peak must be > 0");
}

double metric_peak(const DenseTensor& ref, const MetricConfig& cfg) {
  if (cfg.peak_mode == PeakMode::fixed) return cfg.peak_value;
  const double peak = *std::max_element(ref.data().begin(), ref.data().end());
  require(peak > 0.0, ErrorCode::invalid_argument, "reference maximum must be > 0 to serve as the peak");
  return peak;
}

double psnr(const DenseTensor& ref, const DenseTensor& est, const MetricConfig& cfg) {
  cfg.validate();
  check_same(ref, est);
  const double peak = metric_peak(ref, cfg);
  if (cfg.band_mode == BandMode::global) return psnr_from_mse(peak, band_mse(ref, est, 0, 1));
  const std::size_t bands = band_count(ref);
  double acc = 0.0;
  for (std::size_t b = 0; b < bands; ++b) acc += psnr_from_mse(peak, band_mse(ref, est, b, bands));
  return acc / static_cast<double>(bands);
}

double ssim(const DenseTensor& ref, const DenseTensor& est, const MetricConfig& cfg) {
  cfg.validate();
  check_same(ref, est);
  require(ref.order() == 2 || ref.order() == 3, ErrorCode::invalid_argument, "ssim needs a 2- or 3-order input");
  const double peak = metric_peak(ref, cfg);
  if (ref.order() == 2) return ssim_2d(ref.matrix(), est.matrix(), peak, cfg);
  double acc = 0.0;
  for (std::size_t k = 0; k < ref.dim(2); ++k) acc += ssim_2d(ref.frontal(k), est.frontal(k), peak, cfg);
  return acc / static_cast<double>(ref.dim(2));
}

double ergas(const DenseTensor& ref, const DenseTensor& est, std::size_t bands_along) {
  check_same(ref, est);
  require(bands_along < ref.order(), ErrorCode::out_of_range, "band mode is out of range");
  const DenseTensor r = unfold(ref, bands_along);
  const DenseTensor e = unfold(est, bands_along);
  const auto rm = r.matrix();
  const auto em = e.matrix();
  const double cols = static_cast<double>(rm.cols());
  double acc = 0.0;
  for (Eigen::Index b = 0; b < rm.rows(); ++b) {
    const double mean = rm.row(b).sum() / cols;
    require(mean != 0.0, ErrorCode::invalid_argument, "ergas needs nonzero band means");
    const double mse = (rm.row(b) - em.row(b)).squaredNorm() / cols;
    acc += mse / (mean * mean);
  }
  return 100.0 * std::sqrt(acc / static_cast<double>(rm.rows()));
}

double rse(const DenseTensor& ref, const DenseTensor& est) {
  check_same(ref, est);
  const double denom = frobenius_norm(ref);
  require(denom > 0.0, ErrorCode::invalid_argument, "rse needs a nonzero reference");
  return frobenius_norm(est - ref) / denom;
}

}  // namespace ffmtk
