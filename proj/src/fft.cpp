/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "fft.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace ffmtk {

FftPlan::FftPlan(std::size_t length) : n_(length) {
  require(length >= 1, ErrorCode::invalid_argument, "DFT length must be >= 1");
  std::size_t rem = length;
  for (std::size_t p = 2; p * p <= rem; ++p)
    while (rem % p == 0) {
      factors_.push_back(p);
      rem /= p;
    }
  if (rem > 1) factors_.push_back(rem);

  fwd_roots_.resize(n_);
  inv_roots_.resize(n_);
  for (std::size_t t = 0; t < n_; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n_);
    fwd_roots_[t] = {std::cos(angle), -std::sin(angle)};
    inv_roots_[t] = std::conj(fwd_roots_[t]);
  }
}

void FftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  require(in.size() == n_ && out.size() == n_, ErrorCode::shape_mismatch, "DFT buffer length mismatch");
  run(in.data(), 1, out.data(), n_, 0, fwd_roots_);
}

void FftPlan::inverse(std::span<const cplx> in, std::span<cplx> out) const {
  require(in.size() == n_ && out.size() == n_, ErrorCode::shape_mismatch, "DFT buffer length mismatch");
  run(in.data(), 1, out.data(), n_, 0, inv_roots_);
}

// Decimation in time: split n = p * m, transform the p interleaved
// subsequences of length m, then combine with a p-point DFT per output bin.
void FftPlan::run(const cplx* in, std::size_t stride, cplx* out, std::size_t n, std::size_t level,
                  const std::vector<cplx>& roots) const {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = factors_[level];
  const std::size_t m = n / p;
  for (std::size_t r = 0; r < p; ++r) run(in + r * stride, stride * p, out + r * m, m, level + 1, roots);

  // roots are for length n_; the twiddle exp(-2 pi i t / n) is roots[t * n_/n]
  const std::size_t scale = n_ / n;
  std::vector<cplx> sub(p);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) sub[r] = out[r * m + k];
    for (std::size_t q = 0; q < p; ++q) {
      const std::size_t bin = k + q * m;
      cplx acc = sub[0];
      for (std::size_t r = 1; r < p; ++r) acc += roots[((r * bin) % n) * scale] * sub[r];
      out[bin] = acc;
    }
  }
}

}  // namespace ffmtk
