/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ffmtk {

using cplx = std::complex<double>;

/// Mixed-radix Cooley-Tukey DFT for a fixed length. Each radix stage uses a
/// direct p-point DFT, so prime lengths degrade to the O(L^2) transform.
/// Forward is unnormalised; inverse applies no scaling (callers divide by L).
class FftPlan {
 public:
  explicit FftPlan(std::size_t length);

  std::size_t length() const noexcept { return n_; }

  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  void run(const cplx* in, std::size_t stride, cplx* out, std::size_t n, std::size_t level,
           const std::vector<cplx>& roots) const;

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<cplx> fwd_roots_;  // exp(-2 pi i t / n)
  std::vector<cplx> inv_roots_;  // exp(+2 pi i t / n)
};

}  // namespace ffmtk
