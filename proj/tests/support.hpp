/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "rng.hpp"
#include "tensor.hpp"

namespace ffmtk::testing {

inline DenseTensor random_tensor(const Dims& dims, SplitMix64& rng) {
  DenseTensor t(dims);
  for (auto& v : t.data()) v = rng.normal();
  return t;
}

inline Dims random_dims(SplitMix64& rng, std::size_t order, std::size_t max_dim) {
  Dims d(order);
  for (auto& v : d) v = 1 + static_cast<std::size_t>(rng.below(max_dim));
  return d;
}

inline double rel_diff(const DenseTensor& a, const DenseTensor& b) {
  const double n = frobenius_norm(b);
  return frobenius_norm(a - b) / (n > 0 ? n : 1.0);
}

// Naive O(n^2) DFT, exp(-2 pi i jk / n).
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x, bool inverse = false) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * M_PI * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace ffmtk::testing
