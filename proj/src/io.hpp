/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// FFMT tensor files, seeded degradations and CSV export of solve reports.
//
// FFMT layout (all integers little-endian):
//   bytes 0..3   magic "FFMT"
//   u32          version = 1
//   u32          ndim
//   u64 x ndim   dims
//   u8           dtype (0 = IEEE-754 binary64 little-endian)
//   f64 x prod(dims) payload, first index fastest
// Masks are stored as FFMT tensors holding 0.0 / 1.0.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "solvers.hpp"
#include "tensor.hpp"

namespace ffmtk {

inline constexpr std::uint32_t kFfmtVersion = 1;

void write_tensor(const std::filesystem::path& path, const DenseTensor& x);
DenseTensor read_tensor(const std::filesystem::path& path);

void write_mask(const std::filesystem::path& path, const ObservationMask& mask);
ObservationMask read_mask(const std::filesystem::path& path);

/// In-memory encode/decode of the same byte layout.
std::vector<std::uint8_t> encode_tensor(const DenseTensor& x);
DenseTensor decode_tensor(const std::vector<std::uint8_t>& bytes);

/// Number of entries a rate selects: llround(rate * total).
std::size_t selection_count(double rate, std::size_t total);

/// Exactly selection_count(rate, total) known entries, drawn without
/// replacement by a partial Fisher-Yates shuffle of 0..total-1.
ObservationMask gen_mask(const Dims& dims, double sampling_rate, std::uint64_t seed);

struct ImpulseSite {
  std::size_t index;
  double value;
};

/// Sites corrupted by salt_pepper: the positions come from the same shuffle as
/// gen_mask, then one coin per site (in selection order) picks max (heads) or
/// min (tails) of x.
std::vector<ImpulseSite> salt_pepper_sites(const DenseTensor& x, double noise_level, std::uint64_t seed);
DenseTensor salt_pepper(const DenseTensor& x, double noise_level, std::uint64_t seed);

/// Header "iter,change_inf,objective" and one row per iteration, values in
/// %.17g. The objective column is empty when it was not tracked.
void write_report_csv(const std::filesystem::path& path, const SolveReport& report);
std::string report_csv(const SolveReport& report);

}  // namespace ffmtk
