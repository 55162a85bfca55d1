/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>

#include "rng.hpp"

namespace ffmtk {

namespace {

constexpr char kMagic[4] = {'F', 'F', 'M', 'T'};
constexpr std::uint8_t kDtypeF64 = 0;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  template <class T>
  T get() {
    require(pos_ + sizeof(T) <= bytes_.size(), ErrorCode::truncated, "FFMT file is truncated");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    if constexpr (std::is_same_v<T, double>) {
      return std::bit_cast<double>(bits);
    } else {
      return static_cast<T>(bits);
    }
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io, "cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  require(!in.bad(), ErrorCode::io, "read error on " + path.string());
  return bytes;
}

void spill(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  require(static_cast<bool>(out), ErrorCode::io, "write error on " + path.string());
}

std::vector<std::size_t> draw_positions(std::size_t total, std::size_t count, SplitMix64& rng) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const DenseTensor& x) {
  std::vector<std::uint8_t> out;
  out.reserve(4 + 4 + 4 + 8 * x.order() + 1 + 8 * x.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le<std::uint32_t>(out, kFfmtVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(x.order()));
  for (auto d : x.dims()) put_le<std::uint64_t>(out, d);
  out.push_back(kDtypeF64);
  for (double v : x.data()) put_le<double>(out, v);
  return out;
}

DenseTensor decode_tensor(const std::vector<std::uint8_t>& bytes) {
  require(bytes.size() >= 4, ErrorCode::truncated, "FFMT file is truncated");
  require(std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()), ErrorCode::bad_magic, "not an FFMT file (bad magic)");
  Reader rd(bytes);
  for (int i = 0; i < 4; ++i) rd.get<std::uint8_t>();
  const auto version = rd.get<std::uint32_t>();
  require(version == kFfmtVersion, ErrorCode::bad_version, "unsupported FFMT version " + std::to_string(version));
  const auto ndim = rd.get<std::uint32_t>();
  require(ndim >= 1, ErrorCode::invalid_argument, "FFMT ndim must be >= 1");
  Dims dims(ndim);
  for (auto& d : dims) {
    d = static_cast<std::size_t>(rd.get<std::uint64_t>());
    require(d >= 1, ErrorCode::invalid_argument, "FFMT dims must be >= 1");
  }
  const auto dtype = rd.get<std::uint8_t>();
  require(dtype == kDtypeF64, ErrorCode::invalid_argument, "unsupported FFMT dtype code " + std::to_string(dtype));
  const std::size_t n = product(dims);
  require(rd.remaining() / 8 >= n, ErrorCode::truncated, "FFMT payload is truncated");
  std::vector<double> data(n);
  for (auto& v : data) v = rd.get<double>();
  require(rd.remaining() == 0, ErrorCode::invalid_argument, "FFMT file has trailing bytes after the payload");
  return {std::move(dims), std::move(data)};
}

void write_tensor(const std::filesystem::path& path, const DenseTensor& x) {
  const auto bytes = encode_tensor(x);
  spill(path, std::string(bytes.begin(), bytes.end()));
}

DenseTensor read_tensor(const std::filesystem::path& path) { return decode_tensor(slurp(path)); }

void write_mask(const std::filesystem::path& path, const ObservationMask& mask) {
  DenseTensor t(mask.dims());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = mask[i] ? 1.0 : 0.0;
  write_tensor(path, t);
}

ObservationMask read_mask(const std::filesystem::path& path) {
  const DenseTensor t = read_tensor(path);
  std::vector<char> known(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) known[i] = t[i] != 0.0 ? 1 : 0;
  return {t.dims(), std::move(known)};
}

std::size_t selection_count(double rate, std::size_t total) {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(total)));
}

ObservationMask gen_mask(const Dims& dims, double sampling_rate, std::uint64_t seed) {
  require(sampling_rate > 0.0 && sampling_rate <= 1.0, ErrorCode::out_of_range, "sampling rate must be in (0, 1]");
  ObservationMask mask(dims, false);
  SplitMix64 rng(seed);
  for (auto i : draw_positions(mask.size(), selection_count(sampling_rate, mask.size()), rng)) mask.set(i, true);
  return mask;
}

std::vector<ImpulseSite> salt_pepper_sites(const DenseTensor& x, double noise_level, std::uint64_t seed) {
  require(noise_level >= 0.0 && noise_level < 1.0, ErrorCode::out_of_range, "noise level must be in [0, 1)");
  const auto [lo, hi] = std::minmax_element(x.data().begin(), x.data().end());
  SplitMix64 rng(seed);
  const auto positions = draw_positions(x.size(), selection_count(noise_level, x.size()), rng);
  std::vector<ImpulseSite> sites;
  sites.reserve(positions.size());
  for (auto i : positions) sites.push_back({i, rng.coin() ? *hi : *lo});
  return sites;
}

DenseTensor salt_pepper(const DenseTensor& x, double noise_level, std::uint64_t seed) {
  DenseTensor out = x;
  for (const auto& s : salt_pepper_sites(x, noise_level, seed)) out[s.index] = s.value;
  return out;
}

std::string report_csv(const SolveReport& report) {
  std::string out = "iter,change_inf,objective\n";
  char buf[64];
  for (std::size_t k = 0; k < report.change_history.size(); ++k) {
    out += std::to_string(k + 1);
    std::snprintf(buf, sizeof buf, ",%.17g,", report.change_history[k]);
    out += buf;
    if (k < report.objective_history.size()) {
      std::snprintf(buf, sizeof buf, "%.17g", report.objective_history[k]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_report_csv(const std::filesystem::path& path, const SolveReport& report) { spill(path, report_csv(report)); }

}  // namespace ffmtk
