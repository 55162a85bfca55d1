/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>

#include "io.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace ffmtk;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ffmtk_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ErrorCode decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_tensor(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST(Rng, SplitMixReferenceStream) {
  SplitMix64 a(0);
  EXPECT_EQ(a.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(a.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(a.next(), 0x06C45D188009454FULL);
  SplitMix64 b(42);
  EXPECT_EQ(b.next(), 0xBDD732262FEB6E95ULL);
}

TEST(Rng, DerivedDrawsStayInRange) {
  SplitMix64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.below(7), 7u);
    ASSERT_TRUE(std::isfinite(rng.normal()));
  }
}

TEST(Ffmt, EncodesDocumentedBytes) {
  const DenseTensor x({2, 1}, {1.0, -0.0});
  const std::vector<std::uint8_t> want = {
      0x46, 0x46, 0x4d, 0x54, 0x01, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x00, 0xf0, 0x3f, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x80};
  EXPECT_EQ(encode_tensor(x), want);
}

TEST(Ffmt, RoundTripIsBitExact) {
  SplitMix64 rng(701);
  DenseTensor x({3, 2, 4});
  for (auto& v : x.data()) v = rng.normal() * 1e100;
  x[0] = -0.0;
  x[1] = std::numeric_limits<double>::denorm_min();
  x[2] = std::numeric_limits<double>::max();
  x[3] = -std::numeric_limits<double>::lowest();
  const auto path = scratch("roundtrip.ffmt");
  write_tensor(path, x);
  const DenseTensor y = read_tensor(path);
  ASSERT_EQ(y.dims(), x.dims());
  for (std::size_t i = 0; i < x.size(); ++i)
    EXPECT_EQ(std::bit_cast<std::uint64_t>(y[i]), std::bit_cast<std::uint64_t>(x[i]));
}

TEST(Ffmt, DistinguishesCorruptions) {
  const auto good = encode_tensor(DenseTensor({2, 2}, {1, 2, 3, 4}));
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(decode_error(bad_magic), ErrorCode::bad_magic);
  auto bad_version = good;
  bad_version[4] = 2;
  EXPECT_EQ(decode_error(bad_version), ErrorCode::bad_version);
  auto truncated = good;
  truncated.pop_back();
  EXPECT_EQ(decode_error(truncated), ErrorCode::truncated);
  EXPECT_EQ(decode_error({0x46, 0x46}), ErrorCode::truncated);
  auto header_cut = good;
  header_cut.resize(14);
  EXPECT_EQ(decode_error(header_cut), ErrorCode::truncated);
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_EQ(decode_error(trailing), ErrorCode::invalid_argument);
  auto dtype = good;
  dtype[12 + 16] = 1;
  EXPECT_EQ(decode_error(dtype), ErrorCode::invalid_argument);
}

TEST(Ffmt, MissingFileIsIoError) {
  try {
    read_tensor(scratch("does_not_exist.ffmt"));
    FAIL() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST(Mask, ExactCountAndDeterminism) {
  const Dims dims{10, 10, 10};
  for (double rate : {0.1, 0.333, 0.5, 1.0}) {
    const auto m = gen_mask(dims, rate, 11);
    EXPECT_EQ(m.count(), static_cast<std::size_t>(std::llround(rate * 1000)));
    EXPECT_EQ(gen_mask(dims, rate, 11), m);
  }
  EXPECT_NE(gen_mask(dims, 0.5, 1), gen_mask(dims, 0.5, 2));
  EXPECT_THROW(gen_mask(dims, 0.0, 1), Error);
  EXPECT_THROW(gen_mask(dims, 1.5, 1), Error);
}

TEST(Mask, FileRoundTrip) {
  const auto m = gen_mask({4, 5, 3}, 0.4, 9);
  const auto path = scratch("mask.ffmt");
  write_mask(path, m);
  EXPECT_EQ(read_mask(path), m);
}

TEST(SaltPepper, LevelZeroIsIdentity) {
  SplitMix64 rng(702);
  const DenseTensor x = ffmtk::testing::random_tensor({5, 5, 5}, rng);
  EXPECT_EQ(salt_pepper(x, 0.0, 3), x);
  EXPECT_THROW(salt_pepper(x, 1.0, 3), Error);
}

TEST(SaltPepper, SitesAreExactAndUseExtremes) {
  SplitMix64 rng(703);
  const DenseTensor x = ffmtk::testing::random_tensor({10, 10, 10}, rng);
  const auto sites = salt_pepper_sites(x, 0.4, 5);
  ASSERT_EQ(sites.size(), 400u);
  const auto [lo, hi] = std::minmax_element(x.data().begin(), x.data().end());
  std::set<std::size_t> where;
  std::size_t highs = 0;
  for (const auto& s : sites) {
    where.insert(s.index);
    EXPECT_TRUE(s.value == *lo || s.value == *hi);
    highs += s.value == *hi;
  }
  EXPECT_EQ(where.size(), 400u);
  EXPECT_GT(highs, 150u);
  EXPECT_LT(highs, 250u);

  const DenseTensor y = salt_pepper(x, 0.4, 5);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < x.size(); ++i) differ += x[i] != y[i];
  // a chosen site that already held its extreme would not differ
  std::size_t already = 0;
  for (const auto& s : sites) already += x[s.index] == s.value;
  EXPECT_EQ(differ, 400u - already);
  EXPECT_EQ(salt_pepper(x, 0.4, 5), y);
}

TEST(SaltPepper, PositionsFollowTheMaskShuffle) {
  const DenseTensor x = DenseTensor::filled({6, 7}, 1.0);
  const auto sites = salt_pepper_sites(x, 0.25, 77);
  const auto mask = gen_mask(x.dims(), 0.25, 77);
  for (const auto& s : sites) EXPECT_TRUE(mask[s.index]);
  EXPECT_EQ(sites.size(), mask.count());
}

TEST(ReportCsv, HeaderOnlyWhenEmpty) { EXPECT_EQ(report_csv(SolveReport{}), "iter,change_inf,objective\n"); }

TEST(ReportCsv, RowsRoundTripExactly) {
  SolveReport r;
  r.iterations = 3;
  r.change_history = {0.1, 1.0 / 3.0, 5e-300};
  r.objective_history = {-12.5, std::nextafter(2.0, 3.0), 7.0};
  const std::string csv = report_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,change_inf,objective");
  for (std::size_t k = 0; k < 3; ++k) {
    ASSERT_TRUE(std::getline(in, line));
    std::istringstream row(line);
    std::string a, b, c;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    std::getline(row, c, ',');
    EXPECT_EQ(std::stoul(a), k + 1);
    EXPECT_EQ(std::strtod(b.c_str(), nullptr), r.change_history[k]);
    EXPECT_EQ(std::strtod(c.c_str(), nullptr), r.objective_history[k]);
  }
  EXPECT_FALSE(std::getline(in, line));
}

TEST(ReportCsv, EmptyObjectiveColumnWhenUntracked) {
  SolveReport r;
  r.change_history = {0.5};
  EXPECT_EQ(report_csv(r), "iter,change_inf,objective\n1,0.5,\n");
}
