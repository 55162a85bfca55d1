/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ffmtk {

/// Failure categories. Values are stable: the C API returns them verbatim.
enum class ErrorCode : int {
  invalid_argument = 1,
  shape_mismatch = 2,
  out_of_range = 3,
  numerical = 4,
  io = 5,
  bad_magic = 6,
  bad_version = 7,
  truncated = 8,
  parse = 9,
  non_finite = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace ffmtk
