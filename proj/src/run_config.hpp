/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// JSON run configuration shared by the CLI and the C API. See
// docs/config.md for the schema.

#include <cstdint>
#include <string>
#include <string_view>

#include "metrics.hpp"
#include "solvers.hpp"

namespace ffmtk {

enum class SolverKind { ffmtc, ffmtrpca };

struct RunConfig {
  SolverKind solver = SolverKind::ffmtc;
  TcConfig tc;
  RpcaConfig rpca;
  std::uint64_t seed = 0;
  MetricConfig metrics;
};

/// Parses and validates a config document. `fallback` is the solver used when
/// the document has no "solver" key. Keys that do not belong to the chosen
/// solver are rejected like unknown ones. Malformed JSON or wrong value types
/// raise ErrorCode::parse, violated constraints ErrorCode::invalid_argument.
RunConfig parse_run_config(std::string_view text, SolverKind fallback = SolverKind::ffmtc);

/// The fully resolved config (every default filled in) as a JSON document that
/// parse_run_config accepts again.
std::string run_config_json(const RunConfig& cfg);

/// "k1,k2" with 1-based modes, and back.
std::string pair_key(ModePair p);
ModePair parse_pair_key(std::string_view key);

/// "uniform", "size_normalized" or a JSON object of "k1,k2" weights.
BetaSpec parse_beta_spec(std::string_view text);

}  // namespace ffmtk
