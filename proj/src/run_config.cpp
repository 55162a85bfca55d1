/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "run_config.hpp"

#include <charconv>
#include <set>

#include <json.hpp>

namespace ffmtk {

namespace {

using nlohmann::json;

[[noreturn]] void bad_type(const std::string& key, const char* want) {
  fail(ErrorCode::parse, "config key \"" + key + "\" must be " + want);
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) bad_type(key, "a number");
  return v.get<double>();
}

std::uint64_t get_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) bad_type(key, "a non-negative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) bad_type(key, "true or false");
  return v.get<bool>();
}

std::map<ModePair, double> get_pair_map(const json& v, const std::string& key) {
  if (!v.is_object()) bad_type(key, "an object of \"k1,k2\" entries");
  std::map<ModePair, double> out;
  for (const auto& [k, w] : v.items()) out[parse_pair_key(k)] = get_number(w, key + "." + k);
  return out;
}

BetaSpec beta_from_json(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "uniform") return BetaPreset::uniform;
    if (s == "size_normalized") return BetaPreset::size_normalized;
    fail(ErrorCode::invalid_argument, "unknown beta preset \"" + s + "\"");
  }
  auto weights = get_pair_map(v, "beta");
  require(!weights.empty(), ErrorCode::invalid_argument, "explicit beta has no entries");
  std::size_t order = 0;
  for (const auto& [p, w] : weights) order = std::max(order, p.k2 + 1);
  return ModePairWeights(order, std::move(weights));
}

json beta_to_json(const BetaSpec& spec) {
  if (const auto* preset = std::get_if<BetaPreset>(&spec))
    return *preset == BetaPreset::uniform ? "uniform" : "size_normalized";
  json out = json::object();
  for (const auto& [p, w] : std::get<ModePairWeights>(spec).entries()) out[pair_key(p)] = w;
  return out;
}

json pair_map_to_json(const std::map<ModePair, double>& m) {
  json out = json::object();
  for (const auto& [p, v] : m) out[pair_key(p)] = v;
  return out;
}

MetricConfig metrics_from_json(const json& v) {
  if (!v.is_object()) bad_type("metrics", "an object");
  MetricConfig cfg;
  for (const auto& [key, val] : v.items()) {
    const std::string where = "metrics." + key;
    if (key == "peak_mode") {
      if (!val.is_string()) bad_type(where, "a string");
      const auto s = val.get<std::string>();
      if (s == "max_of_reference") {
        cfg.peak_mode = PeakMode::max_of_reference;
      } else if (s == "fixed") {
        cfg.peak_mode = PeakMode::fixed;
      } else {
        fail(ErrorCode::invalid_argument, "unknown peak_mode \"" + s + "\"");
      }
    } else if (key == "peak_value") {
      cfg.peak_value = get_number(val, where);
    } else if (key == "band_mode") {
      if (!val.is_string()) bad_type(where, "a string");
      const auto s = val.get<std::string>();
      if (s == "global") {
        cfg.band_mode = BandMode::global;
      } else if (s == "per_band_mean") {
        cfg.band_mode = BandMode::per_band_mean;
      } else {
        fail(ErrorCode::invalid_argument, "unknown band_mode \"" + s + "\"");
      }
    } else if (key == "ssim_window") {
      cfg.ssim_window = get_unsigned(val, where);
    } else if (key == "ssim_sigma") {
      cfg.ssim_sigma = get_number(val, where);
    } else if (key == "ssim_k1") {
      cfg.ssim_k1 = get_number(val, where);
    } else if (key == "ssim_k2") {
      cfg.ssim_k2 = get_number(val, where);
    } else {
      fail(ErrorCode::invalid_argument, "unknown config key \"" + where + "\"");
    }
  }
  cfg.validate();
  return cfg;
}

json metrics_to_json(const MetricConfig& m) {
  return {{"peak_mode", m.peak_mode == PeakMode::fixed ? "fixed" : "max_of_reference"},
          {"peak_value", m.peak_value},
          {"band_mode", m.band_mode == BandMode::global ? "global" : "per_band_mean"},
          {"ssim_window", m.ssim_window},
          {"ssim_sigma", m.ssim_sigma},
          {"ssim_k1", m.ssim_k1},
          {"ssim_k2", m.ssim_k2}};
}

}  // namespace

std::string pair_key(ModePair p) { return std::to_string(p.k1 + 1) + "," + std::to_string(p.k2 + 1); }

ModePair parse_pair_key(std::string_view key) {
  const auto comma = key.find(',');
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc{} && ptr == s.data() + s.size() && v >= 1, ErrorCode::parse,
            "mode pair key \"" + std::string(key) + "\" must look like \"k1,k2\" with 1-based modes");
    return v - 1;
  };
  require(comma != std::string_view::npos, ErrorCode::parse,
          "mode pair key \"" + std::string(key) + "\" must look like \"k1,k2\"");
  const ModePair p{number(key.substr(0, comma)), number(key.substr(comma + 1))};
  require(p.k1 <= p.k2, ErrorCode::invalid_argument, "mode pair key \"" + std::string(key) + "\" needs k1 <= k2");
  return p;
}

BetaSpec parse_beta_spec(std::string_view text) {
  if (text == "uniform") return BetaPreset::uniform;
  if (text == "size_normalized") return BetaPreset::size_normalized;
  json v;
  try {
    v = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("beta is neither a preset nor valid JSON: ") + e.what());
  }
  return beta_from_json(v);
}

RunConfig parse_run_config(std::string_view text, SolverKind fallback) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("config is not valid JSON: ") + e.what());
  }
  require(doc.is_object(), ErrorCode::parse, "config must be a JSON object");

  RunConfig cfg;
  cfg.solver = fallback;
  if (auto it = doc.find("solver"); it != doc.end()) {
    if (!it->is_string()) bad_type("solver", "a string");
    const auto s = it->get<std::string>();
    if (s == "ffmtc") {
      cfg.solver = SolverKind::ffmtc;
    } else if (s == "ffmtrpca") {
      cfg.solver = SolverKind::ffmtrpca;
    } else {
      fail(ErrorCode::invalid_argument, "unknown solver \"" + s + "\"");
    }
  }
  const bool tc = cfg.solver == SolverKind::ffmtc;
  static const std::set<std::string> common = {"solver", "beta", "mu0", "mu0_overrides", "eps_log", "tol",
                                               "max_iters", "seed", "threads", "track_objective", "metrics"};
  static const std::set<std::string> tc_only = {"rho"};
  static const std::set<std::string> rpca_only = {"rho0", "growth", "lambda_sparse"};

  BetaSpec beta = BetaPreset::uniform;
  double mu0 = tc ? cfg.tc.mu0 : cfg.rpca.mu0;
  std::map<ModePair, double> overrides;
  double eps_log = tc ? cfg.tc.eps_log : cfg.rpca.eps_log;
  double tol = tc ? cfg.tc.tol : cfg.rpca.tol;
  std::size_t max_iters = tc ? cfg.tc.max_iters : cfg.rpca.max_iters;
  std::size_t threads = 0;
  bool track = true;

  for (const auto& [key, v] : doc.items()) {
    const bool known = common.contains(key) || (tc ? tc_only : rpca_only).contains(key);
    if (!known) {
      const bool other = (tc ? rpca_only : tc_only).contains(key);
      fail(ErrorCode::invalid_argument, "config key \"" + key + "\"" +
                                            (other ? std::string(" does not apply to solver ") + (tc ? "ffmtc" : "ffmtrpca")
                                                   : std::string(" is unknown")));
    }
    if (key == "solver") continue;
    if (key == "beta") {
      beta = beta_from_json(v);
    } else if (key == "mu0") {
      mu0 = get_number(v, key);
    } else if (key == "mu0_overrides") {
      overrides = get_pair_map(v, key);
    } else if (key == "eps_log") {
      eps_log = get_number(v, key);
    } else if (key == "tol") {
      tol = get_number(v, key);
    } else if (key == "max_iters") {
      max_iters = get_unsigned(v, key);
    } else if (key == "seed") {
      cfg.seed = get_unsigned(v, key);
    } else if (key == "threads") {
      threads = get_unsigned(v, key);
    } else if (key == "track_objective") {
      track = get_bool(v, key);
    } else if (key == "metrics") {
      cfg.metrics = metrics_from_json(v);
    } else if (key == "rho") {
      cfg.tc.rho = get_number(v, key);
    } else if (key == "rho0") {
      cfg.rpca.rho0 = get_number(v, key);
    } else if (key == "growth") {
      cfg.rpca.growth = get_number(v, key);
    } else if (key == "lambda_sparse") {
      if (!v.is_null()) cfg.rpca.lambda_sparse = get_number(v, key);
    }
  }

  if (tc) {
    cfg.tc.beta = beta;
    cfg.tc.mu0 = mu0;
    cfg.tc.mu0_overrides = overrides;
    cfg.tc.eps_log = eps_log;
    cfg.tc.tol = tol;
    cfg.tc.max_iters = max_iters;
    cfg.tc.threads = threads;
    cfg.tc.track_objective = track;
    cfg.tc.validate();
  } else {
    cfg.rpca.beta = beta;
    cfg.rpca.mu0 = mu0;
    cfg.rpca.mu0_overrides = overrides;
    cfg.rpca.eps_log = eps_log;
    cfg.rpca.tol = tol;
    cfg.rpca.max_iters = max_iters;
    cfg.rpca.threads = threads;
    cfg.rpca.track_objective = track;
    cfg.rpca.validate();
  }
  return cfg;
}

std::string run_config_json(const RunConfig& cfg) {
  json out;
  if (cfg.solver == SolverKind::ffmtc) {
    const auto& c = cfg.tc;
    out = {{"solver", "ffmtc"}, {"beta", beta_to_json(c.beta)}, {"mu0", c.mu0},
           {"mu0_overrides", pair_map_to_json(c.mu0_overrides)}, {"rho", c.rho}, {"eps_log", c.eps_log},
           {"tol", c.tol}, {"max_iters", c.max_iters}, {"threads", c.threads}, {"track_objective", c.track_objective}};
  } else {
    const auto& c = cfg.rpca;
    out = {{"solver", "ffmtrpca"}, {"beta", beta_to_json(c.beta)}, {"mu0", c.mu0},
           {"mu0_overrides", pair_map_to_json(c.mu0_overrides)}, {"rho0", c.rho0}, {"growth", c.growth},
           {"eps_log", c.eps_log}, {"tol", c.tol}, {"max_iters", c.max_iters}, {"threads", c.threads},
           {"track_objective", c.track_objective}};
    // null means "derived from the data shape"
    out["lambda_sparse"] = c.lambda_sparse ? json(*c.lambda_sparse) : json(nullptr);
  }
  out["seed"] = cfg.seed;
  out["metrics"] = metrics_to_json(cfg.metrics);
  return out.dump(2);
}

}  // namespace ffmtk
