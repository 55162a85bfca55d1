/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Batch front end. Exit codes: 0 success, 2 usage or config error, 3 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ffmtk/ffmtk.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(ffmtk_status s) {
  switch (s) {
    case FFMTK_ERR_INVALID_ARGUMENT:
    case FFMTK_ERR_OUT_OF_RANGE:
    case FFMTK_ERR_PARSE:
      return kExitUsage;
    default:
      return kExitData;
  }
}

void check(ffmtk_status s) {
  if (s != FFMTK_OK) throw CliFailure{exit_code_for(s), ffmtk_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Tensor = std::unique_ptr<ffmtk_tensor, Deleter<ffmtk_tensor, ffmtk_tensor_free>>;
using Mask = std::unique_ptr<ffmtk_mask, Deleter<ffmtk_mask, ffmtk_mask_free>>;
using Config = std::unique_ptr<ffmtk_config, Deleter<ffmtk_config, ffmtk_config_free>>;
using Report = std::unique_ptr<ffmtk_report, Deleter<ffmtk_report, ffmtk_report_free>>;
using CString = std::unique_ptr<char, Deleter<char, ffmtk_string_free>>;

Tensor load_tensor(const std::string& path) {
  ffmtk_tensor* t = nullptr;
  check(ffmtk_tensor_read(path.c_str(), &t));
  return Tensor(t);
}

Config load_config(const std::string& path, ffmtk_solver fallback, bool solver_must_match = true) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw CliFailure{kExitUsage, "cannot open config " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  ffmtk_config* c = nullptr;
  check(ffmtk_config_parse(text.c_str(), fallback, &c));
  Config cfg(c);
  if (solver_must_match && ffmtk_config_solver(c) != fallback)
    throw CliFailure{kExitUsage, std::string("config selects the wrong solver for this command, expected ") +
                                     (fallback == FFMTK_SOLVER_FFMTC ? "ffmtc" : "ffmtrpca")};
  return cfg;
}

void progress(size_t iter, double change, void* user) {
  if (*static_cast<bool*>(user) || iter % 10 != 0) return;
  std::fprintf(stderr, "iter %zu change_inf %.6e\n", iter, change);
}

std::string solve_summary(const ffmtk_config* cfg, const ffmtk_report* report) {
  char* json = nullptr;
  check(ffmtk_config_json(cfg, &json));
  CString owned(json);
  // The echoed config is already pretty-printed; add the run outcome beside it.
  std::ostringstream out;
  char residual[64];
  std::snprintf(residual, sizeof residual, "%.17g", ffmtk_report_fidelity_residual(report));
  out << "{\n  \"config\": " << json << ",\n  \"iterations\": " << ffmtk_report_iterations(report)
      << ",\n  \"terminated_by\": \""
      << (ffmtk_report_terminated_by(report) == FFMTK_TERM_TOLERANCE ? "tolerance" : "max_iters") << "\""
      << ",\n  \"fidelity_residual\": " << residual << "\n}\n";
  return out.str();
}

void write_report(const ffmtk_config* cfg, const ffmtk_report* report, const std::string& path) {
  check(ffmtk_report_write_csv(report, path.c_str()));
  std::ofstream side(path + ".json", std::ios::trunc);
  if (!side) throw CliFailure{kExitData, "cannot write " + path + ".json"};
  side << solve_summary(cfg, report);
}

void finish_note(const char* what, const ffmtk_report* report) {
  std::fprintf(stderr, "%s: %zu iterations, stopped by %s, %.3f s\n", what, ffmtk_report_iterations(report),
               ffmtk_report_terminated_by(report) == FFMTK_TERM_TOLERANCE ? "tolerance" : "max_iters",
               ffmtk_report_wall_time(report));
}

void print_json(char* json) {
  CString owned(json);
  std::cout << json << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ffmtk: low-rank tensor completion and robust PCA with the full feature measure"};
  app.require_subcommand(1);

  // degrade
  auto* degrade = app.add_subcommand("degrade", "Sample a tensor with a random mask or add salt-and-pepper noise");
  std::string dg_input, dg_mode, dg_output, dg_mask_output;
  double dg_rate = 0.0;
  double dg_level = 0.0;
  std::uint64_t dg_seed = 0;
  degrade->add_option("-i,--input", dg_input, "Input FFMT tensor")->required();
  degrade->add_option("-m,--mode", dg_mode, "mask or saltpepper")->required()->check(CLI::IsMember({"mask", "saltpepper"}));
  auto* rate_opt = degrade->add_option("--rate", dg_rate, "Sampling rate in (0, 1] (mask mode)")
                       ->check(CLI::Range(0.0, 1.0));
  auto* level_opt = degrade->add_option("--level", dg_level, "Noise level in [0, 1) (saltpepper mode)")
                        ->check(CLI::Range(0.0, 1.0));
  degrade->add_option("--seed", dg_seed, "RNG seed")->required();
  degrade->add_option("-o,--output", dg_output, "Degraded FFMT tensor (unknown entries zero in mask mode)")->required();
  degrade->add_option("--mask-output", dg_mask_output, "Mask file (mask mode)");

  // complete
  auto* complete = app.add_subcommand("complete", "Low-rank tensor completion");
  std::string tc_observed, tc_mask, tc_config, tc_output, tc_report;
  int tc_threads = -1;
  bool tc_quiet = false;
  complete->add_option("--observed", tc_observed, "Observed FFMT tensor")->required();
  complete->add_option("--mask", tc_mask, "Mask FFMT file (nonzero = known)")->required();
  complete->add_option("-c,--config", tc_config, "JSON run config (defaults when omitted)");
  complete->add_option("-o,--output", tc_output, "Completed FFMT tensor")->required();
  complete->add_option("-r,--report", tc_report, "CSV iteration report (a .json summary is written beside it)")
      ->required();
  complete->add_option("-t,--threads", tc_threads, "Worker threads, 0 = all cores (overrides config)")
      ->check(CLI::NonNegativeNumber);
  complete->add_flag("-q,--quiet", tc_quiet, "No progress output");

  // rpca
  auto* rpca = app.add_subcommand("rpca", "Tensor robust PCA: split into low-rank and sparse parts");
  std::string rp_input, rp_config, rp_low, rp_sparse, rp_report;
  int rp_threads = -1;
  bool rp_quiet = false;
  rpca->add_option("-i,--input", rp_input, "Corrupted FFMT tensor")->required();
  rpca->add_option("-c,--config", rp_config, "JSON run config (defaults when omitted)");
  rpca->add_option("--low-rank", rp_low, "Low-rank part output")->required();
  rpca->add_option("--sparse", rp_sparse, "Sparse part output")->required();
  rpca->add_option("-r,--report", rp_report, "CSV iteration report (a .json summary is written beside it)")->required();
  rpca->add_option("-t,--threads", rp_threads, "Worker threads, 0 = all cores (overrides config)")
      ->check(CLI::NonNegativeNumber);
  rpca->add_flag("-q,--quiet", rp_quiet, "No progress output");

  // measure
  auto* measure = app.add_subcommand("measure", "Print sparsity measures of a tensor as JSON");
  std::string ms_input;
  std::string ms_beta = "uniform";
  double ms_eps = 1e-6;
  measure->add_option("-i,--input", ms_input, "FFMT tensor")->required();
  measure->add_option("--beta", ms_beta, "uniform, size_normalized or a JSON object of \"k1,k2\" weights")
      ->capture_default_str();
  measure->add_option("--eps", ms_eps, "Log-sum epsilon")->capture_default_str()->check(CLI::PositiveNumber);

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Print PSNR, SSIM, ERGAS and RSE as JSON");
  std::string mt_ref, mt_est, mt_config;
  metrics->add_option("--ref", mt_ref, "Reference FFMT tensor")->required();
  metrics->add_option("--est", mt_est, "Estimate FFMT tensor")->required();
  metrics->add_option("-c,--config", mt_config, "JSON run config whose metrics section is used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (degrade->parsed()) {
      Tensor input = load_tensor(dg_input);
      if (dg_mode == "mask") {
        if (rate_opt->count() == 0 || dg_rate <= 0.0) throw CliFailure{kExitUsage, "mask mode needs --rate in (0, 1]"};
        if (dg_mask_output.empty()) throw CliFailure{kExitUsage, "mask mode needs --mask-output"};
        ffmtk_mask* m = nullptr;
        check(ffmtk_mask_generate(ffmtk_tensor_dims(input.get()), ffmtk_tensor_ndim(input.get()), dg_rate, dg_seed, &m));
        Mask mask(m);
        ffmtk_tensor* o = nullptr;
        check(ffmtk_mask_apply(input.get(), mask.get(), &o));
        Tensor observed(o);
        check(ffmtk_tensor_write(dg_output.c_str(), observed.get()));
        check(ffmtk_mask_write(dg_mask_output.c_str(), mask.get()));
      } else {
        if (level_opt->count() == 0 || dg_level >= 1.0)
          throw CliFailure{kExitUsage, "saltpepper mode needs --level in [0, 1)"};
        ffmtk_tensor* o = nullptr;
        check(ffmtk_salt_pepper(input.get(), dg_level, dg_seed, &o));
        Tensor noisy(o);
        check(ffmtk_tensor_write(dg_output.c_str(), noisy.get()));
      }
    } else if (complete->parsed()) {
      Config cfg = load_config(tc_config, FFMTK_SOLVER_FFMTC);
      if (tc_threads >= 0) ffmtk_config_set_threads(cfg.get(), static_cast<size_t>(tc_threads));
      Tensor observed = load_tensor(tc_observed);
      ffmtk_mask* m = nullptr;
      check(ffmtk_mask_read(tc_mask.c_str(), &m));
      Mask mask(m);
      ffmtk_tensor* x = nullptr;
      ffmtk_report* r = nullptr;
      check(ffmtk_complete(observed.get(), mask.get(), cfg.get(), progress, &tc_quiet, &x, &r));
      Tensor result(x);
      Report report(r);
      check(ffmtk_tensor_write(tc_output.c_str(), result.get()));
      write_report(cfg.get(), report.get(), tc_report);
      if (!tc_quiet) finish_note("complete", report.get());
    } else if (rpca->parsed()) {
      Config cfg = load_config(rp_config, FFMTK_SOLVER_FFMTRPCA);
      if (rp_threads >= 0) ffmtk_config_set_threads(cfg.get(), static_cast<size_t>(rp_threads));
      Tensor input = load_tensor(rp_input);
      ffmtk_tensor* l = nullptr;
      ffmtk_tensor* e = nullptr;
      ffmtk_report* r = nullptr;
      check(ffmtk_rpca(input.get(), cfg.get(), progress, &rp_quiet, &l, &e, &r));
      Tensor low(l);
      Tensor sparse(e);
      Report report(r);
      check(ffmtk_tensor_write(rp_low.c_str(), low.get()));
      check(ffmtk_tensor_write(rp_sparse.c_str(), sparse.get()));
      write_report(cfg.get(), report.get(), rp_report);
      if (!rp_quiet) finish_note("rpca", report.get());
    } else if (measure->parsed()) {
      Tensor input = load_tensor(ms_input);
      char* json = nullptr;
      check(ffmtk_measure_json(input.get(), ms_beta.c_str(), ms_eps, &json));
      print_json(json);
    } else if (metrics->parsed()) {
      Config cfg = mt_config.empty() ? Config() : load_config(mt_config, FFMTK_SOLVER_FFMTC, false);
      Tensor ref = load_tensor(mt_ref);
      Tensor est = load_tensor(mt_est);
      char* json = nullptr;
      check(ffmtk_metrics_json(ref.get(), est.get(), cfg.get(), &json));
      print_json(json);
    }
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "ffmtk: %s\n", f.message.c_str());
    return f.code;
  }
  return 0;
}
