/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ffmtk/ffmtk.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "io.hpp"
#include "measure.hpp"
#include "metrics.hpp"
#include "run_config.hpp"
#include "solvers.hpp"

struct ffmtk_tensor {
  ffmtk::DenseTensor value;
};

struct ffmtk_mask {
  ffmtk::ObservationMask value;
};

struct ffmtk_config {
  ffmtk::RunConfig value;
};

struct ffmtk_report {
  ffmtk::SolveReport value;
};

namespace {

using ffmtk::DenseTensor;
using nlohmann::json;

thread_local std::string last_error;

ffmtk_status fail_with(ffmtk_status code, std::string msg) {
  last_error = std::move(msg);
  return code;
}

template <class F>
ffmtk_status guarded(F&& body) {
  try {
    body();
    return FFMTK_OK;
  } catch (const ffmtk::Error& e) {
    return fail_with(static_cast<ffmtk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(FFMTK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(FFMTK_ERR_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  ffmtk::require(p != nullptr, ffmtk::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

ffmtk::Dims to_dims(const size_t* dims, size_t ndim) {
  ffmtk::require(ndim >= 1, ffmtk::ErrorCode::invalid_argument, "ndim must be >= 1");
  need(dims, "dims");
  ffmtk::Dims out(dims, dims + ndim);
  for (auto d : out) ffmtk::require(d >= 1, ffmtk::ErrorCode::invalid_argument, "dims must be >= 1");
  return out;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ffmtk::IterationObserver make_observer(ffmtk_progress_fn progress, void* user) {
  if (!progress) return {};
  return [progress, user](std::size_t iter, double change, const DenseTensor&) { progress(iter, change, user); };
}

json pair_json(const std::map<ffmtk::ModePair, double>& m) {
  json out = json::object();
  for (const auto& [p, v] : m) out[ffmtk::pair_key(p)] = v;
  return out;
}

// +-inf has no JSON spelling; the sentinel strings keep the document valid.
json real_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

extern "C" {

const char* ffmtk_version(void) { return "1.0.0"; }

const char* ffmtk_last_error(void) { return last_error.c_str(); }

void ffmtk_string_free(char* s) { delete[] s; }

ffmtk_status ffmtk_tensor_create(const size_t* dims, size_t ndim, const double* data, ffmtk_tensor** out) {
  return guarded([&] {
    need(out, "out");
    auto d = to_dims(dims, ndim);
    DenseTensor t(d);
    if (data) std::memcpy(t.data().data(), data, t.size() * sizeof(double));
    *out = new ffmtk_tensor{std::move(t)};
  });
}

void ffmtk_tensor_free(ffmtk_tensor* t) { delete t; }

size_t ffmtk_tensor_ndim(const ffmtk_tensor* t) { return t ? t->value.order() : 0; }

const size_t* ffmtk_tensor_dims(const ffmtk_tensor* t) { return t ? t->value.dims().data() : nullptr; }

size_t ffmtk_tensor_size(const ffmtk_tensor* t) { return t ? t->value.size() : 0; }

const double* ffmtk_tensor_data(const ffmtk_tensor* t) { return t ? t->value.data().data() : nullptr; }

double* ffmtk_tensor_data_mut(ffmtk_tensor* t) { return t ? t->value.data().data() : nullptr; }

ffmtk_status ffmtk_tensor_read(const char* path, ffmtk_tensor** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ffmtk_tensor{ffmtk::read_tensor(path)};
  });
}

ffmtk_status ffmtk_tensor_write(const char* path, const ffmtk_tensor* t) {
  return guarded([&] {
    need(path, "path");
    need(t, "tensor");
    ffmtk::write_tensor(path, t->value);
  });
}

ffmtk_status ffmtk_mask_generate(const size_t* dims, size_t ndim, double rate, uint64_t seed, ffmtk_mask** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ffmtk_mask{ffmtk::gen_mask(to_dims(dims, ndim), rate, seed)};
  });
}

void ffmtk_mask_free(ffmtk_mask* m) { delete m; }

size_t ffmtk_mask_count(const ffmtk_mask* m) { return m ? m->value.count() : 0; }

ffmtk_status ffmtk_mask_read(const char* path, ffmtk_mask** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ffmtk_mask{ffmtk::read_mask(path)};
  });
}

ffmtk_status ffmtk_mask_write(const char* path, const ffmtk_mask* m) {
  return guarded([&] {
    need(path, "path");
    need(m, "mask");
    ffmtk::write_mask(path, m->value);
  });
}

ffmtk_status ffmtk_mask_apply(const ffmtk_tensor* t, const ffmtk_mask* m, ffmtk_tensor** out) {
  return guarded([&] {
    need(t, "tensor");
    need(m, "mask");
    need(out, "out");
    *out = new ffmtk_tensor{ffmtk::project_mask(t->value, m->value)};
  });
}

ffmtk_status ffmtk_salt_pepper(const ffmtk_tensor* t, double level, uint64_t seed, ffmtk_tensor** out) {
  return guarded([&] {
    need(t, "tensor");
    need(out, "out");
    *out = new ffmtk_tensor{ffmtk::salt_pepper(t->value, level, seed)};
  });
}

ffmtk_status ffmtk_config_parse(const char* text, ffmtk_solver fallback, ffmtk_config** out) {
  return guarded([&] {
    need(out, "out");
    const auto kind = fallback == FFMTK_SOLVER_FFMTRPCA ? ffmtk::SolverKind::ffmtrpca : ffmtk::SolverKind::ffmtc;
    const std::string doc = (text && *text) ? text : "{}";
    *out = new ffmtk_config{ffmtk::parse_run_config(doc, kind)};
  });
}

void ffmtk_config_free(ffmtk_config* c) { delete c; }

ffmtk_solver ffmtk_config_solver(const ffmtk_config* c) {
  return c && c->value.solver == ffmtk::SolverKind::ffmtrpca ? FFMTK_SOLVER_FFMTRPCA : FFMTK_SOLVER_FFMTC;
}

void ffmtk_config_set_threads(ffmtk_config* c, size_t threads) {
  if (!c) return;
  c->value.tc.threads = threads;
  c->value.rpca.threads = threads;
}

ffmtk_status ffmtk_config_json(const ffmtk_config* c, char** out) {
  return guarded([&] {
    need(c, "config");
    need(out, "out");
    *out = dup_string(ffmtk::run_config_json(c->value));
  });
}

ffmtk_status ffmtk_complete(const ffmtk_tensor* observed, const ffmtk_mask* mask, const ffmtk_config* cfg,
                            ffmtk_progress_fn progress, void* user, ffmtk_tensor** x_out, ffmtk_report** report_out) {
  return guarded([&] {
    need(observed, "observed");
    need(mask, "mask");
    need(cfg, "config");
    need(x_out, "x_out");
    ffmtk::require(cfg->value.solver == ffmtk::SolverKind::ffmtc, ffmtk::ErrorCode::invalid_argument,
                   "config selects solver ffmtrpca, completion needs ffmtc");
    auto res = ffmtk::ffmtc_solve(observed->value, mask->value, cfg->value.tc, make_observer(progress, user));
    auto* report = report_out ? new ffmtk_report{std::move(res.report)} : nullptr;
    *x_out = new ffmtk_tensor{std::move(res.x)};
    if (report_out) *report_out = report;
  });
}

ffmtk_status ffmtk_rpca(const ffmtk_tensor* t, const ffmtk_config* cfg, ffmtk_progress_fn progress, void* user,
                        ffmtk_tensor** low_rank_out, ffmtk_tensor** sparse_out, ffmtk_report** report_out) {
  return guarded([&] {
    need(t, "tensor");
    need(cfg, "config");
    need(low_rank_out, "low_rank_out");
    need(sparse_out, "sparse_out");
    ffmtk::require(cfg->value.solver == ffmtk::SolverKind::ffmtrpca, ffmtk::ErrorCode::invalid_argument,
                   "config selects solver ffmtc, robust PCA needs ffmtrpca");
    auto res = ffmtk::ffmtrpca_solve(t->value, cfg->value.rpca, make_observer(progress, user));
    *low_rank_out = new ffmtk_tensor{std::move(res.low_rank)};
    *sparse_out = new ffmtk_tensor{std::move(res.sparse)};
    if (report_out) *report_out = new ffmtk_report{std::move(res.report)};
  });
}

void ffmtk_report_free(ffmtk_report* r) { delete r; }

size_t ffmtk_report_iterations(const ffmtk_report* r) { return r ? r->value.iterations : 0; }

ffmtk_termination ffmtk_report_terminated_by(const ffmtk_report* r) {
  return r && r->value.terminated_by == ffmtk::Termination::tolerance ? FFMTK_TERM_TOLERANCE : FFMTK_TERM_MAX_ITERS;
}

double ffmtk_report_wall_time(const ffmtk_report* r) { return r ? r->value.wall_time : 0.0; }

double ffmtk_report_fidelity_residual(const ffmtk_report* r) { return r ? r->value.fidelity_residual : 0.0; }

const double* ffmtk_report_changes(const ffmtk_report* r, size_t* n) {
  if (n) *n = r ? r->value.change_history.size() : 0;
  return r ? r->value.change_history.data() : nullptr;
}

const double* ffmtk_report_objectives(const ffmtk_report* r, size_t* n) {
  if (n) *n = r ? r->value.objective_history.size() : 0;
  return r ? r->value.objective_history.data() : nullptr;
}

ffmtk_status ffmtk_report_write_csv(const ffmtk_report* r, const char* path) {
  return guarded([&] {
    need(r, "report");
    need(path, "path");
    ffmtk::write_report_csv(path, r->value);
  });
}

ffmtk_status ffmtk_measure_json(const ffmtk_tensor* t, const char* beta, double eps, char** out) {
  return guarded([&] {
    need(t, "tensor");
    need(out, "out");
    const DenseTensor& x = t->value;
    const auto weights = ffmtk::resolve_beta(ffmtk::parse_beta_spec(beta ? beta : "uniform"), x.dims());
    const auto rank = ffmtk::ffm_rank(x, weights);
    const auto logsum = ffmtk::ffm_logsum(x, weights, eps);
    const std::vector<double> alpha(x.order(), 1.0 / static_cast<double>(x.order()));

    json doc;
    doc["dims"] = x.dims();
    doc["beta"] = pair_json(weights.entries());
    doc["ffm_rank"] = {{"per_pair", pair_json(rank.per_pair)}, {"total", rank.total}};
    doc["ffm_logsum"] = {{"eps", eps}, {"per_pair", pair_json(logsum.per_pair)}, {"total", logsum.total}};
    doc["snn"] = ffmtk::snn(x, alpha);
    if (x.order() == 3) doc["tnn"] = ffmtk::tnn(x);
    if (x.order() >= 3) {
      json ranks = json::object();
      for (const auto& [p, r] : ffmtk::n_tubal_rank(x)) ranks[ffmtk::pair_key(p)] = r;
      doc["n_tubal_rank"] = ranks;
    }
    *out = dup_string(doc.dump(2));
  });
}

ffmtk_status ffmtk_metrics_json(const ffmtk_tensor* ref, const ffmtk_tensor* est, const ffmtk_config* cfg,
                                char** out) {
  return guarded([&] {
    need(ref, "reference");
    need(est, "estimate");
    need(out, "out");
    const ffmtk::MetricConfig mc = cfg ? cfg->value.metrics : ffmtk::MetricConfig{};
    const DenseTensor& r = ref->value;
    const DenseTensor& e = est->value;
    ffmtk::require(r.dims() == e.dims(), ffmtk::ErrorCode::shape_mismatch, "reference and estimate shapes differ");

    json doc;
    doc["psnr"] = real_json(ffmtk::psnr(r, e, mc));
    // Metrics whose preconditions the data cannot meet are reported as null.
    const bool image_like = (r.order() == 2 || r.order() == 3) && r.dim(0) >= mc.ssim_window &&
                            r.dim(1) >= mc.ssim_window;
    doc["ssim"] = image_like ? json(ffmtk::ssim(r, e, mc)) : json(nullptr);
    try {
      doc["ergas"] = ffmtk::ergas(r, e, r.order() - 1);
    } catch (const ffmtk::Error&) {
      doc["ergas"] = nullptr;
    }
    doc["rse"] = ffmtk::frobenius_norm(r) > 0.0 ? json(ffmtk::rse(r, e)) : json(nullptr);
    *out = dup_string(doc.dump(2));
  });
}

}  // extern "C"
