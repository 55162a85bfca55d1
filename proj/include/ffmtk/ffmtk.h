/*
 * (C) Copyright 2026 ffmtk developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef FFMTK_FFMTK_H
#define FFMTK_FFMTK_H

/*
 * C interface to the ffmtk tensor-recovery library.
 *
 * Every handle is opaque and owned by the caller once returned; release it
 * with the matching *_free function (all accept NULL). Functions returning
 * ffmtk_status leave a message for ffmtk_last_error() on failure. The message
 * is per thread and stays valid until the next failing call on that thread.
 *
 * Modes are 1-based at this boundary. Tensor data is first-index-fastest.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(FFMTK_BUILDING)
#define FFMTK_API __attribute__((visibility("default")))
#else
#define FFMTK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ffmtk_status {
  FFMTK_OK = 0,
  FFMTK_ERR_INVALID_ARGUMENT = 1,
  FFMTK_ERR_SHAPE_MISMATCH = 2,
  FFMTK_ERR_OUT_OF_RANGE = 3,
  FFMTK_ERR_NUMERICAL = 4,
  FFMTK_ERR_IO = 5,
  FFMTK_ERR_BAD_MAGIC = 6,
  FFMTK_ERR_BAD_VERSION = 7,
  FFMTK_ERR_TRUNCATED = 8,
  FFMTK_ERR_PARSE = 9,
  FFMTK_ERR_NON_FINITE = 10,
  FFMTK_ERR_INTERNAL = 99
} ffmtk_status;

typedef enum ffmtk_solver { FFMTK_SOLVER_FFMTC = 0, FFMTK_SOLVER_FFMTRPCA = 1 } ffmtk_solver;

typedef enum ffmtk_termination { FFMTK_TERM_TOLERANCE = 0, FFMTK_TERM_MAX_ITERS = 1 } ffmtk_termination;

typedef struct ffmtk_tensor ffmtk_tensor;
typedef struct ffmtk_mask ffmtk_mask;
typedef struct ffmtk_config ffmtk_config;
typedef struct ffmtk_report ffmtk_report;

/* Called once per solver iteration with the 1-based iteration number and
 * max |X_new - X_old|. */
typedef void (*ffmtk_progress_fn)(size_t iteration, double change_inf, void* user);

FFMTK_API const char* ffmtk_version(void);
FFMTK_API const char* ffmtk_last_error(void);
/* Frees strings returned through char** out-parameters. */
FFMTK_API void ffmtk_string_free(char* s);

/* ---- tensors ---- */

/* data may be NULL for a zero tensor; otherwise it holds prod(dims) values. */
FFMTK_API ffmtk_status ffmtk_tensor_create(const size_t* dims, size_t ndim, const double* data, ffmtk_tensor** out);
FFMTK_API void ffmtk_tensor_free(ffmtk_tensor* t);
FFMTK_API size_t ffmtk_tensor_ndim(const ffmtk_tensor* t);
/* Valid while t is alive. */
FFMTK_API const size_t* ffmtk_tensor_dims(const ffmtk_tensor* t);
FFMTK_API size_t ffmtk_tensor_size(const ffmtk_tensor* t);
FFMTK_API const double* ffmtk_tensor_data(const ffmtk_tensor* t);
FFMTK_API double* ffmtk_tensor_data_mut(ffmtk_tensor* t);
FFMTK_API ffmtk_status ffmtk_tensor_read(const char* path, ffmtk_tensor** out);
FFMTK_API ffmtk_status ffmtk_tensor_write(const char* path, const ffmtk_tensor* t);

/* ---- masks and degradations ---- */

/* Exactly round(rate * prod(dims)) known entries, rate in (0, 1]. */
FFMTK_API ffmtk_status ffmtk_mask_generate(const size_t* dims, size_t ndim, double rate, uint64_t seed,
                                           ffmtk_mask** out);
FFMTK_API void ffmtk_mask_free(ffmtk_mask* m);
FFMTK_API size_t ffmtk_mask_count(const ffmtk_mask* m);
FFMTK_API ffmtk_status ffmtk_mask_read(const char* path, ffmtk_mask** out);
FFMTK_API ffmtk_status ffmtk_mask_write(const char* path, const ffmtk_mask* m);
/* Zeroes every entry the mask does not mark as known. */
FFMTK_API ffmtk_status ffmtk_mask_apply(const ffmtk_tensor* t, const ffmtk_mask* m, ffmtk_tensor** out);
/* round(level * size) entries set to min(t) or max(t), level in [0, 1). */
FFMTK_API ffmtk_status ffmtk_salt_pepper(const ffmtk_tensor* t, double level, uint64_t seed, ffmtk_tensor** out);

/* ---- configuration ---- */

/* Parses a JSON run config (see docs/config.md). json may be NULL or "" for
 * all defaults. fallback applies when the document has no "solver" key. */
FFMTK_API ffmtk_status ffmtk_config_parse(const char* json, ffmtk_solver fallback, ffmtk_config** out);
FFMTK_API void ffmtk_config_free(ffmtk_config* c);
FFMTK_API ffmtk_solver ffmtk_config_solver(const ffmtk_config* c);
/* 0 means all available cores. */
FFMTK_API void ffmtk_config_set_threads(ffmtk_config* c, size_t threads);
/* Fully resolved config as JSON. */
FFMTK_API ffmtk_status ffmtk_config_json(const ffmtk_config* c, char** out);

/* ---- solvers ---- */

FFMTK_API ffmtk_status ffmtk_complete(const ffmtk_tensor* observed, const ffmtk_mask* mask, const ffmtk_config* cfg,
                                      ffmtk_progress_fn progress, void* user, ffmtk_tensor** x_out,
                                      ffmtk_report** report_out);
FFMTK_API ffmtk_status ffmtk_rpca(const ffmtk_tensor* t, const ffmtk_config* cfg, ffmtk_progress_fn progress,
                                  void* user, ffmtk_tensor** low_rank_out, ffmtk_tensor** sparse_out,
                                  ffmtk_report** report_out);

FFMTK_API void ffmtk_report_free(ffmtk_report* r);
FFMTK_API size_t ffmtk_report_iterations(const ffmtk_report* r);
FFMTK_API ffmtk_termination ffmtk_report_terminated_by(const ffmtk_report* r);
FFMTK_API double ffmtk_report_wall_time(const ffmtk_report* r);
FFMTK_API double ffmtk_report_fidelity_residual(const ffmtk_report* r);
/* Arrays valid while r is alive; *n receives the length. */
FFMTK_API const double* ffmtk_report_changes(const ffmtk_report* r, size_t* n);
FFMTK_API const double* ffmtk_report_objectives(const ffmtk_report* r, size_t* n);
FFMTK_API ffmtk_status ffmtk_report_write_csv(const ffmtk_report* r, const char* path);

/* ---- diagnostics ---- */

/* beta is "uniform", "size_normalized" or a JSON object of "k1,k2" weights. */
FFMTK_API ffmtk_status ffmtk_measure_json(const ffmtk_tensor* t, const char* beta, double eps, char** out);
/* cfg may be NULL for default metric settings. */
FFMTK_API ffmtk_status ffmtk_metrics_json(const ffmtk_tensor* ref, const ffmtk_tensor* est, const ffmtk_config* cfg,
                                          char** out);

#ifdef __cplusplus
}
#endif

#endif /* FFMTK_FFMTK_H */
