/* Copyright 2026 The Metamorph Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef METAMORPH_METAMORPH_H_
#define METAMORPH_METAMORPH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(METAMORPH_BUILDING_LIBRARY)
#define MM_API __attribute__((visibility("default")))
#else
#define MM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every failure also sets a thread-local message readable
 * through mm_last_error(). */
typedef enum mm_status {
  MM_OK = 0,
  MM_E_MISSING_FILE,
  MM_E_MALFORMED_LINE,
  MM_E_DANGLING_REFERENCE,
  MM_E_MISSING_ANNOTATION,
  MM_E_BBOX_OUT_OF_BOUNDS,
  MM_E_UNSUPPORTED_FORMAT,
  MM_E_IO_FAILURE,
  MM_E_INVALID_ARGUMENT,
  MM_E_INVALID_CONFIG,
  MM_E_NO_VALID_PLACEMENT,
  MM_E_UNKNOWN_PRESET,
  MM_E_DIMENSION_MISMATCH,
  MM_E_SINGULAR_SUPPORT,
  MM_E_EMPTY_SCORE_SET,
  MM_E_TOO_FEW_ROWS,
  MM_E_EMPTY_IMAGE,
  MM_E_MALFORMED_ROW,
  MM_E_NOT_NORMALIZED,
  MM_E_UNKNOWN_PARENT_MR,
  MM_E_DUPLICATE_MR,
  MM_E_NON_ZERO_EXIT,
  MM_E_TIMEOUT,
  MM_E_NO_OUTPUT_IMAGES,
  MM_E_EMPTY_IMAGE_LIST,
  MM_E_SAMPLE_TOO_LARGE,
  MM_E_SESSION_CLOSED,
  MM_E_VALUE_OUT_OF_RANGE,
  MM_E_UNKNOWN_SCALE,
  MM_E_UNKNOWN_IMAGE,
  MM_E_UNKNOWN_SESSION,
  MM_E_INTERNAL = 100
} mm_status;

typedef struct mm_dataset mm_dataset;
typedef struct mm_scoreset mm_scoreset;
typedef struct mm_likert_service mm_likert_service;

typedef struct mm_thresholds {
  double epsilon_is;
  double tau_tint;
  double epsilon_similar;
} mm_thresholds;

typedef void (*mm_progress_fn)(const char* message, void* user);

MM_API const char* mm_version(void);
/* Message of the last failure on this thread, "" if none. */
MM_API const char* mm_last_error(void);
/* Stable name of a status, e.g. "NotNormalized". */
MM_API const char* mm_status_name(int status);
/* Strings returned through char** out-parameters are owned by the caller. */
MM_API void mm_string_free(char* s);

MM_API mm_thresholds mm_default_thresholds(void);

/* dataset */
MM_API int mm_dataset_load(const char* root, mm_dataset** out);
MM_API void mm_dataset_free(mm_dataset* ds);
MM_API size_t mm_dataset_size(const mm_dataset* ds);
/* JSON summary: image and class counts, split sizes. */
MM_API int mm_dataset_describe(const mm_dataset* ds, char** json_out);
MM_API int mm_dataset_synthesize(const char* root, size_t n_images, size_t n_classes, uint64_t seed);

/* mutation; spec_json is a test-case object (or {"preset": "TC01", ...}),
 * relative sprite directories resolve against base_dir (may be NULL). */
MM_API int mm_preset_spec(const char* name, char** json_out);
MM_API int mm_mutate(const mm_dataset* ds, const char* spec_json, const char* base_dir, const char* out_dir,
                     unsigned workers, char** manifest_json_out);

/* metrics */
MM_API int mm_kl_divergence(const double* p, const double* q, size_t n, double* out);
MM_API int mm_scores_load(const char* path, mm_scoreset** out);
MM_API int mm_scores_builtin(const char* images_dir, size_t n_classes, uint64_t seed, mm_scoreset** out);
MM_API void mm_scores_free(mm_scoreset* s);
MM_API size_t mm_scores_rows(const mm_scoreset* s);
MM_API size_t mm_scores_classes(const mm_scoreset* s);
MM_API int mm_scores_write(const mm_scoreset* s, const char* path);
MM_API int mm_inception_score(const mm_scoreset* s, size_t n_splits, double* mean, double* std);
MM_API int mm_grey_tint_file(const char* path, double* out);
MM_API int mm_grey_tint_dir(const char* dir, double* mean, size_t* count);
/* "mean(std)" in the last-digit notation, e.g. 4.16(3). */
MM_API int mm_format_mean_std(double mean, double std, char** out);

/* relations; records_json maps case name to record, mrs_json is an MR or an
 * array of MRs (NULL: the builtin set). Produces report JSON. */
MM_API int mm_mr_evaluate(const char* records_json, const char* mrs_json, mm_thresholds thresholds,
                          char** report_json_out);

/* pipeline and reports */
MM_API int mm_run_pipeline(const char* config_path, mm_progress_fn progress, void* user, char** report_json_out,
                           size_t* n_failed);
MM_API int mm_render_report(const char* report_json, const char* format, char** out);
/* path is a report.json file or the directory holding one. */
MM_API int mm_render_report_file(const char* path, const char* format, char** out);
MM_API int mm_replay_reference(mm_thresholds thresholds, char** report_json_out);

/* likert service */
MM_API int mm_likert_open(const char* sessions_dir, const char* images_root, const char* static_dir,
                          mm_likert_service** out);
/* port 0 picks a free port; the bound port is stored in bound_port. */
MM_API int mm_likert_bind(mm_likert_service* svc, const char* host, int port, int* bound_port);
/* Blocks until mm_likert_stop. */
MM_API int mm_likert_serve(mm_likert_service* svc);
MM_API void mm_likert_stop(mm_likert_service* svc);
MM_API void mm_likert_free(mm_likert_service* svc);

#ifdef __cplusplus
}
#endif

#endif  // METAMORPH_METAMORPH_H_
