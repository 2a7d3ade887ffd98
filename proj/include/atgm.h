/* C interface to the graph-matching library: point-set handles, the
 * transformation-based matcher, the outlier pre-filter, the spectral
 * baseline, synthetic data, and the benchmark sweep runner.
 *
 * All functions returning atgm_status never throw across the boundary;
 * on failure they leave outputs untouched and record a message retrievable
 * with atgm_last_error() (thread-local). Strings returned through char**
 * are heap copies; release them with atgm_string_free(). Handles are
 * released with their matching *_free() function.
 */
#ifndef ATGM_H
#define ATGM_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(ATGM_BUILD)
#define ATGM_API __declspec(dllexport)
#else
#define ATGM_API __declspec(dllimport)
#endif
#else
#define ATGM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum atgm_status {
  ATGM_OK = 0,
  ATGM_ERROR_INVALID_ARGUMENT = 1,
  ATGM_ERROR_DEGENERATE_INPUT = 2,
  ATGM_ERROR_DIMENSION_MISMATCH = 3,
  ATGM_ERROR_UNSUPPORTED_DIMENSION = 4,
  ATGM_ERROR_SHAPE = 5,
  ATGM_ERROR_CAPACITY = 6,
  ATGM_ERROR_NUMERIC = 7,
  ATGM_ERROR_PARSE = 8,
  ATGM_ERROR_IO = 9,
  ATGM_ERROR_UNKNOWN = 10
} atgm_status;

typedef enum atgm_connectivity {
  ATGM_CONNECTIVITY_COMPLETE = 0,
  ATGM_CONNECTIVITY_DELAUNAY = 1
} atgm_connectivity;

typedef enum atgm_unary_mode {
  ATGM_UNARY_SHAPE_CONTEXT = 0,
  ATGM_UNARY_NONE = 1
} atgm_unary_mode;

typedef enum atgm_removal_rule {
  ATGM_REMOVAL_UNION = 0,      /* keep a target accepted by at least one source */
  ATGM_REMOVAL_ALL_SOURCES = 1 /* keep a target accepted by every source */
} atgm_removal_rule;

typedef enum atgm_affinity_kind {
  ATGM_AFFINITY_ANGLE_LENGTH = 0,
  ATGM_AFFINITY_LENGTH_ONLY = 1
} atgm_affinity_kind;

typedef struct atgm_points atgm_points;
typedef struct atgm_result atgm_result;
typedef struct atgm_filter_result atgm_filter_result;

typedef struct atgm_options {
  double lambda;   /* edge-discrepancy weight */
  double lambda1;  /* l1 penalty of the shift objectives */
  double lambda2;  /* shift-smoothness weight */
  double epsilon;  /* regularizer in the edge-gradient denominator */
  double ratio_k;  /* distance-ratio threshold of the outlier test */
  int32_t rounds;  /* removal rounds; -1 = 2 when sources < targets, else 0 */
  int32_t connectivity;           /* atgm_connectivity */
  int32_t unary;                  /* atgm_unary_mode */
  int32_t removal_rule;           /* atgm_removal_rule */
  int32_t drop_unary_first_round; /* boolean; round-1 shift ignores distances */
  int32_t final_shift_stage;      /* boolean; 0 stops after the edge stage */
  int32_t validate_iterates;      /* boolean; re-check feasibility per step */
  int32_t shift_max_iters;
  double shift_rel_tol;
  int32_t edge_max_iters;
  double edge_rel_tol;
  double armijo_c;
  double armijo_shrink;
} atgm_options;

typedef struct atgm_spectral_options {
  int32_t affinity; /* atgm_affinity_kind */
  double scale;     /* denominator of the length-only affinity */
  int32_t hungarian_readout;
  int32_t max_iters;
  double tol;
} atgm_spectral_options;

typedef struct atgm_synthetic_spec {
  int32_t inliers;
  int32_t outliers;
  double sigma;
  uint64_t seed;
} atgm_synthetic_spec;

ATGM_API const char* atgm_version(void);
ATGM_API const char* atgm_status_name(atgm_status status);
ATGM_API const char* atgm_last_error(void);
ATGM_API void atgm_string_free(char* text);

/* Recommended defaults; call before overriding fields. */
ATGM_API void atgm_options_init(atgm_options* options);
ATGM_API void atgm_spectral_options_init(atgm_spectral_options* options);

/* coords is row-major, count x dim. */
ATGM_API atgm_status atgm_points_create(const double* coords, int32_t count, int32_t dim,
                                        atgm_points** out);
ATGM_API atgm_status atgm_points_load(const char* path, atgm_points** out);
ATGM_API atgm_status atgm_points_save(const atgm_points* points, const char* path);
ATGM_API int32_t atgm_points_count(const atgm_points* points);
ATGM_API int32_t atgm_points_dim(const atgm_points* points);
/* capacity must be at least count * dim doubles. */
ATGM_API atgm_status atgm_points_copy_coords(const atgm_points* points, double* out,
                                             int32_t capacity);
ATGM_API void atgm_points_free(atgm_points* points);

/* Full matching procedure; coordinates are jointly unit-box-normalized
 * internally, and assignment indices refer to the target set as given even
 * when internal outlier removal reduced it. */
ATGM_API atgm_status atgm_match(const atgm_points* source, const atgm_points* target,
                                const atgm_options* options, atgm_result** out);

/* Rank-1 affinity baseline on jointly unit-box-normalized coordinates;
 * subject to the m*n <= 2500 capacity guard. */
ATGM_API atgm_status atgm_spectral_match(const atgm_points* source, const atgm_points* target,
                                         const atgm_spectral_options* options,
                                         atgm_result** out);

/* Outlier-removal rounds only. */
ATGM_API atgm_status atgm_filter(const atgm_points* source, const atgm_points* target,
                                 const atgm_options* options, atgm_filter_result** out);

ATGM_API int32_t atgm_result_size(const atgm_result* result);
/* capacity must be at least atgm_result_size entries. */
ATGM_API atgm_status atgm_result_assignment(const atgm_result* result, int32_t* out,
                                            int32_t capacity);
/* Fraction of sources whose match equals truth (one entry per source). */
ATGM_API atgm_status atgm_result_accuracy(const atgm_result* result, const int32_t* truth,
                                          int32_t count, double* out);
/* S_0.9 of the final soft assignment; an error for spectral results. */
ATGM_API atgm_status atgm_result_sparsity(const atgm_result* result, double* out);
/* Pair-affinity objective of the matching; an error for matcher results. */
ATGM_API atgm_status atgm_result_qap_score(const atgm_result* result, double* out);
ATGM_API atgm_status atgm_result_diagnostics_json(const atgm_result* result, char** out);
ATGM_API void atgm_result_free(atgm_result* result);

ATGM_API int32_t atgm_filter_result_count(const atgm_filter_result* result);
ATGM_API atgm_status atgm_filter_result_indices(const atgm_filter_result* result, int32_t* out,
                                                int32_t capacity);
ATGM_API atgm_status atgm_filter_result_points(const atgm_filter_result* result,
                                               atgm_points** out);
ATGM_API void atgm_filter_result_free(atgm_filter_result* result);

/* truth receives the target position of each inlier; capacity >= inliers. */
ATGM_API atgm_status atgm_synthetic_generate(const atgm_synthetic_spec* spec, atgm_points** x,
                                             atgm_points** y, int32_t* truth,
                                             int32_t truth_capacity);

/* request_json schema (all fields except "cells" optional):
 * {
 *   "cells": [{"inliers": 100, "outliers": 0, "sigma": 0.02}, ...],
 *   "trials": 10, "seed": 42,
 *   "methods": ["atgm", "spectral"],
 *   "removal_preprocess": false,
 *   "affinity": "length_only" | "angle_length", "affinity_scale": 0.15,
 *   "spectral_hungarian": false,
 *   "options": { "lambda": 1.0, "lambda1": 1000.0, "lambda2": 1.0,
 *                "epsilon": 1e-8, "ratio_k": 1.5, "rounds": -1,
 *                "connectivity": "complete" | "delaunay",
 *                "unary": "shape_context" | "none",
 *                "removal_rule": "union" | "all_sources",
 *                "drop_unary_first_round": false, "final_shift_stage": true,
 *                "validate_iterates": false,
 *                "fw_shift": {"max_iters": 100, "rel_tol": 1e-7},
 *                "fw_edge": {"max_iters": 200, "rel_tol": 1e-9} }
 * }
 * csv_out gets per-trial rows, summary_json_out per-cell aggregates. */
ATGM_API atgm_status atgm_sweep_run(const char* request_json, char** csv_out,
                                    char** summary_json_out);

#ifdef __cplusplus
}
#endif

#endif /* ATGM_H */
