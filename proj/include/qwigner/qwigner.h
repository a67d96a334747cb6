/*
 * Copyright 2026 The qwigner Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libqwigner.
 *
 * Every call returns a qw_status. On failure a human-readable message is
 * available from qw_last_error() until the next failing call on the same
 * thread. Handles are opaque, owned by the caller and released with the
 * matching *_destroy function; destroying NULL is a no-op. Strings returned
 * through char** are released with qw_string_free.
 *
 * Phase points are passed as 2n ints (u_Z followed by u_X). Tables over the
 * phase space use the canonical order: the 2n coordinates read as a base-d
 * number, u_Z[0] most significant.
 */

#ifndef QWIGNER_QWIGNER_H
#define QWIGNER_QWIGNER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QWIGNER_BUILDING_LIBRARY)
#    define QWIGNER_API __declspec(dllexport)
#  else
#    define QWIGNER_API __declspec(dllimport)
#  endif
#else
#  define QWIGNER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qw_status {
    QW_OK = 0,
    QW_ERR_INVALID_ARGUMENT = 1,
    QW_ERR_DIMENSION = 2,
    QW_ERR_CAPACITY = 3,
    QW_ERR_PARSE = 4,
    QW_ERR_STATE_VALIDATION = 5,
    QW_ERR_EFFECT_VALIDATION = 6,
    QW_ERR_INCONSISTENT_OUTCOME = 7,
    QW_ERR_ISOTROPY = 8,
    QW_ERR_NEGATIVITY = 9,
    QW_ERR_MODEL_VALIDATION = 10,
    QW_ERR_ASSIGNMENT = 11,
    QW_ERR_IMPLEMENTATION = 12,
    QW_ERR_INTERNAL = 99
} qw_status;

typedef struct qw_config qw_config;
typedef struct qw_state qw_state;
typedef struct qw_wigner qw_wigner;
typedef struct qw_model qw_model;

typedef struct qw_negativity {
    double min_value;
    size_t min_index;
    size_t negative_count;
    double sum_negativity;
    double mana; /* natural log of sum_negativity */
    int non_negative;
} qw_negativity;

typedef struct qw_equivalence_summary {
    size_t trials;
    size_t passed;
    size_t non_negative;
    size_t negative;
    double max_expectation_defect;
    double max_prediction_defect;
} qw_equivalence_summary;

QWIGNER_API const char *qw_version(void);
QWIGNER_API const char *qw_status_name(qw_status status);
QWIGNER_API const char *qw_last_error(void);
QWIGNER_API void qw_string_free(char *s);

/* Run configuration. Defaults: eps 1e-9, state tolerance 1e-8, size cap
 * d^n <= 4096, seed 0, 20 contexts per state in equivalence sweeps. */
QWIGNER_API qw_status qw_config_create(qw_config **out);
QWIGNER_API void qw_config_destroy(qw_config *config);
QWIGNER_API qw_status qw_config_set_eps(qw_config *config, double eps);
QWIGNER_API qw_status qw_config_set_state_tolerance(qw_config *config, double tol);
QWIGNER_API qw_status qw_config_set_size_cap(qw_config *config, size_t cap);
QWIGNER_API qw_status qw_config_set_seed(qw_config *config, uint64_t seed);
QWIGNER_API qw_status qw_config_set_contexts_per_state(qw_config *config, size_t count);

/* entries: 2 * d^n * d^n doubles, (re, im) interleaved, row-major.
 * config may be NULL for defaults. */
QWIGNER_API qw_status qw_state_create(int d, int n, const double *entries, size_t count, const qw_config *config,
                                      qw_state **out);
/* Parses the state file format { "d", "n", "matrix": [[re, im], ...] }. */
QWIGNER_API qw_status qw_state_parse_json(const char *text, const qw_config *config, qw_state **out);
QWIGNER_API qw_status qw_state_dims(const qw_state *state, int *d, int *n);
QWIGNER_API void qw_state_destroy(qw_state *state);

QWIGNER_API qw_status qw_wigner_compute(const qw_state *state, const qw_config *config, qw_wigner **out);
/* values stays valid until the handle is destroyed. */
QWIGNER_API qw_status qw_wigner_values(const qw_wigner *w, const double **values, size_t *count);
QWIGNER_API qw_status qw_wigner_negativity(const qw_wigner *w, const qw_config *config, qw_negativity *out);
/* Tr(T_a rho) from the Wigner function; point has 2n entries. */
QWIGNER_API qw_status qw_wigner_expectation(const qw_wigner *w, const int *point, size_t len, double *re, double *im);
/* Wigner JSON including the negativity block. */
QWIGNER_API qw_status qw_wigner_to_json(const qw_wigner *w, const qw_config *config, char **json);
/* Contextuality witness JSON (most negative point). */
QWIGNER_API qw_status qw_wigner_witness_json(const qw_wigner *w, const qw_config *config, char **json);
QWIGNER_API void qw_wigner_destroy(qw_wigner *w);

/* Non-contextual value-assignment model from a non-negative Wigner function.
 * Returns QW_ERR_NEGATIVITY when W has a value below -eps. */
QWIGNER_API qw_status qw_model_extract(const qw_wigner *w, const qw_config *config, qw_model **out);
QWIGNER_API qw_status qw_model_size(const qw_model *model, size_t *count);
/* point receives 2n ints: the w with lambda(a) = [a, w]. */
QWIGNER_API qw_status qw_model_state(const qw_model *model, size_t index, int *point, size_t len,
                                     double *probability);
QWIGNER_API qw_status qw_model_certificate_json(const qw_model *model, const qw_state *bound_state,
                                                const qw_config *config, char **json);
QWIGNER_API qw_status qw_model_to_wigner(const qw_model *model, qw_wigner **out);
QWIGNER_API void qw_model_destroy(qw_model *model);

/* Random-state sweep of the Wigner/value-assignment equivalence. The seed
 * comes from config. Returns QW_OK even if some trials fail; compare
 * summary.passed with summary.trials. */
QWIGNER_API qw_status qw_check_equivalence(int d, int n, size_t trials, const qw_config *config,
                                           qw_equivalence_summary *out);

typedef enum qw_transform_method { QW_TRANSFORM_FACTORIZED = 0, QW_TRANSFORM_NAIVE = 1 } qw_transform_method;
typedef enum qw_transform_direction { QW_TRANSFORM_FORWARD = 0, QW_TRANSFORM_INVERSE = 1 } qw_transform_direction;

/* g(u) = sum_v omega^{[u,v]} f(v) over d^(2n) points; count = 2 * d^(2n)
 * interleaved doubles for both input and output. */
QWIGNER_API qw_status qw_symplectic_transform(int d, int n, const double *input, double *output, size_t count,
                                              qw_transform_direction direction, qw_transform_method method);

#ifdef __cplusplus
}
#endif

#endif /* QWIGNER_QWIGNER_H */
