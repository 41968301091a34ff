/*
 * Copyright 2026 The qcad Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libqcad: two-qutrit states under correlated amplitude
 * damping, WM+QMR and EAM+QMR protection, parameter sweeps.
 *
 * Conventions:
 *  - Every fallible call returns a qcad_status; QCAD_OK is 0.
 *  - On failure, qcad_last_error() describes the most recent error raised on
 *    the calling thread. The pointer stays valid until the next failing call
 *    on that thread.
 *  - Objects are opaque handles created by qcad_*_create / parse / run calls
 *    and released with the matching qcad_*_free. Free functions accept NULL.
 *  - Matrices are square, row-major, with basis index 3*i + j for |ij>.
 */

#ifndef QCAD_QCAD_H
#define QCAD_QCAD_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QCAD_BUILDING)
#    define QCAD_API __declspec(dllexport)
#  else
#    define QCAD_API __declspec(dllimport)
#  endif
#else
#  define QCAD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcad_status {
  QCAD_OK = 0,
  QCAD_ERR_INVALID_ARGUMENT = 1,
  QCAD_ERR_OUT_OF_RANGE = 2,
  QCAD_ERR_DIMENSION_MISMATCH = 3,
  QCAD_ERR_NOT_HERMITIAN = 4,
  QCAD_ERR_NO_CONVERGENCE = 5,
  QCAD_ERR_NOT_NORMALIZED = 6,
  QCAD_ERR_ZERO_PROBABILITY = 7,
  QCAD_ERR_PARSE = 8,
  QCAD_ERR_VALIDATION = 9,
  QCAD_ERR_INCOMPLETE_GRID = 10,
  QCAD_ERR_IO = 11,
  QCAD_ERR_INTERNAL = 12
} qcad_status;

typedef enum qcad_state_class {
  QCAD_CLASS1 = 1, /* alpha|00> + beta|11> + gamma|22> */
  QCAD_CLASS2 = 2  /* alpha|02> + beta|20> + gamma|11> */
} qcad_state_class;

typedef enum qcad_scheme {
  QCAD_SCHEME_NONE = 0,
  QCAD_SCHEME_WM = 1,
  QCAD_SCHEME_EAM = 2
} qcad_scheme;

typedef enum qcad_eam_weighting {
  QCAD_EAM_JOINT = 0,
  QCAD_EAM_BRANCH_NORMALIZED = 1
} qcad_eam_weighting;

typedef struct qcad_channel {
  double d1;
  double d2;
  double mu;
} qcad_channel;

typedef struct qcad_protection {
  double p;
  double q;
  double p_r;
  double q_r;
} qcad_protection;

typedef struct qcad_amplitudes {
  double alpha;
  double beta_re, beta_im;
  double gamma_re, gamma_im;
} qcad_amplitudes;

typedef struct qcad_record {
  qcad_state_class state_class;
  double d1, d2, mu, p, q, p_r, q_r;
  qcad_scheme scheme;
  int has_values; /* 0 when the protocol had zero success probability */
  double negativity;
  double probability;
} qcad_record;

typedef struct qcad_matrix qcad_matrix;
typedef struct qcad_config qcad_config;
typedef struct qcad_records qcad_records;

QCAD_API const char* qcad_version(void);
QCAD_API const char* qcad_status_string(qcad_status status);
QCAD_API const char* qcad_last_error(void);

/* ---- matrices and single operations ---------------------------------- */

QCAD_API qcad_status qcad_matrix_create(size_t dim, const double* re,
                                        const double* im, qcad_matrix** out);
QCAD_API void qcad_matrix_free(qcad_matrix* m);
QCAD_API size_t qcad_matrix_dim(const qcad_matrix* m);
QCAD_API qcad_status qcad_matrix_get(const qcad_matrix* m, size_t row,
                                     size_t col, double* re, double* im);

QCAD_API qcad_status qcad_make_state(qcad_state_class cls,
                                     const qcad_amplitudes* amps,
                                     qcad_matrix** out);
QCAD_API qcad_status qcad_negativity(const qcad_matrix* rho, double* out);
QCAD_API qcad_status qcad_cad_apply(const qcad_matrix* rho,
                                    const qcad_channel* ch, qcad_matrix** out);
QCAD_API qcad_status qcad_wm_qmr(const qcad_matrix* rho,
                                 const qcad_protection* prot,
                                 const qcad_channel* ch, qcad_matrix** state,
                                 double* probability);
QCAD_API qcad_status qcad_eam_qmr(const qcad_matrix* rho,
                                  const qcad_protection* prot,
                                  const qcad_channel* ch,
                                  qcad_eam_weighting weighting,
                                  qcad_matrix** state, double* probability);
QCAD_API qcad_status qcad_optimal_qmr_wm(double p, double q, double d1,
                                         double d2, double* p_r, double* q_r);
QCAD_API qcad_status qcad_optimal_qmr_eam(double d1, double d2, double* p_r,
                                          double* q_r);

/* ---- configuration and sweeps --------------------------------------- */

/* Parses a JSON sweep configuration. `overrides` holds n_overrides strings
 * of the form "key=value" applied on top of the document. */
QCAD_API qcad_status qcad_config_parse(const char* json,
                                       const char* const* overrides,
                                       size_t n_overrides, qcad_config** out);
QCAD_API void qcad_config_free(qcad_config* cfg);
/* Output path from the configuration; owned by cfg. */
QCAD_API const char* qcad_config_output(const qcad_config* cfg);

QCAD_API qcad_status qcad_sweep_run(const qcad_config* cfg, qcad_records** out);
/* Evaluates only the first grid point and keeps the output states. */
QCAD_API qcad_status qcad_evolve(const qcad_config* cfg, qcad_records** out);

QCAD_API void qcad_records_free(qcad_records* r);
QCAD_API size_t qcad_records_size(const qcad_records* r);
QCAD_API qcad_status qcad_records_get(const qcad_records* r, size_t index,
                                      qcad_record* out);
/* Copy of the output state for a record produced by qcad_evolve. */
QCAD_API qcad_status qcad_records_state(const qcad_records* r, size_t index,
                                        qcad_matrix** out);
QCAD_API qcad_status qcad_records_write_csv(const qcad_records* r,
                                            const char* path);
/* CSV at csv_path plus, for format csv+svg, the heatmaps next to it.
 * Returns the number of files written in *n_files when non-NULL. */
QCAD_API qcad_status qcad_records_write_outputs(const qcad_config* cfg,
                                                const qcad_records* r,
                                                const char* csv_path,
                                                size_t* n_files);

/* ---- self-check ------------------------------------------------------ */

typedef void (*qcad_check_callback)(const char* name, int passed,
                                    const char* detail, void* user);

/* Runs the built-in invariant and oracle checks, reporting each through
 * `cb` (may be NULL). *n_failed receives the number of failing checks. */
QCAD_API qcad_status qcad_verify(qcad_check_callback cb, void* user,
                                 size_t* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* QCAD_QCAD_H */
