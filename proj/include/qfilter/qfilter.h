#ifndef QFILTER_QFILTER_H
#define QFILTER_QFILTER_H

#include <stddef.h>
#include <stdint.h>

#if defined(QFILTER_BUILDING_LIBRARY)
#define QF_API __attribute__((visibility("default")))
#else
#define QF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. 1..24 mirror the library's error taxonomy. */
typedef enum qf_status {
  QF_OK = 0,
  QF_E_INVALID_ARGUMENT = 1,
  QF_E_DIMENSION_MISMATCH = 2,
  QF_E_NOT_HERMITIAN = 3,
  QF_E_ZERO_PROBABILITY_OUTCOME = 4,
  QF_E_INCOMPATIBLE_OBSERVABLE = 5,
  QF_E_DEGENERATE_BLOCK = 6,
  QF_E_NON_FAITHFUL_STATE = 7,
  QF_E_SYNTAX = 8,
  QF_E_UNBOUND_SYMBOL = 9,
  QF_E_SCATTERING_NOT_SUPPORTED = 10,
  QF_E_COLLAPSED_NORM = 11,
  QF_E_NORM_OVERFLOW = 12,
  QF_E_STEP_TOO_LARGE = 13,
  QF_E_POSITIVITY_VIOLATION = 14,
  QF_E_NON_HERMITIAN_OBSERVABLE = 15,
  QF_E_TRUNCATION_TOO_COARSE = 16,
  QF_E_NONPOSITIVE_VARIANCE = 17,
  QF_E_ZERO_EVIDENCE = 18,
  QF_E_CFL_VIOLATION = 19,
  QF_E_SUPPORT_CLIPPED = 20,
  QF_E_ZERO_DENSITY_POINTER = 21,
  QF_E_CONFIG_PARSE = 22,
  QF_E_EXPERIMENT_UNKNOWN = 23,
  QF_E_IO = 24,
  QF_E_BUFFER_TOO_SMALL = 100,
  QF_E_NULL_ARGUMENT = 101,
  QF_E_INTERNAL = 102
} qf_status;

typedef struct qf_config qf_config;
typedef struct qf_run qf_run;
typedef struct qf_acceptance qf_acceptance;
typedef struct qf_model qf_model;

QF_API const char* qf_version(void);
QF_API const char* qf_status_name(qf_status status);

/*
 * Details of the last failure on the calling thread. The message pointer
 * stays valid until the next failing call on the same thread. Location is
 * 0 when unknown: line/column for config errors, byte offset for syntax
 * errors (reported as column, with line 0).
 */
QF_API const char* qf_last_error_message(void);
QF_API void qf_last_error_location(int* line, int* column);

/*
 * Strings are returned through caller buffers. `needed` (optional) receives
 * the size including the terminating NUL; when `capacity` is too small the
 * call returns QF_E_BUFFER_TOO_SMALL and writes nothing. Passing
 * buf = NULL, capacity = 0 is the usual way to query the size.
 */

/* Error of the last failure as a JSON object. */
QF_API qf_status qf_last_error_json(char* buf, size_t capacity, size_t* needed);

/* Registry, alphabetized. */
QF_API size_t qf_experiment_count(void);
QF_API qf_status qf_experiment_info(size_t index, const char** name, int* criterion,
                                    const char** doc);

/* Configs. */
QF_API qf_status qf_config_parse(const char* text, qf_config** out);
QF_API qf_status qf_config_load(const char* path, qf_config** out);
QF_API qf_status qf_config_experiment(const qf_config* config, char* buf, size_t capacity,
                                      size_t* needed);
QF_API uint64_t qf_config_seed(const qf_config* config);
QF_API void qf_config_free(qf_config* config);

/*
 * Runs the configured experiment. Artifacts and manifest.json are written
 * to `output_dir` when non-NULL, else to QFILTER_OUTPUT_DIR, the config's
 * output_dir, or out/<experiment>, in that order. Pass write = 0 to keep
 * everything in memory.
 */
QF_API qf_status qf_run_config(const qf_config* config, const char* output_dir, int write,
                               qf_run** out);
QF_API int qf_run_pass(const qf_run* run);
QF_API qf_status qf_run_output_dir(const qf_run* run, char* buf, size_t capacity, size_t* needed);
QF_API qf_status qf_run_verdict_json(const qf_run* run, char* buf, size_t capacity, size_t* needed);
QF_API size_t qf_run_artifact_count(const qf_run* run);
QF_API qf_status qf_run_artifact(const qf_run* run, size_t index, const char** name,
                                 const char** bytes, size_t* size);
QF_API void qf_run_free(qf_run* run);

/*
 * Acceptance suite. `overrides_json` may be NULL or an object with keys
 * only, seed, n_traj, perturb_lindblad_sign. Failed criteria are verdicts,
 * not errors. If `output_dir` is non-NULL the verdict file and artifacts are
 * written there.
 */
typedef void (*qf_progress_fn)(const char* experiment, int criterion, int pass, void* user);
QF_API qf_status qf_acceptance_run(const char* overrides_json, const char* output_dir,
                                   qf_progress_fn progress, void* user, qf_acceptance** out);
QF_API int qf_acceptance_pass(const qf_acceptance* report);
QF_API size_t qf_acceptance_line_count(const qf_acceptance* report);
QF_API qf_status qf_acceptance_line(const qf_acceptance* report, size_t index, int* criterion,
                                    int* pass, char* buf, size_t capacity, size_t* needed);
QF_API qf_status qf_acceptance_json(const qf_acceptance* report, char* buf, size_t capacity,
                                    size_t* needed);
QF_API void qf_acceptance_free(qf_acceptance* report);

/* Quantum Ito algebra. */
QF_API qf_status qf_ito_simplify(const char* expr, char* buf, size_t capacity, size_t* needed);
QF_API qf_status qf_ito_table(char* buf, size_t capacity, size_t* needed);

/*
 * SLH models from JSON ({"dim", "S", "L", "H"}). Matrices are row-major
 * arrays of interleaved (re, im) doubles of length 2 * dim * dim.
 */
QF_API qf_status qf_model_from_json(const char* json, qf_model** out);
QF_API size_t qf_model_dim(const qf_model* model);
/* Heisenberg-picture generator applied to x. */
QF_API qf_status qf_model_lindblad(const qf_model* model, const double* x, double* out);
/* Master-equation generator applied to rho. */
QF_API qf_status qf_model_master(const qf_model* model, const double* rho, double* out);
QF_API void qf_model_free(qf_model* model);

#ifdef __cplusplus
}
#endif

#endif
