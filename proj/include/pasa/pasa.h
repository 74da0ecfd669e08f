/* PASA — parallel-and-stream accelerator for generalized linear models.
 *
 * C interface of the shared library. All functions return a pasa_status;
 * on failure pasa_last_error() holds a thread-local description. Strings
 * returned through char** are heap-allocated; release them with
 * pasa_free_string().
 */
#ifndef PASA_PASA_H
#define PASA_PASA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PASA_API __declspec(dllexport)
#else
#define PASA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum pasa_status {
  PASA_OK = 0,
  PASA_ERR_CONFIG = 2, /* bad configuration, arguments or input data */
  PASA_ERR_NUMERIC = 3 /* rank deficiency, non-convergence, singular combine */
} pasa_status;

PASA_API const char* pasa_version(void);

/* Thread-local message describing the most recent failure ("" if none). */
PASA_API const char* pasa_last_error(void);

PASA_API void pasa_free_string(char* s);

/* ---------------------------------------------------------------- streams */

/* Renewable estimation over one data block: feed batches in arrival order,
 * read the running estimate at any point, export the block summary for
 * combination. Handles are not thread-safe; use one per thread. */
typedef struct pasa_stream pasa_stream;

/* family: "gaussian_identity" or "bernoulli_logit"; p: design width. */
PASA_API pasa_status pasa_stream_new(const char* family, int p, pasa_stream** out);

/* x: n_rows * p doubles, row-major; y: n_rows doubles. */
PASA_API pasa_status pasa_stream_update(pasa_stream* s, const double* x,
                                        const double* y, int64_t n_rows);

/* Copies the current estimate into out[0..p). Fails before the first batch. */
PASA_API pasa_status pasa_stream_beta(const pasa_stream* s, double* out);

PASA_API int64_t pasa_stream_rows_seen(const pasa_stream* s);

/* BlockSummary JSON: {block_id, n_k, beta_k, J_k (row-major), phi_k}. */
PASA_API pasa_status pasa_stream_summary_json(const pasa_stream* s, int block_id,
                                              char** out);

PASA_API void pasa_stream_free(pasa_stream* s);

/* ------------------------------------------------------------ combination */

/* summaries: BlockSummary JSON strings. Emits PasaEstimate JSON
 * {schema_version, beta, cov, se, intervals, total_n, K, timing_ms}. */
PASA_API pasa_status pasa_combine_json(const char* const* summaries, size_t count,
                                       double level, char** out);

/* Combines every *.json file found directly inside dir_path.
 * format: "json", "csv" or "table". */
PASA_API pasa_status pasa_combine_dir(const char* dir_path, double level,
                                      const char* format, char** out);

/* -------------------------------------------------- config-driven drivers */

/* Each driver takes the TOML config text (see README for the schema) plus
 * command-line overrides: seed_override < 0 and threads_override < 0 mean
 * "use the config file". Results are rendered in `format`. */

/* Writes the simulated table as CSV to out_path ("-" = stdout). */
PASA_API pasa_status pasa_simulate_csv(const char* toml_text, int64_t seed_override,
                                       const char* out_path);

/* One estimation run: simulated data by default, CSV when [csv] is present. */
PASA_API pasa_status pasa_fit(const char* toml_text, int64_t seed_override,
                              int threads_override, const char* format, char** out);

/* Monte-Carlo replication metrics (A.bias, ASE, ESE, CP, times). */
PASA_API pasa_status pasa_replicate(const char* toml_text, int64_t seed_override,
                                    int threads_override, const char* format,
                                    char** out);

/* Strategy timing comparison on shared simulated data sets. */
PASA_API pasa_status pasa_bench(const char* toml_text, int64_t seed_override,
                                int threads_override, const char* format, char** out);

/* Forward AUC-driven term selection (synthetic benchmark or user CSV). */
PASA_API pasa_status pasa_select(const char* toml_text, int64_t seed_override,
                                 int threads_override, const char* format, char** out);

/* -------------------------------------------------------------- utilities */

/* Mann-Whitney AUC with midrank ties; labels must be 0 or 1. */
PASA_API pasa_status pasa_auc(const double* scores, const double* labels, int64_t n,
                              double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PASA_PASA_H */
