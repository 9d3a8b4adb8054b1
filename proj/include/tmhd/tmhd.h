/* Public C interface of the tamed-MHD simulation core.
 *
 * All entry points are exported from the shared library, operate on opaque
 * handles, return status codes, and never let exceptions cross the boundary.
 * The most recent error message is retrievable per thread via
 * tmhd_last_error().
 */
#ifndef TMHD_H
#define TMHD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tmhd_status {
    TMHD_OK = 0,
    TMHD_ERROR = 1,            /* invalid argument, parse or I/O failure */
    TMHD_ASSERTION_FAILED = 2, /* a checked invariant is violated */
    TMHD_BLOWUP = 3,           /* non-finite state during integration */
    TMHD_NOT_CONVERGED = 4     /* fixed-point iteration failed */
} tmhd_status;

typedef struct tmhd_config tmhd_config;
typedef struct tmhd_result tmhd_result;

const char* tmhd_version(void);
const char* tmhd_last_error(void);

/* Configuration ----------------------------------------------------------- */
tmhd_status tmhd_config_load(const char* path, tmhd_config** out);
tmhd_status tmhd_config_parse(const char* text, tmhd_config** out);
/* key is "section.key" as in the config file, e.g. "time.t_end". */
tmhd_status tmhd_config_set(tmhd_config* cfg, const char* key, const char* value);
void tmhd_config_free(tmhd_config* cfg);

/* Integration ------------------------------------------------------------- */
/* Integrates to t_end; when out_dir is non-NULL, writes diagnostics.csv and
 * the configured snapshots there. The returned result holds the diagnostics
 * table. */
tmhd_status tmhd_run(const tmhd_config* cfg, const char* out_dir, tmhd_result** out);

size_t tmhd_result_rows(const tmhd_result* res);
size_t tmhd_result_cols(const tmhd_result* res);
const char* tmhd_result_header(const tmhd_result* res);
tmhd_status tmhd_result_get(const tmhd_result* res, size_t row, double* values, size_t count);
void tmhd_result_free(tmhd_result* res);

/* Studies ------------------------------------------------------------------ */
/* Taming-threshold sweep; writes one CSV row per threshold to out_csv. */
tmhd_status tmhd_sweep_n(const tmhd_config* cfg, const double* n_list, size_t count,
                         const char* out_csv);

/* Finite-basis reduction cross-checked against the spectral solver.
 * modes = 0 selects the full divergence-free basis of the grid. Writes per-
 * sample relative differences to out_csv (optional) and reports the final
 * relative L2 difference. */
tmhd_status tmhd_galerkin_check(const tmhd_config* cfg, int modes, const char* out_csv,
                                double* rel_l2_error);

/* Integral-equation (Picard) solve cross-checked against the time stepper.
 * Reports the relative L2 difference at t_end and the iteration count. */
tmhd_status tmhd_mild_check(const tmhd_config* cfg, double t_end, int nodes, const char* out_csv,
                            double* rel_l2_diff, int* iterations);

/* One-shot identity checks on a stored snapshot. Writes a human-readable
 * report into the caller buffer (truncated to capacity). Returns
 * TMHD_ASSERTION_FAILED when any invariant is violated; the report names it. */
tmhd_status tmhd_diagnose(const char* snapshot_path, char* report, size_t report_capacity);

#ifdef __cplusplus
}
#endif

#endif /* TMHD_H */
