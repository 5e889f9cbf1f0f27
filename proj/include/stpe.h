#ifndef STPE_H
#define STPE_H

/* C interface to the space-time poroelasticity solver.
 *
 * Usage pattern:
 *   stpe_study* s = stpe_study_create();
 *   stpe_study_load_config(s, "study.cfg");      // optional
 *   stpe_study_set(s, "levels", "0..3");         // optional overrides
 *   if (stpe_study_run(s, 0) != STPE_OK) { ... stpe_last_error() ... }
 *   ... stpe_study_row(), stpe_study_render_table() ...
 *   stpe_study_destroy(s);
 *
 * All fallible calls return a status code; the message for the most recent
 * failure on the calling thread is available via stpe_last_error().
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stpe_status {
  STPE_OK = 0,
  STPE_ERR_INVALID_ARGUMENT = 1, /* null handle, bad index, null out-pointer */
  STPE_ERR_CONFIG = 2,           /* unreadable or inconsistent configuration */
  STPE_ERR_SOLVER = 3,           /* factorization failed or residual too large */
  STPE_ERR_SELFTEST = 4,         /* one or more built-in checks failed */
  STPE_ERR_IO = 5,               /* result files could not be written */
  STPE_ERR_INTERNAL = 6          /* any other error */
} stpe_status;

/* Opaque convergence-study handle. Not thread-safe; use one per thread. */
typedef struct stpe_study stpe_study;

/* Library version, "major.minor.patch". Static storage, do not free. */
const char* stpe_version(void);

/* Message of the last failure on this thread, empty string if none. The
 * pointer stays valid until the next failing call on the same thread. */
const char* stpe_last_error(void);

/* Creates a study with the built-in benchmark defaults (equal-order
 * k = r = 2, levels 0..3, T = 2). Returns NULL on allocation failure. */
stpe_study* stpe_study_create(void);

void stpe_study_destroy(stpe_study* study);

/* Replaces the configuration with the contents of a "key: value" file. */
stpe_status stpe_study_load_config(stpe_study* study, const char* path);

/* Sets a single configuration key ("scheme", "k", "r", "levels", "T",
 * "tau0", "cells0", "rho", "alpha", "c0", "K_diag", "E", "nu", "omega1",
 * "omega2", "output_dir"). Values use the same syntax as the config file. */
stpe_status stpe_study_set(stpe_study* study, const char* key, const char* value);

/* Registers a progress sink; each completed refinement level produces one
 * line (without trailing newline). Pass NULL to silence. */
stpe_status stpe_study_set_log(stpe_study* study,
                               void (*line_fn)(const char* line, void* user),
                               void* user);

/* Runs every refinement level and writes the CSV (plus a markdown table if
 * emit_markdown is nonzero) into the configured output directory. Replaces
 * any previous results held by the handle. */
stpe_status stpe_study_run(stpe_study* study, int emit_markdown);

/* Number of completed refinement levels, 0 before the first run. */
int stpe_study_rows(const stpe_study* study);

/* Copies one result row. errors[0..2] are the space-time L2 errors of
 * displacement, velocity, pressure; errors[3..5] the corresponding
 * max-in-time L2 errors. Any out-pointer may be NULL to skip that field. */
stpe_status stpe_study_row(const stpe_study* study, int row, int* level,
                           double* tau, double* h, double errors[6]);

/* Path of the CSV written by the last run. The pointer stays valid until
 * the next run or destroy. */
stpe_status stpe_study_csv_path(const stpe_study* study, const char** path);

/* Renders the error/order table as text (markdown if requested). The
 * returned string must be released with stpe_string_free(). */
stpe_status stpe_study_render_table(const stpe_study* study, int markdown,
                                    char** text);

/* Runs the built-in verification checks. Returns STPE_OK when all pass,
 * STPE_ERR_SELFTEST otherwise. The report (one line per check) is returned
 * via `report` when non-NULL and must be released with stpe_string_free();
 * `failures` receives the number of failed checks when non-NULL. */
stpe_status stpe_self_test(char** report, int* failures);

void stpe_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* STPE_H */
