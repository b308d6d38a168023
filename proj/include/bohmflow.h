/* bohmflow: pilot-wave interferometer simulator, C API.
 *
 * Opaque handles + integer status codes over the C++ core.  Status
 * values double as process exit codes: 0 ok, 2 config error, 3 numeric
 * degeneracy, 4 I/O error.  On any failure bf_last_error() carries a
 * thread-local diagnostic string.
 */
#ifndef BOHMFLOW_H
#define BOHMFLOW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bf_config bf_config;
typedef struct bf_scenario bf_scenario;

typedef enum {
    BF_OK = 0,
    BF_ERR_CONFIG = 2,
    BF_ERR_DEGENERACY = 3,
    BF_ERR_IO = 4,
} bf_status;

const char* bf_version(void);
const char* bf_last_error(void);

/* --- configuration ----------------------------------------------------- */

bf_config* bf_config_default(void);
bf_config* bf_config_load(const char* path);   /* NULL on failure */
bf_config* bf_config_parse(const char* text);  /* NULL on failure */
void bf_config_free(bf_config* cfg);
bf_status bf_config_set(bf_config* cfg, const char* key, const char* value);
/* Fully resolved key = value text; free with bf_string_free. */
char* bf_config_serialize(const bf_config* cfg);

/* --- commands ----------------------------------------------------------- */

/* Run the configured scenario: ensembles, CSV/figure artifacts and the
 * run report under output.dir.  *report (optional) receives the printed
 * summary; free with bf_string_free. */
bf_status bf_run(const bf_config* cfg, int threads, char** report);

/* Field-grid dump at one time; nx/nz <= 0 and time < 0 use the config. */
bf_status bf_fields(const bf_config* cfg, int nx, int nz, double time,
                    int threads, char** report);

/* Sweep one numeric config key over n_values values. */
bf_status bf_sweep(const bf_config* cfg, const char* param,
                   const double* values, size_t n_values, int threads,
                   char** report);

/* --- scenario-level queries --------------------------------------------- */

bf_scenario* bf_scenario_create(const bf_config* cfg);
void bf_scenario_free(bf_scenario* s);
int bf_scenario_n_aux(const bf_scenario* s);

/* Mach-Zehnder closure probabilities (Eqs. of the two-arm read-out). */
bf_status bf_detector_probabilities(const bf_scenario* s, double* p_d1,
                                    double* p_d2);

/* Local fields at configuration point q = (x, z[, aux...]), q_len = 2 +
 * n_aux.  out receives {P, jx, jz, j_aux, Q_total, resid}; out_len >= 6.
 * Q_total and resid are NaN at nodes. */
bf_status bf_field_sample(const bf_scenario* s, const double* q, size_t q_len,
                          double t, double* out, size_t out_len);

/* Net probability flux across the z = 0 symmetry plane at time t. */
bf_status bf_plane_flux(const bf_scenario* s, double t, double* flux);

void bf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BOHMFLOW_H */
