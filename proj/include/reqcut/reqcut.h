/* C interface to the reqcut library.
 *
 * Every function returning reqcut_status leaves a message for
 * reqcut_last_error() (per thread) when it fails. Strings handed out through
 * `char** out` parameters are owned by the caller and released with
 * reqcut_string_free. Results are JSON unless noted otherwise.
 */
#ifndef REQCUT_H
#define REQCUT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define REQCUT_API __attribute__((visibility("default")))
#else
#define REQCUT_API
#endif

/* Values double as CLI exit codes. */
typedef enum reqcut_status {
    REQCUT_OK = 0,
    REQCUT_ERR_INTERNAL = 1,
    REQCUT_ERR_INPUT = 2,       /* malformed input, invalid instance or config */
    REQCUT_ERR_RESOURCE = 3,    /* enumeration budget or time cap exceeded */
    REQCUT_ERR_CONVERGENCE = 4  /* cutting-plane loop hit its cut cap */
} reqcut_status;

typedef struct reqcut_instance reqcut_instance;

typedef struct reqcut_solve_options {
    double c;              /* rounding constant, >= 4 */
    size_t trials;         /* 0 = default from sigma */
    uint64_t seed;
    int sigma_exact;       /* nonzero: enumerate minimal Steiner trees */
    size_t embed_trials;   /* solve_sp only */
    double tol;            /* separation tolerance */
    size_t max_cuts;
} reqcut_solve_options;

REQCUT_API const char* reqcut_version(void);
REQCUT_API const char* reqcut_last_error(void);
REQCUT_API void reqcut_string_free(char* s);

REQCUT_API reqcut_status reqcut_instance_load(const char* path, reqcut_instance** out);
REQCUT_API reqcut_status reqcut_instance_parse(const char* text, reqcut_instance** out);
REQCUT_API void reqcut_instance_free(reqcut_instance* inst);
REQCUT_API reqcut_status reqcut_instance_info(const reqcut_instance* inst, size_t* n, size_t* m, size_t* g);
/* Canonical text (as_json == 0) or JSON. */
REQCUT_API reqcut_status reqcut_instance_format(const reqcut_instance* inst, int as_json, char** out);
/* Validation messages as a JSON array; empty array when valid. */
REQCUT_API reqcut_status reqcut_instance_validate(const reqcut_instance* inst, char** out);

REQCUT_API void reqcut_solve_options_default(reqcut_solve_options* opts);

/* {"n","m","tau" (string or null above 512 bits),"log_tau","feedback_edges"} */
REQCUT_API reqcut_status reqcut_tau(const reqcut_instance* inst, char** out);
/* {"g","log_sigma","sigma","exact","per_group"} */
REQCUT_API reqcut_status reqcut_sigma(const reqcut_instance* inst, int exact, size_t max_edges, char** out);
/* {"lp_opt","iterations","tree_cuts","triangle_cuts","edge_lengths","scaled_edge_lengths"} */
REQCUT_API reqcut_status reqcut_lp(const reqcut_instance* inst, double tol, size_t max_cuts, char** out);
REQCUT_API reqcut_status reqcut_solve(const reqcut_instance* inst, const reqcut_solve_options* opts, char** out);
/* Same shape as reqcut_solve plus embedding fields. The graph must be
 * two-terminal series-parallel. */
REQCUT_API reqcut_status reqcut_solve_sp(const reqcut_instance* inst, const reqcut_solve_options* opts, char** out);
REQCUT_API reqcut_status reqcut_exact(const reqcut_instance* inst, size_t max_edges, double time_cap_seconds,
                                      char** out);

/* Distortion table (CSV: edge,u,v,mean_stretch,std_error,bound) for an SP
 * expression. */
REQCUT_API reqcut_status reqcut_embed(const char* expression, size_t samples, uint64_t seed, char** out_csv);

/* Generator spec JSON -> canonical instance text; *out_expression receives
 * the SP expression for sp_depth and NULL otherwise (may pass NULL). */
REQCUT_API reqcut_status reqcut_generate(const char* spec_json, char** out_instance, char** out_expression);

/* Runs a bench plan file and writes <stem>.csv/.json/.timing.csv. A NULL or
 * empty stem uses the plan's "output". threads 0 = REQCUT_THREADS or all
 * cores. *any_error is set when some row failed; *out_csv (optional)
 * receives the CSV report. */
REQCUT_API reqcut_status reqcut_bench(const char* plan_path, const char* stem, size_t threads, int* any_error,
                                      char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
