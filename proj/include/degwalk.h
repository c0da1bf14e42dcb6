/* C interface to the degwalk library: degree-sequence sampling, graph
 * decomposition and random-walk analysis. All functions returning dw_status
 * set a thread-local message readable through dw_last_error() on failure.
 * Strings handed out through char** are owned by the caller and must be
 * released with dw_string_free(). */
#ifndef DEGWALK_H
#define DEGWALK_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dw_status {
  DW_OK = 0,
  DW_ERR_INVALID_ARGUMENT = 1, /* bad parameter or malformed structure */
  DW_ERR_PARSE = 2,            /* unreadable textual input */
  DW_ERR_INFEASIBLE = 3,       /* degree sequence admits no simple graph */
  DW_ERR_EXHAUSTED = 4,        /* rejection sampling hit its retry limit */
  DW_ERR_TOO_LARGE = 5,        /* instance beyond an exact-computation limit */
  DW_ERR_IO = 6,               /* file could not be opened or written */
  DW_ERR_INTERNAL = 7
} dw_status;

typedef struct dw_degseq dw_degseq;
typedef struct dw_graph dw_graph;

/* Message for the most recent failure on this thread; never NULL. */
const char* dw_last_error(void);
void dw_string_free(char* s);

/* --- degree sequences ------------------------------------------------- */

/* Accepts a JSON array of integers or integers separated by whitespace
 * and commas. Zero entries are dropped; entries are kept sorted. */
dw_status dw_degseq_parse(const char* text, dw_degseq** out);
/* Named family; params_json is a JSON object of numeric parameters,
 * e.g. dw_degseq_family("regular", "{\"n\": 64, \"d\": 3}", &d). */
dw_status dw_degseq_family(const char* name, const char* params_json,
                           dw_degseq** out);
void dw_degseq_free(dw_degseq* d);

int64_t dw_degseq_n(const dw_degseq* d);
int64_t dw_degseq_m(const dw_degseq* d);
/* 1 when some simple graph realizes the sequence, else 0. */
int dw_degseq_feasible(const dw_degseq* d);
dw_status dw_degseq_text(const dw_degseq* d, char** out);
/* Counting statistics and the criticality classification at thresholds
 * rho and mu (pass values <= 0 for the defaults 0.05). */
dw_status dw_degseq_stats_json(const dw_degseq* d, double rho, double mu,
                               char** out);

/* --- graphs ------------------------------------------------------------ */

/* One edge per line, "u v" with 1-based labels; blank lines and lines
 * starting with '#' are skipped. Loops and parallel edges are allowed. */
dw_status dw_graph_from_text(const char* text, dw_graph** out);
void dw_graph_free(dw_graph* g);

int64_t dw_graph_n(const dw_graph* g);
int64_t dw_graph_m(const dw_graph* g);
int dw_graph_simple(const dw_graph* g);
dw_status dw_graph_text(const dw_graph* g, char** out);
/* Component counts, degree extremes, cycle/multicycle component counts. */
dw_status dw_graph_summary_json(const dw_graph* g, char** out);

/* --- sampling ----------------------------------------------------------- */

typedef struct dw_sample_opts {
  uint64_t seed;
  int mode;          /* 0 auto, 1 rejection, 2 switching chain */
  int64_t max_tries; /* <= 0 selects the default 5000 */
  int64_t burn_in;   /* < 0 selects ceil(10 m ln(m+1)) */
} dw_sample_opts;

/* Uniform simple graph with the prescribed degrees. opts may be NULL for
 * seed 0 and defaults; info_json (optional) receives the method record. */
dw_status dw_sample(const dw_degseq* d, const dw_sample_opts* opts,
                    dw_graph** out, char** info_json);

/* --- cycle-union counts -------------------------------------------------- */

/* Number of graphs on t labelled vertices whose components are all cycles.
 * decimal (optional) receives the exact value when available; log_value
 * (optional) always receives the natural log (-inf for a zero count). */
dw_status dw_cycle_count(int64_t t, char** decimal, double* log_value);
/* Ratio of consecutive counts, C_{t+1} / C_t. */
dw_status dw_cycle_ratio(int64_t t, double* out);

/* --- coloured reduction and kernel --------------------------------------- */

/* Deletes cycle components and contracts maximal degree-2 paths of a simple
 * graph. The JSON form round-trips through dw_reconstruct. */
dw_status dw_reduce_json(const dw_graph* g, char** out);
/* Human-readable listing: cycles, then one reduced edge per line. */
dw_status dw_reduce_text(const dw_graph* g, char** out);
dw_status dw_reconstruct(const char* reduction_json, dw_graph** out);

/* Core (iterated removal of degree <= 1), kernel (homeomorphic reduction of
 * the core), bare core cycles, hanging trees and acyclic components. */
dw_status dw_kernel_json(const dw_graph* g, char** out);
/* Components carrying at least two independent cycles; -1 on error. */
int64_t dw_multicycle_components(const dw_graph* g);

/* --- lazy random walks ---------------------------------------------------- */

typedef struct dw_walk_opts {
  uint64_t seed;
  int64_t exact_mixing_cutoff;   /* <= 0 selects 400 vertices */
  int64_t starts;                /* <= 0 selects 8 */
  int64_t exact_cond_cutoff;     /* <= 0 selects 16 vertices */
  int64_t exact_diameter_cutoff; /* <= 0 selects 4096 vertices */
  int profile; /* nonzero: conductance profile and derived bounds */
} dw_walk_opts;

/* Per-component diameter, lazy-walk mixing time, conductance profile at
 * x = 2, 4, 8, ... and the diameter/mixing bounds they imply. */
dw_status dw_walk_json(const dw_graph* g, const dw_walk_opts* opts, char** out);
dw_status dw_walk_csv(const dw_graph* g, const dw_walk_opts* opts, char** out);

/* --- experiments ----------------------------------------------------------- */

/* config_json: {"family": ..., "grid": {...}, "replicates": ..., "seed": ...,
 * "measurements": [...], ...}. Returns the full result table as CSV. */
dw_status dw_experiment_run(const char* config_json, char** csv_out);
/* Streams rows to path as they complete. */
dw_status dw_experiment_run_to_file(const char* config_json, const char* path);
/* Named statistical verdicts over a fresh run of the configured experiment:
 * cycle_mass, colour_distribution, green_law, scaling, kernel_uniqueness,
 * star_separation. Returns a JSON verdict with an overall "pass". */
dw_status dw_experiment_check(const char* name, const char* config_json,
                              char** verdict_json);

#ifdef __cplusplus
}
#endif

#endif /* DEGWALK_H */
