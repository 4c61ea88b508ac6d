#ifndef GRAPHCALC_GRAPHCALC_H
#define GRAPHCALC_GRAPHCALC_H

/*
 * C interface to the graphcalc core: weighted graphs, vertex functions,
 * certificates, elliptic solvers and evolutions.
 *
 * Conventions:
 *   - Every fallible call returns gc_status; GC_OK is zero.
 *   - On failure gc_last_error() returns a message for the calling thread,
 *     valid until the next call on that thread.
 *   - Strings returned through char** are owned by the caller and released
 *     with gc_string_free(). Output pointers may be NULL when unwanted.
 *   - Handles are immutable after creation and may be shared across threads.
 *   - Vertices are addressed by index in lexicographic order of their names.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GRAPHCALC_BUILDING)
#    define GC_API __declspec(dllexport)
#  else
#    define GC_API __declspec(dllimport)
#  endif
#else
#  define GC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gc_status {
  GC_OK = 0,
  GC_ERR_SELF_LOOP,
  GC_ERR_DUPLICATE_EDGE,
  GC_ERR_NON_POSITIVE_WEIGHT,
  GC_ERR_DISCONNECTED,
  GC_ERR_EMPTY_GRAPH,
  GC_ERR_DISCONNECTED_DRAW,
  GC_ERR_BAD_PARAMS,
  GC_ERR_DOMAIN_MISMATCH,
  GC_ERR_NON_FINITE,
  GC_ERR_COMPLEX_NOT_ALLOWED,
  GC_ERR_PARSE,
  GC_ERR_IO,
  GC_ERR_SINGULAR_SYSTEM,
  GC_ERR_INCOMPATIBLE_RHS,
  GC_ERR_SINGULAR_JACOBIAN,
  GC_ERR_NOT_A_SOLUTION,
  GC_ERR_NEGATIVE_INPUT,
  GC_ERR_BAD_START,
  GC_ERR_LINEAR_SOLVE_FAILURE,
  GC_ERR_CONVERGENCE_FAILURE,
  GC_ERR_INVALID_POTENTIAL,
  GC_ERR_NULL_ARGUMENT,
  GC_ERR_INTERNAL
} gc_status;

typedef struct gc_graph gc_graph;
typedef struct gc_function gc_function;

GC_API const char* gc_version(void);
GC_API const char* gc_status_name(gc_status status);
GC_API const char* gc_last_error(void);
GC_API void gc_string_free(char* s);

/* ---- graphs ---- */

typedef struct gc_generate_params {
  size_t n;
  size_t rows;
  size_t cols;
  double p;
  double weight;
  uint64_t seed;
  /* Per-edge weights uniform on [weight_lo, weight_hi] when nonzero. */
  int random_weights;
  double weight_lo;
  double weight_hi;
} gc_generate_params;

/* n = 0, p = 0.5, weight = 1, everything else zero. */
GC_API gc_generate_params gc_generate_defaults(void);

GC_API gc_status gc_graph_load(const char* path, gc_graph** out);
GC_API gc_status gc_graph_parse(const char* text, gc_graph** out);
/* family: path, cycle, complete, star, grid2d (alias grid) or gnp. */
GC_API gc_status gc_graph_generate(const char* family, const gc_generate_params* params, gc_graph** out);
GC_API void gc_graph_free(gc_graph* g);

GC_API size_t gc_graph_vertex_count(const gc_graph* g);
GC_API size_t gc_graph_edge_count(const gc_graph* g);
/* Borrowed pointer, valid while g lives. NULL for an out-of-range index. */
GC_API const char* gc_graph_vertex_name(const gc_graph* g, size_t v);
GC_API gc_status gc_graph_vertex_index(const gc_graph* g, const char* name, size_t* out);
GC_API double gc_graph_degree(const gc_graph* g, size_t v);
GC_API double gc_graph_d_constant(const gc_graph* g);
GC_API gc_status gc_graph_to_edge_list(const gc_graph* g, char** out);

/* ---- vertex functions ---- */

typedef enum gc_scalar_kind { GC_REAL = 0, GC_COMPLEX = 1 } gc_scalar_kind;

typedef struct gc_random_spec {
  gc_scalar_kind kind;
  double lo;
  double hi;
  double radius;
  double zero_probability;
} gc_random_spec;

/* Real, uniform on [-1, 1], radius 1, no zeros. */
GC_API gc_random_spec gc_random_defaults(void);

GC_API gc_status gc_function_from_json(const gc_graph* g, const char* json, gc_function** out);
GC_API gc_status gc_function_load(const gc_graph* g, const char* path, gc_function** out);
/* Draws from the stream identified by (seed, stream). */
GC_API gc_status gc_function_random(const gc_graph* g, const gc_random_spec* spec, uint64_t seed, uint64_t stream,
                                    gc_function** out);
GC_API gc_status gc_function_constant(const gc_graph* g, gc_scalar_kind kind, double re, double im,
                                      gc_function** out);
/* im may be NULL for real functions. */
GC_API gc_status gc_function_from_values(const gc_graph* g, gc_scalar_kind kind, const double* re, const double* im,
                                         gc_function** out);
GC_API void gc_function_free(gc_function* u);

GC_API size_t gc_function_size(const gc_function* u);
GC_API gc_scalar_kind gc_function_kind(const gc_function* u);
GC_API gc_status gc_function_value(const gc_function* u, size_t v, double* re, double* im);
GC_API double gc_function_max_abs(const gc_function* u);
GC_API gc_status gc_function_to_json(const gc_graph* g, const gc_function* u, char** out);

/* ---- calculus ---- */

GC_API gc_status gc_laplacian(const gc_graph* g, const gc_function* u, gc_function** out);
GC_API gc_status gc_grad_sq(const gc_graph* g, const gc_function* u, gc_function** out);
GC_API gc_status gc_mass(const gc_graph* g, const gc_function* u, double* out);
GC_API gc_status gc_dirichlet_energy(const gc_graph* g, const gc_function* u, double* out);
GC_API gc_status gc_free_energy(const gc_graph* g, const gc_function* u, double* out);

/* ---- certificates ---- */

typedef struct gc_check_result {
  int pass;
  /* +inf when no site was checked. */
  double min_slack;
} gc_check_result;

/* report receives the certificate as JSON. */
GC_API gc_status gc_check_kato1(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                                char** report);
GC_API gc_status gc_check_product_rule(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                                       char** report);
/* Both inequalities; result holds the combined verdict, report is
 * {"abs": ..., "positive_part": ...}. */
GC_API gc_status gc_check_kato2(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                                char** report);
GC_API gc_status gc_check_gradient_estimate(const gc_graph* g, const gc_function* u, double tol,
                                            gc_check_result* result, char** report);
/* q must be real and nonnegative. exempt lists Dirichlet vertices. */
GC_API gc_status gc_check_subsolution(const gc_graph* g, const gc_function* u, const gc_function* q, double tol,
                                      const size_t* exempt, size_t exempt_count, gc_check_result* result,
                                      char** report);
GC_API gc_status gc_check_liouville_premises(const gc_graph* g, const gc_function* u, double p, double bound,
                                             double tol, gc_check_result* result, char** report);

typedef enum gc_max_principle {
  GC_MP_NOT_SUBHARMONIC = 0,
  GC_MP_CONSTANT_CONFIRMED = 1,
  GC_MP_VIOLATION = 2
} gc_max_principle;

GC_API gc_status gc_check_strong_max_principle(const gc_graph* g, const gc_function* u, double tol,
                                               gc_max_principle* kind, char** report);

/* ---- elliptic solvers ---- */

typedef struct gc_solve_report {
  int converged;
  size_t iterations;
  double residual;
  size_t damping_events;
} gc_solve_report;

/* config_json: {"tol", "max_iters", "damping": "line_search"|"none", "seed"};
 * NULL or missing keys keep the defaults. An unconverged run still returns
 * GC_OK with converged = 0. */
GC_API gc_status gc_solve_ginzburg_landau(const gc_graph* g, const gc_function* init, const char* config_json,
                                          gc_function** out, gc_solve_report* report);
/* Throws GC_ERR_NOT_A_SOLUTION when the residual exceeds tol. */
GC_API gc_status gc_verify_gl_bound(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                                    char** report);

/* -Δu + Qu = f off the Dirichlet set, u = dirichlet_values on it. */
GC_API gc_status gc_solve_linear_schrodinger(const gc_graph* g, const gc_function* q, const gc_function* f,
                                             const size_t* dirichlet_vertices, const double* dirichlet_values,
                                             size_t dirichlet_count, double tol, gc_function** out,
                                             gc_solve_report* report);

/* JSON array of {eigenvalue, eigenvector} for the k smallest eigenpairs of
 * -Δ. eigenvalues (length k) may be NULL. */
GC_API gc_status gc_spectrum_smallest(const gc_graph* g, size_t k, double tol, double* eigenvalues, char** report);

typedef struct gc_liouville_config {
  double p;
  double bound;
  size_t restarts;
  size_t steps;
  uint64_t seed;
  double premise_tol;
  double nonzero_threshold;
} gc_liouville_config;

/* p = 1, bound = 1, 10000 restarts, 1000 steps, seed 0, premise_tol 0,
 * threshold 1e-6. */
GC_API gc_liouville_config gc_liouville_defaults(void);

typedef struct gc_liouville_result {
  size_t restarts_run;
  size_t steps_run;
  size_t feasible_points;
  double largest_feasible;
  int found_counterexample;
} gc_liouville_result;

/* counterexample may be NULL; otherwise it receives a handle or NULL. */
GC_API gc_status gc_liouville_search(const gc_graph* g, const gc_liouville_config* cfg, gc_liouville_result* result,
                                     gc_function** counterexample);
/* Number of feasible points of the grid {0, h, ..., bound}^n. */
GC_API gc_status gc_liouville_grid(const gc_graph* g, double p, double bound, double resolution, double tol,
                                   size_t* feasible, double* largest_feasible);

typedef enum gc_chain_outcome {
  GC_CHAIN_ESCAPED_BOUND = 0,
  GC_CHAIN_REVISIT_CONTRADICTION = 1,
  GC_CHAIN_PREMISE_VIOLATION = 2,
  GC_CHAIN_STEP_BUDGET_EXHAUSTED = 3
} gc_chain_outcome;

GC_API gc_status gc_keller_osserman_chain(const gc_graph* g, const gc_function* u, double p, double bound, size_t x0,
                                          size_t max_steps, double tol, gc_chain_outcome* outcome, char** report);

/* ---- evolution ---- */

typedef enum gc_scheme { GC_HEAT_IMPLICIT = 0, GC_SCHRODINGER_CN = 1, GC_GP_STRANG = 2 } gc_scheme;

typedef struct gc_evolve_config {
  double dt;
  size_t steps;
  gc_scheme scheme;
  double solve_tol;
  size_t stride;
} gc_evolve_config;

/* dt = 0.01, 1 step, heat, solve_tol 1e-12, stride 1. */
GC_API gc_evolve_config gc_evolve_defaults(void);

typedef struct gc_evolve_summary {
  /* max |m_n - m_0| / m_0 over the recorded rows; 0 when m_0 = 0. */
  double mass_drift;
  /* max |E_n - E_0| / max(1, E_0) over the recorded rows. */
  double energy_drift;
  /* |F_final - F_0|. */
  double free_energy_drift;
  /* Heat only: monotone envelope certificate; 1 for the other flows. */
  int parabolic_pass;
  double parabolic_min_slack;
} gc_evolve_summary;

/* trace_csv receives the trace; parabolic_report the heat envelope
 * certificate as JSON ("null" for the other flows). */
GC_API gc_status gc_evolve(const gc_graph* g, const gc_function* u0, const gc_evolve_config* cfg, gc_function** out,
                           gc_evolve_summary* summary, char** trace_csv, char** parabolic_report);

#ifdef __cplusplus
}
#endif

#endif /* GRAPHCALC_GRAPHCALC_H */
