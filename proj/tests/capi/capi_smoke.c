/* Exercises the C interface from a C translation unit. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "graphcalc/graphcalc.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: EXPECT(%s) failed\n", __FILE__,     \
              __LINE__, #cond);                                   \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_graph_roundtrip(void) {
  gc_graph* g = NULL;
  EXPECT(gc_graph_parse("a b 1\nb c 1\n", &g) == GC_OK);
  EXPECT(gc_graph_vertex_count(g) == 3);
  EXPECT(gc_graph_edge_count(g) == 2);
  EXPECT(strcmp(gc_graph_vertex_name(g, 1), "b") == 0);
  EXPECT(gc_graph_degree(g, 1) == 2.0);
  EXPECT(gc_graph_d_constant(g) == 2.0);

  char* text = NULL;
  EXPECT(gc_graph_to_edge_list(g, &text) == GC_OK);
  gc_graph* again = NULL;
  EXPECT(gc_graph_parse(text, &again) == GC_OK);
  EXPECT(gc_graph_edge_count(again) == 2);
  gc_string_free(text);
  gc_graph_free(again);
  gc_graph_free(g);
}

static void test_errors(void) {
  gc_graph* g = NULL;
  EXPECT(gc_graph_parse("a a 1\n", &g) == GC_ERR_SELF_LOOP);
  EXPECT(g == NULL);
  EXPECT(strlen(gc_last_error()) > 0);
  EXPECT(strcmp(gc_status_name(GC_ERR_SELF_LOOP), "SelfLoop") == 0);
  EXPECT(gc_graph_parse("a b 1\nc d 1\n", &g) == GC_ERR_DISCONNECTED);
  EXPECT(gc_graph_parse(NULL, &g) == GC_ERR_NULL_ARGUMENT);

  gc_generate_params p = gc_generate_defaults();
  p.n = 1;
  EXPECT(gc_graph_generate("path", &p, &g) == GC_ERR_BAD_PARAMS);
  p.n = 4;
  EXPECT(gc_graph_generate("hypercube", &p, &g) == GC_ERR_BAD_PARAMS);
}

static void test_checks_and_solvers(void) {
  gc_graph* g = NULL;
  EXPECT(gc_graph_parse("a b 1\nb c 1\n", &g) == GC_OK);

  gc_function* u = NULL;
  EXPECT(gc_function_from_json(g, "{\"a\": 2, \"b\": 1, \"c\": 2}", &u) == GC_OK);
  gc_check_result r;
  char* report = NULL;
  EXPECT(gc_check_gradient_estimate(g, u, 1e-10, &r, &report) == GC_OK);
  EXPECT(r.pass == 1);
  EXPECT(fabs(r.min_slack - 4.0) <= 1e-12);
  EXPECT(strstr(report, "\"check\"") != NULL);
  gc_string_free(report);

  gc_function* q = NULL;
  gc_function* f = NULL;
  gc_function* sol = NULL;
  size_t ends[2] = {0, 2};
  double values[2] = {0.0, 1.0};
  gc_solve_report sr;
  EXPECT(gc_function_constant(g, GC_REAL, 0.0, 0.0, &q) == GC_OK);
  EXPECT(gc_function_constant(g, GC_REAL, 0.0, 0.0, &f) == GC_OK);
  EXPECT(gc_solve_linear_schrodinger(g, q, f, ends, values, 2, 1e-12, &sol, &sr) == GC_OK);
  double mid = 0.0;
  EXPECT(gc_function_value(sol, 1, &mid, NULL) == GC_OK);
  EXPECT(fabs(mid - 0.5) <= 1e-12);

  gc_function* ones = NULL;
  gc_function* gl = NULL;
  EXPECT(gc_function_constant(g, GC_REAL, 1.0, 0.0, &ones) == GC_OK);
  EXPECT(gc_solve_ginzburg_landau(g, ones, NULL, &gl, &sr) == GC_OK);
  EXPECT(sr.converged == 1 && sr.iterations == 0);

  double eig[3];
  EXPECT(gc_spectrum_smallest(g, 3, 1e-8, eig, NULL) == GC_OK);
  EXPECT(fabs(eig[0]) <= 1e-10 && fabs(eig[1] - 1.0) <= 1e-10 && fabs(eig[2] - 2.0) <= 1e-10);

  gc_function_free(gl);
  gc_function_free(ones);
  gc_function_free(sol);
  gc_function_free(f);
  gc_function_free(q);
  gc_function_free(u);
  gc_graph_free(g);
}

static void test_evolution(void) {
  gc_graph* g = NULL;
  EXPECT(gc_graph_parse("a b 1\nb c 1\na c 1\n", &g) == GC_OK);
  gc_random_spec spec = gc_random_defaults();
  spec.kind = GC_COMPLEX;
  gc_function* u0 = NULL;
  EXPECT(gc_function_random(g, &spec, 5, 0, &u0) == GC_OK);

  gc_evolve_config cfg = gc_evolve_defaults();
  cfg.scheme = GC_SCHRODINGER_CN;
  cfg.steps = 100;
  gc_evolve_summary s;
  char* csv = NULL;
  EXPECT(gc_evolve(g, u0, &cfg, NULL, &s, &csv, NULL) == GC_OK);
  EXPECT(s.mass_drift <= 1e-10 && s.energy_drift <= 1e-10);
  EXPECT(strncmp(csv, "step,t,mass,dirichlet_energy,free_energy,max_abs\n", 48) == 0);
  gc_string_free(csv);

  cfg.scheme = GC_HEAT_IMPLICIT;
  EXPECT(gc_evolve(g, u0, &cfg, NULL, &s, NULL, NULL) == GC_ERR_COMPLEX_NOT_ALLOWED);

  gc_function_free(u0);
  gc_graph_free(g);
}

int main(void) {
  test_graph_roundtrip();
  test_errors();
  test_checks_and_solvers();
  test_evolution();
  if (failures != 0) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return EXIT_FAILURE;
  }
  printf("capi_smoke: ok (%s)\n", gc_version());
  return EXIT_SUCCESS;
}
