#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "relaysynth/relaysynth.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void errors(void) {
  rs_instance* inst = NULL;
  EXPECT(rs_instance_from_json("{not json", &inst) == RS_PARSE_ERROR);
  EXPECT(inst == NULL);
  EXPECT(strlen(rs_last_error()) > 0);
  EXPECT(rs_instance_from_json(NULL, &inst) == RS_INVALID_ARGUMENT);

  rs_gen_options g;
  rs_gen_options_init(&g);
  g.family = "nope";
  EXPECT(rs_instance_generate(&g, &inst) == RS_INVALID_ARGUMENT);
  EXPECT(strstr(rs_last_error(), "nope") != NULL);
  EXPECT(strcmp(rs_status_name(RS_LIMIT), "limit") == 0);

  /* square needs r = 2 everywhere, the mst baseline refuses it */
  g.family = "square";
  EXPECT(rs_instance_generate(&g, &inst) == RS_OK);
  EXPECT(strlen(rs_last_error()) == 0);
  rs_solve_options o;
  rs_solve_options_init(&o);
  o.algorithm = RS_ALGO_MST;
  rs_result* r = NULL;
  EXPECT(rs_solve(inst, &o, 0, &r) == RS_INVALID_ARGUMENT);
  EXPECT(r == NULL);
  o.algorithm = (rs_algorithm)42;
  EXPECT(rs_solve(inst, &o, 0, &r) == RS_INVALID_ARGUMENT);
  rs_instance_free(inst);
}

static void round_trip(void) {
  rs_gen_options g;
  rs_gen_options_init(&g);
  g.family = "pentagon";
  rs_instance* inst = NULL;
  EXPECT(rs_instance_generate(&g, &inst) == RS_OK);
  EXPECT(rs_instance_terminal_count(inst) == 5);

  char* text = NULL;
  char* h1 = NULL;
  char* h2 = NULL;
  EXPECT(rs_instance_to_json(inst, &text) == RS_OK);
  rs_instance* again = NULL;
  EXPECT(rs_instance_from_json(text, &again) == RS_OK);
  EXPECT(rs_instance_hash(inst, &h1) == RS_OK);
  EXPECT(rs_instance_hash(again, &h2) == RS_OK);
  EXPECT(strcmp(h1, h2) == 0 && strlen(h1) == 16);

  rs_solve_options o;
  rs_solve_options_init(&o);
  o.algorithm = RS_ALGO_MST;
  o.opt_terminals = 5;
  rs_result* r = NULL;
  EXPECT(rs_solve(inst, &o, 0, &r) == RS_OK);
  EXPECT(rs_result_steiner_count(r) == 4);
  EXPECT(rs_result_feasible(r));
  int opt = -1;
  EXPECT(rs_result_opt(r, &opt) == RS_OK && opt == 1);
  double ts = 0;
  EXPECT(rs_result_tau_star(r, &ts) == RS_NOT_AVAILABLE);

  rs_report* rep = NULL;
  EXPECT(rs_report_new(&rep) == RS_OK);
  EXPECT(rs_report_add(rep, r) == RS_OK);

  o.algorithm = RS_ALGO_SN012;
  o.opt_terminals = 0;
  rs_result* s = NULL;
  EXPECT(rs_solve(again, &o, 1, &s) == RS_OK);
  EXPECT(rs_result_tau_star(s, &ts) == RS_OK && ts >= 0);
  EXPECT(rs_result_opt(s, &opt) == RS_NOT_AVAILABLE);
  EXPECT(rs_report_add(rep, s) == RS_OK);
  EXPECT(rs_report_size(rep) == 2);

  char* j1 = NULL;
  char* j2 = NULL;
  char* csv = NULL;
  char* svg = NULL;
  char* sol = NULL;
  EXPECT(rs_report_json(rep, 0, &j1) == RS_OK);
  EXPECT(rs_report_json(rep, 0, &j2) == RS_OK);
  EXPECT(strcmp(j1, j2) == 0);
  EXPECT(strstr(j1, "\"timing\"") == NULL);
  EXPECT(rs_report_csv(rep, &csv) == RS_OK);
  EXPECT(strncmp(csv, "report_version,", 15) == 0);
  EXPECT(rs_result_svg(r, &svg) == RS_OK && strncmp(svg, "<svg", 4) == 0);
  EXPECT(rs_result_solution_json(r, &sol) == RS_OK && sol[0] == '{');

  rs_string_free(text);
  rs_string_free(h1);
  rs_string_free(h2);
  rs_string_free(j1);
  rs_string_free(j2);
  rs_string_free(csv);
  rs_string_free(svg);
  rs_string_free(sol);
  rs_report_free(rep);
  rs_result_free(r);
  rs_result_free(s);
  rs_instance_free(inst);
  rs_instance_free(again);
}

static void audits(void) {
  rs_audit_options a;
  rs_audit_options_init(&a);
  a.kind = "decomposition";
  a.trials = 20;
  rs_audit_result* res = NULL;
  EXPECT(rs_audit(&a, &res) == RS_OK);
  EXPECT(rs_audit_trials(res) == 20);
  EXPECT(rs_audit_violations(res) == 0);
  char* csv = NULL;
  EXPECT(rs_audit_csv(res, &csv) == RS_OK);
  rs_string_free(csv);
  rs_audit_free(res);

  a.kind = "bogus";
  res = NULL;
  EXPECT(rs_audit(&a, &res) == RS_INVALID_ARGUMENT);

  char* cert = NULL;
  int ok = 0;
  EXPECT(rs_tree_certificate("{\"nodes\":4,\"edges\":[[0,1],[0,2],[0,3]],\"terminals\":[1,2,3]}", 3, 4, &cert, &ok) ==
         RS_OK);
  EXPECT(ok == 1);
  rs_string_free(cert);
  EXPECT(rs_tree_certificate("{\"nodes\":4,\"edges\":[[0,1,2]],\"terminals\":[1]}", 3, 4, &cert, &ok) ==
         RS_PARSE_ERROR);
}

int main(void) {
  errors();
  round_trip();
  audits();
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("c api ok\n");
  return 0;
}
