#ifndef RELAYSYNTH_H
#define RELAYSYNTH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RS_API __declspec(dllexport)
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
  RS_OK = 0,
  RS_INVALID_ARGUMENT = 1,
  RS_PARSE_ERROR = 2,
  RS_LIMIT = 3,
  RS_INFEASIBLE = 4,
  RS_INTERNAL = 5,
  RS_NOT_AVAILABLE = 6 /* optional value was not computed */
} rs_status;

typedef enum rs_algorithm { RS_ALGO_MST = 0, RS_ALGO_SCHEME = 1, RS_ALGO_SN012 = 2 } rs_algorithm;
typedef enum rs_backend { RS_BACKEND_EXACT = 0, RS_BACKEND_PD = 1 } rs_backend;

typedef struct rs_instance rs_instance;
typedef struct rs_result rs_result;
typedef struct rs_report rs_report;
typedef struct rs_audit_result rs_audit_result;

/* Strings returned through char** are owned by the caller: release them
   with rs_string_free. */
RS_API void rs_string_free(char* s);
/* Message of the last failed call on this thread, "" if none. */
RS_API const char* rs_last_error(void);
RS_API const char* rs_status_name(rs_status status);
RS_API const char* rs_version(void);

typedef struct rs_gen_options {
  const char* family; /* uniform-box | pentagon | square | collinear | star | triangle */
  int n;
  double box;
  uint64_t seed;
  const char* demands; /* tree | two | mixed */
  double unstable_probability;
} rs_gen_options;

RS_API void rs_gen_options_init(rs_gen_options* options);

RS_API rs_status rs_instance_from_json(const char* text, rs_instance** out);
RS_API rs_status rs_instance_generate(const rs_gen_options* options, rs_instance** out);
RS_API rs_status rs_instance_to_json(const rs_instance* instance, char** out);
RS_API rs_status rs_instance_hash(const rs_instance* instance, char** out);
RS_API size_t rs_instance_terminal_count(const rs_instance* instance);
RS_API void rs_instance_free(rs_instance* instance);

typedef struct rs_solve_options {
  rs_algorithm algorithm;
  int k;          /* scheme rank */
  rs_backend backend;
  double time_limit_seconds; /* exact backend */
  size_t opt_terminals;      /* brute-force optimum up to this many terminals, 0 = off */
  int opt_max_steiner;
} rs_solve_options;

RS_API void rs_solve_options_init(rs_solve_options* options);

/* `index` is the row number used in reports. */
RS_API rs_status rs_solve(const rs_instance* instance, const rs_solve_options* options, size_t index,
                          rs_result** out);
RS_API size_t rs_result_steiner_count(const rs_result* result);
RS_API int rs_result_feasible(const rs_result* result);
RS_API int rs_result_certified(const rs_result* result);
RS_API rs_status rs_result_tau_star(const rs_result* result, double* out);
RS_API rs_status rs_result_opt(const rs_result* result, int* out);
RS_API double rs_result_wall_ms(const rs_result* result);
RS_API rs_status rs_result_solution_json(const rs_result* result, char** out);
RS_API rs_status rs_result_svg(const rs_result* result, char** out);
RS_API void rs_result_free(rs_result* result);

RS_API rs_status rs_report_new(rs_report** out);
RS_API rs_status rs_report_add(rs_report* report, const rs_result* result);
RS_API size_t rs_report_size(const rs_report* report);
RS_API rs_status rs_report_json(const rs_report* report, int with_timing, char** out);
RS_API rs_status rs_report_csv(const rs_report* report, char** out);
RS_API void rs_report_free(rs_report* report);

typedef struct rs_audit_options {
  const char* kind; /* log-bound | overlap | certificate | decomposition | witness | degree-reduce */
  int trials;
  uint64_t seed;
  int n;
  double box;
  int k; /* certificate; 0 alternates 8 and 16 */
  int delta;
  int tree_nodes;
} rs_audit_options;

RS_API void rs_audit_options_init(rs_audit_options* options);
RS_API rs_status rs_audit(const rs_audit_options* options, rs_audit_result** out);
RS_API int rs_audit_trials(const rs_audit_result* audit);
RS_API int rs_audit_violations(const rs_audit_result* audit);
RS_API rs_status rs_audit_json(const rs_audit_result* audit, int with_timing, char** out);
RS_API rs_status rs_audit_csv(const rs_audit_result* audit, char** out);
RS_API void rs_audit_free(rs_audit_result* audit);

/* Rank-k hypergraph certificate for one tree given as
   {"nodes": n, "edges": [[u, v], ...], "terminals": [...]}.
   *ok is set to 1 when every certificate check holds. */
RS_API rs_status rs_tree_certificate(const char* tree_json, int delta, int k, char** out, int* ok);

#ifdef __cplusplus
}
#endif

#endif
