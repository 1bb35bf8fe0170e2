#include "relaysynth/relaysynth.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "relaysynth/audit.hpp"
#include "relaysynth/generate.hpp"
#include "relaysynth/instance_io.hpp"
#include "relaysynth/report.hpp"
#include "relaysynth/tree_decomposition.hpp"

struct rs_instance {
  relaysynth::Instance inner;
};

struct rs_result {
  relaysynth::Instance instance;
  relaysynth::SolveOutcome outcome;
};

struct rs_report {
  std::vector<relaysynth::RunRow> rows;
};

struct rs_audit_result {
  relaysynth::AuditSummary summary;
};

namespace {

thread_local std::string last_error;

rs_status status_of(relaysynth::ErrorCode c) {
  using relaysynth::ErrorCode;
  switch (c) {
    case ErrorCode::invalid_argument: return RS_INVALID_ARGUMENT;
    case ErrorCode::parse: return RS_PARSE_ERROR;
    case ErrorCode::limit: return RS_LIMIT;
    case ErrorCode::infeasible: return RS_INFEASIBLE;
    case ErrorCode::internal: return RS_INTERNAL;
  }
  return RS_INTERNAL;
}

rs_status set_error(rs_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <class F>
rs_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const relaysynth::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(RS_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RS_INTERNAL, e.what());
  }
}

rs_status copy_out(const std::string& s, char** out) {
  if (!out) return set_error(RS_INVALID_ARGUMENT, "null output pointer");
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) return set_error(RS_INTERNAL, "out of memory");
  std::memcpy(p, s.c_str(), s.size() + 1);
  *out = p;
  return RS_OK;
}

#define RS_REQUIRE(cond, msg) \
  if (!(cond)) return set_error(RS_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

void rs_string_free(char* s) { std::free(s); }

const char* rs_last_error(void) { return last_error.c_str(); }

const char* rs_status_name(rs_status s) {
  switch (s) {
    case RS_OK: return "ok";
    case RS_INVALID_ARGUMENT: return "invalid_argument";
    case RS_PARSE_ERROR: return "parse_error";
    case RS_LIMIT: return "limit";
    case RS_INFEASIBLE: return "infeasible";
    case RS_INTERNAL: return "internal";
    case RS_NOT_AVAILABLE: return "not_available";
  }
  return "unknown";
}

const char* rs_version(void) { return "0.1.0"; }

void rs_gen_options_init(rs_gen_options* o) {
  if (!o) return;
  relaysynth::GeneratorConfig d;
  o->family = "uniform-box";
  o->n = d.n;
  o->box = d.box;
  o->seed = d.seed;
  o->demands = "mixed";
  o->unstable_probability = d.unstable_probability;
}

rs_status rs_instance_from_json(const char* text, rs_instance** out) {
  return guarded([&] {
    RS_REQUIRE(text && out, "rs_instance_from_json: null argument");
    *out = new rs_instance{relaysynth::parse_instance(text)};
    return RS_OK;
  });
}

rs_status rs_instance_generate(const rs_gen_options* o, rs_instance** out) {
  return guarded([&] {
    RS_REQUIRE(o && out, "rs_instance_generate: null argument");
    relaysynth::GeneratorConfig c;
    c.family = o->family ? o->family : "uniform-box";
    c.n = o->n;
    c.box = o->box;
    c.seed = o->seed;
    c.demands = relaysynth::parse_demand_mode(o->demands ? o->demands : "mixed");
    c.unstable_probability = o->unstable_probability;
    *out = new rs_instance{relaysynth::generate(c)};
    return RS_OK;
  });
}

rs_status rs_instance_to_json(const rs_instance* i, char** out) {
  return guarded([&] {
    RS_REQUIRE(i, "rs_instance_to_json: null instance");
    return copy_out(relaysynth::serialize_instance(i->inner), out);
  });
}

rs_status rs_instance_hash(const rs_instance* i, char** out) {
  return guarded([&] {
    RS_REQUIRE(i, "rs_instance_hash: null instance");
    return copy_out(relaysynth::instance_hash(i->inner), out);
  });
}

size_t rs_instance_terminal_count(const rs_instance* i) { return i ? i->inner.size() : 0; }

void rs_instance_free(rs_instance* i) { delete i; }

void rs_solve_options_init(rs_solve_options* o) {
  if (!o) return;
  relaysynth::SolveConfig d;
  o->algorithm = RS_ALGO_SN012;
  o->k = d.k;
  o->backend = RS_BACKEND_EXACT;
  o->time_limit_seconds = d.exact.time_limit_seconds;
  o->opt_terminals = d.opt_terminals;
  o->opt_max_steiner = d.opt_max_steiner;
}

rs_status rs_solve(const rs_instance* i, const rs_solve_options* o, size_t index, rs_result** out) {
  return guarded([&] {
    RS_REQUIRE(i && o && out, "rs_solve: null argument");
    relaysynth::SolveConfig c;
    switch (o->algorithm) {
      case RS_ALGO_MST: c.algorithm = relaysynth::Algorithm::mst; break;
      case RS_ALGO_SCHEME: c.algorithm = relaysynth::Algorithm::scheme; break;
      case RS_ALGO_SN012: c.algorithm = relaysynth::Algorithm::sn012; break;
      default: return set_error(RS_INVALID_ARGUMENT, "rs_solve: unknown algorithm");
    }
    switch (o->backend) {
      case RS_BACKEND_EXACT: c.backend = relaysynth::Backend::exact; break;
      case RS_BACKEND_PD: c.backend = relaysynth::Backend::primal_dual; break;
      default: return set_error(RS_INVALID_ARGUMENT, "rs_solve: unknown backend");
    }
    c.k = o->k;
    c.exact.time_limit_seconds = o->time_limit_seconds;
    c.opt_terminals = o->opt_terminals;
    c.opt_max_steiner = o->opt_max_steiner;
    auto outcome = relaysynth::solve(i->inner, c, index);
    *out = new rs_result{i->inner, std::move(outcome)};
    return RS_OK;
  });
}

size_t rs_result_steiner_count(const rs_result* r) { return r ? r->outcome.row.steiner : 0; }
int rs_result_feasible(const rs_result* r) { return r && r->outcome.row.feasible ? 1 : 0; }
int rs_result_certified(const rs_result* r) { return r && r->outcome.row.certified ? 1 : 0; }
double rs_result_wall_ms(const rs_result* r) { return r ? r->outcome.row.wall_ms : 0.0; }

rs_status rs_result_tau_star(const rs_result* r, double* out) {
  last_error.clear();
  RS_REQUIRE(r && out, "rs_result_tau_star: null argument");
  if (!r->outcome.row.tau_star) return set_error(RS_NOT_AVAILABLE, "tau* was not computed for this algorithm");
  *out = r->outcome.row.tau_star->get_d();
  return RS_OK;
}

rs_status rs_result_opt(const rs_result* r, int* out) {
  last_error.clear();
  RS_REQUIRE(r && out, "rs_result_opt: null argument");
  if (!r->outcome.row.opt) return set_error(RS_NOT_AVAILABLE, "optimum was not computed");
  *out = *r->outcome.row.opt;
  return RS_OK;
}

rs_status rs_result_solution_json(const rs_result* r, char** out) {
  return guarded([&] {
    RS_REQUIRE(r, "rs_result_solution_json: null result");
    return copy_out(relaysynth::solution_json(r->instance, r->outcome.graph), out);
  });
}

rs_status rs_result_svg(const rs_result* r, char** out) {
  return guarded([&] {
    RS_REQUIRE(r, "rs_result_svg: null result");
    return copy_out(relaysynth::solution_svg(r->instance, r->outcome.graph), out);
  });
}

void rs_result_free(rs_result* r) { delete r; }

rs_status rs_report_new(rs_report** out) {
  return guarded([&] {
    RS_REQUIRE(out, "rs_report_new: null argument");
    *out = new rs_report{};
    return RS_OK;
  });
}

rs_status rs_report_add(rs_report* rep, const rs_result* r) {
  return guarded([&] {
    RS_REQUIRE(rep && r, "rs_report_add: null argument");
    rep->rows.push_back(r->outcome.row);
    return RS_OK;
  });
}

size_t rs_report_size(const rs_report* rep) { return rep ? rep->rows.size() : 0; }

rs_status rs_report_json(const rs_report* rep, int with_timing, char** out) {
  return guarded([&] {
    RS_REQUIRE(rep, "rs_report_json: null report");
    return copy_out(relaysynth::report_json(rep->rows, with_timing != 0), out);
  });
}

rs_status rs_report_csv(const rs_report* rep, char** out) {
  return guarded([&] {
    RS_REQUIRE(rep, "rs_report_csv: null report");
    return copy_out(relaysynth::report_csv(rep->rows), out);
  });
}

void rs_report_free(rs_report* rep) { delete rep; }

void rs_audit_options_init(rs_audit_options* o) {
  if (!o) return;
  relaysynth::AuditConfig d;
  o->kind = "overlap";
  o->trials = d.trials;
  o->seed = d.seed;
  o->n = d.n;
  o->box = d.box;
  o->k = d.k;
  o->delta = d.delta;
  o->tree_nodes = d.tree_nodes;
}

rs_status rs_audit(const rs_audit_options* o, rs_audit_result** out) {
  return guarded([&] {
    RS_REQUIRE(o && out && o->kind, "rs_audit: null argument");
    relaysynth::AuditConfig c;
    c.kind = o->kind;
    c.trials = o->trials;
    c.seed = o->seed;
    c.n = o->n;
    c.box = o->box;
    c.k = o->k;
    c.delta = o->delta;
    c.tree_nodes = o->tree_nodes;
    *out = new rs_audit_result{relaysynth::run_audit(c)};
    return RS_OK;
  });
}

int rs_audit_trials(const rs_audit_result* a) { return a ? a->summary.trials : 0; }
int rs_audit_violations(const rs_audit_result* a) { return a ? a->summary.violations : 0; }

rs_status rs_audit_json(const rs_audit_result* a, int with_timing, char** out) {
  return guarded([&] {
    RS_REQUIRE(a, "rs_audit_json: null audit");
    return copy_out(relaysynth::audit_json(a->summary, with_timing != 0), out);
  });
}

rs_status rs_audit_csv(const rs_audit_result* a, char** out) {
  return guarded([&] {
    RS_REQUIRE(a, "rs_audit_csv: null audit");
    return copy_out(relaysynth::audit_csv(a->summary), out);
  });
}

void rs_audit_free(rs_audit_result* a) { delete a; }

rs_status rs_tree_certificate(const char* tree_json, int delta, int k, char** out, int* ok) {
  return guarded([&] {
    RS_REQUIRE(tree_json && out && ok, "rs_tree_certificate: null argument");
    const auto j = nlohmann::json::parse(tree_json);
    relaysynth::CostedTree tree;
    tree.node_count = j.at("nodes").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) return set_error(RS_PARSE_ERROR, "tree edges must be [u, v] pairs");
      tree.edges.push_back({e[0].get<int>(), e[1].get<int>(), 1});
    }
    const auto terminals = j.at("terminals").get<std::vector<int>>();
    const auto cert = relaysynth::alpha_k_certificate(tree, terminals, delta, k);
    *ok = cert.ok() ? 1 : 0;
    return copy_out(relaysynth::certificate_json(cert), out);
  });
}

}  // extern "C"
