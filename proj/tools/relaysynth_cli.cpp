#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relaysynth/relaysynth.h"

namespace fs = std::filesystem;

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(rs_status s, const std::string& what) {
  if (s != RS_OK) throw Failure{1, what + ": " + rs_status_name(s) + ": " + rs_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  rs_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{1, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{1, "cannot write " + path.string()};
}

using InstancePtr = std::unique_ptr<rs_instance, decltype(&rs_instance_free)>;
using ResultPtr = std::unique_ptr<rs_result, decltype(&rs_result_free)>;
using ReportPtr = std::unique_ptr<rs_report, decltype(&rs_report_free)>;
using AuditPtr = std::unique_ptr<rs_audit_result, decltype(&rs_audit_free)>;

struct GenArgs {
  std::string family = "uniform-box";
  int n = 8;
  double box = 4.0;
  std::uint64_t seed = 1;
  std::string demands = "mixed";
  double unstable = 0.3;
};

void add_gen_options(CLI::App* app, GenArgs& g) {
  app->add_option("--family", g.family, "uniform-box | pentagon | square | collinear | star | triangle")
      ->capture_default_str();
  app->add_option("--n", g.n, "number of terminals")->capture_default_str();
  app->add_option("--box", g.box, "side of the sampling box")->capture_default_str();
  app->add_option("--seed", g.seed, "generator seed")->capture_default_str();
  app->add_option("--demands", g.demands, "tree | two | mixed")->capture_default_str();
  app->add_option("--unstable-prob", g.unstable, "probability that a terminal is unstable")->capture_default_str();
}

InstancePtr generate(const GenArgs& g, std::uint64_t seed) {
  rs_gen_options o;
  rs_gen_options_init(&o);
  o.family = g.family.c_str();
  o.n = g.n;
  o.box = g.box;
  o.seed = seed;
  o.demands = g.demands.c_str();
  o.unstable_probability = g.unstable;
  rs_instance* raw = nullptr;
  check(rs_instance_generate(&o, &raw), "generate");
  return InstancePtr(raw, rs_instance_free);
}

InstancePtr load(const std::string& path) {
  rs_instance* raw = nullptr;
  check(rs_instance_from_json(read_file(path).c_str(), &raw), path);
  return InstancePtr(raw, rs_instance_free);
}

struct SolveArgs {
  std::string algo = "sn012";
  int k = 3;
  std::string backend = "exact";
  double time_limit = 120;
  std::size_t opt_terminals = 0;
};

void add_solve_options(CLI::App* app, SolveArgs& s) {
  app->add_option("--algo", s.algo, "mst | scheme | sn012")
      ->check(CLI::IsMember({"mst", "scheme", "sn012"}))
      ->capture_default_str();
  app->add_option("--k", s.k, "rank of the component hypergraph (scheme)")->capture_default_str();
  app->add_option("--backend", s.backend, "exact | pd (sn012)")
      ->check(CLI::IsMember({"exact", "pd"}))
      ->capture_default_str();
  app->add_option("--time-limit", s.time_limit, "seconds for the exact backend")->capture_default_str();
  app->add_option("--opt", s.opt_terminals, "brute-force optimum up to this many terminals (0 = off)")
      ->capture_default_str();
}

rs_solve_options solve_options(const SolveArgs& s) {
  rs_solve_options o;
  rs_solve_options_init(&o);
  o.algorithm = s.algo == "mst" ? RS_ALGO_MST : (s.algo == "scheme" ? RS_ALGO_SCHEME : RS_ALGO_SN012);
  o.k = s.k;
  o.backend = s.backend == "pd" ? RS_BACKEND_PD : RS_BACKEND_EXACT;
  o.time_limit_seconds = s.time_limit;
  o.opt_terminals = s.opt_terminals;
  return o;
}

ResultPtr run_solve(const rs_instance* inst, const rs_solve_options& o, std::size_t index) {
  rs_result* raw = nullptr;
  check(rs_solve(inst, &o, index, &raw), "solve");
  return ResultPtr(raw, rs_result_free);
}

void emit_report(const rs_report* report, const std::string& out, bool timing) {
  char* json = nullptr;
  char* csv = nullptr;
  check(rs_report_json(report, timing ? 1 : 0, &json), "report");
  const std::string j = take(json);
  check(rs_report_csv(report, &csv), "report");
  const std::string c = take(csv);
  if (out.empty()) {
    std::cout << c;
    return;
  }
  write_file(fs::path(out) / "report.json", j);
  write_file(fs::path(out) / "report.csv", c);
  std::cout << c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relay node placement: generators, solvers and bound audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rs_version()));

  GenArgs gen;
  std::string out;
  bool svg = false;
  bool no_timing = false;

  auto* g = app.add_subcommand("gen", "generate an instance");
  add_gen_options(g, gen);
  g->add_option("--out", out, "directory for instance.json (stdout if omitted)");

  std::string instance_path;
  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve one instance");
  add_gen_options(s, gen);
  add_solve_options(s, solve);
  s->add_option("--instance", instance_path, "instance JSON (generated from the family options if omitted)");
  s->add_option("--out", out, "output directory");
  s->add_flag("--svg", svg, "also write solution.svg");
  s->add_flag("--no-timing", no_timing, "omit timing from report.json");

  std::string kind = "overlap";
  int trials = 100;
  std::uint64_t seed = 1;
  int audit_n = 8, audit_k = 0, delta = 5, tree_nodes = 40;
  double audit_box = 4.0;
  std::string tree_path;
  auto* a = app.add_subcommand("audit", "run a bound audit, or certify one tree");
  a->add_option("--kind", kind, "log-bound | overlap | certificate | decomposition | witness | degree-reduce")
      ->check(CLI::IsMember({"log-bound", "overlap", "certificate", "decomposition", "witness", "degree-reduce",
                             "theorem3-bound", "lemma1", "lemma6", "lemma7"}))
      ->capture_default_str();
  a->add_option("--trials", trials, "number of random trials")->capture_default_str();
  a->add_option("--seed", seed, "seed of the first trial")->capture_default_str();
  a->add_option("--n", audit_n, "size cap for instances and hypergraphs")->capture_default_str();
  a->add_option("--box", audit_box, "sampling box for witness instances")->capture_default_str();
  a->add_option("--k", audit_k, "rank for certificate (0 alternates 8 and 16)")->capture_default_str();
  a->add_option("--delta", delta, "degree bound for certificate")->capture_default_str();
  a->add_option("--tree-nodes", tree_nodes, "tree size cap for certificate and decomposition")->capture_default_str();
  a->add_option("--tree", tree_path, "certify this tree ({nodes, edges, terminals}) instead of sampling");
  a->add_option("--out", out, "output directory");
  a->add_flag("--no-timing", no_timing, "omit timing from audit.json");

  std::size_t sweep_trials = 10;
  auto* w = app.add_subcommand("sweep", "solve a seeded family of generated instances");
  add_gen_options(w, gen);
  add_solve_options(w, solve);
  w->add_option("--trials", sweep_trials, "number of instances (seeds seed, seed+1, ...)")->capture_default_str();
  w->add_option("--out", out, "output directory");
  w->add_flag("--svg", svg, "write svg/<index>.svg per instance");
  w->add_flag("--no-timing", no_timing, "omit timing from report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (g->parsed()) {
      auto inst = generate(gen, gen.seed);
      char* text = nullptr;
      check(rs_instance_to_json(inst.get(), &text), "serialize");
      const std::string t = take(text);
      if (out.empty()) std::cout << t;
      else write_file(fs::path(out) / "instance.json", t);
      return 0;
    }

    if (s->parsed()) {
      auto inst = instance_path.empty() ? generate(gen, gen.seed) : load(instance_path);
      auto result = run_solve(inst.get(), solve_options(solve), 0);
      ReportPtr report(nullptr, rs_report_free);
      rs_report* raw = nullptr;
      check(rs_report_new(&raw), "report");
      report.reset(raw);
      check(rs_report_add(report.get(), result.get()), "report");
      if (!out.empty()) {
        char* sol = nullptr;
        check(rs_result_solution_json(result.get(), &sol), "solution");
        write_file(fs::path(out) / "solution.json", take(sol));
        if (svg) {
          char* pic = nullptr;
          check(rs_result_svg(result.get(), &pic), "svg");
          write_file(fs::path(out) / "solution.svg", take(pic));
        }
      }
      emit_report(report.get(), out, !no_timing);
      return 0;
    }

    if (a->parsed()) {
      if (!tree_path.empty()) {
        const int k = audit_k > 0 ? audit_k : 8;
        char* cert = nullptr;
        int ok = 0;
        check(rs_tree_certificate(read_file(tree_path).c_str(), delta, k, &cert, &ok), tree_path);
        const std::string c = take(cert);
        if (out.empty()) std::cout << c;
        else write_file(fs::path(out) / "certificate.json", c);
        if (!ok) {
          std::cerr << "certificate check failed for " << tree_path << "\n";
          return 2;
        }
        return 0;
      }
      rs_audit_options o;
      rs_audit_options_init(&o);
      o.kind = kind.c_str();
      o.trials = trials;
      o.seed = seed;
      o.n = audit_n;
      o.box = audit_box;
      o.k = audit_k;
      o.delta = delta;
      o.tree_nodes = tree_nodes;
      rs_audit_result* raw = nullptr;
      check(rs_audit(&o, &raw), "audit");
      AuditPtr audit(raw, rs_audit_free);
      char* json = nullptr;
      char* csv = nullptr;
      check(rs_audit_json(audit.get(), no_timing ? 0 : 1, &json), "audit");
      const std::string j = take(json);
      check(rs_audit_csv(audit.get(), &csv), "audit");
      const std::string c = take(csv);
      if (!out.empty()) {
        write_file(fs::path(out) / "audit.json", j);
        write_file(fs::path(out) / "audit.csv", c);
      }
      const int v = rs_audit_violations(audit.get());
      std::cout << kind << ": " << rs_audit_trials(audit.get()) << " trials, " << v << " violations\n";
      if (v > 0) {
        std::cerr << "violating rows (trial,seed,...):\n";
        std::istringstream lines(c);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
          const auto f = line.find(',', line.find(',', line.find(',') + 1) + 1);
          if (f != std::string::npos && line.compare(f + 1, 1, "0") == 0) std::cerr << "  " << line << "\n";
        }
        return 2;
      }
      return 0;
    }

    if (w->parsed()) {
      rs_report* raw = nullptr;
      check(rs_report_new(&raw), "report");
      ReportPtr report(raw, rs_report_free);
      const auto opts = solve_options(solve);
      for (std::size_t i = 0; i < sweep_trials; ++i) {
        auto inst = generate(gen, gen.seed + i);
        auto result = run_solve(inst.get(), opts, i);
        check(rs_report_add(report.get(), result.get()), "report");
        if (svg && !out.empty()) {
          char* pic = nullptr;
          check(rs_result_svg(result.get(), &pic), "svg");
          char name[32];
          std::snprintf(name, sizeof name, "%04zu.svg", i);
          write_file(fs::path(out) / "svg" / name, take(pic));
        }
      }
      emit_report(report.get(), out, !no_timing);
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "relaysynth: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "relaysynth: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
