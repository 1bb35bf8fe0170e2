#include "relaysynth/audit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "relaysynth/connectivity.hpp"
#include "relaysynth/generate.hpp"
#include "relaysynth/sn012.hpp"
#include "relaysynth/tree_decomposition.hpp"

namespace relaysynth {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}
std::string num(std::int64_t x) { return std::to_string(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "1" : "0"; }

// Distinct random subset of 0..n-1 of the given size, sorted.
std::vector<NodeId> random_subset(std::mt19937_64& rng, int n, int size) {
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < size; ++i) std::swap(all[i], all[static_cast<std::size_t>(uniform_int(rng, i, n - 1))]);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

AuditRow log_bound_trial(std::mt19937_64& rng, const AuditConfig& cfg) {
  AuditRow row;
  const auto rh = random_costed_hypergraph(rng, std::max(3, cfg.n));
  const auto tau = min_spanning_subhypergraph(rh.h);
  const auto lr = local_replacement(rh.h, rh.tree);
  const auto tr = audit_trace(lr, tau);
  const double bound = static_cast<double>(tau) * (1 + std::log(static_cast<double>(lr.f0) / static_cast<double>(tau)));
  row.ok = tr.bound_ok && tr.recursion_ok && tr.telescoping_ok && tr.monotone_ok;
  row.fields = {{"nodes", num(rh.h.node_count())},
                {"hyperedges", num(rh.h.edges().size())},
                {"tau", num(tau)},
                {"f0", num(lr.f0)},
                {"cost", num(lr.cost)},
                {"bound", num(bound)},
                {"iterations", num(lr.trace.size())},
                {"recursion_ok", flag(tr.recursion_ok)},
                {"telescoping_ok", flag(tr.telescoping_ok)},
                {"bound_ok", flag(tr.bound_ok)}};
  return row;
}

AuditRow overlap_trial(std::mt19937_64& rng, const AuditConfig& cfg) {
  AuditRow row;
  const int n = static_cast<int>(uniform_int(rng, 2, std::max(2, cfg.n)));
  const auto rt = random_bounded_tree(static_cast<std::size_t>(n), std::max(2, n - 1), 0.0, rng, 9);
  std::vector<std::vector<NodeId>> hyperedges;
  Dsu dsu(n);
  int parts = n;
  while (parts > 1) {
    const int size = static_cast<int>(uniform_int(rng, 2, std::min(n, 4)));
    auto a = random_subset(rng, n, size);
    for (std::size_t i = 1; i < a.size(); ++i)
      if (dsu.unite(a[0], a[i])) --parts;
    hyperedges.push_back(std::move(a));
  }
  std::int64_t lhs = 0;
  for (const auto& a : hyperedges)
    for (int e : max_overlapped_set(n, rt.tree.edges, a)) lhs += rt.tree.edges[e].cost;
  const std::int64_t rhs = rt.tree.total_cost();
  const bool holds = overlap_sum_holds(n, rt.tree.edges, hyperedges);
  row.ok = holds && lhs >= rhs;
  row.fields = {{"nodes", num(n)}, {"hyperedges", num(hyperedges.size())}, {"sum_overlapped", num(lhs)},
                {"tree_cost", num(rhs)}};
  return row;
}

AuditRow certificate_trial(std::mt19937_64& rng, const AuditConfig& cfg, int trial) {
  AuditRow row;
  const int n = static_cast<int>(uniform_int(rng, 3, std::max(3, cfg.tree_nodes)));
  const int k = cfg.k > 0 ? cfg.k : (trial % 2 == 0 ? 8 : 16);
  const auto rt = random_bounded_tree(static_cast<std::size_t>(n), cfg.delta, 0.3, rng);
  const auto cert = alpha_k_certificate(rt.tree, rt.terminals, cfg.delta, k);
  const auto norm = normalize_binary(rt.tree, rt.terminals);
  const bool binary = check_binary(norm.tree).ok();
  const auto mapping = audit_mapping(norm.tree, proper_mapping(norm.tree));
  row.ok = cert.ok() && binary && mapping.ok();
  row.fields = {{"nodes", num(n)},
                {"k", num(k)},
                {"p", num(cert.p)},
                {"steiner", num(cert.steiner)},
                {"total", num(cert.total)},
                {"bound", cert.bound.get_str()},
                {"rank", num(cert.rank)},
                {"connected", flag(cert.connected)},
                {"components_ok", flag(cert.components_ok)},
                {"binary_ok", flag(binary)},
                {"mapping_ok", flag(mapping.ok())}};
  return row;
}

AuditRow decomposition_trial(std::mt19937_64& rng, const AuditConfig& cfg) {
  AuditRow row;
  const int n = static_cast<int>(uniform_int(rng, 3, std::max(3, cfg.tree_nodes)));
  const int p = static_cast<int>(uniform_int(rng, 2, 16));
  const auto rt = random_bounded_tree(static_cast<std::size_t>(n), 4, 0.3, rng, 5);
  const auto d = edge_decomposition(rt.tree, rt.terminals, p);
  row.ok = d.ok();
  row.fields = {{"nodes", num(n)},
                {"p", num(p)},
                {"hyperedges", num(d.hyperedges.size())},
                {"sum_cost", num(d.sum_cost)},
                {"tree_cost", num(d.tree_cost)},
                {"mapping_ok", flag(d.mapping_ok)},
                {"partition_ok", flag(d.partition_ok)},
                {"bound_ok", flag(d.bound_ok)}};
  return row;
}

AuditRow witness_trial(std::uint64_t seed, const AuditConfig& cfg) {
  AuditRow row;
  std::mt19937_64 rng(seed);
  GeneratorConfig g;
  g.n = static_cast<int>(uniform_int(rng, 2, std::max(2, cfg.n)));
  g.box = cfg.box;
  g.seed = seed;
  const auto inst = generate(g);
  const auto r = solve_sn_msp_012(inst, Backend::exact);
  const bool feasible = is_feasible(inst, r.graph);
  const bool lower = r.tau_star <= Rational(static_cast<long>(r.backend.cost));
  const auto w = audit_witness(inst, r.graph);
  row.ok = feasible && lower && w.ok();
  row.fields = {{"terminals", num(inst.size())},
                {"demands", num(inst.demands().size())},
                {"steiner", num(r.steiner_count())},
                {"tau_star", r.tau_star.get_str()},
                {"certified", flag(r.backend.certified)},
                {"pruned_steiner", num(w.steiner)},
                {"witness_value", w.value.get_str()},
                {"witness_bound", w.bound.get_str()},
                {"feasible", flag(feasible)},
                {"fractional_ok", flag(w.fractional_ok)},
                {"within_bound", flag(w.within_bound)},
                {"non_tree_components", num(w.structure.non_trees)},
                {"repeated_attachments", num(w.structure.repeated_attachments)}};
  return row;
}

AuditRow degree_reduce_trial(std::mt19937_64& rng) {
  AuditRow row;
  const int m = static_cast<int>(uniform_int(rng, 6, 9));
  std::vector<Point> terms;
  for (int i = 0; i < m; ++i) {
    const double a = unit_uniform(rng) * 2 * M_PI, r = 0.5 + 0.5 * unit_uniform(rng);
    terms.push_back(Point::at({r * std::cos(a), r * std::sin(a)}));
  }
  std::vector<Demand> demands;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) demands.push_back({i, j, 1});
  const Instance inst(MetricSpace::euclidean(2), terms, {}, demands);
  SolutionGraph g;
  g.terminal_count = static_cast<std::size_t>(m);
  g.steiner = {Point::at({0.0, 0.0})};
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.emplace_back(i, m);
  g = with_edges(inst, g, std::move(edges));
  const auto r = degree_reduce(inst, g);
  const bool feasible = is_feasible(inst, r.graph);
  const bool shorter = r.length_after <= r.length_before + kGeoEps;
  row.ok = r.converged && feasible && shorter && r.max_steiner_degree <= inst.delta();
  row.fields = {{"initial_degree", num(m)},
                {"swaps", num(r.swaps)},
                {"final_degree", num(r.max_steiner_degree)},
                {"length_before", num(r.length_before)},
                {"length_after", num(r.length_after)},
                {"converged", flag(r.converged)},
                {"feasible", flag(feasible)}};
  return row;
}

}  // namespace

const std::vector<std::string>& audit_kinds() {
  static const std::vector<std::string> kinds = {"log-bound", "overlap", "certificate", "decomposition", "witness", "degree-reduce"};
  return kinds;
}

RandomHypergraph random_costed_hypergraph(std::mt19937_64& rng, int max_nodes, int max_edges, int max_cost) {
  if (max_nodes < 3 || max_edges < max_nodes - 1 || max_cost < 1)
    fail(ErrorCode::invalid_argument, "random_costed_hypergraph: bad limits");
  const int n = static_cast<int>(uniform_int(rng, 3, max_nodes));
  std::map<std::vector<NodeId>, std::int64_t> edges;
  for (int i = 1; i < n; ++i) {
    const NodeId j = static_cast<NodeId>(uniform_int(rng, 0, i - 1));
    edges[{j, i}] = uniform_int(rng, 1, max_cost);
  }
  const int target = static_cast<int>(uniform_int(rng, n - 1, max_edges));
  for (int attempt = 0; static_cast<int>(edges.size()) < target && attempt < 20 * max_edges; ++attempt) {
    const int size = static_cast<int>(uniform_int(rng, 2, n));
    auto a = random_subset(rng, n, size);
    const auto c = uniform_int(rng, 1, max_cost);
    edges.emplace(std::move(a), c);
  }
  std::vector<CostedHyperedge> list;
  for (const auto& [nodes, cost] : edges) list.push_back({nodes, cost});
  RandomHypergraph out;
  out.h = CostedHypergraph(static_cast<std::size_t>(n), std::move(list));
  std::vector<TreeEdge> pairs;
  for (const auto& e : out.h.edges())
    if (e.nodes.size() == 2) pairs.push_back({e.nodes[0], e.nodes[1], e.cost});
  std::sort(pairs.begin(), pairs.end(), [](const TreeEdge& a, const TreeEdge& b) {
    return std::tie(a.cost, a.u, a.v) < std::tie(b.cost, b.u, b.v);
  });
  Dsu dsu(static_cast<std::size_t>(n));
  for (const auto& e : pairs)
    if (dsu.unite(e.u, e.v)) out.tree.push_back(e);
  return out;
}

std::string canonical_audit_kind(const std::string& kind) {
  static const std::map<std::string, std::string> aliases = {
      {"theorem3-bound", "log-bound"}, {"lemma1", "overlap"}, {"lemma6", "certificate"}, {"lemma7", "decomposition"}};
  const auto it = aliases.find(kind);
  const std::string k = it == aliases.end() ? kind : it->second;
  const auto& kinds = audit_kinds();
  if (std::find(kinds.begin(), kinds.end(), k) == kinds.end())
    fail(ErrorCode::invalid_argument, "unknown audit '" + kind + "'");
  return k;
}

AuditSummary run_audit(const AuditConfig& config) {
  const std::string kind = canonical_audit_kind(config.kind);
  if (config.trials < 1) fail(ErrorCode::invalid_argument, "audit: trials must be positive");
  AuditSummary s;
  s.kind = kind;
  s.trials = config.trials;
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(seed);
    AuditRow row;
    if (kind == "log-bound") row = log_bound_trial(rng, config);
    else if (kind == "overlap") row = overlap_trial(rng, config);
    else if (kind == "certificate") row = certificate_trial(rng, config, t);
    else if (kind == "decomposition") row = decomposition_trial(rng, config);
    else if (kind == "witness") row = witness_trial(seed, config);
    else row = degree_reduce_trial(rng);
    row.trial = t;
    row.seed = seed;
    if (!row.ok) ++s.violations;
    s.rows.push_back(std::move(row));
  }
  s.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string audit_json(const AuditSummary& s, bool with_timing) {
  using nlohmann::json;
  json j;
  j["report_version"] = 1;
  j["audit"] = s.kind;
  j["trials"] = s.trials;
  j["violations"] = s.violations;
  j["violating_trials"] = json::array();
  for (const auto& r : s.rows)
    if (!r.ok) j["violating_trials"].push_back(r.trial);
  j["rows"] = json::array();
  for (const auto& r : s.rows) {
    json o;
    o["trial"] = r.trial;
    o["seed"] = r.seed;
    o["ok"] = r.ok;
    for (const auto& [k, v] : r.fields) o[k] = v;
    j["rows"].push_back(std::move(o));
  }
  if (with_timing) j["timing"] = {{"wall_ms", s.wall_ms}};
  return j.dump(2) + "\n";
}

std::string audit_csv(const AuditSummary& s) {
  std::ostringstream out;
  out << "audit,trial,seed,ok";
  if (!s.rows.empty())
    for (const auto& [k, v] : s.rows.front().fields) out << ',' << k;
  out << "\n";
  for (const auto& r : s.rows) {
    out << s.kind << ',' << r.trial << ',' << r.seed << ',' << (r.ok ? 1 : 0);
    for (const auto& [k, v] : r.fields) out << ',' << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace relaysynth
