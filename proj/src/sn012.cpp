#include "relaysynth/sn012.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relaysynth/connectivity.hpp"

namespace relaysynth {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool forest_connects(const Instance& instance, const BeadGraph& g, const std::vector<int>& edges) {
  Dsu dsu(instance.size());
  for (int e : edges) dsu.unite(g.edge(e).u, g.edge(e).v);
  for (const auto& d : instance.demands())
    if (dsu.find(d.u) != dsu.find(d.v)) return false;
  return true;
}

}  // namespace

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::exact;
  if (s == "pd") return Backend::primal_dual;
  fail(ErrorCode::invalid_argument, "unknown backend '" + s + "' (expected exact or pd)");
}

std::string backend_name(Backend b) { return b == Backend::exact ? "exact" : "pd"; }

SnBackendResult sn_backend_exact(const Instance& instance, const SnOptions& options) {
  SnBackendResult res;
  res.graph = build_bead_graph(instance, 2);
  res.tau_star = tau_star(instance, res.graph).value;
  auto best = tau_integral(instance, res.graph, options.exact, res.tau_star);
  res.selected = std::move(best.selected);
  res.cost = best.cost;
  res.certified = best.optimal;
  return res;
}

SnBackendResult sn_backend_primal_dual(const Instance& instance) {
  SnBackendResult res;
  res.graph = build_bead_graph(instance, 2);
  const auto& g = res.graph;
  const std::size_t n = instance.size();

  // Phase 1: moat growing on the cheapest copy of every pair.
  std::vector<int> pool;
  for (int i = 0; i < static_cast<int>(g.edges().size()); ++i)
    if (g.edge(i).copy == 0) pool.push_back(i);
  Dsu dsu(n);
  std::vector<Rational> load(n, 0);
  std::vector<char> taken(g.edges().size(), 0);
  std::vector<int> added;
  auto active = [&](int root) {
    for (const auto& d : instance.demands())
      if ((dsu.find(d.u) == root) != (dsu.find(d.v) == root)) return true;
    return false;
  };
  while (true) {
    std::vector<char> is_active(n, 0);
    int actives = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (dsu.find(static_cast<int>(v)) == static_cast<int>(v) && active(static_cast<int>(v))) {
        is_active[v] = 1;
        ++actives;
      }
    if (actives == 0) break;
    int best = -1;
    Rational best_t;
    for (int e : pool) {
      if (taken[e]) continue;
      const auto& be = g.edge(e);
      const int a = dsu.find(be.u), b = dsu.find(be.v);
      if (a == b) continue;
      const int rate = is_active[a] + is_active[b];
      if (rate == 0) continue;
      Rational t = (Rational(static_cast<long>(be.cost)) - load[be.u] - load[be.v]) / rate;
      if (best < 0 || t < best_t) {
        best = e;
        best_t = t;
      }
    }
    if (best < 0) fail(ErrorCode::infeasible, "primal-dual: active moat cannot reach any other component");
    for (std::size_t v = 0; v < n; ++v)
      if (is_active[dsu.find(static_cast<int>(v))]) load[v] += best_t;
    res.dual_value += best_t * actives;
    taken[best] = 1;
    added.push_back(best);
    dsu.unite(g.edge(best).u, g.edge(best).v);
  }
  // Reverse delete on the forest.
  for (std::size_t i = added.size(); i-- > 0;) {
    std::vector<int> without;
    for (std::size_t j = 0; j < added.size(); ++j)
      if (j != i) without.push_back(added[j]);
    if (forest_connects(instance, g, without)) added = std::move(without);
  }

  // Phase 2: r = 2 deficits.
  std::vector<int> sel = added;
  if (!bead_selection_feasible(instance, g, sel)) sel = reverse_delete(instance, g, augment_to_feasible(instance, g, sel));
  std::sort(sel.begin(), sel.end());
  res.selected = std::move(sel);
  res.cost = g.total_cost(res.selected);
  res.certified = false;
  return res;
}

SnPipelineResult solve_sn_msp_012(const Instance& instance, Backend backend, const SnOptions& options) {
  if (instance.max_requirement() > 2) fail(ErrorCode::invalid_argument, "solve_sn_msp_012: demands above 2");
  SnPipelineResult out;
  out.kind = backend;
  out.backend = backend == Backend::exact ? sn_backend_exact(instance, options) : sn_backend_primal_dual(instance);
  out.tau_star = out.backend.tau_star ? *out.backend.tau_star : tau_star(instance, out.backend.graph).value;
  out.graph = realize(instance, out.backend.graph, out.backend.selected).graph;
  if (!is_feasible(instance, out.graph))
    fail(ErrorCode::internal, "solve_sn_msp_012: realized bead solution failed verification");
  if (options.opt_terminals > 0 && instance.size() <= options.opt_terminals &&
      instance.metric().kind() == MetricKind::euclidean) {
    try {
      out.opt = brute_force_opt(instance, std::min<int>(options.opt_max_steiner, static_cast<int>(out.backend.cost)),
                                options.oracle)
                    .count;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::limit) throw;
    }
  }
  return out;
}

WitnessAudit audit_witness(const Instance& instance, const SolutionGraph& g) {
  WitnessAudit a;
  const auto minimal = prune_minimal(instance, g);
  a.steiner = minimal.steiner.size();
  a.structure = r_component_structure(minimal);
  a.bound = Rational(instance.delta() * static_cast<long>(a.steiner), 2);
  if (!a.structure.ok()) return a;
  const auto graph = build_bead_graph(instance, 2);
  const auto w = half_integral_witness(instance, graph, minimal);
  a.value = w.value;
  a.within_bound = a.value <= a.bound;
  a.fractional_ok = violated_bisets(instance, graph, w.x.x).empty();
  return a;
}

DegreeReduceResult degree_reduce(const Instance& instance, const SolutionGraph& solution) {
  if (!is_feasible(instance, solution)) fail(ErrorCode::invalid_argument, "degree_reduce: solution is infeasible");
  DegreeReduceResult out;
  out.length_before = total_length(instance, solution);
  SolutionGraph g = solution;
  const int delta = instance.delta();
  auto dist = [&](NodeId a, NodeId b) { return edge_length(instance, g, Edge(a, b)); };
  const int cap = 10 * static_cast<int>(g.edges.size() + 1);

  while (true) {
    const auto deg = g.degrees();
    NodeId s = -1;
    for (NodeId v = static_cast<NodeId>(g.terminal_count); v < static_cast<NodeId>(g.node_count()); ++v)
      if (deg[v] > delta) {
        s = v;
        break;
      }
    if (s < 0) {
      out.converged = true;
      break;
    }
    if (out.swaps >= cap) break;
    std::vector<NodeId> nbrs;
    for (const auto& e : g.edges)
      if (e.u == s || e.v == s) nbrs.push_back(e.other(s));
    // Lengths within kGeoEps tie and are ordered by endpoint ids instead.
    auto shorter = [&](NodeId a, NodeId b, NodeId c, NodeId d) {
      const double x = dist(a, b), y = dist(c, d);
      if (std::abs(x - y) > kGeoEps) return x < y;
      return Edge(a, b) < Edge(c, d);
    };
    struct Swap {
      double dab;
      NodeId a, b, longer;
    };
    std::vector<Swap> swaps;
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const NodeId a = std::min(nbrs[i], nbrs[j]), b = std::max(nbrs[i], nbrs[j]);
        if (a == b) continue;
        const double dab = dist(a, b);
        if (dab > 1.0 + kGeoEps) continue;
        const NodeId longer = shorter(a, s, b, s) ? b : a;
        if (shorter(a, b, longer, s)) swaps.push_back({dab, a, b, longer});
      }
    std::sort(swaps.begin(), swaps.end(), [](const Swap& x, const Swap& y) {
      if (x.dab != y.dab) return x.dab < y.dab;
      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    bool done = false;
    for (const auto& sw : swaps) {
      const NodeId longer = sw.longer;
      std::vector<Edge> edges;
      for (const auto& e : g.edges)
        if (!(e == Edge(longer, s))) edges.push_back(e);
      edges.emplace_back(sw.a, sw.b);
      auto h = with_edges(instance, g, std::move(edges));
      if (!is_feasible(instance, h)) continue;
      g = prune_minimal(instance, h);
      ++out.swaps;
      done = true;
      break;
    }
    if (!done) break;
  }
  out.graph = g;
  out.length_after = total_length(instance, g);
  const auto deg = g.degrees();
  for (NodeId v = static_cast<NodeId>(g.terminal_count); v < static_cast<NodeId>(g.node_count()); ++v)
    out.max_steiner_degree = std::max(out.max_steiner_degree, deg[v]);
  return out;
}

}  // namespace relaysynth
