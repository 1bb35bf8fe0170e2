#include "relaysynth/local_replacement.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <json.hpp>

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
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<int> overlapped(std::size_t n, std::span<const TreeEdge> tree, const std::vector<char>& alive,
                            std::span<const NodeId> a, std::span<const NodeId> rep) {
  auto r = [&](NodeId v) { return rep.empty() ? v : rep[v]; };
  Dsu dsu(n);
  for (std::size_t i = 1; i < a.size(); ++i) dsu.unite(r(a[0]), r(a[i]));
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(tree.size()); ++i)
    if (alive[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return tree[x].cost < tree[y].cost; });
  std::vector<int> rejected;
  for (int i : order)
    if (!dsu.unite(r(tree[i].u), r(tree[i].v))) rejected.push_back(i);
  std::sort(rejected.begin(), rejected.end());
  return rejected;
}

std::int64_t cost_of(std::span<const TreeEdge> tree, const std::vector<int>& ids) {
  std::int64_t c = 0;
  for (int i : ids) c += tree[i].cost;
  return c;
}

// a/b > c/d for nonnegative values where a zero denominator means +inf
// (or 0 when the numerator is 0 as well).
int compare_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const bool inf1 = b == 0 && a > 0, inf2 = d == 0 && c > 0;
  if (inf1 || inf2) return inf1 == inf2 ? 0 : (inf1 ? 1 : -1);
  const Rational x = b == 0 ? Rational(0) : Rational(a, b);
  const Rational y = d == 0 ? Rational(0) : Rational(c, d);
  return x > y ? 1 : (x < y ? -1 : 0);
}

}  // namespace

CostedHypergraph::CostedHypergraph(std::size_t node_count, std::vector<CostedHyperedge> edges)
    : nodes_(node_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    std::sort(e.nodes.begin(), e.nodes.end());
    e.nodes.erase(std::unique(e.nodes.begin(), e.nodes.end()), e.nodes.end());
    if (e.nodes.size() < 2) fail(ErrorCode::invalid_argument, "hyperedge needs at least two distinct nodes");
    if (e.nodes.back() >= static_cast<NodeId>(nodes_) || e.nodes.front() < 0)
      fail(ErrorCode::invalid_argument, "hyperedge node out of range");
    if (e.cost < 0) fail(ErrorCode::invalid_argument, "hyperedge cost must be nonnegative");
  }
}

bool CostedHypergraph::connected() const {
  Dsu dsu(nodes_);
  std::size_t parts = nodes_;
  for (const auto& e : edges_)
    for (std::size_t i = 1; i < e.nodes.size(); ++i)
      if (dsu.unite(e.nodes[0], e.nodes[i])) --parts;
  return parts <= 1;
}

int CostedHypergraph::pair_index(NodeId u, NodeId v) const {
  const Edge e(u, v);
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    if (edges_[i].nodes.size() == 2 && edges_[i].nodes[0] == e.u && edges_[i].nodes[1] == e.v) return i;
  return -1;
}

std::vector<int> max_overlapped_set(std::size_t node_count, std::span<const TreeEdge> tree, std::span<const NodeId> a,
                                    std::span<const NodeId> rep) {
  if (a.size() < 2) fail(ErrorCode::invalid_argument, "max_overlapped_set: A needs at least two nodes");
  for (NodeId v : a)
    if (v < 0 || static_cast<std::size_t>(v) >= node_count)
      fail(ErrorCode::invalid_argument, "max_overlapped_set: node " + std::to_string(v) + " not in the tree");
  std::vector<char> alive(tree.size(), 1);
  return overlapped(node_count, tree, alive, a, rep);
}

LocalReplacementResult local_replacement(const CostedHypergraph& h, std::span<const TreeEdge> tree) {
  const std::size_t n = h.node_count();
  {
    Dsu dsu(n);
    std::size_t parts = n;
    for (const auto& e : tree) {
      if (h.pair_index(e.u, e.v) < 0)
        fail(ErrorCode::invalid_argument, "local_replacement: tree edge is not a graph edge of the hypergraph");
      if (dsu.unite(e.u, e.v)) --parts;
    }
    if (parts != 1 || tree.size() + 1 != n)
      fail(ErrorCode::invalid_argument, "local_replacement: T* is not a spanning tree");
  }

  LocalReplacementResult res;
  std::vector<NodeId> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  std::vector<char> alive(tree.size(), 1);
  std::int64_t f = 0;
  for (const auto& e : tree) f += e.cost;
  res.f0 = f;

  while (f > 0) {
    int best = -1;
    std::vector<int> best_set;
    std::int64_t best_num = 0;
    for (int i = 0; i < static_cast<int>(h.edges().size()); ++i) {
      const auto& a = h.edges()[i];
      std::vector<NodeId> reps;
      for (NodeId v : a.nodes) reps.push_back(rep[v]);
      std::sort(reps.begin(), reps.end());
      reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
      if (reps.size() < 2) continue;
      auto set = overlapped(n, tree, alive, reps, rep);
      const std::int64_t num = cost_of(tree, set);
      bool better = best < 0;
      if (!better) {
        const auto& b = h.edges()[best];
        const int c = compare_ratio(num, a.cost, best_num, b.cost);
        better = c > 0 || (c == 0 && (a.nodes.size() < b.nodes.size() ||
                                      (a.nodes.size() == b.nodes.size() && a.nodes < b.nodes)));
      }
      if (better) {
        best = i;
        best_set = std::move(set);
        best_num = num;
      }
    }
    if (best < 0 || best_num <= h.edges()[best].cost) break;

    ReplacementStep step;
    step.hyperedge = best;
    step.s = h.edges()[best].cost;
    step.removed = best_set;
    step.removed_cost = best_num;
    for (int e : best_set) alive[e] = 0;
    f -= best_num;
    step.f = f;
    NodeId target = std::numeric_limits<NodeId>::max();
    for (NodeId v : h.edges()[best].nodes) target = std::min(target, rep[v]);
    std::vector<NodeId> merged;
    for (NodeId v : h.edges()[best].nodes) merged.push_back(rep[v]);
    for (auto& r : rep)
      if (std::find(merged.begin(), merged.end(), r) != merged.end()) r = target;
    res.selection.push_back(best);
    res.trace.push_back(std::move(step));
  }

  for (int i = 0; i < static_cast<int>(tree.size()); ++i)
    if (alive[i]) res.remaining.push_back(i);
  res.cost = f;
  for (int j : res.selection) res.cost += h.edges()[j].cost;
  return res;
}

std::int64_t min_spanning_subhypergraph(const CostedHypergraph& h) {
  if (!h.connected()) fail(ErrorCode::invalid_argument, "min_spanning_subhypergraph: hypergraph is not connected");
  const std::size_t n = h.node_count();
  std::vector<int> order(h.edges().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h.edges()[a].cost < h.edges()[b].cost; });
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  auto parts_with_rest = [&](Dsu dsu, std::size_t from) {
    for (std::size_t i = from; i < order.size(); ++i) {
      const auto& e = h.edges()[order[i]];
      for (std::size_t j = 1; j < e.nodes.size(); ++j) dsu.unite(e.nodes[0], e.nodes[j]);
    }
    std::size_t parts = 0;
    for (std::size_t v = 0; v < n; ++v) parts += dsu.find(static_cast<int>(v)) == static_cast<int>(v);
    return parts;
  };

  auto search = [&](auto&& self, std::size_t idx, Dsu dsu, std::size_t parts, std::int64_t cost) -> void {
    if (cost >= best) return;
    if (parts == 1) {
      best = cost;
      return;
    }
    if (idx == order.size()) return;
    if (parts_with_rest(dsu, idx) > 1) return;
    const auto& e = h.edges()[order[idx]];
    Dsu with = dsu;
    std::size_t p = parts;
    for (std::size_t j = 1; j < e.nodes.size(); ++j)
      if (with.unite(e.nodes[0], e.nodes[j])) --p;
    if (p < parts) self(self, idx + 1, with, p, cost + e.cost);
    self(self, idx + 1, dsu, parts, cost);
  };
  search(search, 0, Dsu(n), n, 0);
  return best;
}

bool within_log_bound(std::int64_t cost, std::int64_t tau, std::int64_t f0) {
  using boost::multiprecision::cpp_dec_float_50;
  if (tau <= 0) return cost <= 0;
  const cpp_dec_float_50 t(tau), f(f0), c(cost);
  const cpp_dec_float_50 bound = t * (1 + log(f / t));
  const cpp_dec_float_50 ulp = abs(bound) * cpp_dec_float_50("1e-30");
  return c <= bound + ulp;
}

TraceAudit audit_trace(const LocalReplacementResult& r, std::int64_t tau) {
  TraceAudit a;
  std::vector<std::int64_t> f = {r.f0};
  for (const auto& s : r.trace) f.push_back(s.f);
  for (std::size_t i = 1; i < f.size(); ++i) {
    const auto& st = r.trace[i - 1];
    if (!(f[i] < f[i - 1]) || st.removed.empty()) a.monotone_ok = false;
    if (st.removed_cost <= st.s) a.monotone_ok = false;
    if (tau > 0) {
      const Rational prev(f[i - 1]);
      const Rational ratio = prev / Rational(tau);
      const Rational factor = ratio > 1 ? ratio : Rational(1);
      if (Rational(f[i]) > prev - Rational(st.s) * factor) a.recursion_ok = false;
    }
  }
  for (std::size_t q = 0; q < f.size(); ++q) {
    if (f[q] <= tau && (q == 0 || f[q - 1] > tau)) {
      a.q = static_cast<int>(q);
      break;
    }
  }
  if (a.q < 0) {
    a.telescoping_ok = false;
  } else {
    std::int64_t sum = f[a.q];
    for (int i = 0; i < a.q; ++i) sum += r.trace[i].s;
    a.telescoping_ok = within_log_bound(sum, tau, r.f0);
  }
  a.bound_ok = within_log_bound(r.cost, tau, r.f0);
  return a;
}

bool overlap_sum_holds(std::size_t node_count, std::span<const TreeEdge> tree,
                  const std::vector<std::vector<NodeId>>& hyperedges) {
  std::int64_t total = 0, sum = 0;
  for (const auto& e : tree) total += e.cost;
  for (const auto& a : hyperedges) sum += cost_of(tree, max_overlapped_set(node_count, tree, a));
  return sum >= total;
}

std::string trace_json(const CostedHypergraph& h, const LocalReplacementResult& r) {
  using nlohmann::json;
  json j;
  j["f0"] = r.f0;
  j["cost"] = r.cost;
  j["iterations"] = json::array();
  for (const auto& s : r.trace)
    j["iterations"].push_back({{"hyperedge", h.edges()[s.hyperedge].nodes},
                               {"s", s.s},
                               {"removed", s.removed},
                               {"removed_cost", s.removed_cost},
                               {"f", s.f}});
  j["selection"] = json::array();
  for (int e : r.selection) j["selection"].push_back(h.edges()[e].nodes);
  j["remaining"] = r.remaining;
  return j.dump(2) + "\n";
}

SolutionGraph compact_solution(const Instance& instance, const SolutionGraph& g) {
  auto pruned = prune_minimal(instance, g);
  for (const auto& p : pruned.steiner)
    if (p.is_abstract()) return pruned;
  return build_solution_graph(instance, pruned.steiner);
}

SchemeResult st_msp_scheme(const Instance& instance, const SchemeConfig& config) {
  if (!instance.all_pairs_requirement(1))
    fail(ErrorCode::invalid_argument, "st_msp_scheme requires r = 1 on every terminal pair");
  if (config.k < 2) fail(ErrorCode::invalid_argument, "st_msp_scheme: k must be at least 2");
  SchemeResult out;
  const int k = std::min<int>(config.k, static_cast<int>(instance.size()));
  out.hypergraph = build_component_hypergraph(instance, k, config.oracle);

  std::vector<CostedHyperedge> hes;
  for (const auto& e : out.hypergraph.edges) {
    hes.push_back({e.terminals, e.cost()});
    out.heuristic_components = out.heuristic_components || e.witness.heuristic;
  }
  CostedHypergraph h(instance.size(), std::move(hes));

  const auto beads = build_bead_graph(instance, 1);
  std::vector<TreeEdge> tree;
  for (int id : mst_bead_edges(instance, beads)) {
    const auto& be = beads.edge(id);
    tree.push_back({be.u, be.v, be.cost});
    out.mst_cost += be.cost;
  }
  out.replacement = local_replacement(h, tree);

  std::vector<int> pairs;
  std::vector<Point> points;
  auto add_component = [&](const ComponentSolution& w) {
    for (const auto& pr : w.bead_pairs) pairs.push_back(beads.index(pr.u, pr.v, 0));
    points.insert(points.end(), w.steiner.begin(), w.steiner.end());
    out.selected_cost += w.cost;
  };
  for (int j : out.replacement.selection) add_component(out.hypergraph.edges[j].witness);
  for (int t : out.replacement.remaining) {
    const auto& te = tree[t];
    ComponentSolution w;
    w.cost = static_cast<int>(te.cost);
    if (te.cost > 0) w.bead_pairs.emplace_back(te.u, te.v);
    add_component(w);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  // The union of witness trees: coincident points from different witnesses are one point.
  std::vector<Point> unique_points;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : unique_points) dup = dup || (!p.is_abstract() && instance.metric().distance(p, q) <= 1e-9);
    if (!dup) unique_points.push_back(p);
  }
  auto realized = realize_with(instance, beads, pairs, unique_points);
  out.union_points = realized.graph.steiner.size();
  if (!is_feasible(instance, realized.graph))
    fail(ErrorCode::internal, "st_msp_scheme: union of witness trees is not connected");
  out.graph = compact_solution(instance, realized.graph);
  return out;
}

}  // namespace relaysynth
