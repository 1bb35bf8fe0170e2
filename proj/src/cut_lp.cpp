#include "relaysynth/cut_lp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relaysynth/maxflow.hpp"

namespace relaysynth {

Rational FractionalBeadSolution::value(const BeadGraph& graph) const {
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) v += x[i] * Rational(static_cast<long>(graph.edge(static_cast<int>(i)).cost));
  return v;
}

std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

int biset_requirement(const Instance& instance, const Biset& biset) {
  const auto gamma = biset.boundary();
  for (NodeId w : gamma)
    if (!instance.is_unstable(w)) return 0;
  int best = 0;
  for (const auto& d : instance.demands()) {
    const bool sep = (biset.in_inner(d.u) && !biset.in_outer(d.v)) || (biset.in_inner(d.v) && !biset.in_outer(d.u));
    if (sep) best = std::max(best, d.r);
  }
  return std::max(0, best - static_cast<int>(gamma.size()));
}

namespace {

// Min u-v cut in K_R with x-capacities, node `removed` deleted (-1 for none).
std::optional<Biset> min_cut_below(const Instance& instance, const BeadGraph& graph, const std::vector<Rational>& x,
                                   NodeId u, NodeId v, NodeId removed, const Rational& need) {
  const auto n = static_cast<NodeId>(instance.size());
  std::map<std::pair<NodeId, NodeId>, Rational> pair_cap;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0) continue;
    const auto& e = graph.edge(static_cast<int>(i));
    if (e.u == removed || e.v == removed) continue;
    pair_cap[{e.u, e.v}] += x[i];
  }
  FlowNetwork<Rational> net(instance.size());
  for (const auto& [p, c] : pair_cap) {
    net.add_arc(p.first, p.second, c);
    net.add_arc(p.second, p.first, c);
  }
  const Rational flow = net.max_flow(u, v, need);
  if (flow >= need) return std::nullopt;
  const auto reach = net.residual_reachable(u);
  Biset b;
  for (NodeId t = 0; t < n; ++t) {
    if (t == removed) continue;
    if (reach[t]) b.inner.push_back(t);
  }
  b.outer = b.inner;
  if (removed >= 0) {
    b.outer.push_back(removed);
    std::sort(b.outer.begin(), b.outer.end());
  }
  return b;
}

BisetCut make_cut(const Instance& instance, const BeadGraph& graph, const std::vector<Rational>& x, Biset biset) {
  BisetCut cut;
  cut.requirement = biset_requirement(instance, biset);
  cut.covered = 0;
  for (int i = 0; i < static_cast<int>(graph.edges().size()); ++i) {
    const auto& e = graph.edge(i);
    if (biset.covered_by(Edge(e.u, e.v))) {
      cut.covering_edges.push_back(i);
      if (static_cast<std::size_t>(i) < x.size()) cut.covered += x[i];
    }
  }
  cut.biset = std::move(biset);
  return cut;
}

}  // namespace

std::vector<BisetCut> violated_bisets(const Instance& instance, const BeadGraph& graph,
                                      const std::vector<Rational>& x) {
  std::vector<BisetCut> out;
  std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> seen;
  auto consider = [&](std::optional<Biset> b) {
    if (!b) return;
    if (!seen.insert({b->inner, b->outer}).second) return;
    BisetCut cut = make_cut(instance, graph, x, std::move(*b));
    if (cut.covered < cut.requirement) out.push_back(std::move(cut));
  };
  for (const auto& d : instance.demands()) {
    consider(min_cut_below(instance, graph, x, d.u, d.v, -1, Rational(d.r)));
    if (d.r < 2) continue;
    for (NodeId w : instance.unstable()) {
      if (w == d.u || w == d.v) continue;
      consider(min_cut_below(instance, graph, x, d.u, d.v, w, Rational(d.r - 1)));
    }
  }
  return out;
}

std::optional<BisetCut> fractional_feasible(const Instance& instance, const BeadGraph& graph,
                                            const FractionalBeadSolution& x) {
  auto cuts = violated_bisets(instance, graph, x.x);
  if (cuts.empty()) return std::nullopt;
  return std::move(cuts.front());
}

TauStarResult tau_star(const Instance& instance, const BeadGraph& graph, const TauStarOptions& options) {
  if (instance.size() > options.terminal_cap)
    fail(ErrorCode::limit, "tau_star: " + std::to_string(instance.size()) + " terminals exceed the cap of " +
                               std::to_string(options.terminal_cap));
  const std::size_t m = graph.edges().size();
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = Rational(static_cast<long>(graph.edge(static_cast<int>(i)).cost));
  DualFeasibleLp lp(std::move(rhs));
  for (std::size_t i = 0; i < m; ++i) lp.add_column({{static_cast<int>(i), Rational(-1)}}, Rational(-1));

  TauStarResult res;
  std::set<std::pair<std::vector<int>, int>> added;
  while (true) {
    if (lp.solve() != DualFeasibleLp::Status::optimal)
      fail(ErrorCode::internal, "tau_star: simplex did not reach an optimum");
    ++res.rounds;
    auto x = lp.duals();
    auto cuts = violated_bisets(instance, graph, x);
    if (cuts.empty()) {
      res.value = lp.objective();
      res.x.x = std::move(x);
      break;
    }
    bool progress = false;
    for (auto& c : cuts) {
      if (!added.insert({c.covering_edges, c.requirement}).second) continue;
      if (added.size() > options.max_constraints)
        fail(ErrorCode::limit, "tau_star: constraint cap of " + std::to_string(options.max_constraints) + " exceeded");
      std::vector<DualFeasibleLp::Entry> col;
      for (int e : c.covering_edges) col.push_back({e, Rational(1)});
      lp.add_column(std::move(col), Rational(c.requirement));
      progress = true;
    }
    if (!progress) fail(ErrorCode::internal, "tau_star: separation repeated an existing cut");
  }
  res.constraints = added.size();
  res.pivots = lp.pivots();
  return res;
}

TauStarResult tau_star(const Instance& instance, const TauStarOptions& options) {
  const int k = std::max(1, instance.max_requirement());
  return tau_star(instance, build_bead_graph(instance, k), options);
}

HalfIntegralWitness half_integral_witness(const Instance& instance, const BeadGraph& graph,
                                          const SolutionGraph& minimal) {
  if (minimal.terminal_count != instance.size() || graph.node_count() != instance.size())
    fail(ErrorCode::invalid_argument, "half_integral_witness: terminal count mismatch");
  std::vector<char> is_terminal(minimal.node_count(), 0);
  for (std::size_t t = 0; t < minimal.terminal_count; ++t) is_terminal[t] = 1;

  HalfIntegralWitness w;
  std::map<std::pair<NodeId, NodeId>, int> halves;
  for (const auto& comp : r_components(minimal)) {
    std::vector<Edge> tree;
    for (int ei : comp.edges) tree.push_back(minimal.edges[ei]);
    if (!is_tree(comp.inner.size() + comp.attachments.size(), tree))
      fail(ErrorCode::invalid_argument, "half_integral_witness: non-tree R-component");
    auto cycle = dfs_cycle(tree, is_terminal, true);
    std::vector<NodeId> terms;
    for (NodeId v : cycle)
      if (is_terminal[v]) terms.push_back(v);
    for (std::size_t i = 0; i < terms.size() && terms.size() > 1; ++i) {
      const NodeId a = terms[i], b = terms[(i + 1) % terms.size()];
      if (a != b) halves[std::minmax(a, b)] += 1;
    }
    w.cycles.push_back(std::move(cycle));
  }
  for (const auto& e : minimal.edges)
    if (is_terminal[e.u] && is_terminal[e.v]) halves[{e.u, e.v}] += 2;

  w.x.x.assign(graph.edges().size(), 0);
  const Rational half(1, 2);
  for (const auto& [pair, count] : halves) {
    for (int h = 0; h < count; ++h) {
      int best = -1;
      for (int c = 0; c < graph.k(); ++c) {
        const int idx = graph.index(pair.first, pair.second, c);
        if (w.x.x[idx] >= 1) continue;
        if (best < 0) {
          best = idx;
          continue;
        }
        const auto& eb = graph.edge(best);
        const auto& ec = graph.edge(idx);
        if (ec.cost < eb.cost || (ec.cost == eb.cost && w.x.x[idx] < w.x.x[best])) best = idx;
      }
      if (best >= 0) w.x.x[best] += half;
    }
  }
  w.value = w.x.value(graph);
  return w;
}

}  // namespace relaysynth
