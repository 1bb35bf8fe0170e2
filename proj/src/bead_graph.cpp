#include "relaysynth/bead_graph.hpp"

#include <algorithm>
#include <cmath>

namespace relaysynth {

BeadGraph::BeadGraph(std::size_t terminals, int k, std::vector<BeadEdge> edges)
    : nodes_(terminals), k_(k), edges_(std::move(edges)) {}

int BeadGraph::index(NodeId u, NodeId v, int copy) const {
  if (u == v || copy < 0 || copy >= k_) fail(ErrorCode::invalid_argument, "bad bead edge reference");
  if (u > v) std::swap(u, v);
  const auto n = static_cast<std::int64_t>(nodes_);
  // Pairs before (u, v) in lexicographic order.
  const std::int64_t before = u * n - u * (u + 1) / 2 + (v - u - 1);
  return static_cast<int>(before * k_ + copy);
}

std::int64_t BeadGraph::total_cost(std::span<const int> selected) const {
  std::int64_t c = 0;
  for (int i : selected) c += edges_.at(i).cost;
  return c;
}

std::int64_t bead_count(double d, double eps) {
  return std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(d - eps)) - 1, 0);
}

BeadGraph build_bead_graph(const Instance& instance, int k, double eps) {
  if (k < 1) fail(ErrorCode::invalid_argument, "bead graph needs k >= 1");
  std::vector<BeadEdge> edges;
  const auto n = static_cast<NodeId>(instance.size());
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const std::int64_t dhat = bead_count(instance.distance(u, v), eps);
      for (int c = 0; c < k; ++c) edges.push_back({u, v, c, dhat > 0 ? dhat : (c == 0 ? 0 : 1)});
    }
  return BeadGraph(instance.size(), k, std::move(edges));
}

std::vector<int> zero_cost_edges(const BeadGraph& graph) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(graph.edges().size()); ++i)
    if (graph.edge(i).cost == 0) out.push_back(i);
  return out;
}

std::vector<DemandViolation> bead_selection_violations(const Instance& instance, const BeadGraph& graph,
                                                       std::span<const int> selected, bool first_only) {
  std::vector<Edge> edges;
  edges.reserve(selected.size());
  for (int i : selected) edges.emplace_back(graph.edge(i).u, graph.edge(i).v);
  std::vector<char> q(instance.size(), 0);
  for (NodeId b : instance.unstable()) q[b] = 1;
  return check_demands(instance.size(), edges, q, instance.demands(), first_only);
}

bool bead_selection_feasible(const Instance& instance, const BeadGraph& graph, std::span<const int> selected) {
  return bead_selection_violations(instance, graph, selected, true).empty();
}

Realization realize(const Instance& instance, const BeadGraph& graph, std::span<const int> selected, double eps) {
  return realize_with(instance, graph, selected, {}, eps);
}

Realization realize_with(const Instance& instance, const BeadGraph& graph, std::span<const int> selected,
                         std::span<const Point> extra, double eps) {
  Realization out;
  const bool finite = instance.metric().kind() == MetricKind::finite;
  out.abstract_beads = finite;
  std::vector<int> sorted(selected.begin(), selected.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<Point> steiner;
  std::vector<Edge> chain_edges;
  const auto t = static_cast<NodeId>(instance.size());
  for (int i : sorted) {
    const auto& e = graph.edge(i);
    if (e.cost == 0) {
      chain_edges.emplace_back(e.u, e.v);
      continue;
    }
    NodeId prev = e.u;
    for (std::int64_t b = 1; b <= e.cost; ++b) {
      if (finite) {
        steiner.push_back(Point::abstract_bead());
      } else {
        const auto& pu = instance.terminals()[e.u].coords;
        const auto& pv = instance.terminals()[e.v].coords;
        const double f = static_cast<double>(b) / static_cast<double>(e.cost + 1);
        std::vector<double> c(pu.size());
        for (std::size_t d = 0; d < c.size(); ++d) c[d] = pu[d] + f * (pv[d] - pu[d]);
        steiner.push_back(Point::at(std::move(c)));
      }
      const NodeId id = t + static_cast<NodeId>(steiner.size()) - 1;
      chain_edges.emplace_back(prev, id);
      prev = id;
    }
    chain_edges.emplace_back(prev, e.v);
  }

  if (finite) {
    SolutionGraph g;
    g.terminal_count = instance.size();
    const auto first_extra = static_cast<NodeId>(t + steiner.size());
    steiner.insert(steiner.end(), extra.begin(), extra.end());
    g.steiner = std::move(steiner);
    // Concrete nodes (terminals and extra points) keep their unit-disk adjacencies.
    std::vector<Point> concrete = instance.terminals();
    concrete.insert(concrete.end(), extra.begin(), extra.end());
    auto to_id = [&](NodeId c) { return c < t ? c : first_extra + (c - t); };
    for (const auto& e : build_unit_disk_graph(concrete, instance.metric(), eps))
      chain_edges.emplace_back(to_id(e.u), to_id(e.v));
    out.graph = with_edges(instance, g, std::move(chain_edges));
  } else {
    steiner.insert(steiner.end(), extra.begin(), extra.end());
    out.graph = build_solution_graph(instance, std::move(steiner), eps);
  }
  return out;
}

}  // namespace relaysynth
