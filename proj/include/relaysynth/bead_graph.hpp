#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relaysynth/connectivity.hpp"
#include "relaysynth/instance.hpp"

namespace relaysynth {

struct BeadEdge {
  NodeId u = 0;
  NodeId v = 0;
  int copy = 0;
  std::int64_t cost = 0;
};

// Complete multigraph on the terminals with k parallel edges per pair. An
// edge of cost c stands for a chain of c beads between its endpoints.
class BeadGraph {
 public:
  BeadGraph() = default;
  BeadGraph(std::size_t terminals, int k, std::vector<BeadEdge> edges);

  [[nodiscard]] std::size_t node_count() const { return nodes_; }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const std::vector<BeadEdge>& edges() const { return edges_; }
  [[nodiscard]] const BeadEdge& edge(int i) const { return edges_.at(i); }
  [[nodiscard]] int index(NodeId u, NodeId v, int copy) const;
  [[nodiscard]] std::int64_t total_cost(std::span<const int> selected) const;

 private:
  std::size_t nodes_ = 0;
  int k_ = 1;
  std::vector<BeadEdge> edges_;  // pairs (u < v) lexicographic, copies ascending
};

// Beads needed to bridge distance d: max(ceil(d - eps) - 1, 0).
[[nodiscard]] std::int64_t bead_count(double d, double eps = kGeoEps);

[[nodiscard]] BeadGraph build_bead_graph(const Instance& instance, int k, double eps = kGeoEps);

// Edge ids whose cost is zero (at most one per pair).
[[nodiscard]] std::vector<int> zero_cost_edges(const BeadGraph& graph);

// True when the selected multigraph on R is (r, B)-connected: bead chains are
// internally disjoint, so only edges and unstable terminals are elements.
[[nodiscard]] bool bead_selection_feasible(const Instance& instance, const BeadGraph& graph,
                                           std::span<const int> selected);
[[nodiscard]] std::vector<DemandViolation> bead_selection_violations(const Instance& instance,
                                                                     const BeadGraph& graph,
                                                                     std::span<const int> selected,
                                                                     bool first_only = false);

struct Realization {
  SolutionGraph graph;
  // Beads are abstract when the metric is finite; their only adjacencies are chain links.
  bool abstract_beads = false;
};

// Places c points at u + i/(c+1) (v - u), i = 1..c, per selected cost-c edge.
// Finite metrics get abstract bead chains.
[[nodiscard]] Realization realize(const Instance& instance, const BeadGraph& graph, std::span<const int> selected,
                                  double eps = kGeoEps);
// As realize, with further concrete Steiner points appended after the beads.
[[nodiscard]] Realization realize_with(const Instance& instance, const BeadGraph& graph, std::span<const int> selected,
                                       std::span<const Point> extra, double eps = kGeoEps);

}  // namespace relaysynth
