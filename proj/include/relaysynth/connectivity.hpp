#pragma once

#include <limits>
#include <span>
#include <vector>

#include "relaysynth/instance.hpp"

namespace relaysynth {

// Ordered pair (X, X+) with X a subset of X+. Both lists are sorted.
struct Biset {
  std::vector<NodeId> inner;
  std::vector<NodeId> outer;

  [[nodiscard]] std::vector<NodeId> boundary() const;
  [[nodiscard]] bool in_inner(NodeId v) const;
  [[nodiscard]] bool in_outer(NodeId v) const;
  // One endpoint in X, the other outside X+.
  [[nodiscard]] bool covered_by(const Edge& e) const;
};

// Elements (Q-nodes and edges) whose removal separates a pair.
struct ElementCut {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;

  [[nodiscard]] std::size_t size() const { return nodes.size() + edges.size(); }
};

struct PairConnectivity {
  int value = 0;
  // Filled only when value < limit (the flow ran to completion).
  ElementCut cut;
  Biset witness;
};

// Maximum number of u-v paths that are pairwise disjoint in edges and in the
// nodes of Q other than u and v. Parallel edges are allowed. Stops early once
// `limit` disjoint paths are found.
[[nodiscard]] PairConnectivity q_connectivity(std::size_t node_count, std::span<const Edge> edges,
                                              const std::vector<char>& in_q, NodeId u, NodeId v,
                                              int limit = std::numeric_limits<int>::max());
[[nodiscard]] PairConnectivity q_connectivity(const SolutionGraph& g, NodeId u, NodeId v,
                                              int limit = std::numeric_limits<int>::max());

struct DemandViolation {
  NodeId u = 0;
  NodeId v = 0;
  int required = 0;
  int achieved = 0;
  Biset witness;
  ElementCut cut;
};

// Empty result means every demand is met.
[[nodiscard]] std::vector<DemandViolation> check_demands(std::size_t node_count, std::span<const Edge> edges,
                                                         const std::vector<char>& in_q,
                                                         std::span<const Demand> demands, bool first_only = false);
[[nodiscard]] std::vector<DemandViolation> verify_feasible(const Instance& instance, const SolutionGraph& g);
[[nodiscard]] bool is_feasible(const Instance& instance, const SolutionGraph& g);

// Drops edges (longest first, ties by endpoint ids) and then Steiner nodes
// (highest id first) while feasibility is kept. The surviving Steiner points
// are renumbered in their original order.
[[nodiscard]] SolutionGraph prune_minimal(const Instance& instance, const SolutionGraph& g);

// A 2-connected block or a bridge. `edges` index into the input edge list.
struct Block {
  std::vector<NodeId> nodes;
  std::vector<int> edges;
};

[[nodiscard]] std::vector<Block> blocks(std::size_t node_count, std::span<const Edge> edges);

// Steiner component C with its terminal attachments Gamma(C); `edges` lists
// E(C) and delta(C) as indices into the graph's edge list.
struct RComponent {
  std::vector<NodeId> inner;
  std::vector<NodeId> attachments;
  std::vector<int> edges;
};

[[nodiscard]] std::vector<RComponent> r_components(std::size_t node_count, std::span<const Edge> edges,
                                                   const std::vector<char>& is_terminal);
[[nodiscard]] std::vector<RComponent> r_components(const SolutionGraph& g);

[[nodiscard]] bool is_tree(std::size_t node_count_in_tree, std::span<const Edge> edges);

// Closed walk of a tree visiting internal nodes once per incident edge:
// terminals appear once, a Steiner node v appears deg(v) times. Rooted at the
// lowest-id terminal leaf; children in ascending id order.
// `is_terminal` is indexed by node id.
[[nodiscard]] std::vector<NodeId> dfs_cycle(std::span<const Edge> tree_edges, const std::vector<char>& is_terminal,
                                            bool strict = true);

struct ComponentStructure {
  std::size_t components = 0;
  std::size_t non_trees = 0;
  // (terminal, component) pairs where the terminal has two or more neighbors.
  std::size_t repeated_attachments = 0;
  [[nodiscard]] bool ok() const { return non_trees == 0 && repeated_attachments == 0; }
};
// Checks that every R-component is a tree whose terminals each have a single
// neighbor inside the Steiner part.
[[nodiscard]] ComponentStructure r_component_structure(const SolutionGraph& g);

}  // namespace relaysynth
