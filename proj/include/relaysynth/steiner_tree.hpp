#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relaysynth/bead_graph.hpp"
#include "relaysynth/instance.hpp"

namespace relaysynth {

struct OracleConfig {
  // Rounds of pairwise unit-circle intersections grown from the terminals.
  int depth = 2;
  // Optional square grid over the bounding box of A inflated by 1.
  bool grid = false;
  double grid_step = 0.05;
  std::size_t max_candidates = 6000;
  long max_nodes = 2'000'000;
  int max_steiner = 8;
};

// Candidate Steiner locations for connecting the terminals in A: the terminals
// themselves come first (indices 0..|A|-1), then circle intersections, bead
// points along terminal segments and grid points, deduplicated.
[[nodiscard]] std::vector<Point> candidate_points(const Instance& instance, std::span<const NodeId> terminals,
                                                  const OracleConfig& config);

struct ComponentSolution {
  int cost = 0;
  std::vector<Point> steiner;
  // Terminal pairs realized as bead chains (the d-hat MST fallback).
  std::vector<Edge> bead_pairs;
  // True when the search ran out of budget before proving optimality.
  bool heuristic = false;
};

// Fewest Steiner points (over the candidate universe) whose unit-disk graph
// together with A is connected, by iterative deepening.
[[nodiscard]] ComponentSolution exact_component_oracle(const Instance& instance, std::span<const NodeId> terminals,
                                                       const OracleConfig& config = {});

// Bead points of the segment u-v: c = bead_count(d) points equally spaced.
[[nodiscard]] std::vector<Point> segment_beads(const Instance& instance, NodeId u, NodeId v);

struct Hyperedge {
  std::vector<NodeId> terminals;  // sorted
  ComponentSolution witness;
  [[nodiscard]] int cost() const { return witness.cost; }
};

struct ComponentHypergraph {
  std::size_t node_count = 0;
  int k = 2;
  // Ordered by size, then lexicographically.
  std::vector<Hyperedge> edges;
};

// All terminal subsets of size 2..k. Pairs use the closed form d-hat, larger
// sets the component oracle. Costs are then closed downward: a subset never
// costs more than a superset whose witness also connects it.
[[nodiscard]] ComponentHypergraph build_component_hypergraph(const Instance& instance, int k,
                                                             const OracleConfig& config = {},
                                                             std::size_t budget = 5000);
[[nodiscard]] std::string hypergraph_json(const Instance& instance, const ComponentHypergraph& h);

// MST of the terminals under d-hat (ties by endpoint ids), as edge ids of the
// k = 1 bead graph.
[[nodiscard]] std::vector<int> mst_bead_edges(const Instance& instance, const BeadGraph& graph);

// Requires r = 1 on every pair. Realizes the d-hat MST as bead chains.
[[nodiscard]] SolutionGraph mst_baseline(const Instance& instance);

struct BruteForceResult {
  int count = 0;
  std::vector<Point> placement;
  long nodes = 0;
};

// Smallest multiset of candidate points (up to max_s) making the instance
// feasible. Throws ErrorCode::limit when nothing within max_s works or the
// node budget runs out first.
[[nodiscard]] BruteForceResult brute_force_opt(const Instance& instance, int max_s,
                                               const OracleConfig& config = {});

}  // namespace relaysynth
