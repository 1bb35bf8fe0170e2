#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relaysynth/rational_lp.hpp"
#include "relaysynth/steiner_tree.hpp"

namespace relaysynth {

struct CostedHyperedge {
  std::vector<NodeId> nodes;  // sorted, at least 2
  std::int64_t cost = 0;
};

class CostedHypergraph {
 public:
  CostedHypergraph(std::size_t node_count, std::vector<CostedHyperedge> edges);

  [[nodiscard]] std::size_t node_count() const { return nodes_; }
  [[nodiscard]] const std::vector<CostedHyperedge>& edges() const { return edges_; }
  [[nodiscard]] bool connected() const;
  // Index of the size-2 hyperedge {u, v}, or -1.
  [[nodiscard]] int pair_index(NodeId u, NodeId v) const;

 private:
  std::size_t nodes_;
  std::vector<CostedHyperedge> edges_;
};

struct TreeEdge {
  NodeId u = 0;
  NodeId v = 0;
  std::int64_t cost = 0;
};

// Ids (into `tree`) of a maximum-cost edge set overlapped by A: the edges a
// cost-ordered Kruskal rejects once A is pre-merged. Ties go to lower ids.
// `rep` maps every node to its current representative (identity if empty).
[[nodiscard]] std::vector<int> max_overlapped_set(std::size_t node_count, std::span<const TreeEdge> tree,
                                                  std::span<const NodeId> a, std::span<const NodeId> rep = {});

struct ReplacementStep {
  int hyperedge = 0;
  std::int64_t s = 0;          // c(A_i)
  std::vector<int> removed;    // F(A_i) as tree edge ids
  std::int64_t removed_cost = 0;
  std::int64_t f = 0;          // c(F_i) after the step
};

struct LocalReplacementResult {
  std::vector<int> selection;  // hyperedge ids J, in selection order
  std::vector<int> remaining;  // tree edge ids left in F
  std::int64_t f0 = 0;
  std::int64_t cost = 0;       // c(F) + c(J)
  std::vector<ReplacementStep> trace;
};

// `tree` must span the nodes using edges whose endpoints are size-2 hyperedges.
[[nodiscard]] LocalReplacementResult local_replacement(const CostedHypergraph& h, std::span<const TreeEdge> tree);

// Minimum cost of a connected spanning sub-hypergraph (exhaustive, pruned).
[[nodiscard]] std::int64_t min_spanning_subhypergraph(const CostedHypergraph& h);

// c <= tau (1 + ln(f0 / tau)) with ln to 30 digits and a one-ulp guard.
// tau = 0 requires c = 0.
[[nodiscard]] bool within_log_bound(std::int64_t cost, std::int64_t tau, std::int64_t f0);

struct TraceAudit {
  bool recursion_ok = true;        // f_i <= f_{i-1} - s_i max(f_{i-1}/tau, 1) for all i
  bool monotone_ok = true;         // f strictly decreasing, |F| shrinking
  bool telescoping_ok = true;           // f_q + sum s_i <= tau (1 + ln(f0/tau))
  bool bound_ok = true;            // final cost against the same bound
  int q = -1;
};
[[nodiscard]] TraceAudit audit_trace(const LocalReplacementResult& r, std::int64_t tau);

// sum over E of c(F(A)) >= c(F).
[[nodiscard]] bool overlap_sum_holds(std::size_t node_count, std::span<const TreeEdge> tree,
                                const std::vector<std::vector<NodeId>>& hyperedges);

[[nodiscard]] std::string trace_json(const CostedHypergraph& h, const LocalReplacementResult& r);

struct SchemeConfig {
  int k = 3;
  OracleConfig oracle;
};

struct SchemeResult {
  SolutionGraph graph;
  ComponentHypergraph hypergraph;
  LocalReplacementResult replacement;
  std::int64_t mst_cost = 0;       // c(T*)
  std::int64_t selected_cost = 0;  // sum of c*(A) over the output
  std::size_t union_points = 0;    // Steiner points before pruning
  bool heuristic_components = false;
};

// Requires r = 1 on every pair.
[[nodiscard]] SchemeResult st_msp_scheme(const Instance& instance, const SchemeConfig& config);

// Removes redundant Steiner points and returns the full unit-disk graph over
// the survivors (bead chains stay as they are for finite metrics).
[[nodiscard]] SolutionGraph compact_solution(const Instance& instance, const SolutionGraph& g);

}  // namespace relaysynth
