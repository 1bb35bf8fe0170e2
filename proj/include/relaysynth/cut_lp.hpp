#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaysynth/bead_graph.hpp"
#include "relaysynth/rational_lp.hpp"

namespace relaysynth {

// Capacities on the edges of a BeadGraph, indexed like BeadGraph::edges().
struct FractionalBeadSolution {
  std::vector<Rational> x;

  [[nodiscard]] Rational value(const BeadGraph& graph) const;
};

// A biset over R with requirement f and the capacity currently covering it.
struct BisetCut {
  Biset biset;
  int requirement = 0;
  Rational covered;
  std::vector<int> covering_edges;
};

// Requirement of a biset over the terminals: max r over demands it separates
// minus |boundary|, or 0 when the boundary leaves Q = B.
[[nodiscard]] int biset_requirement(const Instance& instance, const Biset& biset);

// Separation for {0,1,2} demands: for every demand a min cut with empty
// boundary, and for r = 2 demands a min cut in K_R - w for each unstable w.
// Returns every violated biset found (deduplicated), empty when x is feasible.
[[nodiscard]] std::vector<BisetCut> violated_bisets(const Instance& instance, const BeadGraph& graph,
                                                     const std::vector<Rational>& x);
[[nodiscard]] std::optional<BisetCut> fractional_feasible(const Instance& instance, const BeadGraph& graph,
                                                          const FractionalBeadSolution& x);

struct TauStarOptions {
  std::size_t terminal_cap = 16;
  std::size_t max_constraints = 5000;
};

struct TauStarResult {
  Rational value;
  FractionalBeadSolution x;
  std::size_t constraints = 0;
  int rounds = 0;
  long pivots = 0;
};

// Optimum of the cut-LP over the bead graph of the instance (k = max demand),
// by constraint generation with an exact simplex.
[[nodiscard]] TauStarResult tau_star(const Instance& instance, const BeadGraph& graph,
                                     const TauStarOptions& options = {});
[[nodiscard]] TauStarResult tau_star(const Instance& instance, const TauStarOptions& options = {});

struct HalfIntegralWitness {
  FractionalBeadSolution x;
  Rational value;
  // One DFS cycle per R-component, as node ids of the solution graph.
  std::vector<std::vector<NodeId>> cycles;
};

// Replaces every R-component tree by its DFS cycle at capacity 1/2 and keeps
// terminal-terminal edges at capacity 1. Throws when a component is not a
// tree or a terminal touches a component twice (the input was not minimal).
[[nodiscard]] HalfIntegralWitness half_integral_witness(const Instance& instance, const BeadGraph& graph,
                                                        const SolutionGraph& minimal);

[[nodiscard]] std::string rational_string(const Rational& q);

}  // namespace relaysynth
