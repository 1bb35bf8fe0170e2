#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relaysynth/bead_graph.hpp"
#include "relaysynth/rational_lp.hpp"

namespace relaysynth {

struct BeadSolution {
  std::vector<int> selected;  // sorted BeadGraph edge ids
  std::int64_t cost = 0;
  bool optimal = false;
  long nodes = 0;  // branch-and-bound nodes visited
};

struct TauIntegralOptions {
  std::size_t terminal_cap = 10;
  double time_limit_seconds = 120.0;
  // Skip the tau* root bound (used when the caller has none to offer).
  bool use_tau_star = true;
};

// Adds, while some demand is unmet, the cheapest unselected edge covering the
// violated biset (ties by edge id). Returns edges in insertion order.
[[nodiscard]] std::vector<int> augment_to_feasible(const Instance& instance, const BeadGraph& graph,
                                                   std::vector<int> selected);

// Tries to drop edges from the back of `in_order` to the front, keeping
// feasibility. Zero-cost edges are never dropped.
[[nodiscard]] std::vector<int> reverse_delete(const Instance& instance, const BeadGraph& graph,
                                              const std::vector<int>& in_order);

// Minimum-cost edge multiset of the bead graph that is (r, B)-connected, by
// branch-and-bound on violated bisets. `lower_bound` (typically tau*) stops
// the search as soon as an incumbent reaches its ceiling.
[[nodiscard]] BeadSolution tau_integral(const Instance& instance, const BeadGraph& graph,
                                        const TauIntegralOptions& options = {},
                                        std::optional<Rational> lower_bound = std::nullopt);
[[nodiscard]] BeadSolution tau_integral(const Instance& instance, int k, const TauIntegralOptions& options = {});

}  // namespace relaysynth
