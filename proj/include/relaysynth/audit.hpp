#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relaysynth/local_replacement.hpp"

namespace relaysynth {

// log-bound | overlap | certificate | decomposition | witness | degree-reduce
[[nodiscard]] const std::vector<std::string>& audit_kinds();
// Also accepts theorem3-bound, lemma1, lemma6 and lemma7 for the first four.
[[nodiscard]] std::string canonical_audit_kind(const std::string& kind);

struct AuditConfig {
  std::string kind = "overlap";
  int trials = 100;
  std::uint64_t seed = 1;
  int n = 8;           // instance size cap (witness), node cap for hypergraphs and overlap trees
  double box = 4.0;    // witness instances
  int k = 0;           // certificate: 0 alternates 8 and 16
  int delta = 5;       // certificate
  int tree_nodes = 40; // certificate / decomposition tree size cap
};

struct AuditRow {
  int trial = 0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::vector<std::pair<std::string, std::string>> fields;
};

struct AuditSummary {
  std::string kind;
  int trials = 0;
  int violations = 0;
  std::vector<AuditRow> rows;
  double wall_ms = 0;
};

[[nodiscard]] AuditSummary run_audit(const AuditConfig& config);
[[nodiscard]] std::string audit_json(const AuditSummary& s, bool with_timing = true);
[[nodiscard]] std::string audit_csv(const AuditSummary& s);

struct RandomHypergraph {
  CostedHypergraph h{0, {}};
  std::vector<TreeEdge> tree;  // minimum spanning tree over the pair hyperedges
};

// 3..max_nodes nodes, at most max_edges hyperedges (a random pair spanning
// tree first), integer costs 1..max_cost.
[[nodiscard]] RandomHypergraph random_costed_hypergraph(std::mt19937_64& rng, int max_nodes = 8, int max_edges = 20,
                                                        int max_cost = 9);

}  // namespace relaysynth
