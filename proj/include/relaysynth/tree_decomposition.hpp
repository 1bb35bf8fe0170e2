#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "relaysynth/local_replacement.hpp"
#include "relaysynth/rational_lp.hpp"

namespace relaysynth {

// Unrooted input tree: node ids 0..n-1, integer edge costs.
struct CostedTree {
  std::size_t node_count = 0;
  std::vector<TreeEdge> edges;
  [[nodiscard]] std::int64_t total_cost() const;
  [[nodiscard]] std::vector<int> degrees() const;
};

struct CostedRootedTree {
  NodeId root = -1;
  std::vector<NodeId> parent;       // -1 at the root
  std::vector<std::int64_t> cost;   // cost of the edge to the parent
  std::vector<std::vector<NodeId>> children;
  std::vector<char> terminal;
  // Original node for every node: companions map to the node they split
  // off, split nodes and a synthetic root map to -1.
  std::vector<NodeId> origin;
  std::vector<char> companion;

  [[nodiscard]] std::size_t size() const { return parent.size(); }
  [[nodiscard]] std::int64_t total_cost() const;
  [[nodiscard]] std::vector<int> depths() const;
  [[nodiscard]] bool is_ancestor(NodeId a, NodeId d) const;
};

struct BinaryProperties {
  bool a = false;  // leaves are exactly the terminals
  bool b = false;  // costs 0 or >= 1, at most one zero child edge per node
  bool c = false;  // every internal node has two children
  bool valid = false;  // parent/children arrays describe one rooted tree
  [[nodiscard]] bool ok() const { return a && b && c && valid; }
};
[[nodiscard]] BinaryProperties check_binary(const CostedRootedTree& t);

struct Normalization {
  CostedRootedTree tree;
  int removed_leaves = 0;
  int companions = 0;
  int contractions = 0;
  int splits = 0;
};

// Input costs must be >= 1.  Roots at the smallest internal node.
[[nodiscard]] Normalization normalize_binary(const CostedTree& tree, std::span<const NodeId> terminals);

struct ProperMapping {
  std::vector<NodeId> f;  // -1 at terminals
};

struct MappingAudit {
  bool descendant = true;
  bool edge_disjoint = true;
  bool has_f1 = true;
  [[nodiscard]] bool ok() const { return descendant && edge_disjoint && has_f1; }
};

// Nodes on P_T(u, f(u)) from u down to f(u).
[[nodiscard]] std::vector<NodeId> mapping_path(const CostedRootedTree& t, NodeId u, NodeId fu);

[[nodiscard]] ProperMapping proper_mapping(const CostedRootedTree& t);
[[nodiscard]] MappingAudit audit_mapping(const CostedRootedTree& t, const ProperMapping& m);

struct LevelPart {
  NodeId root = -1;
  std::vector<NodeId> edges;        // child endpoint of every edge in the part
  std::vector<NodeId> connecting;   // non-terminal leaves u, joined to f(u)
  std::vector<NodeId> hyperedge;    // terminals of the augmented part, sorted
};

struct LevelCutPartition {
  int levels = 1;   // floor(lg p)
  int shift = 0;
  std::vector<LevelPart> parts;
  std::size_t path_count = 0;
  std::int64_t path_cost = 0;
  std::size_t rank = 0;
  bool connected = false;
  bool rank_ok = false;
  bool count_ok = false;  // path_count >= |parts| - 1
  bool cost_ok = false;   // path_cost * levels <= c(T)
  [[nodiscard]] bool ok() const { return connected && rank_ok && count_ok && cost_ok; }
};

[[nodiscard]] LevelCutPartition level_cut_partition(const CostedRootedTree& t, const ProperMapping& m, int p);

// Connected hypergraph over the terminals of an unrooted tree, rank <= p,
// checked against sum c(F_A) + |E| - 1 <= (1 + 2/floor(lg p)) c(T).
struct EdgeDecomposition {
  std::vector<std::vector<NodeId>> hyperedges;  // original ids
  std::int64_t sum_cost = 0;                    // sum of c(F_A)
  std::int64_t tree_cost = 0;
  int levels = 1;
  bool binary_ok = false;
  bool mapping_ok = false;
  bool partition_ok = false;
  bool connected = false;
  bool rank_ok = false;
  bool bound_ok = false;
  [[nodiscard]] bool ok() const {
    return binary_ok && mapping_ok && partition_ok && connected && rank_ok && bound_ok;
  }
};
[[nodiscard]] EdgeDecomposition edge_decomposition(const CostedTree& tree, std::span<const NodeId> terminals, int p);

struct DecompositionCertificate {
  int delta = 0;
  int k = 0;
  int p = 0;
  std::vector<std::vector<NodeId>> hyperedges;
  std::vector<std::vector<NodeId>> support;  // V_A intersected with S
  std::size_t steiner = 0;                   // |S|
  std::size_t total = 0;                     // sum |V_A n S|
  std::size_t rank = 0;
  Rational bound;
  bool connected = false;
  bool components_ok = true;  // every inner decomposition passed its own audit
  [[nodiscard]] bool rank_ok() const { return rank <= static_cast<std::size_t>(k); }
  [[nodiscard]] bool bound_ok() const { return Rational(static_cast<long>(total)) <= bound; }
  [[nodiscard]] bool ok() const { return connected && components_ok && rank_ok() && bound_ok(); }
};

// Edge costs are ignored.
[[nodiscard]] DecompositionCertificate alpha_k_certificate(const CostedTree& tree, std::span<const NodeId> terminals,
                                                           int delta, int k);

[[nodiscard]] std::string certificate_json(const DecompositionCertificate& c);

// Random tree with max degree <= delta and unit costs; leaves are always
// terminals, internal nodes are terminals with the given probability.
struct RandomTree {
  CostedTree tree;
  std::vector<NodeId> terminals;
};
[[nodiscard]] RandomTree random_bounded_tree(std::size_t n, int delta, double internal_terminal_probability,
                                             std::mt19937_64& rng, std::int64_t max_cost = 1);

}  // namespace relaysynth
