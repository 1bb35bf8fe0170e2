#include "relaysynth/connectivity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stack>

#include "relaysynth/maxflow.hpp"

namespace relaysynth {

std::vector<NodeId> Biset::boundary() const {
  std::vector<NodeId> out;
  std::set_difference(outer.begin(), outer.end(), inner.begin(), inner.end(), std::back_inserter(out));
  return out;
}

bool Biset::in_inner(NodeId v) const { return std::binary_search(inner.begin(), inner.end(), v); }
bool Biset::in_outer(NodeId v) const { return std::binary_search(outer.begin(), outer.end(), v); }

bool Biset::covered_by(const Edge& e) const {
  return (in_inner(e.u) && !in_outer(e.v)) || (in_inner(e.v) && !in_outer(e.u));
}

PairConnectivity q_connectivity(std::size_t node_count, std::span<const Edge> edges, const std::vector<char>& in_q,
                                NodeId u, NodeId v, int limit) {
  const auto n = static_cast<NodeId>(node_count);
  if (u == v) fail(ErrorCode::invalid_argument, "q_connectivity needs two distinct nodes");
  if (u < 0 || u >= n || v < 0 || v >= n) fail(ErrorCode::invalid_argument, "q_connectivity node absent from graph");
  if (in_q.size() < node_count) fail(ErrorCode::invalid_argument, "Q membership vector too short");

  // Node x splits into in = 2x and out = 2x + 1.
  const int big = static_cast<int>(edges.size()) + 1;
  FlowNetwork<int> net(2 * node_count);
  std::vector<int> split_arc(node_count, -1);
  for (NodeId x = 0; x < n; ++x) {
    const bool capacitated = in_q[x] && x != u && x != v;
    split_arc[x] = net.add_arc(2 * x, 2 * x + 1, capacitated ? 1 : big);
  }
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    net.add_arc(2 * e.u + 1, 2 * e.v, 1);
    net.add_arc(2 * e.v + 1, 2 * e.u, 1);
  }
  PairConnectivity out;
  out.value = net.max_flow(2 * u + 1, 2 * v, limit);
  if (out.value >= limit) return out;

  const auto reach = net.residual_reachable(2 * u + 1);
  for (NodeId x = 0; x < n; ++x) {
    const bool in_side = reach[2 * x];
    const bool out_side = reach[2 * x + 1];
    if (out_side) {
      out.witness.inner.push_back(x);
      out.witness.outer.push_back(x);
    } else if (in_side) {
      out.cut.nodes.push_back(x);
      out.witness.outer.push_back(x);
    }
  }
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    const bool cut = (reach[2 * e.u + 1] && !reach[2 * e.v]) || (reach[2 * e.v + 1] && !reach[2 * e.u]);
    // Parallel copies are separate elements; record each occurrence.
    if (cut) out.cut.edges.push_back(e);
  }
  return out;
}

PairConnectivity q_connectivity(const SolutionGraph& g, NodeId u, NodeId v, int limit) {
  return q_connectivity(g.node_count(), g.edges, g.in_q, u, v, limit);
}

std::vector<DemandViolation> check_demands(std::size_t node_count, std::span<const Edge> edges,
                                           const std::vector<char>& in_q, std::span<const Demand> demands,
                                           bool first_only) {
  std::vector<DemandViolation> out;
  for (const auto& d : demands) {
    auto res = q_connectivity(node_count, edges, in_q, d.u, d.v, d.r);
    if (res.value >= d.r) continue;
    out.push_back({d.u, d.v, d.r, res.value, std::move(res.witness), std::move(res.cut)});
    if (first_only) break;
  }
  return out;
}

std::vector<DemandViolation> verify_feasible(const Instance& instance, const SolutionGraph& g) {
  return check_demands(g.node_count(), g.edges, g.in_q, instance.demands());
}

bool is_feasible(const Instance& instance, const SolutionGraph& g) {
  return check_demands(g.node_count(), g.edges, g.in_q, instance.demands(), true).empty();
}

namespace {

SolutionGraph drop_steiner(const Instance& instance, const SolutionGraph& g, NodeId s) {
  SolutionGraph out;
  out.terminal_count = g.terminal_count;
  out.steiner = g.steiner;
  out.steiner.erase(out.steiner.begin() + (s - static_cast<NodeId>(g.terminal_count)));
  std::vector<Edge> edges;
  for (const auto& e : g.edges) {
    if (e.u == s || e.v == s) continue;
    edges.emplace_back(e.u > s ? e.u - 1 : e.u, e.v > s ? e.v - 1 : e.v);
  }
  return with_edges(instance, out, std::move(edges));
}

}  // namespace

SolutionGraph prune_minimal(const Instance& instance, const SolutionGraph& g) {
  if (!is_feasible(instance, g)) fail(ErrorCode::infeasible, "prune_minimal: input solution is infeasible");
  std::vector<std::pair<double, Edge>> order;
  for (const auto& e : g.edges) order.emplace_back(edge_length(instance, g, e), e);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::set<Edge> kept(g.edges.begin(), g.edges.end());
  for (const auto& [len, e] : order) {
    kept.erase(e);
    std::vector<Edge> trial(kept.begin(), kept.end());
    if (!check_demands(g.node_count(), trial, g.in_q, instance.demands(), true).empty()) kept.insert(e);
  }
  SolutionGraph cur = with_edges(instance, g, std::vector<Edge>(kept.begin(), kept.end()));
  for (auto s = static_cast<NodeId>(cur.node_count()) - 1; s >= static_cast<NodeId>(cur.terminal_count); --s) {
    SolutionGraph trial = drop_steiner(instance, cur, s);
    if (is_feasible(instance, trial)) cur = std::move(trial);
  }
  return cur;
}

std::vector<Block> blocks(std::size_t node_count, std::span<const Edge> edges) {
  const auto n = static_cast<NodeId>(node_count);
  std::vector<std::vector<std::pair<NodeId, int>>> adj(node_count);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto& e = edges[i];
    if (e.u == e.v) continue;
    adj[e.u].emplace_back(e.v, i);
    adj[e.v].emplace_back(e.u, i);
  }
  std::vector<int> disc(node_count, -1), low(node_count, 0);
  std::vector<int> edge_stack;
  std::vector<Block> out;
  int timer = 0;

  auto emit = [&](int until_edge) {
    Block b;
    std::set<NodeId> nodes;
    while (true) {
      const int ei = edge_stack.back();
      edge_stack.pop_back();
      b.edges.push_back(ei);
      nodes.insert(edges[ei].u);
      nodes.insert(edges[ei].v);
      if (ei == until_edge) break;
    }
    std::sort(b.edges.begin(), b.edges.end());
    b.nodes.assign(nodes.begin(), nodes.end());
    out.push_back(std::move(b));
  };

  struct Frame {
    NodeId v;
    int parent_edge;
    std::size_t next;
  };
  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < adj[f.v].size()) {
        const auto [w, ei] = adj[f.v][f.next++];
        if (ei == f.parent_edge) continue;
        if (disc[w] == -1) {
          edge_stack.push_back(ei);
          disc[w] = low[w] = timer++;
          stack.push_back({w, ei, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(ei);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] >= disc[parent.v]) emit(done.parent_edge);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) { return a.edges < b.edges; });
  return out;
}

std::vector<RComponent> r_components(std::size_t node_count, std::span<const Edge> edges,
                                     const std::vector<char>& is_terminal) {
  const auto n = static_cast<NodeId>(node_count);
  std::vector<int> comp(node_count, -1);
  std::vector<std::vector<NodeId>> adj(node_count);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<RComponent> out;
  for (NodeId s = 0; s < n; ++s) {
    if (is_terminal[s] || comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    RComponent c;
    std::vector<NodeId> todo{s};
    comp[s] = id;
    std::set<NodeId> attach;
    while (!todo.empty()) {
      const NodeId x = todo.back();
      todo.pop_back();
      c.inner.push_back(x);
      for (NodeId y : adj[x]) {
        if (is_terminal[y]) {
          attach.insert(y);
        } else if (comp[y] == -1) {
          comp[y] = id;
          todo.push_back(y);
        }
      }
    }
    std::sort(c.inner.begin(), c.inner.end());
    c.attachments.assign(attach.begin(), attach.end());
    out.push_back(std::move(c));
  }
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto& e = edges[i];
    const int cu = is_terminal[e.u] ? -1 : comp[e.u];
    const int cv = is_terminal[e.v] ? -1 : comp[e.v];
    if (cu >= 0)
      out[cu].edges.push_back(i);
    else if (cv >= 0)
      out[cv].edges.push_back(i);
  }
  return out;
}

std::vector<RComponent> r_components(const SolutionGraph& g) {
  std::vector<char> term(g.node_count(), 0);
  for (std::size_t t = 0; t < g.terminal_count; ++t) term[t] = 1;
  return r_components(g.node_count(), g.edges, term);
}

bool is_tree(std::size_t node_count_in_tree, std::span<const Edge> edges) {
  if (edges.size() + 1 != node_count_in_tree) return false;
  std::map<NodeId, NodeId> parent;
  std::function<NodeId(NodeId)> find = [&](NodeId x) -> NodeId {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    return it->second = find(it->second);
  };
  for (const auto& e : edges) {
    const NodeId a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return parent.size() == node_count_in_tree;
}

std::vector<NodeId> dfs_cycle(std::span<const Edge> tree_edges, const std::vector<char>& is_terminal, bool strict) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& e : tree_edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  if (!is_tree(adj.size(), tree_edges)) fail(ErrorCode::invalid_argument, "dfs_cycle: input is not a tree");
  auto terminal = [&](NodeId v) { return static_cast<std::size_t>(v) < is_terminal.size() && is_terminal[v]; };
  NodeId root = -1;
  for (auto& [v, nbrs] : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    if (terminal(v) && nbrs.size() > 1 && strict)
      fail(ErrorCode::invalid_argument, "dfs_cycle: terminal " + std::to_string(v) + " is an internal node");
    if (root == -1 && terminal(v) && nbrs.size() == 1) root = v;
  }
  if (root == -1) fail(ErrorCode::invalid_argument, "dfs_cycle: tree has no terminal leaf");

  std::vector<NodeId> cycle;
  struct Frame {
    NodeId v;
    NodeId parent;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, -1, 0}};
  cycle.push_back(root);
  while (!stack.empty()) {
    auto& f = stack.back();
    const auto& nbrs = adj[f.v];
    if (f.next < nbrs.size()) {
      const NodeId w = nbrs[f.next++];
      if (w == f.parent) continue;
      cycle.push_back(w);
      stack.push_back({w, f.v, 0});
    } else {
      stack.pop_back();
      // Returning into a Steiner node visits another copy of it.
      if (!stack.empty() && !terminal(stack.back().v)) cycle.push_back(stack.back().v);
    }
  }
  return cycle;
}

ComponentStructure r_component_structure(const SolutionGraph& g) {
  ComponentStructure out;
  for (const auto& comp : r_components(g)) {
    ++out.components;
    std::vector<Edge> tree;
    for (int ei : comp.edges) tree.push_back(g.edges[ei]);
    if (!is_tree(comp.inner.size() + comp.attachments.size(), tree)) ++out.non_trees;
    std::map<NodeId, int> touches;
    for (const auto& e : tree) {
      if (!g.is_steiner(e.u)) ++touches[e.u];
      if (!g.is_steiner(e.v)) ++touches[e.v];
    }
    for (const auto& [t, c] : touches)
      if (c > 1) ++out.repeated_attachments;
  }
  return out;
}

}  // namespace relaysynth
