#include "relaysynth/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

#include <json.hpp>

#include "relaysynth/generate.hpp"

namespace relaysynth {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

int floor_lg(int p) { return static_cast<int>(std::bit_width(static_cast<unsigned>(p))) - 1; }

void validate_tree(const CostedTree& t, const char* who) {
  const std::string w = who;
  if (t.node_count == 0) fail(ErrorCode::invalid_argument, w + ": empty tree");
  if (t.node_count == 1) fail(ErrorCode::invalid_argument, w + ": single-node tree");
  if (t.edges.size() + 1 != t.node_count) fail(ErrorCode::invalid_argument, w + ": edge count is not n - 1");
  Dsu dsu(t.node_count);
  for (const auto& e : t.edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= t.node_count ||
        static_cast<std::size_t>(e.v) >= t.node_count)
      fail(ErrorCode::invalid_argument, w + ": edge endpoint out of range");
    if (!dsu.unite(e.u, e.v)) fail(ErrorCode::invalid_argument, w + ": edges contain a cycle");
  }
}

std::vector<char> terminal_mask(std::size_t n, std::span<const NodeId> terminals, const char* who) {
  if (terminals.empty()) fail(ErrorCode::invalid_argument, std::string(who) + ": empty terminal set");
  std::vector<char> mask(n, 0);
  for (NodeId v : terminals) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      fail(ErrorCode::invalid_argument, std::string(who) + ": terminal out of range");
    mask[v] = 1;
  }
  return mask;
}

// Tree rooted at node 0 in BFS order.
struct RootedView {
  std::vector<NodeId> order;
  std::vector<NodeId> parent;
  std::vector<std::int64_t> up_cost;

  explicit RootedView(const CostedTree& t) : parent(t.node_count, -1), up_cost(t.node_count, 0) {
    std::vector<std::vector<std::pair<NodeId, std::int64_t>>> adj(t.node_count);
    for (const auto& e : t.edges) {
      adj[e.u].push_back({e.v, e.cost});
      adj[e.v].push_back({e.u, e.cost});
    }
    std::vector<char> seen(t.node_count, 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto [w, c] : adj[order[i]])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[i];
          up_cost[w] = c;
          order.push_back(w);
        }
  }

  // Per node: does the edge to its parent lie on the minimal subtree over a.
  [[nodiscard]] std::vector<char> spanning_edges(const std::vector<NodeId>& a) const {
    std::vector<int> cnt(parent.size(), 0);
    for (NodeId v : a) ++cnt[v];
    std::vector<char> in(parent.size(), 0);
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId v = order[i];
      if (cnt[v] > 0 && cnt[v] < static_cast<int>(a.size())) in[v] = 1;
      cnt[parent[v]] += cnt[v];
    }
    return in;
  }

  [[nodiscard]] std::int64_t spanning_cost(const std::vector<NodeId>& a) const {
    const auto in = spanning_edges(a);
    std::int64_t c = 0;
    for (std::size_t v = 0; v < in.size(); ++v)
      if (in[v]) c += up_cost[v];
    return c;
  }

  [[nodiscard]] std::vector<NodeId> spanning_nodes(const std::vector<NodeId>& a) const {
    const auto in = spanning_edges(a);
    std::vector<char> mark(parent.size(), 0);
    for (NodeId v : a) mark[v] = 1;
    for (std::size_t v = 0; v < in.size(); ++v)
      if (in[v]) mark[v] = mark[parent[v]] = 1;
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < mark.size(); ++v)
      if (mark[v]) out.push_back(static_cast<NodeId>(v));
    return out;
  }
};

NodeId f1_child(const CostedRootedTree& t, NodeId u) {
  for (NodeId c : t.children[u])
    if (t.cost[c] >= 1) return c;
  return -1;
}

}  // namespace

std::int64_t CostedTree::total_cost() const {
  std::int64_t c = 0;
  for (const auto& e : edges) c += e.cost;
  return c;
}

std::vector<int> CostedTree::degrees() const {
  std::vector<int> d(node_count, 0);
  for (const auto& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::int64_t CostedRootedTree::total_cost() const {
  std::int64_t c = 0;
  for (std::size_t v = 0; v < size(); ++v)
    if (parent[v] >= 0) c += cost[v];
  return c;
}

std::vector<int> CostedRootedTree::depths() const {
  std::vector<int> d(size(), 0);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : children[v]) {
      d[c] = d[v] + 1;
      stack.push_back(c);
    }
  }
  return d;
}

bool CostedRootedTree::is_ancestor(NodeId a, NodeId d) const {
  for (NodeId x = d; x >= 0; x = parent[x])
    if (x == a) return true;
  return false;
}

BinaryProperties check_binary(const CostedRootedTree& t) {
  BinaryProperties p;
  const std::size_t n = t.size();
  if (n == 0 || t.root < 0 || static_cast<std::size_t>(t.root) >= n || t.children.size() != n ||
      t.cost.size() != n || t.terminal.size() != n || t.parent[t.root] != -1)
    return p;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{t.root};
  seen[t.root] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : t.children[v]) {
      if (c < 0 || static_cast<std::size_t>(c) >= n || seen[c] || t.parent[c] != v) return p;
      seen[c] = 1;
      ++reached;
      stack.push_back(c);
    }
  }
  if (reached != n) return p;
  p.valid = true;
  p.a = p.b = p.c = true;
  for (std::size_t v = 0; v < n; ++v) {
    const bool leaf = t.children[v].empty();
    if (leaf != static_cast<bool>(t.terminal[v])) p.a = false;
    if (!leaf && t.children[v].size() != 2) p.c = false;
    int zeros = 0;
    for (NodeId c : t.children[v]) {
      if (t.cost[c] < 0) p.b = false;
      if (t.cost[c] == 0) ++zeros;
    }
    if (zeros > 1) p.b = false;
  }
  return p;
}

Normalization normalize_binary(const CostedTree& tree, std::span<const NodeId> terminals) {
  validate_tree(tree, "normalize_binary");
  auto term = terminal_mask(tree.node_count, terminals, "normalize_binary");
  for (const auto& e : tree.edges)
    if (e.cost < 1) fail(ErrorCode::invalid_argument, "normalize_binary: edge costs must be >= 1");

  Normalization out;
  // Working graph: adjacency maps with costs, nodes may be appended.
  std::vector<std::vector<std::pair<NodeId, std::int64_t>>> adj(tree.node_count);
  for (const auto& e : tree.edges) {
    adj[e.u].push_back({e.v, e.cost});
    adj[e.v].push_back({e.u, e.cost});
  }
  std::vector<NodeId> origin(tree.node_count);
  std::iota(origin.begin(), origin.end(), 0);
  std::vector<char> companion(tree.node_count, 0);
  std::vector<char> alive(tree.node_count, 1);
  auto drop_neighbor = [&](NodeId v, NodeId w) {
    auto& a = adj[v];
    a.erase(std::remove_if(a.begin(), a.end(), [&](const auto& x) { return x.first == w; }), a.end());
  };

  // Step 1: strip Steiner leaves, then give internal terminals a companion leaf.
  std::deque<NodeId> queue;
  for (std::size_t v = 0; v < tree.node_count; ++v)
    if (!term[v] && adj[v].size() == 1) queue.push_back(static_cast<NodeId>(v));
  std::size_t live = tree.node_count;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (!alive[v] || adj[v].size() != 1) continue;
    const NodeId w = adj[v][0].first;
    alive[v] = 0;
    adj[v].clear();
    drop_neighbor(w, v);
    --live;
    ++out.removed_leaves;
    if (!term[w] && adj[w].size() == 1) queue.push_back(w);
  }
  if (live < 2) fail(ErrorCode::invalid_argument, "normalize_binary: fewer than two terminals");
  auto add_node = [&](NodeId from, bool is_terminal, bool is_companion) {
    const NodeId id = static_cast<NodeId>(adj.size());
    adj.emplace_back();
    origin.push_back(from);
    companion.push_back(is_companion ? 1 : 0);
    alive.push_back(1);
    term.push_back(is_terminal ? 1 : 0);
    return id;
  };
  const std::size_t base = adj.size();
  for (std::size_t v = 0; v < base; ++v)
    if (alive[v] && term[v] && adj[v].size() >= 2) {
      const NodeId c = add_node(static_cast<NodeId>(v), true, true);
      adj[v].push_back({c, 0});
      adj[c].push_back({static_cast<NodeId>(v), 0});
      term[v] = 0;
      ++out.companions;
    }

  NodeId root = -1;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (alive[v] && adj[v].size() >= 2) {
      root = static_cast<NodeId>(v);
      break;
    }
  if (root < 0) {
    // Two terminals joined by one edge.
    NodeId a = -1, b = -1;
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (alive[v]) (a < 0 ? a : b) = static_cast<NodeId>(v);
    const std::int64_t c = adj[a][0].second;
    root = add_node(-1, false, false);
    adj[a].clear();
    adj[b].clear();
    adj[root] = {{a, c}, {b, 0}};
    adj[a].push_back({root, c});
    adj[b].push_back({root, 0});
  }

  // Root it.
  const std::size_t m = adj.size();
  std::vector<NodeId> parent(m, -1);
  std::vector<std::int64_t> cost(m, 0);
  std::vector<std::vector<NodeId>> children(m);
  {
    std::vector<char> seen(m, 0);
    std::vector<NodeId> order{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto [w, c] : adj[order[i]])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[i];
          cost[w] = c;
          children[order[i]].push_back(w);
          order.push_back(w);
        }
  }

  // Step 2: contract Steiner nodes with a single child.
  for (std::size_t v = 0; v < m; ++v) {
    if (!alive[v] || static_cast<NodeId>(v) == root || children[v].size() != 1) continue;
    const NodeId c = children[v][0];
    const NodeId p = parent[v];
    cost[c] += cost[v];
    parent[c] = p;
    std::replace(children[p].begin(), children[p].end(), static_cast<NodeId>(v), c);
    children[v].clear();
    alive[v] = 0;
    ++out.contractions;
  }

  // Step 3: split nodes with more than two children.
  std::vector<NodeId> work;
  for (std::size_t v = 0; v < m; ++v)
    if (alive[v] && children[v].size() > 2) work.push_back(static_cast<NodeId>(v));
  while (!work.empty()) {
    const NodeId v = work.back();
    work.pop_back();
    auto kids = children[v];
    std::sort(kids.begin(), kids.end());
    NodeId u = -1;
    for (NodeId c : kids)
      if (cost[c] >= 1) {
        u = c;
        break;
      }
    if (u < 0) fail(ErrorCode::internal, "normalize_binary: no positive child edge to keep");
    const NodeId s = add_node(-1, false, false);
    parent.push_back(v);
    cost.push_back(0);
    children.emplace_back();
    for (NodeId c : kids)
      if (c != u) {
        children[s].push_back(c);
        parent[c] = s;
      }
    children[v] = {u, s};
    ++out.splits;
    if (children[s].size() > 2) work.push_back(s);
  }

  // Renumber in BFS order from the root.
  std::vector<NodeId> order{root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto kids = children[order[i]];
    std::sort(kids.begin(), kids.end());
    for (NodeId c : kids) order.push_back(c);
  }
  std::vector<NodeId> id(adj.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<NodeId>(i);
  auto& t = out.tree;
  const std::size_t n = order.size();
  t.root = 0;
  t.parent.assign(n, -1);
  t.cost.assign(n, 0);
  t.children.assign(n, {});
  t.terminal.assign(n, 0);
  t.origin.assign(n, -1);
  t.companion.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    t.parent[i] = parent[v] < 0 ? -1 : id[parent[v]];
    t.cost[i] = cost[v];
    t.terminal[i] = term[v];
    t.origin[i] = origin[v];
    t.companion[i] = companion[v];
    for (NodeId c : children[v]) t.children[i].push_back(id[c]);
    std::sort(t.children[i].begin(), t.children[i].end());
  }
  if (!check_binary(t).ok()) fail(ErrorCode::internal, "normalize_binary: result violates A/B/C");
  return out;
}

std::vector<NodeId> mapping_path(const CostedRootedTree& t, NodeId u, NodeId fu) {
  std::vector<NodeId> path;
  for (NodeId x = fu; x >= 0; x = t.parent[x]) {
    path.push_back(x);
    if (x == u) break;
  }
  if (path.back() != u) fail(ErrorCode::invalid_argument, "mapping_path: target is not a descendant");
  std::reverse(path.begin(), path.end());
  return path;
}

ProperMapping proper_mapping(const CostedRootedTree& t) {
  const auto props = check_binary(t);
  if (!props.valid || !props.c || !props.a)
    fail(ErrorCode::invalid_argument, "proper_mapping: tree is not a full binary tree with terminal leaves");
  ProperMapping m;
  m.f.assign(t.size(), -1);
  std::vector<NodeId> first(t.size(), -1);
  for (std::size_t u = 0; u < t.size(); ++u) {
    if (t.terminal[u]) continue;
    first[u] = f1_child(t, static_cast<NodeId>(u));
    if (first[u] < 0) fail(ErrorCode::invalid_argument, "proper_mapping: internal node without a cost >= 1 child edge");
  }
  // Step into the F1 child, then keep leaving every internal node through
  // the child its own path does not use.
  for (std::size_t u = 0; u < t.size(); ++u) {
    if (t.terminal[u]) continue;
    NodeId w = first[u];
    while (!t.terminal[w]) w = t.children[w][0] == first[w] ? t.children[w][1] : t.children[w][0];
    m.f[u] = w;
  }
  return m;
}

MappingAudit audit_mapping(const CostedRootedTree& t, const ProperMapping& m) {
  MappingAudit a;
  if (m.f.size() != t.size()) {
    a.descendant = a.edge_disjoint = a.has_f1 = false;
    return a;
  }
  std::vector<int> used(t.size(), 0);
  for (std::size_t u = 0; u < t.size(); ++u) {
    const NodeId fu = m.f[u];
    if (t.terminal[u]) {
      if (fu != -1) a.descendant = false;
      continue;
    }
    if (fu < 0 || static_cast<std::size_t>(fu) >= t.size() || !t.terminal[fu] || fu == static_cast<NodeId>(u) ||
        !t.is_ancestor(static_cast<NodeId>(u), fu)) {
      a.descendant = false;
      continue;
    }
    bool f1 = false;
    for (NodeId x = fu; x != static_cast<NodeId>(u); x = t.parent[x]) {
      if (++used[x] > 1) a.edge_disjoint = false;
      if (t.cost[x] >= 1) f1 = true;
    }
    if (!f1) a.has_f1 = false;
  }
  return a;
}

LevelCutPartition level_cut_partition(const CostedRootedTree& t, const ProperMapping& m, int p) {
  if (p < 2) fail(ErrorCode::invalid_argument, "level_cut_partition: p must be >= 2");
  if (m.f.size() != t.size()) fail(ErrorCode::invalid_argument, "level_cut_partition: mapping size mismatch");
  LevelCutPartition out;
  const int L = floor_lg(p);
  out.levels = L;
  const auto depth = t.depths();
  const std::size_t n = t.size();

  std::vector<std::int64_t> path_cost(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    if (!t.terminal[u])
      for (NodeId x = m.f[u]; x != static_cast<NodeId>(u); x = t.parent[x]) path_cost[u] += t.cost[x];
  std::vector<std::int64_t> by_shift(L, 0);
  for (std::size_t u = 0; u < n; ++u)
    if (static_cast<NodeId>(u) != t.root && !t.terminal[u]) by_shift[depth[u] % L] += path_cost[u];
  out.shift = static_cast<int>(std::min_element(by_shift.begin(), by_shift.end()) - by_shift.begin());
  auto boundary = [&](NodeId x) { return x != t.root && !t.terminal[x] && depth[x] % L == out.shift; };

  std::vector<NodeId> order{t.root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (NodeId c : t.children[order[i]]) order.push_back(c);
  std::vector<int> part_of(n, -1);
  for (NodeId v : order) {
    if (v == t.root || boundary(v)) {
      part_of[v] = static_cast<int>(out.parts.size());
      out.parts.push_back({v, {}, {}, {}});
    } else {
      part_of[v] = part_of[t.parent[v]];
    }
  }
  for (NodeId c : order) {
    if (c == t.root) continue;
    auto& part = out.parts[part_of[t.parent[c]]];
    part.edges.push_back(c);
    if (t.terminal[c]) {
      part.hyperedge.push_back(c);
    } else if (boundary(c)) {
      part.connecting.push_back(c);
      part.hyperedge.push_back(m.f[c]);
      out.path_cost += path_cost[c];
    }
  }
  Dsu dsu(n);
  for (auto& part : out.parts) {
    std::sort(part.hyperedge.begin(), part.hyperedge.end());
    out.rank = std::max(out.rank, part.hyperedge.size());
    out.path_count += part.connecting.size();
    for (std::size_t i = 1; i < part.hyperedge.size(); ++i) dsu.unite(part.hyperedge[0], part.hyperedge[i]);
  }
  out.connected = true;
  NodeId any = -1;
  for (std::size_t v = 0; v < n; ++v)
    if (t.terminal[v]) {
      if (any < 0) any = static_cast<NodeId>(v);
      else if (dsu.find(any) != dsu.find(static_cast<NodeId>(v))) out.connected = false;
    }
  out.rank_ok = out.rank <= static_cast<std::size_t>(p);
  out.count_ok = out.path_count + 1 >= out.parts.size();
  out.cost_ok = out.path_cost * L <= t.total_cost();
  return out;
}

EdgeDecomposition edge_decomposition(const CostedTree& tree, std::span<const NodeId> terminals, int p) {
  if (p < 2) fail(ErrorCode::invalid_argument, "edge_decomposition: p must be >= 2");
  const auto norm = normalize_binary(tree, terminals);
  const auto& t = norm.tree;
  EdgeDecomposition out;
  out.binary_ok = check_binary(t).ok();
  const auto m = proper_mapping(t);
  out.mapping_ok = audit_mapping(t, m).ok();
  const auto part = level_cut_partition(t, m, p);
  out.partition_ok = part.ok();
  out.levels = part.levels;

  const RootedView view(tree);
  const auto term = terminal_mask(tree.node_count, terminals, "edge_decomposition");
  Dsu dsu(tree.node_count);
  std::size_t rank = 0;
  for (const auto& lp : part.parts) {
    std::vector<NodeId> a;
    for (NodeId x : lp.hyperedge) a.push_back(t.origin[x]);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    rank = std::max(rank, a.size());
    for (std::size_t i = 1; i < a.size(); ++i) dsu.unite(a[0], a[i]);
    out.sum_cost += view.spanning_cost(a);
    out.hyperedges.push_back(std::move(a));
  }
  out.tree_cost = tree.total_cost();
  out.rank_ok = rank <= static_cast<std::size_t>(p);
  out.connected = true;
  for (std::size_t v = 0; v < tree.node_count; ++v)
    if (term[v] && dsu.find(static_cast<NodeId>(v)) != dsu.find(terminals[0])) out.connected = false;
  const std::int64_t L = out.levels;
  const std::int64_t lhs = out.sum_cost + static_cast<std::int64_t>(out.hyperedges.size()) - 1;
  out.bound_ok = lhs * L <= (L + 2) * out.tree_cost;
  return out;
}

DecompositionCertificate alpha_k_certificate(const CostedTree& tree, std::span<const NodeId> terminals, int delta,
                                             int k) {
  validate_tree(tree, "alpha_k_certificate");
  const auto term = terminal_mask(tree.node_count, terminals, "alpha_k_certificate");
  if (delta < 2) fail(ErrorCode::invalid_argument, "alpha_k_certificate: delta must be >= 2");
  if (k < 2 * delta - 2) fail(ErrorCode::invalid_argument, "alpha_k_certificate: k must be >= 2 delta - 2");
  const auto deg = tree.degrees();
  if (*std::max_element(deg.begin(), deg.end()) > delta)
    fail(ErrorCode::invalid_argument, "alpha_k_certificate: tree degree exceeds delta");

  DecompositionCertificate cert;
  cert.delta = delta;
  cert.k = k;
  cert.p = k / (delta - 1);
  const int L = floor_lg(cert.p);
  const std::size_t n = tree.node_count;

  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& e : tree.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  // Strip Steiner leaves.
  std::vector<char> alive(n, 1);
  std::vector<int> d = deg;
  std::vector<NodeId> stack;
  for (std::size_t v = 0; v < n; ++v)
    if (!term[v] && d[v] <= 1) stack.push_back(static_cast<NodeId>(v));
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (NodeId w : adj[v])
      if (alive[w] && --d[w] <= 1 && !term[w]) stack.push_back(w);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v] && !term[v]) ++cert.steiner;

  std::vector<int> comp(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (!alive[s] || term[s] || comp[s] >= 0) continue;
    std::vector<NodeId> members{static_cast<NodeId>(s)};
    comp[s] = static_cast<int>(s);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (NodeId w : adj[members[i]])
        if (alive[w] && !term[w] && comp[w] < 0) {
          comp[w] = static_cast<int>(s);
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    auto terminal_nbrs = [&](NodeId v) {
      std::vector<NodeId> r;
      for (NodeId w : adj[v])
        if (term[w]) r.push_back(w);
      return r;
    };
    if (members.size() == 1) {
      auto a = terminal_nbrs(members[0]);
      std::sort(a.begin(), a.end());
      cert.hyperedges.push_back(std::move(a));
      continue;
    }
    std::vector<NodeId> local(n, -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<NodeId>(i);
    CostedTree sub;
    sub.node_count = members.size();
    std::vector<NodeId> rprime;
    for (NodeId v : members) {
      for (NodeId w : adj[v])
        if (local[w] >= 0 && v < w) sub.edges.push_back({local[v], local[w], 1});
      if (!terminal_nbrs(v).empty()) rprime.push_back(local[v]);
    }
    const auto dec = edge_decomposition(sub, rprime, cert.p);
    if (!dec.ok()) cert.components_ok = false;
    for (const auto& ap : dec.hyperedges) {
      std::vector<NodeId> a;
      for (NodeId x : ap)
        for (NodeId w : terminal_nbrs(members[x])) a.push_back(w);
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      cert.hyperedges.push_back(std::move(a));
    }
  }
  for (const auto& e : tree.edges)
    if (term[e.u] && term[e.v]) cert.hyperedges.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});

  const RootedView view(tree);
  Dsu dsu(n);
  for (const auto& a : cert.hyperedges) {
    std::vector<NodeId> s;
    for (NodeId v : view.spanning_nodes(a))
      if (!term[v]) s.push_back(v);
    cert.total += s.size();
    cert.support.push_back(std::move(s));
    cert.rank = std::max(cert.rank, a.size());
    for (std::size_t i = 1; i < a.size(); ++i) dsu.unite(a[0], a[i]);
  }
  cert.connected = true;
  for (std::size_t v = 0; v < n; ++v)
    if (term[v] && dsu.find(static_cast<NodeId>(v)) != dsu.find(terminals[0])) cert.connected = false;
  cert.bound = Rational(L + 2, L) * Rational(static_cast<long>(cert.steiner));
  return cert;
}

std::string certificate_json(const DecompositionCertificate& c) {
  using nlohmann::json;
  json out;
  out["delta"] = c.delta;
  out["k"] = c.k;
  out["p"] = c.p;
  out["steiner"] = c.steiner;
  out["total"] = c.total;
  out["rank"] = c.rank;
  out["bound"] = c.bound.get_str();
  out["bound_value"] = c.bound.get_d();
  out["connected"] = c.connected;
  out["rank_ok"] = c.rank_ok();
  out["bound_ok"] = c.bound_ok();
  out["components_ok"] = c.components_ok;
  out["hyperedges"] = json::array();
  for (std::size_t i = 0; i < c.hyperedges.size(); ++i)
    out["hyperedges"].push_back({{"terminals", c.hyperedges[i]}, {"steiner", c.support[i]}});
  return out.dump(2);
}

RandomTree random_bounded_tree(std::size_t n, int delta, double internal_terminal_probability, std::mt19937_64& rng,
                               std::int64_t max_cost) {
  if (n < 2) fail(ErrorCode::invalid_argument, "random_bounded_tree: need at least two nodes");
  if (delta < 2) fail(ErrorCode::invalid_argument, "random_bounded_tree: delta must be >= 2");
  if (max_cost < 1) fail(ErrorCode::invalid_argument, "random_bounded_tree: max_cost must be >= 1");
  std::vector<NodeId> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t i = n; i-- > 1;)
    std::swap(label[i], label[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i)))]);
  RandomTree out;
  out.tree.node_count = n;
  std::vector<int> deg(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < i; ++j)
      if (deg[j] < delta) open.push_back(j);
    const auto j = open[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(open.size()) - 1))];
    ++deg[i];
    ++deg[j];
    out.tree.edges.push_back({label[j], label[i], uniform_int(rng, 1, max_cost)});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] == 1 || unit_uniform(rng) < internal_terminal_probability) out.terminals.push_back(label[i]);
  std::sort(out.terminals.begin(), out.terminals.end());
  return out;
}

}  // namespace relaysynth
