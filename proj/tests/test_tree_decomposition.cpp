#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "relaysynth/tree_decomposition.hpp"

using namespace relaysynth;

namespace {

CostedTree unit_tree(std::size_t n, const std::vector<std::pair<int, int>>& e) {
  CostedTree t;
  t.node_count = n;
  for (auto [u, v] : e) t.edges.push_back({u, v, 1});
  return t;
}

std::vector<std::vector<int>> adjacency(const CostedTree& t) {
  std::vector<std::vector<int>> adj(t.node_count);
  for (const auto& e : t.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// Nodes of the smallest subtree containing `a`: repeatedly drop leaves outside a.
std::set<int> spanned(const CostedTree& t, const std::vector<int>& a) {
  auto adj = adjacency(t);
  std::set<int> keep;
  for (std::size_t v = 0; v < t.node_count; ++v) keep.insert(static_cast<int>(v));
  const std::set<int> want(a.begin(), a.end());
  for (bool again = true; again;) {
    again = false;
    for (int v : std::set<int>(keep)) {
      int deg = 0;
      for (int w : adj[v]) deg += keep.count(w);
      if (deg <= 1 && !want.count(v) && keep.size() > 1) {
        keep.erase(v);
        again = true;
      }
    }
  }
  return keep;
}

bool connects(std::size_t n, const std::vector<std::vector<NodeId>>& hs, const std::vector<NodeId>& terminals) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& h : hs)
    for (NodeId v : h) p[oracle::find_root(p, v)] = oracle::find_root(p, h[0]);
  for (NodeId r : terminals)
    if (oracle::find_root(p, r) != oracle::find_root(p, terminals[0])) return false;
  return true;
}

std::int64_t subtree_cost(const CostedTree& t, const std::vector<int>& a) {
  const auto keep = spanned(t, a);
  std::int64_t c = 0;
  for (const auto& e : t.edges)
    if (keep.count(e.u) && keep.count(e.v)) c += e.cost;
  return c;
}

int floor_lg(int p) {
  int l = 0;
  while ((2 << l) <= p) ++l;
  return l;
}

}  // namespace

TEST_CASE("normalization examples") {
  auto star = unit_tree(4, {{0, 1}, {0, 2}, {0, 3}});
  const std::vector<NodeId> leaves = {1, 2, 3};
  const auto s = normalize_binary(star, leaves);
  CHECK(s.splits == 1);
  CHECK(s.tree.size() == 5);
  CHECK(s.tree.root == 0);
  CHECK(s.tree.total_cost() == 3);
  CHECK(check_binary(s.tree).ok());

  // node 1 has three children below the root
  auto deg4 = unit_tree(6, {{0, 1}, {1, 2}, {1, 3}, {1, 4}, {0, 5}});
  const auto d = normalize_binary(deg4, std::vector<NodeId>{2, 3, 4, 5});
  CHECK(d.splits == 1);
  CHECK(check_binary(d.tree).ok());
  CHECK(d.tree.total_cost() == 5);

  auto path = unit_tree(3, {{0, 1}, {1, 2}});
  const auto c = normalize_binary(path, std::vector<NodeId>{0, 1, 2});
  CHECK(c.companions == 1);
  CHECK(check_binary(c.tree).ok());
  int comps = 0;
  for (std::size_t v = 0; v < c.tree.size(); ++v)
    if (c.tree.companion[v]) {
      ++comps;
      CHECK(c.tree.origin[v] == 1);
      CHECK(c.tree.cost[v] == 0);
    }
  CHECK(comps == 1);

  CostedTree chain{4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}}};
  const auto ch = normalize_binary(chain, std::vector<NodeId>{0, 3});
  CHECK(ch.contractions == 1);
  CHECK(ch.tree.size() == 3);
  CHECK(ch.tree.total_cost() == 6);
  CHECK(check_binary(ch.tree).ok());

  CostedTree pair{2, {{0, 1, 4}}};
  const auto pr = normalize_binary(pair, std::vector<NodeId>{0, 1});
  CHECK(pr.tree.size() == 3);
  CHECK(pr.tree.total_cost() == 4);
  CHECK(check_binary(pr.tree).ok());

  auto dangling = unit_tree(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto dl = normalize_binary(dangling, std::vector<NodeId>{1, 2});
  CHECK(dl.removed_leaves == 1);
  CHECK(dl.splits == 0);
  CHECK(dl.tree.size() == 3);

  CostedTree zero{2, {{0, 1, 0}}};
  CHECK_THROWS_AS((void)normalize_binary(zero, std::vector<NodeId>{0, 1}), Error);
}

TEST_CASE("proper mapping by hand") {
  const auto h1 = normalize_binary(unit_tree(3, {{0, 1}, {0, 2}}), std::vector<NodeId>{1, 2});
  const auto m1 = proper_mapping(h1.tree);
  CHECK(m1.f[0] == 1);
  CHECK(m1.f[1] == -1);
  CHECK(audit_mapping(h1.tree, m1).ok());

  // complete depth-2 tree, already binary and in BFS order
  auto full = unit_tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  const auto n2 = normalize_binary(full, std::vector<NodeId>{3, 4, 5, 6});
  REQUIRE(n2.tree.size() == 7);
  const auto m2 = proper_mapping(n2.tree);
  CHECK(m2.f[1] == 3);
  CHECK(m2.f[2] == 5);
  CHECK(m2.f[0] == 4);
  CHECK(mapping_path(n2.tree, 0, 4) == std::vector<NodeId>{0, 1, 4});
  CHECK(audit_mapping(n2.tree, m2).ok());

  // two mapping paths sharing edge 0-1 is caught
  auto bad = m2;
  bad.f[0] = 3;
  CHECK_FALSE(audit_mapping(n2.tree, bad).edge_disjoint);
}

TEST_CASE("level cut examples") {
  auto full = unit_tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  const auto n = normalize_binary(full, std::vector<NodeId>{3, 4, 5, 6});
  const auto m = proper_mapping(n.tree);

  const auto p2 = level_cut_partition(n.tree, m, 2);
  CHECK(p2.levels == 1);
  CHECK(p2.parts.size() == 3);
  CHECK(p2.rank == 2);
  CHECK(p2.path_cost == 2);
  CHECK(p2.ok());
  std::set<std::vector<NodeId>> hs;
  for (const auto& part : p2.parts) hs.insert(part.hyperedge);
  CHECK(hs == std::set<std::vector<NodeId>>{{3, 4}, {3, 5}, {5, 6}});

  const auto p4 = level_cut_partition(n.tree, m, 4);
  CHECK(p4.levels == 2);
  CHECK(p4.shift == 0);
  CHECK(p4.parts.size() == 1);
  CHECK(p4.rank == 4);
  CHECK(p4.ok());

  CHECK_THROWS_AS((void)level_cut_partition(n.tree, m, 1), Error);
}

TEST_CASE("random trees normalize and map properly") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto rt = random_bounded_tree(3 + t % 30, 2 + t % 4, 0.3, rng, 5);
    const auto norm = normalize_binary(rt.tree, rt.terminals);
    CHECK(check_binary(norm.tree).ok());
    CHECK(norm.tree.total_cost() == subtree_cost(rt.tree, rt.terminals));
    const auto m = proper_mapping(norm.tree);
    CHECK(audit_mapping(norm.tree, m).ok());
  }
}

TEST_CASE("edge decomposition against independent checks") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 150; ++t) {
    const auto rt = random_bounded_tree(2 + t % 15, 5, 0.25, rng, 5);
    const int p = 2 + t % 15;
    const auto d = edge_decomposition(rt.tree, rt.terminals, p);
    CHECK(d.ok());
    CHECK(connects(rt.tree.node_count, d.hyperedges, rt.terminals));
    CHECK(d.levels == floor_lg(p));
    for (const auto& h : d.hyperedges) CHECK(h.size() <= static_cast<std::size_t>(p));
    {
      std::int64_t sum = 0;
      for (const auto& h : d.hyperedges) sum += subtree_cost(rt.tree, h);
      CHECK(sum == d.sum_cost);
      const std::int64_t lhs = (sum + static_cast<std::int64_t>(d.hyperedges.size()) - 1) * d.levels;
      CHECK(lhs <= (d.levels + 2) * rt.tree.total_cost());
    }
  }
}

TEST_CASE("certificate examples") {
  auto star = unit_tree(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto s = alpha_k_certificate(star, std::vector<NodeId>{1, 2, 3}, 3, 4);
  CHECK(s.ok());
  CHECK(s.steiner == 1);
  CHECK(s.total == 1);
  CHECK(s.hyperedges.size() == 1);

  // spine 0..5, terminal leaves 6..13
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) e.push_back({i, i + 1});
  const std::vector<int> hang = {0, 0, 1, 2, 3, 4, 5, 5};
  std::vector<NodeId> leaves;
  for (std::size_t i = 0; i < hang.size(); ++i) {
    e.push_back({hang[i], 6 + static_cast<int>(i)});
    leaves.push_back(6 + static_cast<int>(i));
  }
  auto cat = unit_tree(14, e);
  const auto c = alpha_k_certificate(cat, leaves, 3, 4);
  CHECK(c.ok());
  CHECK(c.steiner == 6);
  CHECK(c.bound == Rational(18));
  CHECK(Rational(static_cast<long>(c.total)) <= c.bound);

  CHECK_THROWS_AS((void)alpha_k_certificate(cat, leaves, 3, 3), Error);
  CHECK_THROWS_AS((void)alpha_k_certificate(cat, leaves, 1, 4), Error);
  CHECK_THROWS_AS((void)alpha_k_certificate(star, std::vector<NodeId>{1, 2, 3}, 2, 4), Error);
  CHECK_THROWS_AS((void)alpha_k_certificate(star, std::vector<NodeId>{}, 3, 4), Error);
}

TEST_CASE("certificate supports match the spanned subtrees") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 120; ++t) {
    const int delta = 3 + t % 3;
    const int k = (t % 2 ? 16 : 2 * delta - 2);
    const auto rt = random_bounded_tree(3 + t % 35, delta, 0.2, rng);
    const auto c = alpha_k_certificate(rt.tree, rt.terminals, delta, k);
    CHECK(c.ok());
    CHECK(connects(rt.tree.node_count, c.hyperedges, rt.terminals));

    const std::set<NodeId> rset(rt.terminals.begin(), rt.terminals.end());
    std::set<int> steiner;
    for (int v : spanned(rt.tree, rt.terminals))
      if (!rset.count(v)) steiner.insert(v);
    CHECK(c.steiner == steiner.size());

    REQUIRE(c.support.size() == c.hyperedges.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < c.hyperedges.size(); ++i) {
      CHECK(c.hyperedges[i].size() <= static_cast<std::size_t>(k));
      std::set<NodeId> expect;
      for (int v : spanned(rt.tree, c.hyperedges[i]))
        if (steiner.count(v)) expect.insert(v);
      CHECK(std::set<NodeId>(c.support[i].begin(), c.support[i].end()) == expect);
      total += expect.size();
    }
    CHECK(total == c.total);
    const int l = floor_lg(k / (delta - 1));
    CHECK(Rational(static_cast<long>(total) * l) <= Rational(static_cast<long>((l + 2) * steiner.size())));
  }
}
