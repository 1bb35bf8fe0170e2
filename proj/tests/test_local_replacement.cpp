#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "relaysynth/audit.hpp"
#include "relaysynth/connectivity.hpp"
#include "relaysynth/generate.hpp"
#include "relaysynth/local_replacement.hpp"
#include "relaysynth/tree_decomposition.hpp"

using namespace relaysynth;

namespace {

std::int64_t cost_of(const std::vector<TreeEdge>& t, const std::vector<int>& ids) {
  std::int64_t c = 0;
  for (int i : ids) c += t[i].cost;
  return c;
}

std::vector<oracle::CostEdge> plain(const std::vector<TreeEdge>& t) {
  std::vector<oracle::CostEdge> out;
  for (const auto& e : t) out.push_back({e.u, e.v, e.cost});
  return out;
}

// Selection plus remaining tree edges must connect every node.
bool spans(const CostedHypergraph& h, const std::vector<TreeEdge>& tree, const LocalReplacementResult& r) {
  std::vector<int> p(h.node_count());
  std::iota(p.begin(), p.end(), 0);
  for (int j : r.selection)
    for (NodeId v : h.edges()[j].nodes) p[oracle::find_root(p, v)] = oracle::find_root(p, h.edges()[j].nodes[0]);
  for (int i : r.remaining) p[oracle::find_root(p, tree[i].u)] = oracle::find_root(p, tree[i].v);
  for (std::size_t v = 0; v < h.node_count(); ++v)
    if (oracle::find_root(p, static_cast<int>(v)) != oracle::find_root(p, 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("max overlapped set examples") {
  const std::vector<TreeEdge> path = {{0, 1, 3}, {1, 2, 5}};
  CHECK(max_overlapped_set(3, path, std::vector<NodeId>{0, 2}) == std::vector<int>{1});

  const std::vector<TreeEdge> star = {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}};
  CHECK(max_overlapped_set(4, star, std::vector<NodeId>{1, 2, 3}) == std::vector<int>{1, 2});
  CHECK(oracle::brute_overlap_cost(4, plain(star), {1, 2, 3}) == 5);

  CHECK(max_overlapped_set(3, path, std::vector<NodeId>{1, 2}) == std::vector<int>{1});
  CHECK_THROWS_AS((void)max_overlapped_set(3, path, std::vector<NodeId>{1}), Error);
}

TEST_CASE("max overlapped set matches the definition") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 150; ++t) {
    const int n = static_cast<int>(uniform_int(rng, 2, 8));
    const auto rt = random_bounded_tree(n, n, 0.0, rng, 9);
    const int size = static_cast<int>(uniform_int(rng, 2, n));
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < size; ++i) std::swap(all[i], all[uniform_int(rng, i, n - 1)]);
    std::vector<NodeId> a(all.begin(), all.begin() + size);
    std::sort(a.begin(), a.end());
    const auto f = max_overlapped_set(n, rt.tree.edges, a);
    CHECK(cost_of(rt.tree.edges, f) == oracle::brute_overlap_cost(n, plain(rt.tree.edges), a));
    CHECK(static_cast<int>(f.size()) == size - 1);
  }
}

TEST_CASE("local replacement examples") {
  // sqrt(3) triangle: pairs cost 1, the triple cost 1
  CostedHypergraph tri(3, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}, {{0, 1, 2}, 1}});
  const std::vector<TreeEdge> t = {{0, 1, 1}, {0, 2, 1}};
  const auto r = local_replacement(tri, t);
  REQUIRE(r.selection.size() == 1);
  CHECK(tri.edges()[r.selection[0]].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(r.cost == 1);
  CHECK(r.remaining.empty());

  // nothing beats its overlap
  CostedHypergraph flat(3, {{{0, 1}, 2}, {{1, 2}, 2}, {{0, 1, 2}, 4}});
  const std::vector<TreeEdge> ft = {{0, 1, 2}, {1, 2, 2}};
  const auto fr = local_replacement(flat, ft);
  CHECK(fr.selection.empty());
  CHECK(fr.remaining == std::vector<int>{0, 1});
  CHECK(fr.cost == 4);

  // c(T*) = tau gives cost <= tau
  CHECK(min_spanning_subhypergraph(flat) == 4);
  CHECK(within_log_bound(fr.cost, 4, 4));

  const std::vector<TreeEdge> bad = {{0, 1, 1}};
  CHECK_THROWS_AS((void)local_replacement(tri, bad), Error);
}

TEST_CASE("stops only once f <= tau") {
  // the trace must continue after a first contraction
  CostedHypergraph h(4, {{{0, 1}, 6},
                         {{0, 1, 2, 3}, 3},
                         {{0, 1, 3}, 4},
                         {{0, 2}, 6},
                         {{0, 3}, 4},
                         {{1, 2}, 8},
                         {{1, 2, 3}, 2}});
  const std::vector<TreeEdge> t = {{0, 3, 4}, {0, 1, 6}, {0, 2, 6}};
  const auto r = local_replacement(h, t);
  const auto tau = min_spanning_subhypergraph(h);
  CHECK(tau == 3);
  CHECK(r.cost <= tau + 2);
  const auto a = audit_trace(r, tau);
  CHECK(a.q >= 0);
  CHECK(a.telescoping_ok);
  CHECK(a.recursion_ok);
}

TEST_CASE("within log bound") {
  CHECK(within_log_bound(0, 0, 5));
  CHECK_FALSE(within_log_bound(1, 0, 5));
  CHECK(within_log_bound(1, 1, 2));
  CHECK_FALSE(within_log_bound(2, 1, 2));
  CHECK(within_log_bound(3, 3, 3));
  CHECK_FALSE(within_log_bound(4, 3, 3));
  // 2 * (1 + ln 4) = 4.7725...
  CHECK(within_log_bound(4, 2, 8));
  CHECK_FALSE(within_log_bound(5, 2, 8));
}

TEST_CASE("exhaustive tau matches subset enumeration") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    const auto rh = random_costed_hypergraph(rng, 7, 12);
    std::vector<std::vector<int>> e;
    std::vector<std::int64_t> c;
    for (const auto& x : rh.h.edges()) {
      e.push_back(x.nodes);
      c.push_back(x.cost);
    }
    CHECK(min_spanning_subhypergraph(rh.h) == oracle::brute_min_spanning(static_cast<int>(rh.h.node_count()), e, c));
  }
}

TEST_CASE("log bound, trace invariants and spanning output") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 120; ++t) {
    const auto rh = random_costed_hypergraph(rng);
    const auto tau = min_spanning_subhypergraph(rh.h);
    const auto r = local_replacement(rh.h, rh.tree);
    const auto a = audit_trace(r, tau);
    CHECK(a.bound_ok);
    CHECK(a.recursion_ok);
    CHECK(a.monotone_ok);
    CHECK(a.telescoping_ok);
    CHECK(spans(rh.h, rh.tree, r));
    std::size_t prev = rh.tree.size();
    for (const auto& s : r.trace) {
      CHECK(s.removed.size() >= 1);
      CHECK(s.removed.size() <= prev);
      prev -= s.removed.size();
    }
  }
}

TEST_CASE("overlap sum on random trees") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 150; ++t) {
    const int n = static_cast<int>(uniform_int(rng, 2, 8));
    const auto rt = random_bounded_tree(n, n, 0.0, rng, 9);
    std::vector<std::vector<NodeId>> hs;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    int parts = n;
    while (parts > 1) {
      const NodeId a = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
      NodeId b = static_cast<NodeId>(uniform_int(rng, 0, n - 2));
      if (b >= a) ++b;
      hs.push_back({std::min(a, b), std::max(a, b)});
      const int x = oracle::find_root(p, a), y = oracle::find_root(p, b);
      if (x != y) {
        p[x] = y;
        --parts;
      }
    }
    std::int64_t sum = 0;
    for (const auto& a : hs) sum += oracle::brute_overlap_cost(n, plain(rt.tree.edges), a);
    CHECK(sum >= rt.tree.total_cost());
    CHECK(overlap_sum_holds(n, rt.tree.edges, hs));
  }
}

TEST_CASE("scheme examples") {
  SchemeConfig cfg;
  cfg.k = 3;
  auto tri = triangle_instance(std::sqrt(3.0));
  const auto t = st_msp_scheme(tri, cfg);
  CHECK(t.graph.steiner.size() == 1);
  CHECK(is_feasible(tri, t.graph));
  CHECK(t.mst_cost == 2);

  auto pair = fixture::plane_all({{0, 0}, {3, 0}}, 1);
  for (int k : {2, 3, 5}) {
    cfg.k = k;
    const auto r = st_msp_scheme(pair, cfg);
    CHECK(r.graph.steiner.size() == 2);
    CHECK(is_feasible(pair, r.graph));
  }

  cfg.k = 5;
  auto pent = pentagon_instance();
  const auto p = st_msp_scheme(pent, cfg);
  CHECK(p.graph.steiner.size() == 1);
  CHECK(is_feasible(pent, p.graph));
  CHECK(p.mst_cost == 4);

  CHECK_THROWS_AS((void)st_msp_scheme(square_instance(), cfg), Error);
}

TEST_CASE("audit kind names") {
  CHECK(canonical_audit_kind("lemma1") == "overlap");
  CHECK(canonical_audit_kind("theorem3-bound") == "log-bound");
  CHECK(canonical_audit_kind("witness") == "witness");
  CHECK_THROWS_AS((void)canonical_audit_kind("lemma2"), Error);
  AuditConfig c;
  c.kind = "lemma7";
  c.trials = 5;
  const auto s = run_audit(c);
  CHECK(s.kind == "decomposition");
  CHECK(s.violations == 0);
}
