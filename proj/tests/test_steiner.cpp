#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "relaysynth/connectivity.hpp"
#include "relaysynth/generate.hpp"
#include "relaysynth/steiner_tree.hpp"

using namespace relaysynth;
using fixture::plane_all;

namespace {

const double kRoot3 = std::sqrt(3.0);

std::vector<std::pair<double, double>> xy(const Instance& inst) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : inst.terminals()) out.push_back({p.coords[0], p.coords[1]});
  return out;
}

std::vector<NodeId> all_terminals(const Instance& inst) {
  std::vector<NodeId> a(inst.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<NodeId>(i);
  return a;
}

}  // namespace

TEST_CASE("mst baseline") {
  auto pair = plane_all({{0, 0}, {3, 0}}, 1);
  auto g = mst_baseline(pair);
  CHECK(g.steiner.size() == 2);
  CHECK(is_feasible(pair, g));

  auto pent = pentagon_instance();
  const auto pg = mst_baseline(pent);
  CHECK(pg.steiner.size() == 4);
  CHECK(static_cast<std::int64_t>(pg.steiner.size()) == oracle::prim_bead_mst(xy(pent)));
  CHECK(is_feasible(pent, pg));

  auto tri = triangle_instance(kRoot3);
  CHECK(mst_baseline(tri).steiner.size() == 2);
  CHECK(oracle::prim_bead_mst(xy(tri)) == 2);

  CHECK_THROWS_AS((void)mst_baseline(square_instance()), Error);
}

TEST_CASE("mst baseline matches Prim on random clouds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::vector<double>> pts;
    const int n = 2 + t % 6;
    for (int i = 0; i < n; ++i) pts.push_back({unit_uniform(rng) * 5, unit_uniform(rng) * 5});
    auto inst = plane_all(pts, 1);
    const auto g = mst_baseline(inst);
    CHECK(static_cast<std::int64_t>(g.steiner.size()) == oracle::prim_bead_mst(xy(inst)));
    CHECK(is_feasible(inst, g));
  }
}

TEST_CASE("component oracle examples") {
  auto pair = plane_all({{0, 0}, {3, 0}}, 1);
  const std::vector<NodeId> ab = {0, 1};
  CHECK(exact_component_oracle(pair, ab).cost == 2);

  auto tri = triangle_instance(kRoot3);
  const auto all = all_terminals(tri);
  const auto w = exact_component_oracle(tri, all);
  REQUIRE(w.cost == 1);
  CHECK_FALSE(w.heuristic);
  double cx = 0, cy = 0;
  for (const auto& p : tri.terminals()) {
    cx += p.coords[0] / 3;
    cy += p.coords[1] / 3;
  }
  REQUIRE(w.steiner.size() == 1);
  CHECK(w.steiner[0].coords[0] == doctest::Approx(cx).epsilon(1e-6));
  CHECK(w.steiner[0].coords[1] == doctest::Approx(cy).epsilon(1e-6));
  for (const auto& p : tri.terminals())
    CHECK(std::hypot(p.coords[0] - cx, p.coords[1] - cy) == doctest::Approx(1.0));

  auto tri2 = triangle_instance(2.0);
  const auto w2 = exact_component_oracle(tri2, all_terminals(tri2));
  CHECK(w2.cost == 2);
  CHECK_FALSE(w2.heuristic);
  CHECK(2.0 / kRoot3 > 1.0);
}

TEST_CASE("pair oracle equals d-hat") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const double d = unit_uniform(rng) * 6;
    auto inst = plane_all({{0, 0}, {d, 0}}, 1);
    const std::vector<NodeId> ab = {0, 1};
    const auto expected = std::max<int>(static_cast<int>(std::ceil(d - 1e-9)) - 1, 0);
    CHECK(exact_component_oracle(inst, ab).cost == expected);
  }
}

TEST_CASE("hypergraph costs are closed downward") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 12; ++t) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 4; ++i) pts.push_back({unit_uniform(rng) * 3, unit_uniform(rng) * 3});
    auto inst = plane_all(pts, 1);
    const auto h = build_component_hypergraph(inst, 4, {});
    for (const auto& small : h.edges) {
      // a larger set may relay through an extra terminal, so raw oracle costs can drop
      CHECK(small.cost() <= exact_component_oracle(inst, small.terminals).cost);
      for (const auto& big : h.edges)
        if (small.terminals.size() < big.terminals.size() &&
            std::includes(big.terminals.begin(), big.terminals.end(), small.terminals.begin(),
                          small.terminals.end()))
          CHECK(small.cost() <= big.cost());
    }
  }
}

TEST_CASE("grid refinement agrees with the analytic optimum") {
  OracleConfig coarse;
  coarse.grid = true;
  coarse.grid_step = 0.1;
  coarse.max_candidates = 60000;
  OracleConfig fine = coarse;
  fine.grid_step = 0.05;
  for (double side : {kRoot3, 2.0}) {
    auto tri = triangle_instance(side);
    const auto a = all_terminals(tri);
    const auto c = exact_component_oracle(tri, a, coarse);
    const auto f = exact_component_oracle(tri, a, fine);
    CHECK(c.cost == f.cost);
    CHECK(c.cost == exact_component_oracle(tri, a).cost);
  }
}

TEST_CASE("component hypergraph") {
  auto tri = triangle_instance(kRoot3);
  const auto h = build_component_hypergraph(tri, 3, {});
  REQUIRE(h.edges.size() == 4);
  int triples = 0;
  for (const auto& e : h.edges) {
    if (e.terminals.size() == 3) {
      ++triples;
      CHECK(e.cost() == 1);
    } else {
      CHECK(e.cost() == 1);
    }
  }
  CHECK(triples == 1);

  auto near = plane_all({{0, 0}, {0.5, 0}}, 1);
  const auto hn = build_component_hypergraph(near, 2, {});
  REQUIRE(hn.edges.size() == 1);
  CHECK(hn.edges[0].cost() == 0);

  // superset costs never undercut subsets
  const auto hp = build_component_hypergraph(pentagon_instance(), 5, {});
  for (const auto& small : hp.edges)
    for (const auto& big : hp.edges)
      if (small.terminals.size() < big.terminals.size() &&
          std::includes(big.terminals.begin(), big.terminals.end(), small.terminals.begin(), small.terminals.end()))
        CHECK(small.cost() <= big.cost());

  CHECK_THROWS_AS((void)build_component_hypergraph(tri, 1, {}), Error);
}

TEST_CASE("brute force optimum") {
  auto pent = pentagon_instance();
  const auto p = brute_force_opt(pent, 4);
  CHECK(p.count == 1);
  CHECK(is_feasible(pent, build_solution_graph(pent, p.placement)));

  CHECK(brute_force_opt(square_instance(), 2).count == 0);

  auto col = collinear_instance(3.0, 2);
  const auto c = brute_force_opt(col, 4);
  CHECK(c.count == 4);
  CHECK(is_feasible(col, build_solution_graph(col, c.placement)));
  CHECK_THROWS_AS((void)brute_force_opt(col, 3), Error);
}

TEST_CASE("mst is within delta - 1 of the optimum") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int t = 0; t < 25; ++t) {
    std::vector<std::vector<double>> pts;
    const int n = 3 + t % 2;
    for (int i = 0; i < n; ++i) pts.push_back({unit_uniform(rng) * 3, unit_uniform(rng) * 3});
    auto inst = plane_all(pts, 1);
    const auto m = static_cast<int>(mst_baseline(inst).steiner.size());
    try {
      const int opt = brute_force_opt(inst, m).count;
      CHECK(opt <= m);
      CHECK(m <= (inst.delta() - 1) * opt);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::limit);
    }
  }
  CHECK(checked > 15);
}
