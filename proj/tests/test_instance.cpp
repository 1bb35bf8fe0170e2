#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "doctest.h"
#include "relaysynth/generate.hpp"
#include "relaysynth/instance.hpp"
#include "relaysynth/instance_io.hpp"

using namespace relaysynth;

namespace {

std::vector<Edge> udg(std::vector<Point> pts) { return build_unit_disk_graph(pts, MetricSpace::euclidean(2)); }

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("unit disk graph boundary") {
  CHECK(udg({Point::at({0, 0}), Point::at({1, 0})}).size() == 1);
  CHECK(udg({Point::at({0, 0}), Point::at({1.5, 0})}).empty());
  auto path = udg({Point::at({0, 0}), Point::at({1, 0}), Point::at({2, 0})});
  REQUIRE(path.size() == 2);
  CHECK(path[0] == Edge(0, 1));
  CHECK(path[1] == Edge(1, 2));
  // coincident points get a zero-length edge
  CHECK(udg({Point::at({0.5, 0.5}), Point::at({0.5, 0.5})}).size() == 1);
}

TEST_CASE("unit disk graph rejects bad points") {
  auto m = MetricSpace::euclidean(2);
  std::vector<Point> bad = {Point::at({0, 0}), Point::at({0, 0, 0})};
  CHECK_THROWS_AS((void)build_unit_disk_graph(bad, m), Error);
  auto f = MetricSpace::finite({{0, 1}, {1, 0}}, 5);
  std::vector<Point> oob = {Point::node(0), Point::node(2)};
  CHECK_THROWS_AS((void)build_unit_disk_graph(oob, f), Error);
}

TEST_CASE("unit disk graph is symmetric and permutation invariant") {
  std::mt19937_64 rng(11);
  auto m = MetricSpace::euclidean(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(Point::at({unit_uniform(rng) * 3, unit_uniform(rng) * 3}));
    auto edges = udg(pts);
    std::set<std::pair<int, int>> rel;
    for (auto e : edges) rel.insert({e.u, e.v});
    std::vector<int> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Point> shuffled;
    for (int p : perm) shuffled.push_back(pts[p]);
    std::set<std::pair<int, int>> rel2;
    for (auto e : udg(shuffled)) rel2.insert(std::minmax(perm[e.u], perm[e.v]));
    CHECK(rel == rel2);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        CHECK(m.distance(pts[i], pts[j]) == m.distance(pts[j], pts[i]));
  }
}

TEST_CASE("pairwise distance") {
  auto m = MetricSpace::euclidean(2);
  CHECK(pairwise_distance(Point::at({0, 0}), Point::at({3, 4}), m) == doctest::Approx(5.0));
  CHECK(pairwise_distance(Point::at({1, 2}), Point::at({1, 2}), m) == 0.0);
  auto f = MetricSpace::finite({{0, 1, 2}, {1, 0, 2.5}, {2, 2.5, 0}}, 5);
  CHECK(pairwise_distance(Point::node(1), Point::node(2), f) == 2.5);
}

TEST_CASE("metric defaults and validation") {
  CHECK(MetricSpace::euclidean(2).delta() == 5);
  CHECK(MetricSpace::euclidean(3).delta() == 11);
  CHECK(MetricSpace::euclidean(4, 24).delta() == 24);
  CHECK(error_of([] { (void)MetricSpace::euclidean(4); }).find("delta required") != std::string::npos);
  CHECK_THROWS_AS((void)MetricSpace::finite({{0, 1}, {2, 0}}, 5), Error);
  CHECK_THROWS_AS((void)MetricSpace::finite({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, 5), Error);
  CHECK_THROWS_AS((void)MetricSpace::finite({{1}}, 5), Error);
}

TEST_CASE("instance validation") {
  auto m = MetricSpace::euclidean(2);
  std::vector<Point> two = {Point::at({0, 0}), Point::at({1, 0})};
  CHECK_THROWS_AS(Instance(m, {Point::at({0, 0})}, {}, {}), Error);
  CHECK_THROWS_AS(Instance(m, two, {}, {{0, 0, 1}}), Error);
  CHECK_THROWS_AS(Instance(m, two, {}, {{0, 2, 1}}), Error);
  CHECK_THROWS_AS(Instance(m, two, {}, {{0, 1, 3}}), Error);
  CHECK_THROWS_AS(Instance(m, two, {5}, {{0, 1, 1}}), Error);
  // distance cap defaults to 10 |R|
  CHECK_THROWS_AS(Instance(m, {Point::at({0, 0}), Point::at({21, 0})}, {}, {{0, 1, 1}}), Error);
  Instance ok(m, two, {1}, {{1, 0, 2}});
  CHECK(ok.requirement(0, 1) == 2);
  CHECK(ok.requirement(1, 0) == 2);
  CHECK(ok.is_unstable(1));
  CHECK_FALSE(ok.is_unstable(0));
}

TEST_CASE("parse square instance") {
  const std::string text = R"({"metric":{"type":"euclidean","dim":2},
    "terminals":[[0,0],[1,0],[1,1],[0,1]], "unstable":[], "demands":[], "default_demand":2})";
  auto inst = parse_instance(text);
  CHECK(inst.size() == 4);
  CHECK(inst.demands().size() == 6);
  CHECK(inst.all_pairs_requirement(2));
}

TEST_CASE("parse errors") {
  CHECK(error_of([] { (void)parse_instance("{not json"); }) != "");
  CHECK(error_of([] {
          (void)parse_instance(R"({"metric":{"type":"euclidean","dim":4},"terminals":[[0,0,0,0],[1,0,0,0]],
            "demands":[[0,1,1]]})");
        }).find("delta required") != std::string::npos);
  CHECK_THROWS_AS((void)parse_instance(R"({"metric":{"type":"finite","matrix":[[0,1,5],[1,0,1],[5,1,0]],"delta":5},
      "terminals":null,"demands":[[0,2,1]]})"),
                  Error);
  CHECK_THROWS_AS((void)parse_instance(R"({"metric":{"type":"finite","matrix":[[0,1],[2,0]],"delta":5},
      "terminals":null,"demands":[[0,1,1]]})"),
                  Error);
  CHECK_THROWS_AS((void)parse_instance(R"({"metric":{"type":"euclidean","dim":2},"terminals":[[0,0],[1,0]],
      "demands":[[0,7,1]]})"),
                  Error);
}

TEST_CASE("parse finite metric with rational entries") {
  auto inst = parse_instance(R"({"metric":{"type":"finite","matrix":[[0,"5/2",1],["5/2",0,"3/2"],[1,"3/2",0]],"delta":5},
      "terminals":null,"unstable":[1],"demands":[[0,1,2]],"default_demand":1})");
  CHECK(inst.size() == 3);
  CHECK(inst.distance(0, 1) == 2.5);
  CHECK(inst.requirement(0, 1) == 2);
  CHECK(inst.requirement(1, 2) == 1);
}

TEST_CASE("serialize round trip") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n = 6;
    auto inst = generate(cfg);
    const auto canon = serialize_instance(inst);
    const auto again = serialize_instance(parse_instance(canon));
    CHECK(canon == again);
  }
  auto f = parse_instance(R"({"metric":{"type":"finite","matrix":[[0,2],[2,0]],"delta":3},
      "terminals":null,"demands":[[0,1,1]]})");
  CHECK(serialize_instance(parse_instance(serialize_instance(f))) == serialize_instance(f));
}

TEST_CASE("packing spot check in the plane") {
  // Points in a closed unit ball with pairwise distances above 1: never more than 5.
  std::mt19937_64 rng(3);
  auto m = MetricSpace::euclidean(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point> pts;
    for (int attempt = 0; attempt < 400; ++attempt) {
      const double a = unit_uniform(rng) * 2 * std::numbers::pi;
      const double r = std::sqrt(unit_uniform(rng));
      Point p = Point::at({r * std::cos(a), r * std::sin(a)});
      bool ok = true;
      for (const auto& q : pts) ok = ok && m.distance(p, q) > 1 + kGeoEps;
      if (ok) pts.push_back(p);
    }
    CHECK(pts.size() <= 5);
  }
}

TEST_CASE("generators") {
  auto p = pentagon_instance();
  CHECK(p.size() == 5);
  for (NodeId i = 0; i < 5; ++i)
    CHECK(std::hypot(p.terminals()[i].coords[0], p.terminals()[i].coords[1]) == doctest::Approx(1.0));
  CHECK(p.all_pairs_requirement(1));
  CHECK(p.distance(0, 1) == doctest::Approx(2 * std::sin(std::numbers::pi / 5)));
  auto s = square_instance();
  CHECK(s.all_pairs_requirement(2));
  CHECK(s.distance(0, 1) == doctest::Approx(1.0));
  GeneratorConfig cfg;
  cfg.n = 8;
  cfg.box = 4;
  cfg.seed = 7;
  CHECK(serialize_instance(generate(cfg)) == serialize_instance(generate(cfg)));
  cfg.family = "bogus";
  CHECK_THROWS_AS((void)generate(cfg), Error);
}
