#include "relaysynth/generate.hpp"

#include <cmath>
#include <numbers>

namespace relaysynth {

namespace {

std::vector<Demand> all_pairs(int n, int r) {
  std::vector<Demand> d;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.push_back({i, j, r});
  return d;
}

std::vector<Point> on_circle(int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    pts.push_back(Point::at({std::cos(a), std::sin(a)}));
  }
  return pts;
}

}  // namespace

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) fail(ErrorCode::invalid_argument, "uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

DemandMode parse_demand_mode(const std::string& s) {
  if (s == "tree") return DemandMode::tree;
  if (s == "two") return DemandMode::two;
  if (s == "mixed") return DemandMode::mixed;
  fail(ErrorCode::invalid_argument, "unknown demand mode '" + s + "'");
}

Instance pentagon_instance() { return star_instance(5); }

Instance square_instance() {
  std::vector<Point> pts = {Point::at({0, 0}), Point::at({1, 0}), Point::at({1, 1}), Point::at({0, 1})};
  return Instance(MetricSpace::euclidean(2), pts, {}, all_pairs(4, 2));
}

Instance collinear_instance(double length, int r) {
  return Instance(MetricSpace::euclidean(2), {Point::at({0, 0}), Point::at({length, 0})}, {}, {{0, 1, r}});
}

Instance triangle_instance(double side) {
  const double h = side * std::sqrt(3.0) / 2.0;
  std::vector<Point> pts = {Point::at({0, 0}), Point::at({side, 0}), Point::at({side / 2.0, h})};
  return Instance(MetricSpace::euclidean(2), pts, {}, all_pairs(3, 1));
}

Instance star_instance(int n) {
  if (n < 2) fail(ErrorCode::invalid_argument, "star needs at least 2 leaves");
  return Instance(MetricSpace::euclidean(2), on_circle(n), {}, all_pairs(n, 1));
}

Instance generate(const GeneratorConfig& config) {
  const auto& f = config.family;
  if (f == "pentagon") return pentagon_instance();
  if (f == "square") return square_instance();
  if (f == "collinear") return collinear_instance();
  if (f == "triangle") return triangle_instance(std::sqrt(3.0));
  if (f == "star") return star_instance(config.n);
  if (f != "uniform-box") fail(ErrorCode::invalid_argument, "unknown generator '" + f + "'");
  if (config.n < 2) fail(ErrorCode::invalid_argument, "uniform-box needs n >= 2");
  if (!(config.box > 0)) fail(ErrorCode::invalid_argument, "uniform-box needs a positive box size");

  std::mt19937_64 rng(config.seed);
  std::vector<Point> pts;
  for (int i = 0; i < config.n; ++i) {
    const double x = unit_uniform(rng) * config.box;
    const double y = unit_uniform(rng) * config.box;
    pts.push_back(Point::at({x, y}));
  }
  std::vector<Demand> demands;
  std::vector<NodeId> unstable;
  switch (config.demands) {
    case DemandMode::tree:
      demands = all_pairs(config.n, 1);
      break;
    case DemandMode::two:
      demands = all_pairs(config.n, 2);
      break;
    case DemandMode::mixed:
      for (int i = 0; i < config.n; ++i)
        for (int j = i + 1; j < config.n; ++j) demands.push_back({i, j, static_cast<int>(uniform_int(rng, 0, 2))});
      for (int i = 0; i < config.n; ++i)
        if (unit_uniform(rng) < config.unstable_probability) unstable.push_back(i);
      break;
  }
  return Instance(MetricSpace::euclidean(2), std::move(pts), std::move(unstable), demands);
}

}  // namespace relaysynth
