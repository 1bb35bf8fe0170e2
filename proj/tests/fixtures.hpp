#pragma once

#include <vector>

#include "relaysynth/instance.hpp"

namespace fixture {

using namespace relaysynth;

inline std::vector<Demand> all_pairs(int n, int r) {
  std::vector<Demand> d;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.push_back({i, j, r});
  return d;
}

inline Instance plane(const std::vector<std::vector<double>>& pts, const std::vector<Demand>& d,
                      std::vector<NodeId> unstable = {}) {
  std::vector<Point> p;
  for (const auto& c : pts) p.push_back(Point::at(c));
  return Instance(MetricSpace::euclidean(2), p, std::move(unstable), d);
}

inline Instance plane_all(const std::vector<std::vector<double>>& pts, int r) {
  return plane(pts, all_pairs(static_cast<int>(pts.size()), r));
}

}  // namespace fixture
