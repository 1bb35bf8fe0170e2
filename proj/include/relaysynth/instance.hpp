#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relaysynth/common.hpp"

namespace relaysynth {

enum class MetricKind { euclidean, finite };

// A location in the metric space. Euclidean points carry coordinates, finite
// metric points carry a matrix index. A point with neither is an abstract
// bead: it has no position and only the adjacencies it was given explicitly.
struct Point {
  std::vector<double> coords;
  int index = -1;

  static Point at(std::vector<double> c) { return Point{std::move(c), -1}; }
  static Point node(int i) { return Point{{}, i}; }
  static Point abstract_bead() { return Point{}; }

  [[nodiscard]] bool is_abstract() const { return coords.empty() && index < 0; }
  friend bool operator==(const Point&, const Point&) = default;
};

class MetricSpace {
 public:
  // Delta defaults to 5 in the plane and 11 in space; other dimensions need it explicitly.
  static MetricSpace euclidean(int dim, std::optional<int> delta = std::nullopt);
  // Validates symmetry, zero diagonal, nonnegativity and the triangle inequality.
  static MetricSpace finite(std::vector<std::vector<double>> matrix, int delta);

  [[nodiscard]] MetricKind kind() const { return kind_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int delta() const { return delta_; }
  [[nodiscard]] const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  [[nodiscard]] std::size_t size() const { return matrix_.size(); }

  void check_point(const Point& p) const;
  [[nodiscard]] double distance(const Point& a, const Point& b) const;

 private:
  MetricKind kind_ = MetricKind::euclidean;
  int dim_ = 2;
  int delta_ = 5;
  std::vector<std::vector<double>> matrix_;
};

[[nodiscard]] inline double pairwise_distance(const Point& u, const Point& v, const MetricSpace& metric) {
  return metric.distance(u, v);
}

struct Demand {
  NodeId u = 0;
  NodeId v = 0;
  int r = 0;
};

class Instance {
 public:
  // Demands with r == 0 are dropped; u,v are normalized so u < v.
  Instance(MetricSpace metric, std::vector<Point> terminals, std::vector<NodeId> unstable,
           const std::vector<Demand>& demands, double distance_cap_factor = 10.0);

  [[nodiscard]] const MetricSpace& metric() const { return metric_; }
  [[nodiscard]] const std::vector<Point>& terminals() const { return terminals_; }
  [[nodiscard]] const std::vector<NodeId>& unstable() const { return unstable_; }
  [[nodiscard]] std::size_t size() const { return terminals_.size(); }
  [[nodiscard]] int delta() const { return metric_.delta(); }

  [[nodiscard]] bool is_unstable(NodeId t) const;
  [[nodiscard]] int requirement(NodeId u, NodeId v) const;
  // Sorted by (u, v), only positive requirements.
  [[nodiscard]] const std::vector<Demand>& demands() const { return demand_list_; }
  [[nodiscard]] int max_requirement() const;
  [[nodiscard]] bool all_pairs_requirement(int r) const;
  [[nodiscard]] double distance(NodeId a, NodeId b) const;

 private:
  MetricSpace metric_;
  std::vector<Point> terminals_;
  std::vector<NodeId> unstable_;
  std::map<std::pair<NodeId, NodeId>, int> demands_;
  std::vector<Demand> demand_list_;
};

// Placement S together with a subgraph of the unit-disk graph over R + S.
// Nodes 0..terminal_count-1 are the terminals; the rest index `steiner`.
struct SolutionGraph {
  std::size_t terminal_count = 0;
  std::vector<Point> steiner;
  std::vector<Edge> edges;   // sorted, no duplicates
  std::vector<char> in_q;    // Q = B + S

  [[nodiscard]] std::size_t node_count() const { return terminal_count + steiner.size(); }
  [[nodiscard]] bool is_steiner(NodeId v) const { return static_cast<std::size_t>(v) >= terminal_count; }
  [[nodiscard]] std::vector<int> degrees() const;
};

// All pairs at distance <= 1 + eps, as index pairs into `points`.
[[nodiscard]] std::vector<Edge> build_unit_disk_graph(std::span<const Point> points, const MetricSpace& metric,
                                                      double eps = kGeoEps);

// The unit-disk graph of R + steiner with Q = B + S.
[[nodiscard]] SolutionGraph build_solution_graph(const Instance& instance, std::vector<Point> steiner,
                                                 double eps = kGeoEps);

// Position of node v of g (terminal or Steiner point).
[[nodiscard]] const Point& point_of(const Instance& instance, const SolutionGraph& g, NodeId v);

// Length of a solution edge; edges touching abstract beads count as 1.
[[nodiscard]] double edge_length(const Instance& instance, const SolutionGraph& g, const Edge& e);
[[nodiscard]] double total_length(const Instance& instance, const SolutionGraph& g);

// Rebuild with the given edges, recomputing Q. Used by subgraph operations.
[[nodiscard]] SolutionGraph with_edges(const Instance& instance, const SolutionGraph& g, std::vector<Edge> edges);

}  // namespace relaysynth
