#include "relaysynth/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relaysynth {

MetricSpace MetricSpace::euclidean(int dim, std::optional<int> delta) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "euclidean dimension must be positive");
  MetricSpace m;
  m.kind_ = MetricKind::euclidean;
  m.dim_ = dim;
  if (delta) {
    if (*delta < 1) fail(ErrorCode::invalid_argument, "delta must be a positive integer");
    m.delta_ = *delta;
  } else if (dim == 2) {
    m.delta_ = 5;
  } else if (dim == 3) {
    m.delta_ = 11;
  } else {
    fail(ErrorCode::invalid_argument, "delta required for euclidean dimension " + std::to_string(dim));
  }
  return m;
}

MetricSpace MetricSpace::finite(std::vector<std::vector<double>> matrix, int delta) {
  if (delta < 1) fail(ErrorCode::invalid_argument, "delta must be a positive integer");
  const std::size_t n = matrix.size();
  if (n == 0) fail(ErrorCode::invalid_argument, "finite metric matrix is empty");
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) fail(ErrorCode::invalid_argument, "finite metric matrix is not square");
    if (matrix[i][i] != 0.0) fail(ErrorCode::invalid_argument, "finite metric diagonal must be zero");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(matrix[i][j] >= 0.0) || !std::isfinite(matrix[i][j]))
        fail(ErrorCode::invalid_argument, "finite metric distances must be finite and nonnegative");
      if (matrix[i][j] != matrix[j][i]) {
        std::ostringstream os;
        os << "finite metric matrix is asymmetric at (" << i << "," << j << ")";
        fail(ErrorCode::invalid_argument, os.str());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + tol) {
          std::ostringstream os;
          os << "finite metric violates triangle inequality at (" << i << "," << j << "," << k << ")";
          fail(ErrorCode::invalid_argument, os.str());
        }
  MetricSpace m;
  m.kind_ = MetricKind::finite;
  m.dim_ = 0;
  m.delta_ = delta;
  m.matrix_ = std::move(matrix);
  return m;
}

void MetricSpace::check_point(const Point& p) const {
  if (p.is_abstract()) return;
  if (kind_ == MetricKind::euclidean) {
    if (static_cast<int>(p.coords.size()) != dim_)
      fail(ErrorCode::invalid_argument, "point dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                                            std::to_string(p.coords.size()));
    for (double c : p.coords)
      if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "point coordinate is not finite");
  } else {
    if (p.index < 0 || static_cast<std::size_t>(p.index) >= matrix_.size())
      fail(ErrorCode::invalid_argument, "point index " + std::to_string(p.index) + " out of bounds");
  }
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  if (a.is_abstract() || b.is_abstract()) fail(ErrorCode::invalid_argument, "distance to an abstract bead");
  check_point(a);
  check_point(b);
  if (kind_ == MetricKind::finite) return matrix_[a.index][b.index];
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double d = a.coords[i] - b.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Instance::Instance(MetricSpace metric, std::vector<Point> terminals, std::vector<NodeId> unstable,
                   const std::vector<Demand>& demands, double distance_cap_factor)
    : metric_(std::move(metric)), terminals_(std::move(terminals)), unstable_(std::move(unstable)) {
  const auto n = static_cast<NodeId>(terminals_.size());
  if (n < 2) fail(ErrorCode::invalid_argument, "an instance needs at least two terminals");
  for (const auto& p : terminals_) {
    if (p.is_abstract()) fail(ErrorCode::invalid_argument, "terminal without a location");
    metric_.check_point(p);
  }
  std::sort(unstable_.begin(), unstable_.end());
  unstable_.erase(std::unique(unstable_.begin(), unstable_.end()), unstable_.end());
  for (NodeId b : unstable_)
    if (b < 0 || b >= n) fail(ErrorCode::invalid_argument, "unstable id " + std::to_string(b) + " is not a terminal");
  for (const auto& d : demands) {
    if (d.u < 0 || d.u >= n || d.v < 0 || d.v >= n)
      fail(ErrorCode::invalid_argument, "demand to unknown terminal id");
    if (d.u == d.v) fail(ErrorCode::invalid_argument, "self-demand on terminal " + std::to_string(d.u));
    if (d.r < 0 || d.r > 2) fail(ErrorCode::invalid_argument, "demand values must be in {0,1,2}");
    const auto key = std::minmax(d.u, d.v);
    if (d.r == 0)
      demands_.erase(key);
    else
      demands_[key] = d.r;
  }
  for (const auto& [key, r] : demands_) demand_list_.push_back({key.first, key.second, r});

  const double cap = distance_cap_factor * static_cast<double>(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (distance(i, j) > cap) {
        std::ostringstream os;
        os << "terminal distance " << distance(i, j) << " exceeds the polynomial cap " << cap;
        fail(ErrorCode::invalid_argument, os.str());
      }
}

bool Instance::is_unstable(NodeId t) const { return std::binary_search(unstable_.begin(), unstable_.end(), t); }

int Instance::requirement(NodeId u, NodeId v) const {
  if (u == v) return 0;
  auto it = demands_.find(std::minmax(u, v));
  return it == demands_.end() ? 0 : it->second;
}

int Instance::max_requirement() const {
  int m = 0;
  for (const auto& d : demand_list_) m = std::max(m, d.r);
  return m;
}

bool Instance::all_pairs_requirement(int r) const {
  const auto n = static_cast<NodeId>(size());
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (requirement(i, j) != r) return false;
  return true;
}

double Instance::distance(NodeId a, NodeId b) const { return metric_.distance(terminals_.at(a), terminals_.at(b)); }

std::vector<int> SolutionGraph::degrees() const {
  std::vector<int> deg(node_count(), 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::vector<Edge> build_unit_disk_graph(std::span<const Point> points, const MetricSpace& metric, double eps) {
  if (eps < 0) fail(ErrorCode::invalid_argument, "geometric tolerance must be nonnegative");
  std::vector<Edge> edges;
  const auto n = static_cast<NodeId>(points.size());
  for (NodeId i = 0; i < n; ++i) metric.check_point(points[i]);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) {
      if (points[i].is_abstract() || points[j].is_abstract()) continue;
      if (metric.distance(points[i], points[j]) <= 1.0 + eps) edges.emplace_back(i, j);
    }
  return edges;
}

namespace {

std::vector<char> q_membership(const Instance& instance, std::size_t terminals, std::size_t steiner) {
  std::vector<char> q(terminals + steiner, 1);
  for (std::size_t t = 0; t < terminals; ++t) q[t] = instance.is_unstable(static_cast<NodeId>(t)) ? 1 : 0;
  return q;
}

}  // namespace

SolutionGraph build_solution_graph(const Instance& instance, std::vector<Point> steiner, double eps) {
  std::vector<Point> all = instance.terminals();
  all.insert(all.end(), steiner.begin(), steiner.end());
  SolutionGraph g;
  g.terminal_count = instance.size();
  g.edges = build_unit_disk_graph(all, instance.metric(), eps);
  g.steiner = std::move(steiner);
  g.in_q = q_membership(instance, g.terminal_count, g.steiner.size());
  return g;
}

const Point& point_of(const Instance& instance, const SolutionGraph& g, NodeId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.node_count())
    fail(ErrorCode::invalid_argument, "node " + std::to_string(v) + " not in solution graph");
  if (!g.is_steiner(v)) return instance.terminals()[v];
  return g.steiner[v - g.terminal_count];
}

double edge_length(const Instance& instance, const SolutionGraph& g, const Edge& e) {
  const Point& a = point_of(instance, g, e.u);
  const Point& b = point_of(instance, g, e.v);
  if (a.is_abstract() || b.is_abstract()) return 1.0;
  return instance.metric().distance(a, b);
}

double total_length(const Instance& instance, const SolutionGraph& g) {
  double s = 0;
  for (const auto& e : g.edges) s += edge_length(instance, g, e);
  return s;
}

SolutionGraph with_edges(const Instance& instance, const SolutionGraph& g, std::vector<Edge> edges) {
  SolutionGraph out;
  out.terminal_count = g.terminal_count;
  out.steiner = g.steiner;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.edges = std::move(edges);
  out.in_q = q_membership(instance, out.terminal_count, out.steiner.size());
  return out;
}

}  // namespace relaysynth
