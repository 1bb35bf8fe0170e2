#include "relaysynth/steiner_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "relaysynth/connectivity.hpp"

namespace relaysynth {

namespace {

constexpr double kDedup = 1e-9;

// Deduplicating point store; planar points are bucketed on a fine grid.
class PointSet {
 public:
  explicit PointSet(const MetricSpace& m, std::size_t cap) : metric_(m), cap_(cap) {}

  bool add(const Point& p) {
    if (points_.size() >= cap_) return false;
    if (metric_.kind() == MetricKind::euclidean && metric_.dim() == 2) {
      const auto kx = static_cast<long long>(std::floor(p.coords[0] / kBucket));
      const auto ky = static_cast<long long>(std::floor(p.coords[1] / kBucket));
      for (long long dx = -1; dx <= 1; ++dx)
        for (long long dy = -1; dy <= 1; ++dy) {
          auto it = buckets_.find({kx + dx, ky + dy});
          if (it == buckets_.end()) continue;
          for (int i : it->second)
            if (metric_.distance(points_[i], p) <= kDedup) return false;
        }
      buckets_[{kx, ky}].push_back(static_cast<int>(points_.size()));
    } else {
      for (const auto& q : points_)
        if (metric_.distance(q, p) <= kDedup) return false;
    }
    points_.push_back(p);
    return true;
  }

  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] std::vector<Point> take() { return std::move(points_); }

 private:
  static constexpr double kBucket = 1e-6;
  const MetricSpace& metric_;
  std::size_t cap_;
  std::vector<Point> points_;
  std::map<std::pair<long long, long long>, std::vector<int>> buckets_;
};

void unit_circle_intersections(const Point& p, const Point& q, std::vector<Point>& out) {
  const double dx = q.coords[0] - p.coords[0], dy = q.coords[1] - p.coords[1];
  const double d = std::hypot(dx, dy);
  if (d < 1e-12 || d > 2.0 + kGeoEps) return;
  const double a = d / 2.0;
  const double h = std::sqrt(std::max(0.0, 1.0 - a * a));
  const double mx = p.coords[0] + dx / 2.0, my = p.coords[1] + dy / 2.0;
  const double ux = -dy / d, uy = dx / d;
  out.push_back(Point::at({mx + h * ux, my + h * uy}));
  if (h > 0) out.push_back(Point::at({mx - h * ux, my - h * uy}));
}

Point lerp(const Point& a, const Point& b, double f) {
  std::vector<double> c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + f * (b.coords[i] - a.coords[i]);
  return Point::at(std::move(c));
}

// Unit steps from each end of a segment, for chains that bend at one end.
std::vector<Point> segment_steps(const Point& a, const Point& b, double d) {
  std::vector<Point> out;
  for (int s = 1; s < d - kGeoEps; ++s) {
    out.push_back(lerp(a, b, s / d));
    out.push_back(lerp(b, a, s / d));
  }
  return out;
}

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
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// MST of the listed terminals under d-hat.
std::vector<Edge> dhat_mst(const Instance& instance, std::span<const NodeId> terms, int* cost) {
  std::vector<std::tuple<std::int64_t, NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const Edge e(terms[i], terms[j]);
      pairs.emplace_back(bead_count(instance.distance(e.u, e.v)), e.u, e.v);
    }
  std::sort(pairs.begin(), pairs.end());
  Dsu dsu(instance.size());
  std::vector<Edge> out;
  *cost = 0;
  for (auto [c, u, v] : pairs)
    if (dsu.unite(u, v)) {
      out.emplace_back(u, v);
      *cost += static_cast<int>(c);
    }
  return out;
}

}  // namespace

std::vector<Point> segment_beads(const Instance& instance, NodeId u, NodeId v) {
  const auto c = bead_count(instance.distance(u, v));
  std::vector<Point> out;
  if (instance.metric().kind() == MetricKind::finite) {
    for (std::int64_t i = 0; i < c; ++i) out.push_back(Point::abstract_bead());
    return out;
  }
  const auto& a = instance.terminals()[u];
  const auto& b = instance.terminals()[v];
  for (std::int64_t i = 1; i <= c; ++i) out.push_back(lerp(a, b, static_cast<double>(i) / static_cast<double>(c + 1)));
  return out;
}

std::vector<Point> candidate_points(const Instance& instance, std::span<const NodeId> terminals,
                                    const OracleConfig& config) {
  const auto& metric = instance.metric();
  PointSet set(metric, config.max_candidates);
  for (NodeId t : terminals) {
    if (t < 0 || static_cast<std::size_t>(t) >= instance.size())
      fail(ErrorCode::invalid_argument, "candidate_points: terminal " + std::to_string(t) + " out of range");
    set.add(instance.terminals()[t]);
  }
  if (metric.kind() == MetricKind::finite) {
    for (std::size_t i = 0; i < metric.size(); ++i) set.add(Point::node(static_cast<int>(i)));
    return set.take();
  }

  const bool planar = metric.dim() == 2;
  if (planar) {
    std::size_t begin = 0;
    for (int round = 0; round < config.depth; ++round) {
      const std::vector<Point> centers = set.points();
      std::vector<Point> found;
      for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = std::max(i + 1, begin); j < centers.size(); ++j)
          unit_circle_intersections(centers[i], centers[j], found);
      begin = centers.size();
      for (const auto& p : found) set.add(p);
    }
  }
  for (std::size_t i = 0; i < terminals.size(); ++i)
    for (std::size_t j = i + 1; j < terminals.size(); ++j) {
      const auto& a = instance.terminals()[terminals[i]];
      const auto& b = instance.terminals()[terminals[j]];
      for (const auto& p : segment_beads(instance, terminals[i], terminals[j])) set.add(p);
      for (const auto& p : segment_steps(a, b, metric.distance(a, b))) set.add(p);
    }
  if (planar && config.grid) {
    double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
    for (NodeId t : terminals)
      for (int d = 0; d < 2; ++d) {
        lo[d] = std::min(lo[d], instance.terminals()[t].coords[d] - 1.0);
        hi[d] = std::max(hi[d], instance.terminals()[t].coords[d] + 1.0);
      }
    for (double x = lo[0]; x <= hi[0] + 1e-12; x += config.grid_step)
      for (double y = lo[1]; y <= hi[1] + 1e-12; y += config.grid_step) set.add(Point::at({x, y}));
  }
  return set.take();
}

ComponentSolution exact_component_oracle(const Instance& instance, std::span<const NodeId> terminals,
                                         const OracleConfig& config) {
  if (terminals.empty()) fail(ErrorCode::invalid_argument, "exact_component_oracle: empty terminal set");
  ComponentSolution best;
  const std::vector<Point> cands = candidate_points(instance, terminals, config);
  const std::size_t na = terminals.size();
  const std::size_t n = cands.size();
  const auto& metric = instance.metric();

  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (metric.distance(cands[i], cands[j]) <= 1.0 + kGeoEps) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  // Terminals of A that coincide were merged by deduplication.
  std::vector<int> term_index(na);
  for (std::size_t i = 0; i < na; ++i) {
    term_index[i] = -1;
    for (std::size_t c = 0; c < n && term_index[i] < 0; ++c)
      if (metric.distance(cands[c], instance.terminals()[terminals[i]]) <= kDedup) term_index[i] = static_cast<int>(c);
  }
  std::vector<char> is_term(n, 0);
  for (int t : term_index) is_term[t] = 1;

  int mst_cost = 0;
  const auto mst = dhat_mst(instance, terminals, &mst_cost);
  best.cost = mst_cost;
  best.bead_pairs = mst;

  std::vector<int> chosen;
  std::vector<char> in_chosen(n, 0);
  std::set<std::vector<int>> seen;
  long nodes = 0;
  bool exhausted = false;

  auto component = [&]() {
    std::vector<char> mark(n, 0);
    std::vector<int> stack = {term_index[0]}, comp;
    mark[term_index[0]] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int y : adj[x])
        if (!mark[y] && (is_term[y] || in_chosen[y])) {
          mark[y] = 1;
          stack.push_back(y);
        }
    }
    return std::make_pair(mark, comp);
  };

  auto search = [&](auto&& self, int budget) -> bool {
    if (++nodes > config.max_nodes) {
      exhausted = true;
      return false;
    }
    auto [mark, comp] = component();
    bool all = true;
    int lower = 0;
    for (int t : term_index) {
      if (mark[t]) continue;
      all = false;
      double dmin = 1e300;
      for (int c : comp) dmin = std::min(dmin, metric.distance(cands[c], cands[t]));
      lower = std::max(lower, static_cast<int>(bead_count(dmin)));
    }
    if (all) return true;
    if (lower > budget) return false;
    std::vector<char> next(n, 0);
    for (int c : comp)
      for (int y : adj[c])
        if (!is_term[y] && !in_chosen[y]) next[y] = 1;
    for (std::size_t y = 0; y < n; ++y) {
      if (!next[y]) continue;
      chosen.push_back(static_cast<int>(y));
      auto key = chosen;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) {
        in_chosen[y] = 1;
        const bool ok = self(self, budget - 1);
        in_chosen[y] = 0;
        if (ok) return true;
      }
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  };

  const int top = std::min(mst_cost - 1, config.max_steiner);
  for (int s = 0; s <= top; ++s) {
    seen.clear();
    chosen.clear();
    if (search(search, s)) {
      best.cost = static_cast<int>(chosen.size());
      best.bead_pairs.clear();
      for (int c : chosen) best.steiner.push_back(cands[c]);
      return best;
    }
    if (exhausted) break;
  }
  best.heuristic = exhausted || top < mst_cost - 1;
  return best;
}

ComponentHypergraph build_component_hypergraph(const Instance& instance, int k, const OracleConfig& config,
                                               std::size_t budget) {
  if (k < 2) fail(ErrorCode::invalid_argument, "build_component_hypergraph: k must be at least 2");
  const auto n = static_cast<int>(instance.size());
  k = std::min(k, n);
  double count = 0;
  for (int j = 2; j <= k; ++j) {
    double c = 1;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    count += c;
  }
  if (count > static_cast<double>(budget))
    fail(ErrorCode::limit, "build_component_hypergraph: " + std::to_string(static_cast<long long>(count)) +
                               " hyperedges exceed the budget of " + std::to_string(budget) + "; lower k");

  ComponentHypergraph h;
  h.node_count = instance.size();
  h.k = k;
  for (int size = 2; size <= k; ++size) {
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      Hyperedge e;
      e.terminals.assign(pick.begin(), pick.end());
      if (size == 2) {
        e.witness.cost = static_cast<int>(bead_count(instance.distance(pick[0], pick[1])));
        if (e.witness.cost > 0) e.witness.bead_pairs.emplace_back(pick[0], pick[1]);
      } else {
        e.witness = exact_component_oracle(instance, e.terminals, config);
      }
      h.edges.push_back(std::move(e));
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  // Downward closure, largest sets first so the cheapest witness propagates.
  for (std::size_t i = h.edges.size(); i-- > 0;) {
    for (std::size_t j = h.edges.size(); j-- > i + 1;) {
      const auto& big = h.edges[j];
      auto& small = h.edges[i];
      if (big.terminals.size() <= small.terminals.size() || big.cost() >= small.cost()) continue;
      if (std::includes(big.terminals.begin(), big.terminals.end(), small.terminals.begin(), small.terminals.end()))
        small.witness = big.witness;
    }
  }
  return h;
}

std::string hypergraph_json(const Instance& instance, const ComponentHypergraph& h) {
  using nlohmann::json;
  json out;
  out["nodes"] = h.node_count;
  out["k"] = h.k;
  out["hyperedges"] = json::array();
  for (const auto& e : h.edges) {
    json w = json::array();
    for (const auto& p : e.witness.steiner) {
      if (p.index >= 0)
        w.push_back(p.index);
      else
        w.push_back(p.coords);
    }
    json pairs = json::array();
    for (const auto& pr : e.witness.bead_pairs) pairs.push_back({pr.u, pr.v, bead_count(instance.distance(pr.u, pr.v))});
    out["hyperedges"].push_back(
        {{"terminals", e.terminals}, {"cost", e.cost()}, {"points", w}, {"bead_pairs", pairs},
         {"heuristic", e.witness.heuristic}});
  }
  return out.dump(2) + "\n";
}

std::vector<int> mst_bead_edges(const Instance& instance, const BeadGraph& graph) {
  std::vector<NodeId> all(instance.size());
  std::iota(all.begin(), all.end(), 0);
  int cost = 0;
  std::vector<int> out;
  for (const auto& e : dhat_mst(instance, all, &cost)) out.push_back(graph.index(e.u, e.v, 0));
  return out;
}

SolutionGraph mst_baseline(const Instance& instance) {
  if (!instance.all_pairs_requirement(1))
    fail(ErrorCode::invalid_argument, "mst_baseline requires r = 1 on every terminal pair");
  const auto graph = build_bead_graph(instance, 1);
  const auto sel = mst_bead_edges(instance, graph);
  return realize(instance, graph, sel).graph;
}

BruteForceResult brute_force_opt(const Instance& instance, int max_s, const OracleConfig& config) {
  std::vector<NodeId> all(instance.size());
  std::iota(all.begin(), all.end(), 0);
  const std::vector<Point> cands = candidate_points(instance, all, config);
  const auto& metric = instance.metric();
  const std::size_t nt = instance.size();
  const int copies = std::max(1, instance.max_requirement());

  // Only non-terminal candidates can be placed.
  std::vector<Point> pool;
  for (const auto& c : cands) {
    bool at_terminal = false;
    for (const auto& t : instance.terminals()) at_terminal = at_terminal || metric.distance(c, t) <= kDedup;
    if (!at_terminal) pool.push_back(c);
  }
  const std::size_t np = pool.size();
  auto near = [&](const Point& a, const Point& b) { return metric.distance(a, b) <= 1.0 + kGeoEps; };
  std::vector<std::vector<char>> pool_term(np, std::vector<char>(nt, 0));
  std::vector<char> touches_terminal(np, 0);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t t = 0; t < nt; ++t)
      if (near(pool[p], instance.terminals()[t])) pool_term[p][t] = touches_terminal[p] = 1;

  BruteForceResult res;
  std::vector<int> chosen;
  std::vector<int> uses(np, 0);
  std::set<std::vector<int>> seen;
  bool exhausted = false;

  auto lower_bound = [&]() {
    std::vector<Point> pts = instance.terminals();
    for (int c : chosen) pts.push_back(pool[c]);
    Dsu dsu(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (near(pts[i], pts[j])) dsu.unite(static_cast<int>(i), static_cast<int>(j));
    int lb = 0;
    for (const auto& d : instance.demands()) {
      const int cu = dsu.find(d.u), cv = dsu.find(d.v);
      if (cu == cv) continue;
      double dmin = 1e300;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (dsu.find(static_cast<int>(i)) != cu) continue;
        for (std::size_t j = 0; j < pts.size(); ++j)
          if (dsu.find(static_cast<int>(j)) == cv) dmin = std::min(dmin, metric.distance(pts[i], pts[j]));
      }
      lb = std::max(lb, static_cast<int>(bead_count(dmin)));
    }
    return lb;
  };

  auto search = [&](auto&& self, int budget) -> bool {
    if (++res.nodes > config.max_nodes) {
      exhausted = true;
      return false;
    }
    if (budget == 0) {
      std::vector<Point> pts;
      for (int c : chosen) pts.push_back(pool[c]);
      return is_feasible(instance, build_solution_graph(instance, pts));
    }
    if (lower_bound() > budget) return false;
    for (std::size_t p = 0; p < np; ++p) {
      if (uses[p] >= copies) continue;
      bool attached = touches_terminal[p];
      for (std::size_t i = 0; i < chosen.size() && !attached; ++i) attached = near(pool[chosen[i]], pool[p]);
      if (!attached) continue;
      chosen.push_back(static_cast<int>(p));
      auto key = chosen;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) {
        ++uses[p];
        const bool ok = self(self, budget - 1);
        --uses[p];
        if (ok) return true;
      }
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  };

  for (int s = 0; s <= max_s; ++s) {
    seen.clear();
    chosen.clear();
    if (search(search, s)) {
      res.count = s;
      for (int c : chosen) res.placement.push_back(pool[c]);
      return res;
    }
    if (exhausted)
      fail(ErrorCode::limit, "brute_force_opt: node budget exhausted at " + std::to_string(s) + " Steiner points");
  }
  fail(ErrorCode::limit, "brute_force_opt: infeasible within budget of " + std::to_string(max_s) + " Steiner points");
}

}  // namespace relaysynth
