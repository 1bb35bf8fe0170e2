#include "relaysynth/bead_optimum.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "relaysynth/cut_lp.hpp"

namespace relaysynth {

namespace {

std::vector<int> covering_unselected(const BeadGraph& graph, const Biset& biset, const std::vector<char>& status) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(graph.edges().size()); ++i) {
    if (status[i] != 0) continue;
    const auto& e = graph.edge(i);
    if (biset.covered_by(Edge(e.u, e.v))) out.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) { return graph.edge(a).cost < graph.edge(b).cost; });
  return out;
}

std::vector<int> selected_ids(const std::vector<char>& status) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(status.size()); ++i)
    if (status[i] == 1) out.push_back(i);
  return out;
}

}  // namespace

std::vector<int> augment_to_feasible(const Instance& instance, const BeadGraph& graph, std::vector<int> selected) {
  std::vector<char> status(graph.edges().size(), 0);
  for (int i : selected) status.at(i) = 1;
  while (true) {
    auto viol = bead_selection_violations(instance, graph, selected_ids(status), true);
    if (viol.empty()) break;
    auto cands = covering_unselected(graph, viol.front().witness, status);
    if (cands.empty()) fail(ErrorCode::infeasible, "augment_to_feasible: demand cannot be met in the bead graph");
    status[cands.front()] = 1;
    selected.push_back(cands.front());
  }
  return selected;
}

std::vector<int> reverse_delete(const Instance& instance, const BeadGraph& graph, const std::vector<int>& in_order) {
  std::vector<char> keep(in_order.size(), 1);
  auto current = [&]() {
    std::vector<int> s;
    for (std::size_t i = 0; i < in_order.size(); ++i)
      if (keep[i]) s.push_back(in_order[i]);
    return s;
  };
  for (std::size_t i = in_order.size(); i-- > 0;) {
    if (graph.edge(in_order[i]).cost == 0) continue;
    keep[i] = 0;
    if (!bead_selection_feasible(instance, graph, current())) keep[i] = 1;
  }
  auto out = current();
  std::sort(out.begin(), out.end());
  return out;
}

BeadSolution tau_integral(const Instance& instance, const BeadGraph& graph, const TauIntegralOptions& options,
                          std::optional<Rational> lower_bound) {
  if (instance.size() > options.terminal_cap)
    fail(ErrorCode::limit, "tau_integral: " + std::to_string(instance.size()) + " terminals exceed the cap of " +
                               std::to_string(options.terminal_cap));
  if (graph.k() < instance.max_requirement())
    fail(ErrorCode::invalid_argument, "tau_integral: bead graph multiplicity below the maximum demand");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = graph.edges().size();

  std::vector<char> status(m, 0);
  std::int64_t cost = 0;
  for (int z : zero_cost_edges(graph)) status[z] = 1;

  BeadSolution best;
  best.selected = reverse_delete(instance, graph, augment_to_feasible(instance, graph, selected_ids(status)));
  best.cost = graph.total_cost(best.selected);

  std::int64_t floor_bound = 0;
  if (lower_bound) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), lower_bound->get_num_mpz_t(), lower_bound->get_den_mpz_t());
    floor_bound = c.get_si();
  }
  bool timed_out = false;
  long nodes = 0;

  auto done = [&]() { return best.cost <= floor_bound; };
  auto out_of_time = [&]() {
    if ((nodes & 63) != 0) return timed_out;
    const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
    if (el.count() > options.time_limit_seconds) timed_out = true;
    return timed_out;
  };

  auto search = [&](auto&& self) -> void {
    ++nodes;
    if (done() || out_of_time()) return;
    auto viol = bead_selection_violations(instance, graph, selected_ids(status), true);
    if (viol.empty()) {
      if (cost < best.cost) {
        best.cost = cost;
        best.selected = selected_ids(status);
      }
      return;
    }
    const auto& v = viol.front();
    const int deficit = v.required - v.achieved;
    auto cands = covering_unselected(graph, v.witness, status);
    if (static_cast<int>(cands.size()) < deficit) return;
    std::int64_t need = 0;
    for (int i = 0; i < deficit; ++i) need += graph.edge(cands[i]).cost;
    if (cost + need >= best.cost) return;

    std::vector<int> excluded;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const int e = cands[i];
      // Remaining candidates must still be able to close the deficit.
      if (static_cast<int>(cands.size() - i) < deficit) break;
      std::int64_t lb = cost;
      for (int j = 0; j < deficit; ++j) lb += graph.edge(cands[i + j]).cost;
      if (lb >= best.cost) break;
      status[e] = 1;
      cost += graph.edge(e).cost;
      self(self);
      cost -= graph.edge(e).cost;
      status[e] = 2;
      excluded.push_back(e);
      if (done() || timed_out) break;
    }
    for (int e : excluded) status[e] = 0;
  };
  search(search);

  best.optimal = !timed_out;
  best.nodes = nodes;
  std::sort(best.selected.begin(), best.selected.end());
  return best;
}

BeadSolution tau_integral(const Instance& instance, int k, const TauIntegralOptions& options) {
  BeadGraph graph = build_bead_graph(instance, k);
  std::optional<Rational> lb;
  if (options.use_tau_star) lb = tau_star(instance, graph).value;
  return tau_integral(instance, graph, options, lb);
}

}  // namespace relaysynth
