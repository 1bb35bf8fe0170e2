#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace relaysynth {

// Directed flow network solved by shortest augmenting paths (Edmonds-Karp).
// Cap is an ordered field or integer type; graphs here are desk-sized.
template <class Cap>
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  int add_arc(int from, int to, Cap cap) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap});
    arcs_.push_back({from, Cap(0)});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  // Runs until no augmenting path remains or the flow reaches `limit`.
  Cap max_flow(int s, int t, const Cap& limit) {
    Cap flow(0);
    std::vector<int> via(adj_.size());
    while (flow < limit) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> q;
      q.push(s);
      via[s] = -2;
      while (!q.empty() && via[t] == -1) {
        const int x = q.front();
        q.pop();
        for (int a : adj_[x]) {
          const int y = arcs_[a].to;
          if (via[y] == -1 && arcs_[a].cap > 0) {
            via[y] = a;
            q.push(y);
          }
        }
      }
      if (via[t] == -1) break;
      Cap push = limit - flow;
      for (int y = t; y != s; y = arcs_[via[y] ^ 1].to)
        if (arcs_[via[y]].cap < push) push = arcs_[via[y]].cap;
      for (int y = t; y != s; y = arcs_[via[y] ^ 1].to) {
        arcs_[via[y]].cap -= push;
        arcs_[via[y] ^ 1].cap += push;
      }
      flow += push;
    }
    return flow;
  }

  // Nodes reachable from s in the residual network; after a complete
  // max_flow this is the source side of a minimum cut.
  [[nodiscard]] std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int a : adj_[x]) {
        const int y = arcs_[a].to;
        if (!seen[y] && arcs_[a].cap > 0) {
          seen[y] = 1;
          q.push(y);
        }
      }
    }
    return seen;
  }

  [[nodiscard]] std::size_t size() const { return adj_.size(); }

 private:
  struct Arc {
    int to;
    Cap cap;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace relaysynth
