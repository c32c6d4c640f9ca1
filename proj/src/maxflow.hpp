#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace ramsey0::detail {

// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max() / 4;

  explicit MaxFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
    arcs_.push_back({to, head_[from], capacity});
    head_[from] = static_cast<int>(arcs_.size() - 1);
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size() - 1);
  }

  std::int64_t run(std::size_t source, std::size_t sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      for (std::size_t v = 0; v < head_.size(); ++v) iter_[v] = head_[v];
      while (std::int64_t pushed = dfs(source, sink, kInfinite)) total += pushed;
    }
    return total;
  }

  // Nodes reachable from the source in the final residual network.
  std::vector<bool> source_side(std::size_t source) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

  // Flow on the arc created by the k-th add_edge call.
  std::int64_t flow_on(std::size_t k) const { return arcs_[2 * k + 1].cap; }

 private:
  struct Arc {
    std::size_t to;
    int next;
    std::int64_t cap;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t sink, std::int64_t limit) {
    if (v == sink) return limit;
    for (int& a = iter_[v]; a >= 0; a = arcs_[a].next) {
      auto& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      if (std::int64_t got = dfs(arc.to, sink, std::min(limit, arc.cap))) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<Arc> arcs_;
};

}  // namespace ramsey0::detail
