#include "min_cost_flow.hpp"

#include <algorithm>
#include <limits>

namespace colmedian::internal {
namespace {
// Reduced costs within this slack of zero are treated as zero.
constexpr double kReducedCostSlack = 1e-9;
}  // namespace

MinCostFlow::MinCostFlow(int num_nodes)
    : num_nodes_(num_nodes), out_(num_nodes) {}

int MinCostFlow::add_arc(int from, int to, std::int64_t capacity,
                         double cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, cost});
  arcs_.push_back({from, 0, -cost});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

MinCostFlow::Result MinCostFlow::solve(int source, int sink,
                                       std::int64_t limit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Result result;
  std::vector<double> potential(num_nodes_, 0.0);
  std::vector<double> dist(num_nodes_);
  std::vector<int> via(num_nodes_);
  std::vector<char> done(num_nodes_);

  while (result.flow < limit) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    dist[source] = 0.0;
    for (;;) {
      int u = -1;
      for (int v = 0; v < num_nodes_; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0) break;
      done[u] = 1;
      for (int id : out_[u]) {
        const Arc& arc = arcs_[id];
        if (arc.residual <= 0 || done[arc.to]) continue;
        double reduced = arc.cost + potential[u] - potential[arc.to];
        if (reduced < 0.0 && reduced > -kReducedCostSlack) reduced = 0.0;
        if (dist[u] + reduced < dist[arc.to]) {
          dist[arc.to] = dist[u] + reduced;
          via[arc.to] = id;
        }
      }
    }
    if (dist[sink] == kInf) break;
    for (int v = 0; v < num_nodes_; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }

    std::int64_t push = limit - result.flow;
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      push = std::min(push, arcs_[via[v]].residual);
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].residual -= push;
      arcs_[via[v] ^ 1].residual += push;
      result.cost += static_cast<double>(push) * arcs_[via[v]].cost;
    }
    result.flow += push;
  }
  return result;
}

}  // namespace colmedian::internal
