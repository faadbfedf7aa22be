#pragma once

#include <cstdint>
#include <vector>

namespace colmedian::internal {

// Successive shortest augmenting paths with Johnson potentials. Arc costs must
// be non-negative; Dijkstra runs in O(V^2), which suits the dense bipartite
// graphs built for transportation problems.
class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes);

  // Returns the arc index; its reverse arc is index ^ 1.
  int add_arc(int from, int to, std::int64_t capacity, double cost);

  struct Result {
    std::int64_t flow = 0;
    double cost = 0.0;
  };
  // Pushes up to `limit` units from source to sink at minimum cost.
  Result solve(int source, int sink, std::int64_t limit);

  std::int64_t flow_on(int arc) const { return arcs_[arc ^ 1].residual; }

 private:
  struct Arc {
    int to;
    std::int64_t residual;
    double cost;
  };
  int num_nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace colmedian::internal
