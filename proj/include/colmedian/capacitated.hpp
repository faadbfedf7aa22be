#pragma once

#include <cstdint>
#include <vector>

#include "colmedian/instance.hpp"
#include "colmedian/types.hpp"

namespace colmedian {

// Unit-demand clients shipped to open facilities with integer capacities.
struct TransportationProblem {
  std::vector<FacilityId> open_facilities;
  std::vector<std::int64_t> capacities;  // parallel to open_facilities
  int num_clients = 0;
  std::vector<double> costs;  // num_clients x open_facilities, row-major

  double cost(ClientId c, int slot) const {
    return costs[static_cast<std::size_t>(c) * open_facilities.size() + slot];
  }
};

TransportationProblem make_transportation(const Instance& inst,
                                          const FacilitySet& closed);

// Minimum-cost assignment; entry c is a slot into open_facilities. Throws
// InfeasibleError when total capacity is below the number of clients.
std::vector<int> solve_transportation(const TransportationProblem& problem);

// True iff the facilities left open can hold every client.
bool closure_feasible(const Instance& inst, const FacilitySet& closed);

// Optimal capacity-respecting assignment for a fixed closed set. Uncapacitated
// instances are treated as u_f = |C|.
Solution optimal_assignment(const Instance& inst, const FacilitySet& closed);

}  // namespace colmedian
