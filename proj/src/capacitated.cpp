#include "colmedian/capacitated.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "min_cost_flow.hpp"

namespace colmedian {

TransportationProblem make_transportation(const Instance& inst,
                                          const FacilitySet& closed) {
  const auto mask = facility_mask(inst.num_facilities(), closed);
  TransportationProblem problem;
  problem.num_clients = inst.num_clients();
  for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
    if (mask[f]) continue;
    problem.open_facilities.push_back(f);
    problem.capacities.push_back(inst.capacity(f));
  }
  problem.costs.reserve(static_cast<std::size_t>(problem.num_clients) *
                        problem.open_facilities.size());
  for (ClientId c = 0; c < problem.num_clients; ++c) {
    for (FacilityId f : problem.open_facilities) {
      problem.costs.push_back(inst.client_facility(c, f));
    }
  }
  return problem;
}

std::vector<int> solve_transportation(const TransportationProblem& problem) {
  const int clients = problem.num_clients;
  const int slots = static_cast<int>(problem.open_facilities.size());
  std::int64_t supply = 0;
  for (auto u : problem.capacities) supply += u;
  if (supply < clients) {
    throw InfeasibleError(fmt::format(
        "open capacity {} cannot serve {} clients", supply, clients));
  }
  if (clients == 0) return {};

  // source, clients, facility slots, sink
  const int source = 0;
  const int sink = 1 + clients + slots;
  internal::MinCostFlow flow(sink + 1);
  for (int c = 0; c < clients; ++c) flow.add_arc(source, 1 + c, 1, 0.0);
  std::vector<int> arc_of(static_cast<std::size_t>(clients) * slots);
  for (int c = 0; c < clients; ++c) {
    for (int s = 0; s < slots; ++s) {
      if (problem.capacities[s] == 0) {
        arc_of[static_cast<std::size_t>(c) * slots + s] = -1;
        continue;
      }
      arc_of[static_cast<std::size_t>(c) * slots + s] =
          flow.add_arc(1 + c, 1 + clients + s, 1, problem.cost(c, s));
    }
  }
  for (int s = 0; s < slots; ++s) {
    flow.add_arc(1 + clients + s, sink,
                 std::min<std::int64_t>(problem.capacities[s], clients), 0.0);
  }
  const auto result = flow.solve(source, sink, clients);
  if (result.flow < clients) {
    throw InfeasibleError("transportation problem has no complete assignment");
  }

  std::vector<int> slot_of(clients, -1);
  for (int c = 0; c < clients; ++c) {
    for (int s = 0; s < slots; ++s) {
      const int arc = arc_of[static_cast<std::size_t>(c) * slots + s];
      if (arc >= 0 && flow.flow_on(arc) > 0) slot_of[c] = s;
    }
  }
  return slot_of;
}

bool closure_feasible(const Instance& inst, const FacilitySet& closed) {
  const auto mask = facility_mask(inst.num_facilities(), closed);
  std::int64_t supply = 0;
  bool any_open = false;
  for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
    if (mask[f]) continue;
    any_open = true;
    supply += inst.capacity(f);
  }
  if (inst.num_clients() > 0 && !any_open) return false;
  return supply >= inst.num_clients();
}

Solution optimal_assignment(const Instance& inst, const FacilitySet& closed) {
  const auto problem = make_transportation(inst, closed);
  const auto slot_of = solve_transportation(problem);
  Solution sol;
  sol.closed = closed;
  normalize(sol.closed);
  sol.assignment.resize(inst.num_clients());
  for (ClientId c = 0; c < inst.num_clients(); ++c) {
    const FacilityId f = problem.open_facilities[slot_of[c]];
    sol.assignment[c] = f;
    sol.cost += inst.client_facility(c, f);
  }
  return sol;
}

}  // namespace colmedian
