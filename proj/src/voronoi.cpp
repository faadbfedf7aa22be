#include "colmedian/voronoi.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace colmedian {
namespace {

std::vector<char> checked_closed_mask(const Instance& inst,
                                      const FacilitySet& closed) {
  auto mask = facility_mask(inst.num_facilities(), closed);
  if (inst.num_clients() > 0 &&
      std::find(mask.begin(), mask.end(), 0) == mask.end()) {
    throw InfeasibleError("every facility is closed but clients need service");
  }
  return mask;
}

}  // namespace

double VoronoiDiagram::total_cell_cost() const {
  return std::accumulate(cell_cost.begin(), cell_cost.end(), 0.0);
}

FacilityId nearest_open(const Instance& inst, ClientId c,
                        std::span<const char> closed_mask) {
  FacilityId best = -1;
  double best_dist = 0.0;
  for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
    if (closed_mask[f]) continue;
    const double d = inst.client_facility(c, f);
    if (best < 0 || d < best_dist) {
      best = f;
      best_dist = d;
    }
  }
  return best;
}

VoronoiDiagram build_voronoi(const Instance& inst) {
  VoronoiDiagram vor;
  vor.cells.resize(inst.num_facilities());
  vor.cell_cost.assign(inst.num_facilities(), 0.0);
  vor.cell_of_client.resize(inst.num_clients());
  const std::vector<char> none_closed(inst.num_facilities(), 0);
  for (ClientId c = 0; c < inst.num_clients(); ++c) {
    const FacilityId f = nearest_open(inst, c, none_closed);
    vor.cell_of_client[c] = f;
    vor.cells[f].push_back(c);
  }
  for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
    for (ClientId c : vor.cells[f]) vor.cell_cost[f] += inst.client_facility(c, f);
  }
  return vor;
}

Solution solution_cost(const Instance& inst, const FacilitySet& closed) {
  const auto mask = checked_closed_mask(inst, closed);
  Solution sol;
  sol.closed = closed;
  normalize(sol.closed);
  sol.assignment.resize(inst.num_clients());
  for (ClientId c = 0; c < inst.num_clients(); ++c) {
    const FacilityId f = nearest_open(inst, c, mask);
    sol.assignment[c] = f;
    sol.cost += inst.client_facility(c, f);
  }
  return sol;
}

std::vector<double> rerouted_costs(const Instance& inst,
                                   const VoronoiDiagram& vor,
                                   std::span<const char> closed_mask,
                                   FacilityId f) {
  std::vector<double> out(inst.num_facilities(), 0.0);
  for (ClientId c : vor.cells[f]) {
    const FacilityId g = nearest_open(inst, c, closed_mask);
    out[g] += inst.client_facility(c, g);
  }
  return out;
}

double rerouted_cost(const Instance& inst, const VoronoiDiagram& vor,
                     const FacilitySet& closed, FacilityId f, FacilityId g) {
  const auto mask = checked_closed_mask(inst, closed);
  if (f < 0 || f >= inst.num_facilities() || !mask[f]) {
    throw ContractViolation(fmt::format("facility {} is not closed", f));
  }
  if (g < 0 || g >= inst.num_facilities() || mask[g]) {
    throw ContractViolation(fmt::format("facility {} is not open", g));
  }
  double total = 0.0;
  for (ClientId c : vor.cells[f]) {
    if (nearest_open(inst, c, mask) == g) total += inst.client_facility(c, g);
  }
  return total;
}

double delta(const Instance& inst, const VoronoiDiagram& vor,
             const FacilitySet& closed) {
  const auto mask = checked_closed_mask(inst, closed);
  // Per-cell differences are summed in the same client order as C(f), so
  // each term is non-negative even under rounding.
  double total = 0.0;
  for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
    if (!mask[f]) continue;
    double rerouted = 0.0;
    for (ClientId c : vor.cells[f]) {
      rerouted += inst.client_facility(c, nearest_open(inst, c, mask));
    }
    total += rerouted - vor.cell_cost[f];
  }
  return total;
}

}  // namespace colmedian
