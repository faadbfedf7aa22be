#pragma once

#include <span>
#include <vector>

#include "colmedian/instance.hpp"
#include "colmedian/types.hpp"

namespace colmedian {

// Voronoi cells V(f) with all facilities open. Clients go to their nearest
// facility; ties resolve to the smaller facility index. The diagram never
// depends on which facilities a solution closes, so it is computed once per
// instance and shared.
struct VoronoiDiagram {
  std::vector<FacilityId> cell_of_client;
  std::vector<std::vector<ClientId>> cells;
  std::vector<double> cell_cost;  // C(f) = sum of dist over V(f)

  double total_cell_cost() const;
};

VoronoiDiagram build_voronoi(const Instance& inst);

// Nearest facility with closed_mask[f] == 0, smallest index on ties; -1 when
// every facility is closed.
FacilityId nearest_open(const Instance& inst, ClientId c,
                        std::span<const char> closed_mask);

// The uncapacitated assignment phi_S and its cost. Throws InfeasibleError if
// every facility is closed while clients exist.
Solution solution_cost(const Instance& inst, const FacilitySet& closed);

// C(S, f, g): cost paid by the clients of V(f) that move to g once S is
// closed. Requires f in S and g not in S (ContractViolation otherwise).
double rerouted_cost(const Instance& inst, const VoronoiDiagram& vor,
                     const FacilitySet& closed, FacilityId f, FacilityId g);

// C(S, f, g) for every g at once (entries for closed g are 0). `closed_mask`
// must mark f as closed and leave at least one facility open.
std::vector<double> rerouted_costs(const Instance& inst,
                                   const VoronoiDiagram& vor,
                                   std::span<const char> closed_mask,
                                   FacilityId f);

// Delta(S) = sum over f in S of (sum over V(f) of d(c, F \ S)) - C(f), so that
// cost(S) = sum_f C(f) + Delta(S).
double delta(const Instance& inst, const VoronoiDiagram& vor,
             const FacilitySet& closed);

}  // namespace colmedian
