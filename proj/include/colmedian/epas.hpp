#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "colmedian/instance.hpp"
#include "colmedian/partition_family.hpp"
#include "colmedian/types.hpp"
#include "colmedian/voronoi.hpp"

namespace colmedian {

// Facilities forced closed alongside `anchor` under a partition hint.
struct RequiredSet {
  FacilityId anchor = -1;
  FacilitySet members;              // always contains anchor; subset of A
  double nearest_b_distance = 0.0;  // s_f = min over B of d(f, y)
  double marginal_cost = 0.0;       // m_f, +inf when |members| > ell
};

// The eps-support of a closed set: for each closed f its nearest open
// facility, plus every open g that absorbs more than eps/(6 ell^2) * cost(S)
// of some closed cell.
struct SupportSet {
  FacilitySet solution;
  FacilitySet members;
  double epsilon = 0.0;
};

// One guess D for cost(Opt); the window is [lower, upper] = [D, 2D].
struct GuessWindow {
  double d_value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Requires |closed| == inst.ell() and at least one open facility.
SupportSet epsilon_support(const Instance& inst, const VoronoiDiagram& vor,
                           const FacilitySet& closed, double eps);

// Grows R_f from {g in A : d(f,g) < s_f} u {f} by repeatedly adding the
// smallest-index g in A \ R_f with C(R_f, f, g) > eps/(3 ell^2) * D, then
// prices closing R_f for the clients of V(f). Requires f in A, B non-empty
// and ell >= 1.
RequiredSet compute_required_set(const Instance& inst,
                                 const VoronoiDiagram& vor,
                                 const Partition& partition, FacilityId f,
                                 double eps, int ell, double guess);

// compute_required_set for every f in A, in index order.
std::vector<RequiredSet> required_sets(const Instance& inst,
                                       const VoronoiDiagram& vor,
                                       const Partition& partition, double eps,
                                       int ell, double guess);

// Closes the ell facilities of A with the smallest finite marginal cost (ties
// by index) and returns that set with its true cost. Returns nullopt when B is
// empty or fewer than ell facilities of A have a finite marginal cost.
std::optional<Solution> solve_given_partition(const Instance& inst,
                                              const VoronoiDiagram& vor,
                                              const Partition& partition,
                                              double guess, double eps,
                                              int ell);

struct CostBounds {
  double lower = 0.0;  // sum of cell costs
  double upper = 0.0;  // cost of the greedy witness
  Solution witness;
};

// Greedy witness: close ell facilities one at a time, each time the open
// facility whose closure raises the current cost least (ties by index).
CostBounds cost_bounds(const Instance& inst, const VoronoiDiagram& vor);

// Smallest positive client-facility distance, or 0 when there is none.
double smallest_positive_distance(const Instance& inst);

// D = upper, upper/2, ... until D <= max(lower, d_min/2). Every value in
// [max(lower, d_min/2), upper] lies in some [D, 2D]. Empty when upper == 0.
std::vector<GuessWindow> guess_windows(double lower, double upper,
                                       double d_min);

enum class EpasMode { kDeterministic, kRandomized };

struct EpasOptions {
  double eps = 0.5;
  EpasMode mode = EpasMode::kDeterministic;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;  // randomized mode; overrides delta
  double delta = 0.01;
  int workers = 1;
};

struct EpasResult {
  Solution solution;
  std::uint64_t partitions_evaluated = 0;  // (partition, D) pairs solved
  std::size_t distinct_partitions = 0;
  std::size_t windows = 0;
  std::uint64_t trials = 0;  // randomized mode only
  bool witness_returned = false;
  // Best candidate of the (partition, D) grid alone, before comparing with
  // the greedy witness; empty when the grid was skipped or yielded nothing.
  std::optional<Solution> grid_best;
};

// T = ceil(ln(1/delta) * (ell^3/eps)^ell * e).
std::uint64_t randomized_trial_count(int ell, double eps, double delta);

// (1+eps)-approximation for uncapacitated instances. The returned cost is the
// true cost of the returned closed set; the result is identical for every
// worker count.
EpasResult solve_epas(const Instance& inst, const EpasOptions& options);

}  // namespace colmedian
