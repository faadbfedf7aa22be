#include "colmedian/exact.hpp"

#include <optional>

#include <fmt/format.h>

#include "colmedian/capacitated.hpp"
#include "colmedian/partition_family.hpp"
#include "colmedian/voronoi.hpp"

namespace colmedian {
namespace {

void check_budget(const Instance& inst, double budget) {
  const double subsets = binomial(inst.num_facilities(), inst.ell());
  if (subsets > budget) {
    throw BudgetExceeded(
        fmt::format("exhaustive search over C({}, {}) = {:.0f} subsets exceeds "
                    "the budget of {:.0f}",
                    inst.num_facilities(), inst.ell(), subsets, budget),
        subsets);
  }
}

}  // namespace

void for_each_subset(int n, int k,
                     const std::function<void(const FacilitySet&)>& visit) {
  if (k < 0 || k > n) return;
  FacilitySet subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  for (;;) {
    visit(subset);
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

Solution exact_uncapacitated(const Instance& inst, double budget) {
  if (inst.capacitated()) {
    throw ParameterError(
        "exact_uncapacitated called on a capacitated instance");
  }
  check_budget(inst, budget);
  std::optional<Solution> best;
  for_each_subset(inst.num_facilities(), inst.ell(), [&](const FacilitySet& s) {
    Solution candidate = solution_cost(inst, s);
    if (!best || candidate.cost < best->cost) best = std::move(candidate);
  });
  return *best;
}

Solution exact_capacitated(const Instance& inst, double budget) {
  check_budget(inst, budget);
  std::optional<Solution> best;
  for_each_subset(inst.num_facilities(), inst.ell(), [&](const FacilitySet& s) {
    if (!closure_feasible(inst, s)) return;
    Solution candidate = optimal_assignment(inst, s);
    if (!best || candidate.cost < best->cost) best = std::move(candidate);
  });
  if (!best) {
    throw InfeasibleError(fmt::format(
        "no set of {} closed facilities leaves enough capacity", inst.ell()));
  }
  return *best;
}

}  // namespace colmedian
