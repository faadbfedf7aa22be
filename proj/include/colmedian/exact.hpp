#pragma once

#include <functional>

#include "colmedian/instance.hpp"
#include "colmedian/types.hpp"

namespace colmedian {

// Default cap on the number of ell-subsets an oracle may enumerate.
inline constexpr double kDefaultOracleBudget = 1e6;

// Visits every k-subset of {0, ..., n-1} in lexicographic order.
void for_each_subset(int n, int k,
                     const std::function<void(const FacilitySet&)>& visit);

// Minimum-cost ell-subset by enumeration; ties go to the lexicographically
// smallest closed set. Throws BudgetExceeded if C(|F|, ell) > budget and
// ParameterError for capacitated instances.
Solution exact_uncapacitated(const Instance& inst,
                             double budget = kDefaultOracleBudget);

// Same enumeration with optimal capacitated assignments; capacity-infeasible
// subsets are skipped. Throws InfeasibleError if none is feasible.
Solution exact_capacitated(const Instance& inst,
                           double budget = kDefaultOracleBudget);

}  // namespace colmedian
