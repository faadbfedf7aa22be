#include "colmedian/epas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>

namespace colmedian {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ParameterError(fmt::format("eps must be a positive real, got {}", eps));
  }
}

// Algorithm body shared by the public entry point and the solver. With
// `stop_when_oversized` the loop ends as soon as |R_f| > ell, which leaves
// m_f = inf unchanged but skips work the solver never observes.
RequiredSet grow_required_set(const Instance& inst, const VoronoiDiagram& vor,
                              const Partition& partition, FacilityId f,
                              double eps, int ell, double guess,
                              bool stop_when_oversized) {
  const int n = inst.num_facilities();
  RequiredSet out;
  out.anchor = f;

  double s = kInfinity;
  for (FacilityId y = 0; y < n; ++y) {
    if (partition.in_b(y)) s = std::min(s, inst.facility_facility(f, y));
  }
  out.nearest_b_distance = s;

  std::vector<char> in_r(n, 0);
  int r_size = 0;
  for (FacilityId g = 0; g < n; ++g) {
    if (partition.in_a(g) && (g == f || inst.facility_facility(f, g) < s)) {
      in_r[g] = 1;
      ++r_size;
    }
  }

  const double threshold =
      eps / (3.0 * static_cast<double>(ell) * ell) * guess;
  while (!(stop_when_oversized && r_size > ell)) {
    const auto moved = rerouted_costs(inst, vor, in_r, f);
    FacilityId heavy = -1;
    for (FacilityId g = 0; g < n; ++g) {
      if (partition.in_a(g) && !in_r[g] && moved[g] > threshold) {
        heavy = g;
        break;
      }
    }
    if (heavy < 0) break;
    in_r[heavy] = 1;
    ++r_size;
  }

  for (FacilityId g = 0; g < n; ++g) {
    if (in_r[g]) out.members.push_back(g);
  }
  if (r_size > ell) {
    out.marginal_cost = kInfinity;
  } else {
    double rerouted = 0.0;
    for (ClientId c : vor.cells[f]) {
      rerouted += inst.client_facility(c, nearest_open(inst, c, in_r));
    }
    out.marginal_cost = rerouted - vor.cell_cost[f];
  }
  return out;
}

void check_partition(const Instance& inst, const Partition& partition) {
  if (partition.size() != inst.num_facilities()) {
    throw ContractViolation(fmt::format("partition over {} facilities, "
                                        "instance has {}",
                                        partition.size(),
                                        inst.num_facilities()));
  }
}

std::optional<Solution> solve_partition(const Instance& inst,
                                        const VoronoiDiagram& vor,
                                        const Partition& partition,
                                        double guess, double eps, int ell,
                                        bool stop_when_oversized) {
  if (ell == 0) return solution_cost(inst, {});
  if (partition.b_count() == 0 || partition.a_count() < ell) {
    return std::nullopt;
  }
  std::vector<std::pair<double, FacilityId>> priced;
  for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
    if (!partition.in_a(f)) continue;
    const auto rs = grow_required_set(inst, vor, partition, f, eps, ell, guess,
                                      stop_when_oversized);
    if (rs.marginal_cost != kInfinity) priced.emplace_back(rs.marginal_cost, f);
  }
  if (static_cast<int>(priced.size()) < ell) return std::nullopt;
  std::sort(priced.begin(), priced.end());
  FacilitySet closed;
  for (int i = 0; i < ell; ++i) closed.push_back(priced[i].second);
  return solution_cost(inst, normalize(closed));
}

std::string mask_key(std::span<const char> mask) {
  return std::string(mask.begin(), mask.end());
}

}  // namespace

SupportSet epsilon_support(const Instance& inst, const VoronoiDiagram& vor,
                           const FacilitySet& closed, double eps) {
  check_eps(eps);
  SupportSet out;
  out.solution = closed;
  normalize(out.solution);
  out.epsilon = eps;
  if (static_cast<int>(out.solution.size()) != inst.ell()) {
    throw ContractViolation(fmt::format(
        "support needs |S| = ell = {}, got {}", inst.ell(), out.solution.size()));
  }
  const auto mask = facility_mask(inst.num_facilities(), out.solution);
  if (std::find(mask.begin(), mask.end(), 0) == mask.end()) {
    throw InfeasibleError("every facility is closed");
  }
  if (out.solution.empty()) return out;

  const double cost = solution_cost(inst, out.solution).cost;
  const double ell = static_cast<double>(out.solution.size());
  const double threshold = eps / (6.0 * ell * ell) * cost;

  std::vector<char> in_support(inst.num_facilities(), 0);
  for (FacilityId f : out.solution) {
    FacilityId nearest = -1;
    for (FacilityId g = 0; g < inst.num_facilities(); ++g) {
      if (mask[g]) continue;
      if (nearest < 0 ||
          inst.facility_facility(f, g) < inst.facility_facility(f, nearest)) {
        nearest = g;
      }
    }
    in_support[nearest] = 1;
    const auto moved = rerouted_costs(inst, vor, mask, f);
    for (FacilityId g = 0; g < inst.num_facilities(); ++g) {
      if (!mask[g] && moved[g] > threshold) in_support[g] = 1;
    }
  }
  for (FacilityId g = 0; g < inst.num_facilities(); ++g) {
    if (in_support[g]) out.members.push_back(g);
  }
  return out;
}

RequiredSet compute_required_set(const Instance& inst,
                                 const VoronoiDiagram& vor,
                                 const Partition& partition, FacilityId f,
                                 double eps, int ell, double guess) {
  check_eps(eps);
  check_partition(inst, partition);
  if (f < 0 || f >= inst.num_facilities() || !partition.in_a(f)) {
    throw ContractViolation(fmt::format("facility {} is not in A", f));
  }
  if (partition.b_count() == 0) {
    throw ContractViolation("B is empty, so s_f is undefined");
  }
  if (ell < 1) throw ContractViolation("required sets need ell >= 1");
  return grow_required_set(inst, vor, partition, f, eps, ell, guess, false);
}

std::vector<RequiredSet> required_sets(const Instance& inst,
                                       const VoronoiDiagram& vor,
                                       const Partition& partition, double eps,
                                       int ell, double guess) {
  std::vector<RequiredSet> out;
  for (FacilityId f = 0; f < partition.size(); ++f) {
    if (partition.in_a(f)) {
      out.push_back(
          compute_required_set(inst, vor, partition, f, eps, ell, guess));
    }
  }
  return out;
}

std::optional<Solution> solve_given_partition(const Instance& inst,
                                              const VoronoiDiagram& vor,
                                              const Partition& partition,
                                              double guess, double eps,
                                              int ell) {
  check_eps(eps);
  check_partition(inst, partition);
  if (ell < 0) throw ContractViolation("negative ell");
  return solve_partition(inst, vor, partition, guess, eps, ell, false);
}

CostBounds cost_bounds(const Instance& inst, const VoronoiDiagram& vor) {
  if (inst.capacitated()) {
    throw ParameterError("cost bounds are defined for uncapacitated instances");
  }
  CostBounds out;
  out.lower = vor.total_cell_cost();
  FacilitySet closed;
  std::vector<char> mask(inst.num_facilities(), 0);
  for (int step = 0; step < inst.ell(); ++step) {
    FacilityId pick = -1;
    double pick_cost = 0.0;
    for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
      if (mask[f]) continue;
      FacilitySet trial = closed;
      trial.push_back(f);
      const double c = solution_cost(inst, normalize(trial)).cost;
      if (pick < 0 || c < pick_cost) {
        pick = f;
        pick_cost = c;
      }
    }
    mask[pick] = 1;
    closed.push_back(pick);
    normalize(closed);
  }
  out.witness = solution_cost(inst, closed);
  out.upper = out.witness.cost;
  return out;
}

double smallest_positive_distance(const Instance& inst) {
  double best = 0.0;
  for (ClientId c = 0; c < inst.num_clients(); ++c) {
    for (FacilityId f = 0; f < inst.num_facilities(); ++f) {
      const double d = inst.client_facility(c, f);
      if (d > 0.0 && (best == 0.0 || d < best)) best = d;
    }
  }
  return best;
}

std::vector<GuessWindow> guess_windows(double lower, double upper,
                                       double d_min) {
  std::vector<GuessWindow> out;
  if (!(upper > 0.0)) return out;
  const double floor = std::max(lower, d_min / 2.0);
  double d = upper;
  out.push_back({d, d, 2.0 * d});
  while (d > floor && d > 0.0) {
    d /= 2.0;
    out.push_back({d, d, 2.0 * d});
  }
  return out;
}

std::uint64_t randomized_trial_count(int ell, double eps, double delta) {
  check_eps(eps);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError(fmt::format("delta must lie in (0, 1), got {}", delta));
  }
  if (ell <= 0) return 0;
  const double cube = static_cast<double>(ell) * ell * ell;
  const double trials = std::ceil(std::log(1.0 / delta) *
                                  std::pow(cube / eps, ell) * std::numbers::e);
  if (!(trials < 9.0e18)) {
    throw ParameterError(fmt::format(
        "randomized mode needs {:.3g} trials for ell={} eps={}; pass an "
        "explicit trial count",
        trials, ell, eps));
  }
  return static_cast<std::uint64_t>(trials);
}

EpasResult solve_epas(const Instance& inst, const EpasOptions& options) {
  check_eps(options.eps);
  if (inst.capacitated()) {
    throw ParameterError(
        "the approximation scheme applies to uncapacitated instances only");
  }
  const int ell = inst.ell();
  const int n = inst.num_facilities();
  EpasResult result;
  const VoronoiDiagram vor = build_voronoi(inst);
  if (ell == 0) {
    result.solution = solution_cost(inst, {});
    return result;
  }

  const CostBounds bounds = cost_bounds(inst, vor);
  result.solution = bounds.witness;
  result.witness_returned = true;
  if (options.mode == EpasMode::kRandomized) {
    result.trials = options.trials.value_or(
        randomized_trial_count(ell, options.eps, options.delta));
  }
  // lower <= cost(Opt) <= upper, so equal bounds certify the witness.
  if (bounds.upper <= bounds.lower) return result;

  const auto windows =
      guess_windows(bounds.lower, bounds.upper, smallest_positive_distance(inst));

  std::vector<Partition> partitions;
  std::unordered_set<std::string> seen;
  auto offer = [&](const Partition& p) {
    if (p.a_count() < ell || p.b_count() == 0) return;
    if (seen.insert(mask_key(p.a_mask())).second) partitions.push_back(p);
  };
  if (options.mode == EpasMode::kDeterministic) {
    deterministic_family(FamilyParams::for_epsilon(n, ell, options.eps))
        .for_each(offer);
  } else {
    BiasedCoinStream stream(n, coin_probability(ell, options.eps),
                            result.trials, options.seed);
    // Millions of trials collapse onto few distinct A sides; filter them
    // by a bit mask before building partitions.
    std::unordered_set<std::uint64_t> seen_small;
    FacilitySet a_side;
    while (stream.next_a_side(a_side)) {
      const auto a_count = static_cast<int>(a_side.size());
      if (a_count < ell || a_count == n) continue;
      if (n <= 64) {
        std::uint64_t key = 0;
        for (FacilityId f : a_side) key |= std::uint64_t{1} << f;
        if (!seen_small.insert(key).second) continue;
      }
      offer(Partition::from_a_side(n, a_side));
    }
  }

  result.windows = windows.size();
  result.distinct_partitions = partitions.size();
  const std::uint64_t grid =
      static_cast<std::uint64_t>(partitions.size()) * windows.size();
  result.partitions_evaluated = grid;

  const int workers = std::max(1, options.workers);
  std::vector<std::optional<Solution>> best(workers);
  auto work = [&](int worker) {
    for (std::uint64_t i = worker; i < grid; i += workers) {
      const auto& partition = partitions[i / windows.size()];
      const double guess = windows[i % windows.size()].d_value;
      auto candidate = solve_partition(inst, vor, partition, guess,
                                       options.eps, ell, true);
      if (candidate &&
          (!best[worker] || better_solution(*candidate, *best[worker]))) {
        best[worker] = std::move(candidate);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  for (auto& candidate : best) {
    if (candidate &&
        (!result.grid_best || better_solution(*candidate, *result.grid_best))) {
      result.grid_best = std::move(candidate);
    }
  }
  if (result.grid_best && better_solution(*result.grid_best, result.solution)) {
    result.solution = *result.grid_best;
    result.witness_returned = false;
  }
  return result;
}

}  // namespace colmedian
