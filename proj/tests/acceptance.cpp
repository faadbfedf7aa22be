// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.
// Usage: colmedian_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include <fmt/format.h>

#include "colmedian/capacitated.hpp"
#include "colmedian/cli.hpp"
#include "colmedian/epas.hpp"
#include "colmedian/exact.hpp"
#include "colmedian/generators.hpp"
#include "colmedian/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace colmedian;

namespace {

// Pinned tolerances.
constexpr double kRelTol = 1e-9;         // criteria 1, 2, 7
constexpr double kRerouteAbsTol = 1e-9;  // criterion 5
constexpr double kRandomFailureRate = 0.02;
constexpr double kCoverageSeconds = 60.0;

struct Outcome {
  bool pass;
  std::string detail;
};

struct SuiteInstance {
  Instance instance;
  double opt;
};

// |F| <= 10, |C| <= 15, ell in {1, 2, 3}. Mostly instances where every
// facility owns a client (so closing is never free), plus plain random metrics.
Instance suite_instance(int i, std::mt19937_64& rng) {
  const int ell = 1 + i % 3;
  const int nf = ell + 2 + static_cast<int>(rng() % (9 - ell));  // <= 10
  const int nc = nf + static_cast<int>(rng() % (16 - nf));        // <= 15
  const std::uint64_t seed = rng();
  switch (i % 4) {
    case 0:
      return fixtures::clustered_instance(nf, nc, ell, seed, false);
    case 1:
      return fixtures::clustered_instance(nf, nc, ell, seed, true);
    case 2: {
      std::mt19937_64 g(seed);
      std::uniform_real_distribution<double> box(0.0, 100.0), jitter(-4.0, 4.0);
      std::vector<Point> fp(nf), cp(nc);
      for (auto& p : fp) p = {box(g), box(g)};
      for (int c = 0; c < nc; ++c) {
        const auto& f = fp[c < nf ? c : g() % nf];
        cp[c] = {f[0] + jitter(g), f[1] + jitter(g)};
      }
      return from_euclidean_points(fp, cp, ell);
    }
    default: {
      RandomMetricOptions o;
      o.facilities = nf;
      o.clients = nc;
      o.ell = ell;
      o.seed = seed;
      return random_metric_instance(o);
    }
  }
}

std::vector<SuiteInstance> approximation_suite() {
  std::vector<SuiteInstance> suite;
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 204; ++i) {
    auto inst = suite_instance(i, rng);
    const double opt = exact_uncapacitated(inst).cost;
    suite.push_back({std::move(inst), opt});
  }
  return suite;
}

const std::vector<SuiteInstance>& suite() {
  static const auto s = approximation_suite();
  return s;
}

bool within(double cost, double opt, double eps) {
  return cost >= opt * (1 - kRelTol) - kRelTol &&
         cost <= (1 + eps) * opt * (1 + kRelTol) + kRelTol;
}

Outcome criterion1() {
  int runs = 0, bad = 0, greedy_beaten = 0, grid_runs = 0, grid_bad = 0;
  std::uint64_t evaluated = 0;
  double worst = 1.0;
  for (const auto& item : suite()) {
    const double greedy =
        cost_bounds(item.instance, build_voronoi(item.instance)).upper;
    for (double eps : {0.2, 1.0}) {
      const auto r = solve_epas(item.instance, {.eps = eps});
      ++runs;
      evaluated += r.partitions_evaluated;
      if (!within(r.solution.cost, item.opt, eps)) ++bad;
      if (r.solution.cost < greedy) ++greedy_beaten;
      if (r.partitions_evaluated > 0) {
        // The grid on its own must meet the bound whenever it runs.
        ++grid_runs;
        if (!r.grid_best || !within(r.grid_best->cost, item.opt, eps)) ++grid_bad;
      }
      if (item.opt > 0) worst = std::max(worst, r.solution.cost / item.opt);
    }
  }
  return {bad == 0 && grid_bad == 0 && suite().size() >= 200,
          fmt::format("{} instances, {} runs, {} outside [OPT, (1+eps)OPT], "
                      "worst ratio {:.6f}; without the greedy witness {} of {} "
                      "grids outside; {} runs beat greedy; {} (partition, D) "
                      "evaluations",
                      suite().size(), runs, bad, worst, grid_bad, grid_runs,
                      greedy_beaten, evaluated)};
}

Outcome criterion2() {
  int runs = 0, failures = 0, grid_runs = 0, grid_failures = 0;
  for (std::size_t i = 0; i < suite().size(); ++i) {
    const auto& item = suite()[i];
    for (double eps : {0.2, 1.0}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        EpasOptions o;
        o.eps = eps;
        o.mode = EpasMode::kRandomized;
        o.seed = seed * 1000003 + i;
        o.delta = 0.01;
        const auto r = solve_epas(item.instance, o);
        ++runs;
        if (!within(r.solution.cost, item.opt, eps)) ++failures;
        if (r.partitions_evaluated > 0) {
          ++grid_runs;
          if (!r.grid_best || !within(r.grid_best->cost, item.opt, eps)) {
            ++grid_failures;
          }
        }
      }
    }
  }
  const double rate = static_cast<double>(failures) / runs;
  return {rate <= kRandomFailureRate,
          fmt::format("{} (instance, eps, seed) runs, {} failures, rate {:.4f}; "
                      "without the greedy witness {} of {} grids fail",
                      runs, failures, rate, grid_failures, grid_runs)};
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  int triples = 0, violations = 0;
  std::size_t largest = 0;
  for (int i = 0; i < 600; ++i) {
    const int ell = 1 + i % 4;
    const int nf = ell + 1 + static_cast<int>(rng() % 8);
    const int nc = static_cast<int>(rng() % 30);
    const auto inst =
        i % 2 ? fixtures::random_instance(nf, nc, ell, rng())
              : fixtures::clustered_instance(nf, std::max(nf, nc), ell, rng(),
                                             i % 4 == 0);
    const auto vor = build_voronoi(inst);
    FacilitySet all(nf);
    for (int f = 0; f < nf; ++f) all[f] = f;
    std::shuffle(all.begin(), all.end(), rng);
    FacilitySet closed(all.begin(), all.begin() + ell);
    const double eps = std::vector<double>{0.05, 0.2, 0.5, 1.0, 3.0}[rng() % 5];
    const auto s = epsilon_support(inst, vor, closed, eps);
    ++triples;
    largest = std::max(largest, s.members.size());
    if (static_cast<double>(s.members.size()) > 6.0 * ell * ell * ell / eps + ell) {
      ++violations;
    }
  }
  return {violations == 0 && triples >= 500,
          fmt::format("{} triples, {} violations, largest support {}", triples,
                      violations, largest)};
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  int instances = 0, partitions = 0, checks = 0, violations = 0;
  for (int i = 0; i < 120; ++i) {
    const int ell = 1 + i % 3;
    const int nf = ell + 2 + static_cast<int>(rng() % (7 - ell));  // <= 8
    const int nc = nf + static_cast<int>(rng() % 6);
    const auto inst =
        i % 4 == 3 ? fixtures::random_instance(nf, nc, ell, rng())
                   : fixtures::clustered_instance(nf, nc, ell, rng(), i % 4 == 1);
    const auto vor = build_voronoi(inst);
    const auto opt = exact_uncapacitated(inst);
    if (opt.cost <= 0.0) continue;
    ++instances;
    const double eps = i % 2 ? 0.2 : 1.0;
    const auto supp = epsilon_support(inst, vor, opt.closed, eps);
    const auto bounds = cost_bounds(inst, vor);
    std::vector<double> guesses;
    for (const auto& w : guess_windows(bounds.lower, bounds.upper,
                                       smallest_positive_distance(inst))) {
      if (w.lower <= opt.cost && opt.cost <= w.upper) guesses.push_back(w.d_value);
    }
    if (guesses.empty()) ++violations;  // the sweep must hit cost(Opt)
    const auto opt_mask = facility_mask(nf, opt.closed);
    const auto supp_mask = facility_mask(nf, supp.members);
    for (oracle::Mask a = 0; a < (oracle::Mask{1} << nf); ++a) {
      bool correct = true;
      for (int f = 0; f < nf && correct; ++f) {
        if (opt_mask[f] && !oracle::has(a, f)) correct = false;
        if (supp_mask[f] && oracle::has(a, f)) correct = false;
      }
      if (!correct) continue;
      ++partitions;
      std::vector<char> in_a(nf);
      for (int f = 0; f < nf; ++f) in_a[f] = oracle::has(a, f);
      const Partition p(in_a);
      for (double guess : guesses) {
        for (FacilityId f : opt.closed) {
          const auto r = compute_required_set(inst, vor, p, f, eps, ell, guess);
          ++checks;
          for (FacilityId g : r.members) {
            if (!opt_mask[g]) {
              ++violations;
              break;
            }
          }
        }
      }
    }
  }
  return {violations == 0 && instances >= 100,
          fmt::format("{} instances, {} correct partitions, {} required sets, "
                      "{} violations",
                      instances, partitions, checks, violations)};
}

Outcome criterion5() {
  std::mt19937_64 rng(5);
  long tuples = 0, violations = 0;
  while (tuples < 100000) {
    const int nf = 3 + static_cast<int>(rng() % 8);
    const int nc = 1 + static_cast<int>(rng() % 10);
    const auto inst = fixtures::random_instance(nf, nc, 0, rng());
    const auto vor = build_voronoi(inst);
    for (int k = 0; k < 500; ++k) {
      const ClientId c = static_cast<ClientId>(rng() % nc);
      const FacilityId f0 = vor.cell_of_client[c];
      FacilityId f1 = static_cast<FacilityId>(rng() % nf);
      FacilityId f2 = static_cast<FacilityId>(rng() % nf);
      if (inst.facility_facility(f0, f1) > inst.facility_facility(f0, f2)) {
        std::swap(f1, f2);
      }
      ++tuples;
      if (inst.client_facility(c, f1) >
          3.0 * inst.client_facility(c, f2) + kRerouteAbsTol) {
        ++violations;
      }
    }
  }
  return {violations == 0,
          fmt::format("{} tuples, {} violations", tuples, violations)};
}

Outcome criterion6() {
  const auto start = std::chrono::steady_clock::now();
  int combos = 0, failures = 0;
  std::size_t largest = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int ell = 0; ell <= 2; ++ell) {
      for (int r = ell; r <= 4; ++r) {
        const FamilyParams params{n, ell, r};
        const auto fam = deterministic_family(params);
        std::vector<Partition> all;
        all.reserve(fam.size());
        fam.for_each([&](const Partition& p) { all.push_back(p); });
        largest = std::max(largest, all.size());
        ++combos;
        if (!verify_family_coverage(all, params)) ++failures;
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && seconds < kCoverageSeconds,
          fmt::format("{} (n, ell, r) combinations, {} uncovered, largest family "
                      "{}, {:.2f} s",
                      combos, failures, largest, seconds)};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  int pairs = 0, violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int nf = 2 + static_cast<int>(rng() % 9);
    const int nc = static_cast<int>(rng() % 20);
    std::optional<Instance> inst;
    if (i % 2) {
      inst = fixtures::random_instance(nf, nc, 0, rng());
    } else {
      EuclideanOptions o;
      o.facilities = nf;
      o.clients = nc;
      o.dim = 1 + i % 3;
      o.seed = rng();
      o.box = 1e3;
      inst = random_euclidean_instance(o);
    }
    const auto vor = build_voronoi(*inst);
    for (int k = 0; k < 10; ++k) {
      FacilitySet closed;
      const oracle::Mask m = rng() % ((oracle::Mask{1} << nf) - 1);  // one open
      for (int f : oracle::members(m)) closed.push_back(f);
      const double cost = solution_cost(*inst, closed).cost;
      const double rhs = vor.total_cell_cost() + delta(*inst, vor, closed);
      const double err = std::abs(cost - rhs) / std::max(1.0, std::abs(cost));
      worst = std::max(worst, err);
      ++pairs;
      if (err > kRelTol) ++violations;
    }
  }
  return {violations == 0 && pairs >= 10000,
          fmt::format("{} pairs, {} violations, worst relative error {:.2e}", pairs,
                      violations, worst)};
}

bool connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  int parts = n;
  for (auto [u, v] : edges) {
    const int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts == 1;
}

Outcome criterion8() {
  long graphs = 0, checks = 0, mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    }
    for (oracle::Mask m = 0; m < (oracle::Mask{1} << slots.size()); ++m) {
      Graph g;
      g.num_vertices = n;
      for (std::size_t e = 0; e < slots.size(); ++e) {
        if (oracle::has(m, static_cast<int>(e))) g.edges.push_back(slots[e]);
      }
      if (!connected(n, g.edges)) continue;
      ++graphs;
      const int max_ell = g.edges.empty() ? n : n - 1;
      for (int ell = 1; ell <= max_ell; ++ell) {
        const auto red = independent_set_reduction(g, ell);
        const double opt = exact_uncapacitated(red.instance).cost;
        const bool is = oracle::has_independent_set(n, g.edges, ell);
        ++checks;
        if ((opt == static_cast<double>(g.edges.size())) != is) ++mismatches;
      }
    }
  }
  const double c5 =
      exact_uncapacitated(independent_set_reduction(fixtures::cycle(5), 2).instance)
          .cost;
  const double k4 =
      exact_uncapacitated(independent_set_reduction(fixtures::complete(4), 2).instance)
          .cost;
  return {mismatches == 0 && c5 == 5.0 && k4 == 8.0,
          fmt::format("{} connected labeled graphs, {} (graph, ell) checks, {} "
                      "mismatches; C5 -> {}, K4 -> {}",
                      graphs, checks, mismatches, c5, k4)};
}

Outcome criterion9() {
  std::mt19937_64 rng(9);
  int instances = 0, closures = 0, law_failures = 0, element_checks = 0,
      element_failures = 0;
  while (instances < 60) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int universe = k * (1 + static_cast<int>(rng() % (8 / k)));  // <= 8
    const int n = k + static_cast<int>(rng() % (7 - k));                // <= 6
    const auto cov = random_coverage(universe, n, k, true, rng());
    const auto red = coverage_reduction(cov);
    ++instances;
    for_each_subset(n, k, [&](const FacilitySet& closed) {
      const std::vector<int> chosen(closed.begin(), closed.end());
      const int covered = covered_count(cov, chosen);
      const double want = covered + 3.0 * (universe - covered);
      ++closures;
      if (optimal_assignment(red.instance, closed).cost != want) ++law_failures;
    });
    // Any closure of k facilities that includes an element facility.
    for_each_subset(n + universe, k, [&](const FacilitySet& closed) {
      if (closed.back() < n) return;
      ++element_checks;
      if (closure_feasible(red.instance, closed)) ++element_failures;
    });
  }
  return {law_failures == 0 && element_failures == 0,
          fmt::format("{} equal-size instances, {} set closures ({} off the law), "
                      "{} element closures ({} feasible)",
                      instances, closures, law_failures, element_checks,
                      element_failures)};
}

Outcome criterion10() {
  std::mt19937_64 rng(10);
  int instances = 0, closures = 0, mismatches = 0;
  while (instances < 220) {
    const int nf = 2 + static_cast<int>(rng() % 4);  // <= 5
    const int nc = 1 + static_cast<int>(rng() % 6);  // <= 6
    const int ell = std::max(nf - 4, static_cast<int>(rng() % nf));  // <= 4 open
    const auto base = fixtures::random_instance(nf, nc, ell, rng());
    std::vector<std::int64_t> caps(nf);
    for (auto& u : caps) u = static_cast<std::int64_t>(rng() % (nc + 1));
    const Instance inst(nf, nc,
                        std::vector<double>(base.matrix().begin(), base.matrix().end()),
                        ell, caps);
    ++instances;
    for_each_subset(nf, ell, [&](const FacilitySet& closed) {
      const double want =
          oracle::capacitated_cost(inst, oracle::to_mask(std::vector<int>(
                                             closed.begin(), closed.end())));
      ++closures;
      if (want == oracle::kInf) {
        if (closure_feasible(inst, closed)) ++mismatches;
        return;
      }
      const auto got = optimal_assignment(inst, closed);
      if (std::abs(got.cost - want) > kRelTol * std::max(1.0, want)) ++mismatches;
    });
  }
  return {mismatches == 0 && instances >= 200,
          fmt::format("{} instances, {} closures, {} mismatches", instances,
                      closures, mismatches)};
}

Outcome criterion11() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       fmt::format("colmedian_acceptance_{}", ::getpid());
  fs::create_directories(dir);
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  auto invoke = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return std::make_pair(code, out.str());
  };
  int compared = 0, differing = 0;
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    const auto inst_path = (dir / fmt::format("i{}.inst", i)).string();
    ok &= invoke({"gen", "random-metric", "--facilities", "9", "--clients", "14",
                  "--ell", std::to_string(1 + i % 3), "--seed",
                  std::to_string(100 + i), "-o", inst_path})
              .first == 0;
    for (const char* mode : {"epas-det", "epas-rand"}) {
      std::string reports[2];
      std::string outputs[2];
      for (int w = 0; w < 2; ++w) {
        const auto report = (dir / fmt::format("r{}.csv", w)).string();
        const auto [code, out] =
            invoke({"solve", "--mode", mode, "--eps", "0.5", "--seed", "77",
                    "--workers", w ? "8" : "1", "--oracle", "--no-timing",
                    "--report", report, inst_path});
        ok &= code == 0;
        reports[w] = read(report);
        outputs[w] = out;
      }
      ++compared;
      if (reports[0] != reports[1] || outputs[0] != outputs[1] ||
          reports[0].empty()) {
        ++differing;
      }
    }
  }
  std::ofstream(dir / "grid.json") << R"({
    "generate": [{"kind": "random-metric", "count": 3, "facilities": 8,
                  "clients": 12, "ell": 2, "seed": 5}],
    "runs": [{"mode": "epas-det", "eps": 0.5}, {"mode": "epas-rand", "eps": 1.0}],
    "oracle": true, "seed": 11
  })";
  std::string bench[2];
  for (int w = 0; w < 2; ++w) {
    const auto [code, out] =
        invoke({"bench", "--grid", (dir / "grid.json").string(), "--workers",
                w ? "8" : "1", "--no-timing"});
    ok &= code == 0;
    bench[w] = out;
  }
  ++compared;
  if (bench[0] != bench[1]) ++differing;
  fs::remove_all(dir);
  return {ok && differing == 0,
          fmt::format("{} report pairs at --workers 1 vs 8, {} differ", compared,
                      differing)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*check)();
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "deterministic (1+eps) guarantee", criterion1},
      {2, "randomized failure rate", criterion2},
      {3, "support size bound", criterion3},
      {4, "required sets inside Opt", criterion4},
      {5, "rerouting within factor 3", criterion5},
      {6, "partition family coverage", criterion6},
      {7, "cost identity", criterion7},
      {8, "independent set reduction", criterion8},
      {9, "coverage reduction cost law", criterion9},
      {10, "transportation optimality", criterion10},
      {11, "worker-count determinism", criterion11},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("exception: {}", e.what())};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    fmt::print("{} criterion {:>2} {}: {} [{:.1f} s]\n",
               outcome.pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail,
               seconds);
    std::fflush(stdout);
    failed += !outcome.pass;
  }
  return failed == 0 ? 0 : 1;
}
