#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "colmedian/capacitated.hpp"
#include "colmedian/cli.hpp"
#include "colmedian/epas.hpp"
#include "colmedian/exact.hpp"
#include "colmedian/generators.hpp"
#include "colmedian/instance.hpp"
#include "colmedian/reductions.hpp"
#include "colmedian/voronoi.hpp"

namespace colmedian {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string canonical_mode(const std::string& mode) {
  static const std::map<std::string, std::string> names = {
      {"epas-det", "epas-det"},   {"deterministic", "epas-det"},
      {"epas-rand", "epas-rand"}, {"randomized", "epas-rand"},
      {"exact", "exact"},         {"greedy", "greedy"},
  };
  auto it = names.find(mode);
  if (it == names.end()) throw UsageError(fmt::format("unknown mode '{}'", mode));
  return it->second;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(std::string_view(text));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path, e.what()));
  }
}

// Writes to `path`, or to `fallback` when path is empty.
template <typename F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError(fmt::format("cannot write '{}'", path));
  write(file);
  if (!file) throw UsageError(fmt::format("error writing '{}'", path));
}

struct SolveSettings {
  std::string mode = "epas-det";
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  double delta = 0.01;
  int workers = 1;
  bool oracle = false;
  bool timing = true;
};

struct SolveOutcome {
  Solution solution;
  RunReport report;
};

Solution run_oracle(const Instance& inst) {
  return inst.capacitated() ? exact_capacitated(inst, oracle_budget())
                            : exact_uncapacitated(inst, oracle_budget());
}

SolveOutcome solve_one(const Instance& inst, const std::string& id,
                       const SolveSettings& s,
                       std::optional<double> known_oracle = {}) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome outcome;
  RunReport& report = outcome.report;
  report.instance_id = id;
  report.mode = s.mode;
  report.eps = s.eps;
  report.ell = inst.ell();

  if (s.mode == "exact") {
    outcome.solution = run_oracle(inst);
  } else if (s.mode == "greedy") {
    const auto vor = build_voronoi(inst);
    outcome.solution = cost_bounds(inst, vor).witness;
  } else {
    EpasOptions options;
    options.eps = s.eps;
    options.mode = s.mode == "epas-rand" ? EpasMode::kRandomized
                                         : EpasMode::kDeterministic;
    options.seed = s.seed;
    options.trials = s.trials;
    options.delta = s.delta;
    options.workers = s.workers;
    auto result = solve_epas(inst, options);
    outcome.solution = std::move(result.solution);
    report.partitions_evaluated = result.partitions_evaluated;
    if (s.mode == "epas-rand") report.seed = s.seed;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report.wall_time_ms =
      s.timing
          ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
          : 0;
  report.cost = outcome.solution.cost;

  if (known_oracle) {
    report.oracle_cost = known_oracle;
  } else if (s.oracle) {
    report.oracle_cost = s.mode == "exact" ? outcome.solution.cost
                                           : run_oracle(inst).cost;
  }
  if (report.oracle_cost && *report.oracle_cost > 0.0) {
    report.ratio = report.cost / *report.oracle_cost;
  }
  return outcome;
}

void add_solve_flags(CLI::App* cmd, SolveSettings& s, std::string& mode_raw) {
  cmd->add_option("--eps", s.eps, "approximation parameter")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", mode_raw,
                  "epas-det (deterministic), epas-rand (randomized), exact, "
                  "greedy");
  cmd->add_option("--seed", s.seed, "seed for randomized mode");
  cmd->add_option("--trials", s.trials, "randomized trial count");
  cmd->add_option("--delta", s.delta, "randomized failure probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--workers", s.workers, "worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--oracle", s.oracle, "also run the exact oracle");
  cmd->add_flag("!--no-timing", s.timing, "report wall_time_ms as 0");
}

// --- bench ----------------------------------------------------------------

struct BenchInstance {
  std::string id;
  Instance instance;
};

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

std::vector<BenchInstance> bench_instances(const json& config,
                                           const fs::path& base) {
  std::vector<BenchInstance> out;
  for (const auto& entry : get_or(config, "instances", json::array())) {
    const fs::path path = base / entry.get<std::string>();
    out.push_back({path.stem().string(), load_instance(path.string())});
  }
  for (const auto& gen : get_or(config, "generate", json::array())) {
    const auto kind = gen.at("kind").get<std::string>();
    const int count = get_or(gen, "count", 1);
    const auto seed0 = get_or<std::uint64_t>(gen, "seed", 0);
    for (int i = 0; i < count; ++i) {
      const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
      if (kind == "random-metric") {
        RandomMetricOptions o;
        o.facilities = get_or(gen, "facilities", o.facilities);
        o.clients = get_or(gen, "clients", o.clients);
        o.ell = get_or(gen, "ell", o.ell);
        o.max_weight = get_or(gen, "max_weight", o.max_weight);
        o.integer_weights = get_or(gen, "integer_weights", o.integer_weights);
        o.seed = seed;
        out.push_back({fmt::format("random-metric-{}", seed),
                       random_metric_instance(o)});
      } else if (kind == "euclidean") {
        EuclideanOptions o;
        o.facilities = get_or(gen, "facilities", o.facilities);
        o.clients = get_or(gen, "clients", o.clients);
        o.ell = get_or(gen, "ell", o.ell);
        o.dim = get_or(gen, "dim", o.dim);
        o.box = get_or(gen, "box", o.box);
        o.seed = seed;
        out.push_back(
            {fmt::format("euclidean-{}", seed), random_euclidean_instance(o)});
      } else {
        throw UsageError(fmt::format("unknown generator kind '{}'", kind));
      }
    }
  }
  return out;
}

std::vector<RunReport> run_bench(const std::string& grid_path,
                                 std::optional<int> workers_override,
                                 bool timing) {
  json config;
  try {
    config = json::parse(read_file(grid_path));
  } catch (const json::parse_error& e) {
    throw UsageError(fmt::format("{}: {}", grid_path, e.what()));
  }
  const auto instances =
      bench_instances(config, fs::path(grid_path).parent_path());
  const json runs = get_or(config, "runs", json::array());
  if (runs.empty()) throw UsageError("bench config has no runs");

  SolveSettings base;
  base.oracle = get_or(config, "oracle", false);
  base.workers = workers_override.value_or(get_or(config, "workers", 1));
  base.seed = get_or<std::uint64_t>(config, "seed", 0);
  base.delta = get_or(config, "delta", base.delta);
  base.timing = timing;
  if (config.contains("trials")) {
    base.trials = config.at("trials").get<std::uint64_t>();
  }

  std::vector<RunReport> reports;
  for (const auto& item : instances) {
    std::optional<double> oracle;
    if (base.oracle) oracle = run_oracle(item.instance).cost;
    for (const auto& r : runs) {
      SolveSettings s = base;
      s.mode = canonical_mode(r.at("mode").get<std::string>());
      s.eps = get_or(r, "eps", s.eps);
      s.seed = get_or(r, "seed", s.seed);
      reports.push_back(solve_one(item.instance, item.id, s, oracle).report);
    }
  }
  return reports;
}

// --- dispatcher -------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"co-ell-median solvers and instance tools", "colmedian"};
  app.require_subcommand(1);

  SolveSettings solve;
  std::string mode_raw = "epas-det";
  std::string solve_file, report_path, run_id;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  add_solve_flags(solve_cmd, solve, mode_raw);
  solve_cmd->add_option("--report", report_path, "write a CSV report");
  solve_cmd->add_option("--id", run_id, "instance id for the report");
  solve_cmd->add_option("file", solve_file, "instance file")->required();

  std::string validate_file;
  double validate_tol = -1.0;
  auto* validate_cmd =
      app.add_subcommand("validate", "check the metric axioms of a file");
  validate_cmd->add_option("--tol", validate_tol, "absolute tolerance");
  validate_cmd->add_option("file", validate_file, "instance file")->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate instances");
  gen_cmd->require_subcommand(1);
  std::string gen_out;

  EuclideanOptions eu;
  std::optional<std::int64_t> eu_capacity;
  auto* gen_eu = gen_cmd->add_subcommand("euclidean", "random points in a box");
  gen_eu->add_option("--facilities", eu.facilities);
  gen_eu->add_option("--clients", eu.clients);
  gen_eu->add_option("--ell", eu.ell);
  gen_eu->add_option("--dim", eu.dim);
  gen_eu->add_option("--box", eu.box);
  gen_eu->add_option("--seed", eu.seed);
  gen_eu->add_option("--capacity", eu_capacity, "uniform capacity");
  gen_eu->add_option("-o,--output", gen_out);

  RandomMetricOptions rm;
  auto* gen_rm = gen_cmd->add_subcommand(
      "random-metric", "random weights closed under shortest paths");
  gen_rm->add_option("--facilities", rm.facilities);
  gen_rm->add_option("--clients", rm.clients);
  gen_rm->add_option("--ell", rm.ell);
  gen_rm->add_option("--max-weight", rm.max_weight);
  gen_rm->add_flag("--integer", rm.integer_weights, "integer weights");
  gen_rm->add_option("--seed", rm.seed);
  gen_rm->add_option("-o,--output", gen_out);

  std::string graph_file;
  int is_ell = 1;
  auto* gen_is = gen_cmd->add_subcommand(
      "is-reduction", "independent set instance as co-ell-median");
  gen_is->add_option("--graph", graph_file, "graph file")->required();
  gen_is->add_option("--ell", is_ell);
  gen_is->add_option("-o,--output", gen_out);

  std::string coverage_file;
  auto* gen_cov = gen_cmd->add_subcommand(
      "coverage-reduction", "max coverage as capacitated co-ell-median");
  gen_cov->add_option("--coverage", coverage_file, "coverage file")
      ->required();
  gen_cov->add_option("-o,--output", gen_out);

  std::string grid_path, bench_report;
  std::optional<int> bench_workers;
  bool bench_timing = true;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark grid");
  bench_cmd->add_option("--grid", grid_path, "JSON grid config")->required();
  bench_cmd->add_option("--report", bench_report, "CSV output path");
  bench_cmd->add_option("--workers", bench_workers)
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("!--no-timing", bench_timing);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*solve_cmd) {
    solve.mode = canonical_mode(mode_raw);
    const Instance inst = load_instance(solve_file);
    const std::string id =
        run_id.empty() ? fs::path(solve_file).stem().string() : run_id;
    auto outcome = solve_one(inst, id, solve);
    write_solution(out, inst, outcome.solution);
    if (!report_path.empty()) {
      const std::vector<RunReport> rows{outcome.report};
      emit(report_path, out,
           [&](std::ostream& o) { write_report_csv(o, rows); });
    }
    return kExitOk;
  }

  if (*validate_cmd) {
    const std::string text = read_file(validate_file);
    const Instance inst =
        parse_instance(std::string_view(text), ParseOptions{false});
    const double tol = validate_tol >= 0.0
                           ? validate_tol
                           : default_metric_tolerance(inst.matrix());
    const auto violations = validate_metric(inst, tol);
    constexpr std::size_t kShown = 20;
    for (std::size_t i = 0; i < std::min(kShown, violations.size()); ++i) {
      out << violations[i].describe() << '\n';
    }
    if (violations.size() > kShown) {
      out << fmt::format("... {} more\n", violations.size() - kShown);
    }
    out << fmt::format("{} violation{}\n", violations.size(),
                       violations.size() == 1 ? "" : "s");
    return violations.empty() ? kExitOk : kExitInfeasible;
  }

  if (*gen_cmd) {
    auto write = [&](const Instance& inst, const std::string& comment) {
      emit(gen_out, out,
           [&](std::ostream& o) { write_instance(o, inst, comment); });
    };
    if (*gen_eu) {
      if (eu_capacity) eu.uniform_capacity = eu_capacity;
      write(random_euclidean_instance(eu),
            fmt::format("euclidean dim={} seed={}", eu.dim, eu.seed));
    } else if (*gen_rm) {
      write(random_metric_instance(rm),
            fmt::format("random-metric seed={}", rm.seed));
    } else if (*gen_is) {
      const Graph graph = parse_graph(std::string_view(read_file(graph_file)));
      const auto red = independent_set_reduction(graph, is_ell);
      std::string comment = fmt::format(
          "is-reduction of {} (|V|={}, |E|={}, ell={})", graph_file,
          graph.num_vertices, graph.edges.size(), is_ell);
      if (!red.connected) {
        comment += fmt::format(
            "\ndisconnected graph: distance {} between components",
            format_exact(red.sentinel));
      }
      write(red.instance, comment);
    } else if (*gen_cov) {
      const CoverageInstance cov =
          parse_coverage(std::string_view(read_file(coverage_file)));
      const auto red = coverage_reduction(cov);
      write(red.instance,
            fmt::format("coverage-reduction of {} (|U|={}, n={}, k={}{})",
                        coverage_file, cov.universe_size, cov.subsets.size(),
                        cov.k,
                        red.equal_size_promise ? ", equal sizes" : ""));
    }
    return kExitOk;
  }

  if (*bench_cmd) {
    const auto reports = run_bench(grid_path, bench_workers, bench_timing);
    emit(bench_report, out,
         [&](std::ostream& o) { write_report_csv(o, reports); });
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const MetricError& e) {
    err << "not a metric: " << e.what() << '\n';
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what()
        << " (raise it with COLMEDIAN_BUDGET)\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "bad bench config: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace colmedian
