#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace colmedian {

// One CSV row per solved (instance, mode, eps) combination.
struct RunReport {
  std::string instance_id;
  std::string mode;
  double eps = 0.0;
  int ell = 0;
  double cost = 0.0;
  std::optional<double> oracle_cost;
  std::optional<double> ratio;  // cost / oracle_cost when oracle_cost > 0
  std::uint64_t partitions_evaluated = 0;
  std::int64_t wall_time_ms = 0;
  std::optional<std::uint64_t> seed;
};

std::string report_csv_header();
// Reals use the shortest exact representation; absent optionals are empty.
std::string report_csv_row(const RunReport& report);
void write_report_csv(std::ostream& out, std::span<const RunReport> reports);

// Oracle budget, overridden by the COLMEDIAN_BUDGET environment variable.
double oracle_budget();

// Entry point of the command-line tool; `args` excludes the program name.
// Returns 0 on success, 1 when the instance is infeasible (or `validate`
// found violations), 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace colmedian
