#include <cstdlib>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "colmedian/cli.hpp"
#include "colmedian/exact.hpp"
#include "colmedian/instance.hpp"

namespace colmedian {
namespace {

// Quote only when needed; ids come from file names and may contain commas.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

template <typename T, typename F>
std::string optional_field(const std::optional<T>& value, F&& format) {
  return value ? format(*value) : std::string();
}

}  // namespace

std::string report_csv_header() {
  return "instance_id,mode,eps,ell,cost,oracle_cost,ratio,"
         "partitions_evaluated,wall_time_ms,seed";
}

std::string report_csv_row(const RunReport& r) {
  auto real = [](double v) { return format_exact(v); };
  auto integer = [](auto v) { return fmt::format("{}", v); };
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", csv_field(r.instance_id),
                     csv_field(r.mode), format_exact(r.eps), r.ell,
                     format_exact(r.cost), optional_field(r.oracle_cost, real),
                     optional_field(r.ratio, real), r.partitions_evaluated,
                     r.wall_time_ms, optional_field(r.seed, integer));
}

void write_report_csv(std::ostream& out, std::span<const RunReport> reports) {
  out << report_csv_header() << '\n';
  for (const auto& r : reports) out << report_csv_row(r) << '\n';
}

double oracle_budget() {
  const char* env = std::getenv("COLMEDIAN_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultOracleBudget;
  char* end = nullptr;
  const double value = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(value > 0.0)) {
    throw ParameterError(
        fmt::format("COLMEDIAN_BUDGET must be a positive number, got '{}'", env));
  }
  return value;
}

}  // namespace colmedian
