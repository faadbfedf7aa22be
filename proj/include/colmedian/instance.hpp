#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "colmedian/types.hpp"

namespace colmedian {

// A co-ell-Median instance: facilities F, clients C, a metric over F u C
// stored as a dense row-major matrix (facilities first), the number ell of
// facilities to close, and optional integer capacities.
//
// Instances are immutable once constructed. The constructor checks structure
// and parameters only; metric axioms are checked by validate_metric().
class Instance {
 public:
  Instance(int num_facilities, int num_clients, std::vector<double> dist,
           int ell, std::optional<std::vector<std::int64_t>> capacities = {});

  int num_facilities() const { return num_facilities_; }
  int num_clients() const { return num_clients_; }
  int num_points() const { return num_facilities_ + num_clients_; }
  int ell() const { return ell_; }

  // Distance between two points of F u C in global numbering.
  double dist(int x, int y) const { return dist_[x * num_points() + y]; }
  double client_facility(ClientId c, FacilityId f) const {
    return dist(num_facilities_ + c, f);
  }
  double facility_facility(FacilityId f, FacilityId g) const {
    return dist(f, g);
  }
  std::span<const double> matrix() const { return dist_; }

  bool capacitated() const { return capacities_.has_value(); }
  const std::optional<std::vector<std::int64_t>>& capacities() const {
    return capacities_;
  }
  // u_f, or |C| for uncapacitated instances.
  std::int64_t capacity(FacilityId f) const;

  // Same metric and capacities with a different ell.
  Instance with_ell(int ell) const;
  Instance without_capacities() const;

  // Largest entry of the matrix (0 for an empty one).
  double max_distance() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_facilities_;
  int num_clients_;
  std::vector<double> dist_;
  int ell_;
  std::optional<std::vector<std::int64_t>> capacities_;
};

// --- Metric validation -----------------------------------------------------

struct MetricViolation {
  enum class Kind { kNonzeroDiagonal, kAsymmetric, kTriangle };
  Kind kind;
  // kNonzeroDiagonal uses x only; kAsymmetric uses (x, y); kTriangle means
  // dist[x][z] > dist[x][y] + dist[y][z] + tol.
  int x = 0;
  int y = 0;
  int z = 0;
  double excess = 0.0;

  std::string describe() const;
};

// Relative tolerance applied by parse_instance.
inline constexpr double kMetricRelativeTolerance = 1e-9;

// Absolute tolerance equal to kMetricRelativeTolerance times the largest
// distance (at least kMetricRelativeTolerance).
double default_metric_tolerance(std::span<const double> matrix);

// All violations beyond the absolute tolerance `tol`. Throws StructuralError
// when the matrix is not num_points x num_points.
std::vector<MetricViolation> validate_metric(std::span<const double> matrix,
                                             int num_points, double tol);
std::vector<MetricViolation> validate_metric(const Instance& inst, double tol);

// --- Construction helpers --------------------------------------------------

using Point = std::vector<double>;

// Pairwise Euclidean distances; facilities first. Throws StructuralError on
// dimension mismatch.
Instance from_euclidean_points(std::span<const Point> facility_points,
                               std::span<const Point> client_points, int ell,
                               std::optional<std::vector<std::int64_t>>
                                   capacities = {});

// --- Text format -----------------------------------------------------------

struct ParseOptions {
  // Reject instances with metric violations (the default for solving).
  bool check_metric = true;
};

// Parses the line-oriented `colmedian 1` format. Throws ParseError (with line
// number), MetricError, or ParameterError.
Instance parse_instance(std::istream& in, ParseOptions options = {});
Instance parse_instance(std::string_view text, ParseOptions options = {});

// Writes the `matrix` form; distances use the shortest representation that
// round-trips exactly.
void write_instance(std::ostream& out, const Instance& inst,
                    std::string_view comment = {});
std::string serialize_instance(const Instance& inst);

// `cost <value>`, `closed <indices>`, then one `assign c f d` per client.
void write_solution(std::ostream& out, const Instance& inst,
                    const Solution& sol);

// Shortest round-trip decimal representation of a double.
std::string format_exact(double value);

}  // namespace colmedian
