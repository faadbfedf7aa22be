#include "colmedian/instance.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace colmedian {

FacilitySet& normalize(FacilitySet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::vector<char> facility_mask(int num_facilities, const FacilitySet& set) {
  std::vector<char> mask(num_facilities, 0);
  for (FacilityId f : set) {
    if (f < 0 || f >= num_facilities) {
      throw ContractViolation(
          fmt::format("facility {} out of range [0, {})", f, num_facilities));
    }
    mask[f] = 1;
  }
  return mask;
}

bool better_solution(const Solution& a, const Solution& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.closed < b.closed;
}

Instance::Instance(int num_facilities, int num_clients,
                   std::vector<double> dist, int ell,
                   std::optional<std::vector<std::int64_t>> capacities)
    : num_facilities_(num_facilities),
      num_clients_(num_clients),
      dist_(std::move(dist)),
      ell_(ell),
      capacities_(std::move(capacities)) {
  if (num_facilities_ < 1) {
    throw StructuralError("an instance needs at least one facility");
  }
  if (num_clients_ < 0) throw StructuralError("negative client count");
  const auto n = static_cast<std::size_t>(num_points());
  if (dist_.size() != n * n) {
    throw StructuralError(fmt::format(
        "distance matrix has {} entries, expected {}x{}", dist_.size(), n, n));
  }
  for (std::size_t i = 0; i < dist_.size(); ++i) {
    if (!std::isfinite(dist_[i]) || dist_[i] < 0.0) {
      throw ParameterError(fmt::format("distance [{}][{}] = {} is not a finite "
                                       "non-negative real",
                                       i / n, i % n, dist_[i]));
    }
  }
  if (ell_ < 0 || ell_ > num_facilities_) {
    throw ParameterError(
        fmt::format("ell = {} outside [0, {}]", ell_, num_facilities_));
  }
  if (num_clients_ > 0 && ell_ >= num_facilities_) {
    throw ParameterError(fmt::format(
        "ell = {} would close every facility while {} clients need service",
        ell_, num_clients_));
  }
  if (capacities_) {
    if (capacities_->size() != static_cast<std::size_t>(num_facilities_)) {
      throw StructuralError(fmt::format("{} capacities for {} facilities",
                                        capacities_->size(), num_facilities_));
    }
    for (std::size_t f = 0; f < capacities_->size(); ++f) {
      if ((*capacities_)[f] < 0) {
        throw ParameterError(fmt::format("capacity of facility {} is negative",
                                         f));
      }
    }
  }
}

std::int64_t Instance::capacity(FacilityId f) const {
  if (capacities_) return (*capacities_)[f];
  return num_clients_;
}

Instance Instance::with_ell(int ell) const {
  return Instance(num_facilities_, num_clients_, dist_, ell, capacities_);
}

Instance Instance::without_capacities() const {
  return Instance(num_facilities_, num_clients_, dist_, ell_);
}

double Instance::max_distance() const {
  if (dist_.empty()) return 0.0;
  return *std::max_element(dist_.begin(), dist_.end());
}

std::string MetricViolation::describe() const {
  switch (kind) {
    case Kind::kNonzeroDiagonal:
      return fmt::format("dist[{0}][{0}] is nonzero (excess {1})", x, excess);
    case Kind::kAsymmetric:
      return fmt::format("dist[{0}][{1}] != dist[{1}][{0}] (difference {2})",
                         x, y, excess);
    case Kind::kTriangle:
      return fmt::format(
          "triangle ({}, {}, {}): dist[{}][{}] exceeds the path through {} by "
          "{}",
          x, y, z, x, z, y, excess);
  }
  return "unknown violation";
}

double default_metric_tolerance(std::span<const double> matrix) {
  double largest = 0.0;
  for (double v : matrix) largest = std::max(largest, std::abs(v));
  return kMetricRelativeTolerance * std::max(1.0, largest);
}

std::vector<MetricViolation> validate_metric(std::span<const double> matrix,
                                             int num_points, double tol) {
  if (num_points < 0 ||
      matrix.size() != static_cast<std::size_t>(num_points) * num_points) {
    throw StructuralError(fmt::format(
        "matrix with {} entries is not {}x{}", matrix.size(), num_points,
        num_points));
  }
  const auto n = static_cast<std::size_t>(num_points);
  auto at = [&](std::size_t i, std::size_t j) { return matrix[i * n + j]; };

  std::vector<MetricViolation> out;
  using Kind = MetricViolation::Kind;
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs(at(x, x)) > tol) {
      out.push_back({Kind::kNonzeroDiagonal, static_cast<int>(x), 0, 0,
                     std::abs(at(x, x))});
    }
    for (std::size_t y = x + 1; y < n; ++y) {
      const double diff = std::abs(at(x, y) - at(y, x));
      if (diff > tol) {
        out.push_back({Kind::kAsymmetric, static_cast<int>(x),
                       static_cast<int>(y), 0, diff});
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      const double xy = at(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const double excess = at(x, z) - (xy + at(y, z));
        if (excess > tol) {
          out.push_back({Kind::kTriangle, static_cast<int>(x),
                         static_cast<int>(y), static_cast<int>(z), excess});
        }
      }
    }
  }
  return out;
}

std::vector<MetricViolation> validate_metric(const Instance& inst,
                                             double tol) {
  return validate_metric(inst.matrix(), inst.num_points(), tol);
}

Instance from_euclidean_points(
    std::span<const Point> facility_points,
    std::span<const Point> client_points, int ell,
    std::optional<std::vector<std::int64_t>> capacities) {
  std::vector<const Point*> points;
  for (const auto& p : facility_points) points.push_back(&p);
  for (const auto& p : client_points) points.push_back(&p);
  if (points.empty()) throw StructuralError("no points");
  const std::size_t dim = points.front()->size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i]->size() != dim) {
      throw StructuralError(fmt::format(
          "point {} has dimension {}, expected {}", i, points[i]->size(), dim));
    }
  }

  const std::size_t n = points.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = (*points[i])[k] - (*points[j])[k];
        sq += d * d;
      }
      dist[i * n + j] = dist[j * n + i] = std::sqrt(sq);
    }
  }
  return Instance(static_cast<int>(facility_points.size()),
                  static_cast<int>(client_points.size()), std::move(dist), ell,
                  std::move(capacities));
}

}  // namespace colmedian
