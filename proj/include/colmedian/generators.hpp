#pragma once

#include <cstdint>
#include <optional>

#include "colmedian/instance.hpp"
#include "colmedian/reductions.hpp"

namespace colmedian {

struct RandomMetricOptions {
  int facilities = 5;
  int clients = 8;
  int ell = 1;
  std::uint64_t seed = 0;
  double max_weight = 10.0;
  // Draw weights from {1, ..., max_weight} to provoke distance ties.
  bool integer_weights = false;
};

// Symmetric random weights closed under shortest paths, hence a metric.
Instance random_metric_instance(const RandomMetricOptions& options);

struct EuclideanOptions {
  int facilities = 5;
  int clients = 8;
  int ell = 1;
  int dim = 2;
  std::uint64_t seed = 0;
  double box = 1.0;  // coordinates uniform in [0, box)
  std::optional<std::int64_t> uniform_capacity;
};

Instance random_euclidean_instance(const EuclideanOptions& options);

// Erdos-Renyi G(n, p).
Graph random_graph(int vertices, double edge_probability, std::uint64_t seed);

// Each element joins each subset with probability 1/2. With `equal_sizes`
// every subset is instead a uniform (|U| / k)-subset; |U| must then be a
// multiple of k.
CoverageInstance random_coverage(int universe_size, int num_subsets, int k,
                                 bool equal_sizes, std::uint64_t seed);

}  // namespace colmedian
