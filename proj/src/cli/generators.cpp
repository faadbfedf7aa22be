#include "colmedian/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "colmedian/partition_family.hpp"

namespace colmedian {

Instance random_metric_instance(const RandomMetricOptions& options) {
  if (options.facilities < 1 || options.clients < 0) {
    throw ParameterError("need at least one facility and no negative counts");
  }
  if (!(options.max_weight > 0.0)) {
    throw ParameterError("max weight must be positive");
  }
  std::mt19937_64 rng(options.seed);
  const int n = options.facilities + options.clients;
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int x, int y) -> double& {
    return dist[static_cast<std::size_t>(x) * n + y];
  };
  const auto top = static_cast<std::uint64_t>(std::max(1.0, options.max_weight));
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      double w;
      if (options.integer_weights) {
        w = static_cast<double>(1 + rng() % top);
      } else {
        w = options.max_weight * (1.0 - uniform01(rng));  // (0, max]
      }
      at(x, y) = at(y, x) = w;
    }
  }
  for (int m = 0; m < n; ++m) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        at(x, y) = std::min(at(x, y), at(x, m) + at(m, y));
      }
    }
  }
  return Instance(options.facilities, options.clients, std::move(dist),
                  options.ell);
}

Instance random_euclidean_instance(const EuclideanOptions& options) {
  if (options.facilities < 1 || options.clients < 0 || options.dim < 1) {
    throw ParameterError("invalid euclidean generator sizes");
  }
  std::mt19937_64 rng(options.seed);
  auto draw = [&](int count) {
    std::vector<Point> pts(count, Point(options.dim));
    for (auto& p : pts) {
      for (double& x : p) x = options.box * uniform01(rng);
    }
    return pts;
  };
  const auto facilities = draw(options.facilities);
  const auto clients = draw(options.clients);
  std::optional<std::vector<std::int64_t>> capacities;
  if (options.uniform_capacity) {
    capacities.emplace(options.facilities, *options.uniform_capacity);
  }
  return from_euclidean_points(facilities, clients, options.ell,
                               std::move(capacities));
}

Graph random_graph(int vertices, double edge_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g;
  g.num_vertices = vertices;
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v) {
      if (uniform01(rng) < edge_probability) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

CoverageInstance random_coverage(int universe_size, int num_subsets, int k,
                                 bool equal_sizes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CoverageInstance cov;
  cov.universe_size = universe_size;
  cov.k = k;
  if (equal_sizes && (k <= 0 || universe_size % k != 0)) {
    throw ParameterError(fmt::format(
        "equal-size subsets need k | |U| (|U| = {}, k = {})", universe_size, k));
  }
  for (int i = 0; i < num_subsets; ++i) {
    std::vector<int> subset;
    if (equal_sizes) {
      std::vector<int> all(universe_size);
      std::iota(all.begin(), all.end(), 0);
      // Partial Fisher-Yates with our own index draws for portability.
      const int size = universe_size / k;
      for (int j = 0; j < size; ++j) {
        const auto pick =
            j + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                             universe_size - j));
        std::swap(all[j], all[pick]);
      }
      subset.assign(all.begin(), all.begin() + size);
      std::sort(subset.begin(), subset.end());
    } else {
      for (int e = 0; e < universe_size; ++e) {
        if (uniform01(rng) < 0.5) subset.push_back(e);
      }
    }
    cov.subsets.push_back(std::move(subset));
  }
  cov.check();
  return cov;
}

}  // namespace colmedian
