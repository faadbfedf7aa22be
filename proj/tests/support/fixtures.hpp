#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "colmedian/generators.hpp"
#include "colmedian/instance.hpp"
#include "colmedian/reductions.hpp"

namespace fixtures {

using colmedian::Instance;
using colmedian::Point;

// Facilities at 0, 1, 5 and clients at 0.4, 4.8 on a line; ell = 1.
inline Instance e1() {
  const std::vector<Point> f{{0.0}, {1.0}, {5.0}};
  const std::vector<Point> c{{0.4}, {4.8}};
  return colmedian::from_euclidean_points(f, c, 1);
}

inline const char* kE1Text =
    "colmedian 1\n"
    "facilities 3\n"
    "clients 2\n"
    "ell 1\n"
    "points 1\n"
    "0\n1\n5\n0.4\n4.8\n";

// f0 = (0,0), f1 = (0,0.3), f2 = (0.1,0); one client at (0,0.14); ell = 1.
inline Instance e2() {
  const std::vector<Point> f{{0.0, 0.0}, {0.0, 0.3}, {0.1, 0.0}};
  const std::vector<Point> c{{0.0, 0.14}};
  return colmedian::from_euclidean_points(f, c, 1);
}

inline colmedian::Graph cycle(int n) {
  colmedian::Graph g;
  g.num_vertices = n;
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

inline colmedian::Graph complete(int n) {
  colmedian::Graph g;
  g.num_vertices = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

// U = {0..3}, T = {01, 23, 02}, k = 2.
inline colmedian::CoverageInstance small_coverage() {
  return {4, {{0, 1}, {2, 3}, {0, 2}}, 2};
}

// Random metric with the given shape; integer weights on odd seeds to create
// distance ties.
inline Instance random_instance(int facilities, int clients, int ell,
                                std::uint64_t seed) {
  colmedian::RandomMetricOptions o;
  o.facilities = facilities;
  o.clients = clients;
  o.ell = ell;
  o.seed = seed;
  o.integer_weights = seed % 2 == 1;
  return colmedian::random_metric_instance(o);
}

// Every facility owns at least one nearby client, so no closure is free and
// the greedy witness is often suboptimal. Facilities are joined by random
// weights in [1, 10], each client hangs off one facility by a weight in
// [0.1, 3] and the metric is the shortest-path closure. Integer weights
// (scaled by 1/2) make ties common.
inline Instance clustered_instance(int facilities, int clients, int ell,
                                   std::uint64_t seed, bool integer_weights) {
  std::mt19937_64 rng(seed);
  auto draw = [&](double lo, double hi) {
    if (integer_weights) {
      const auto steps = static_cast<std::uint64_t>(2 * (hi - lo)) + 1;
      return lo + static_cast<double>(rng() % steps) / 2.0;
    }
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const int n = facilities + clients;
  const double inf = 1e18;
  std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
  auto at = [&](int x, int y) -> double& {
    return d[static_cast<std::size_t>(x) * n + y];
  };
  for (int x = 0; x < n; ++x) at(x, x) = 0.0;
  for (int f = 0; f < facilities; ++f) {
    for (int g = f + 1; g < facilities; ++g) at(f, g) = at(g, f) = draw(1.0, 10.0);
  }
  for (int c = 0; c < clients; ++c) {
    const int f = c < facilities ? c : static_cast<int>(rng() % facilities);
    at(facilities + c, f) = at(f, facilities + c) = draw(0.1, 3.0);
  }
  for (int m = 0; m < n; ++m) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) at(x, y) = std::min(at(x, y), at(x, m) + at(m, y));
    }
  }
  return Instance(facilities, clients, std::move(d), ell);
}

}  // namespace fixtures
