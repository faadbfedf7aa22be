#pragma once

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "colmedian/instance.hpp"
#include "colmedian/types.hpp"

namespace colmedian {

// Simple undirected graph; vertices are 0..num_vertices-1.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  // Throws ParameterError on self-loops, duplicate or out-of-range edges.
  void check() const;
};

// Max k-Coverage input: subsets of the universe {0, ..., universe_size-1}.
struct CoverageInstance {
  int universe_size = 0;
  std::vector<std::vector<int>> subsets;
  int k = 0;

  void check() const;
  // |T_1| = ... = |T_n| = |U| / k, the promise the hardness argument uses.
  bool equal_size_promise() const;
};

struct IndependentSetReduction {
  Instance instance;
  bool connected = true;
  // Distance used between different components.
  double sentinel = 0.0;
};

// Facilities are the vertices, one client sits in the middle of every edge,
// and distances are shortest paths in the subdivided graph with half-edges of
// length 1. The optimum equals |E| iff the graph has an independent set of
// size ell.
IndependentSetReduction independent_set_reduction(const Graph& graph, int ell);

struct CoverageReduction {
  Instance instance;
  int num_subsets = 0;
  int universe_size = 0;
  bool equal_size_promise = false;

  FacilityId set_facility(int subset) const { return subset; }
  FacilityId element_facility(int element) const {
    return num_subsets + element;
  }
};

// Capacitated instance with one facility per subset (capacity |T_i|), one per
// element (capacity |U| + 2), |T_i| clients per subset, |U| + 1 clients per
// element and ell = k. Client-facility distances follow the 0/1/2/3 pattern;
// all other distances are the shortest-path closure of those values.
CoverageReduction coverage_reduction(const CoverageInstance& cov);

// Indices of the subsets whose facilities `sol` closes. Throws
// ContractViolation if an element facility is closed.
std::vector<int> extract_coverage_solution(const Solution& sol,
                                           const CoverageInstance& cov);

// Number of covered elements of the chosen subsets.
int covered_count(const CoverageInstance& cov, const std::vector<int>& chosen);

// `graph <n> <m>` followed by m lines `u v`.
Graph parse_graph(std::istream& in);
Graph parse_graph(std::string_view text);
void write_graph(std::ostream& out, const Graph& graph);

// `coverage <|U|> <n> <k>` followed by n lines of elements; `-` marks an
// empty subset.
CoverageInstance parse_coverage(std::istream& in);
CoverageInstance parse_coverage(std::string_view text);
void write_coverage(std::ostream& out, const CoverageInstance& cov);

}  // namespace colmedian
