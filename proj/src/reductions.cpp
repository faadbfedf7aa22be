#include "colmedian/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

namespace colmedian {

void Graph::check() const {
  if (num_vertices < 0) throw ParameterError("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw ParameterError(fmt::format("edge ({}, {}) out of range", u, v));
    }
    if (u == v) throw ParameterError(fmt::format("self-loop at {}", u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw ParameterError(fmt::format("duplicate edge ({}, {})", u, v));
    }
  }
}

void CoverageInstance::check() const {
  if (universe_size < 0) throw ParameterError("negative universe size");
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::set<int> seen;
    for (int e : subsets[i]) {
      if (e < 0 || e >= universe_size) {
        throw ParameterError(
            fmt::format("subset {} contains {} outside the universe", i, e));
      }
      if (!seen.insert(e).second) {
        throw ParameterError(fmt::format("subset {} repeats {}", i, e));
      }
    }
  }
  if (k < 0 || k > static_cast<int>(subsets.size())) {
    throw ParameterError(
        fmt::format("k = {} outside [0, {}]", k, subsets.size()));
  }
}

bool CoverageInstance::equal_size_promise() const {
  if (k <= 0 || universe_size % k != 0) return false;
  const auto want = static_cast<std::size_t>(universe_size / k);
  return std::all_of(subsets.begin(), subsets.end(),
                     [&](const auto& s) { return s.size() == want; });
}

IndependentSetReduction independent_set_reduction(const Graph& graph,
                                                  int ell) {
  graph.check();
  if (ell < 0 || ell > graph.num_vertices) {
    throw ParameterError(fmt::format("ell = {} outside [0, {}]", ell,
                                     graph.num_vertices));
  }
  const int nv = graph.num_vertices;
  const int ne = static_cast<int>(graph.edges.size());
  const int nodes = nv + ne;
  // Subdivided graph: vertex u -- midpoint (nv + e) -- vertex v.
  std::vector<std::vector<int>> adj(nodes);
  for (int e = 0; e < ne; ++e) {
    auto [u, v] = graph.edges[e];
    adj[u].push_back(nv + e);
    adj[v].push_back(nv + e);
    adj[nv + e] = {u, v};
  }

  if (nv == 0) throw ParameterError("the graph needs at least one vertex");
  const double sentinel = 2.0 * (nv + ne) + 1.0;
  bool connected = true;

  std::vector<double> dist(static_cast<std::size_t>(nodes) * nodes,
                           sentinel);
  std::vector<int> hops(nodes);
  for (int s = 0; s < nodes; ++s) {
    std::fill(hops.begin(), hops.end(), -1);
    std::deque<int> queue{s};
    hops[s] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : adj[x]) {
        if (hops[y] < 0) {
          hops[y] = hops[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (int t = 0; t < nodes; ++t) {
      if (hops[t] >= 0) {
        dist[static_cast<std::size_t>(s) * nodes + t] = hops[t];
      } else {
        connected = false;
      }
    }
  }
  return {Instance(nv, ne, std::move(dist), ell), connected, sentinel};
}

CoverageReduction coverage_reduction(const CoverageInstance& cov) {
  cov.check();
  const int n = static_cast<int>(cov.subsets.size());
  const int u_size = cov.universe_size;
  const int facilities = n + u_size;
  if (facilities == 0) {
    throw ParameterError("coverage instance has no subsets and no elements");
  }

  std::vector<std::vector<char>> member(n, std::vector<char>(u_size, 0));
  for (int i = 0; i < n; ++i) {
    for (int e : cov.subsets[i]) member[i][e] = 1;
  }

  // Client rows over the facilities, in creation order.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(facilities);
    for (int i2 = 0; i2 < n; ++i2) row[i2] = i2 == i ? 0.0 : 2.0;
    for (int e = 0; e < u_size; ++e) row[n + e] = member[i][e] ? 1.0 : 3.0;
    for (std::size_t j = 0; j < cov.subsets[i].size(); ++j) rows.push_back(row);
  }
  for (int e = 0; e < u_size; ++e) {
    std::vector<double> row(facilities);
    for (int i = 0; i < n; ++i) row[i] = member[i][e] ? 1.0 : 3.0;
    for (int e2 = 0; e2 < u_size; ++e2) row[n + e2] = e2 == e ? 0.0 : 2.0;
    for (int j = 0; j < u_size + 1; ++j) rows.push_back(row);
  }

  const int clients = static_cast<int>(rows.size());
  const int points = facilities + clients;
  constexpr double kUnset = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(points) * points, kUnset);
  auto at = [&](int x, int y) -> double& {
    return dist[static_cast<std::size_t>(x) * points + y];
  };
  for (int x = 0; x < points; ++x) at(x, x) = 0.0;
  for (int c = 0; c < clients; ++c) {
    for (int f = 0; f < facilities; ++f) {
      at(facilities + c, f) = at(f, facilities + c) = rows[c][f];
    }
  }
  // Shortest-path closure.
  for (int m = 0; m < points; ++m) {
    for (int x = 0; x < points; ++x) {
      const double xm = at(x, m);
      if (xm == kUnset) continue;
      for (int y = 0; y < points; ++y) {
        const double through = xm + at(m, y);
        if (through < at(x, y)) at(x, y) = through;
      }
    }
  }
  // Only possible without clients; facilities are then mutually unrelated.
  for (double& d : dist) {
    if (d == kUnset) d = 6.0;
  }

  std::vector<std::int64_t> capacities;
  for (int i = 0; i < n; ++i) {
    capacities.push_back(static_cast<std::int64_t>(cov.subsets[i].size()));
  }
  for (int e = 0; e < u_size; ++e) capacities.push_back(u_size + 2);

  return CoverageReduction{
      Instance(facilities, clients, std::move(dist), cov.k,
               std::move(capacities)),
      n, u_size, cov.equal_size_promise()};
}

std::vector<int> extract_coverage_solution(const Solution& sol,
                                           const CoverageInstance& cov) {
  const int n = static_cast<int>(cov.subsets.size());
  std::vector<int> chosen;
  for (FacilityId f : sol.closed) {
    if (f < 0 || f >= n) {
      throw ContractViolation(fmt::format(
          "facility {} is an element facility, not a subset facility", f));
    }
    chosen.push_back(f);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

int covered_count(const CoverageInstance& cov, const std::vector<int>& chosen) {
  std::vector<char> covered(cov.universe_size, 0);
  for (int i : chosen) {
    for (int e : cov.subsets.at(i)) covered[e] = 1;
  }
  return static_cast<int>(std::count(covered.begin(), covered.end(), 1));
}

// --- Text formats -----------------------------------------------------------

namespace {

// Next line with content after stripping comments; false at end of input.
bool next_tokens(std::istream& in, int& line_no,
                 std::vector<std::string>& tokens) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    tokens.clear();
    for (std::string w; words >> w;) tokens.push_back(w);
    if (!tokens.empty()) return true;
  }
  return false;
}

int to_int(const std::string& token, int line_no) {
  int value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, fmt::format("'{}' is not an integer", token));
  }
  return value;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  int line_no = 0;
  std::vector<std::string> tokens;
  if (!next_tokens(in, line_no, tokens) || tokens.size() != 3 ||
      tokens[0] != "graph") {
    throw ParseError(line_no, "expected header 'graph <n> <m>'");
  }
  Graph graph;
  graph.num_vertices = to_int(tokens[1], line_no);
  const int m = to_int(tokens[2], line_no);
  if (graph.num_vertices < 0 || m < 0) {
    throw ParseError(line_no, "counts must be non-negative");
  }
  for (int e = 0; e < m; ++e) {
    if (!next_tokens(in, line_no, tokens)) {
      throw ParseError(line_no + 1, fmt::format("missing edge {}", e));
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'u v'");
    graph.edges.emplace_back(to_int(tokens[0], line_no),
                             to_int(tokens[1], line_no));
  }
  if (next_tokens(in, line_no, tokens)) {
    throw ParseError(line_no, "unexpected content after the edge list");
  }
  try {
    graph.check();
  } catch (const ParameterError& e) {
    throw ParseError(line_no, e.what());
  }
  return graph;
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << "graph " << graph.num_vertices << ' ' << graph.edges.size() << '\n';
  for (auto [u, v] : graph.edges) out << u << ' ' << v << '\n';
}

CoverageInstance parse_coverage(std::istream& in) {
  int line_no = 0;
  std::vector<std::string> tokens;
  if (!next_tokens(in, line_no, tokens) || tokens.size() != 4 ||
      tokens[0] != "coverage") {
    throw ParseError(line_no, "expected header 'coverage <|U|> <n> <k>'");
  }
  CoverageInstance cov;
  cov.universe_size = to_int(tokens[1], line_no);
  const int n = to_int(tokens[2], line_no);
  cov.k = to_int(tokens[3], line_no);
  if (cov.universe_size < 0 || n < 0) {
    throw ParseError(line_no, "counts must be non-negative");
  }
  for (int i = 0; i < n; ++i) {
    if (!next_tokens(in, line_no, tokens)) {
      throw ParseError(line_no + 1, fmt::format("missing subset {}", i));
    }
    std::vector<int> subset;
    if (!(tokens.size() == 1 && tokens[0] == "-")) {
      for (const auto& t : tokens) subset.push_back(to_int(t, line_no));
    }
    cov.subsets.push_back(std::move(subset));
  }
  if (next_tokens(in, line_no, tokens)) {
    throw ParseError(line_no, "unexpected content after the subsets");
  }
  try {
    cov.check();
  } catch (const ParameterError& e) {
    throw ParseError(line_no, e.what());
  }
  return cov;
}

CoverageInstance parse_coverage(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_coverage(in);
}

void write_coverage(std::ostream& out, const CoverageInstance& cov) {
  out << "coverage " << cov.universe_size << ' ' << cov.subsets.size() << ' '
      << cov.k << '\n';
  for (const auto& s : cov.subsets) {
    if (s.empty()) {
      out << "-\n";
      continue;
    }
    for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
    out << '\n';
  }
}

}  // namespace colmedian
