#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>

#include <fmt/format.h>

#include "colmedian/instance.hpp"

namespace colmedian {
namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

// Splits the stream into non-blank lines with comments removed.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(Line& line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (auto hash = raw.find('#'); hash != std::string::npos) {
        raw.erase(hash);
      }
      std::istringstream words(raw);
      std::vector<std::string> tokens;
      for (std::string w; words >> w;) tokens.push_back(std::move(w));
      if (tokens.empty()) continue;
      line = {number_, std::move(tokens)};
      return true;
    }
    return false;
  }

  int last_line() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

double parse_real(const std::string& token, int line) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, fmt::format("'{}' is not a real number", token));
  }
  return value;
}

std::int64_t parse_integer(const std::string& token, int line,
                           std::string_view what) {
  std::int64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec == std::errc() && ptr == end) return value;
  // Accept integral reals such as "3.0"; reject true fractions.
  double real = 0.0;
  auto [rptr, rec] = std::from_chars(token.data(), end, real);
  if (rec == std::errc() && rptr == end) {
    if (std::isfinite(real) && std::floor(real) == real &&
        std::abs(real) < 9.0e15) {
      return static_cast<std::int64_t>(real);
    }
    throw ParseError(line, fmt::format("{} '{}' must be an integer", what,
                                       token));
  }
  throw ParseError(line, fmt::format("{} '{}' is not an integer", what, token));
}

Line expect_line(LineReader& reader, std::string_view what) {
  Line line;
  if (!reader.next(line)) {
    throw ParseError(reader.last_line() + 1,
                     fmt::format("unexpected end of input, expected {}", what));
  }
  return line;
}

std::int64_t expect_keyword_int(LineReader& reader, std::string_view keyword) {
  Line line = expect_line(reader, keyword);
  if (line.tokens.size() != 2 || line.tokens[0] != keyword) {
    throw ParseError(line.number,
                     fmt::format("expected '{} <integer>'", keyword));
  }
  return parse_integer(line.tokens[1], line.number, keyword);
}

}  // namespace

Instance parse_instance(std::istream& in, ParseOptions options) {
  LineReader reader(in);

  Line magic = expect_line(reader, "header");
  if (magic.tokens.size() != 2 || magic.tokens[0] != "colmedian") {
    throw ParseError(magic.number, "expected header 'colmedian 1'");
  }
  if (magic.tokens[1] != "1") {
    throw ParseError(magic.number,
                     fmt::format("unsupported version '{}'", magic.tokens[1]));
  }

  const std::int64_t m = expect_keyword_int(reader, "facilities");
  const std::int64_t n = expect_keyword_int(reader, "clients");
  const std::int64_t ell = expect_keyword_int(reader, "ell");
  if (m < 1 || m > 1'000'000) {
    throw ParseError(reader.last_line(), "facility count out of range");
  }
  if (n < 0 || n > 1'000'000) {
    throw ParseError(reader.last_line(), "client count out of range");
  }

  std::optional<std::vector<std::int64_t>> capacities;
  Line body = expect_line(reader, "'capacities', 'matrix' or 'points'");
  if (body.tokens[0] == "capacities") {
    if (body.tokens.size() != static_cast<std::size_t>(m) + 1) {
      throw ParseError(body.number,
                       fmt::format("expected {} capacities, got {}", m,
                                   body.tokens.size() - 1));
    }
    capacities.emplace();
    for (std::size_t i = 1; i < body.tokens.size(); ++i) {
      const std::int64_t u =
          parse_integer(body.tokens[i], body.number, "capacity");
      if (u < 0) throw ParseError(body.number, "capacity must be non-negative");
      capacities->push_back(u);
    }
    body = expect_line(reader, "'matrix' or 'points'");
  }

  const auto points = static_cast<std::size_t>(m + n);
  std::optional<Instance> inst;
  if (body.tokens[0] == "matrix" && body.tokens.size() == 1) {
    std::vector<double> dist;
    dist.reserve(points * points);
    for (std::size_t row = 0; row < points; ++row) {
      Line line = expect_line(reader, fmt::format("matrix row {}", row));
      if (line.tokens.size() != points) {
        throw ParseError(line.number,
                         fmt::format("matrix row {} has {} entries, expected {}",
                                     row, line.tokens.size(), points));
      }
      for (std::size_t col = 0; col < points; ++col) {
        const double d = parse_real(line.tokens[col], line.number);
        if (!std::isfinite(d) || d < 0.0) {
          throw ParseError(line.number,
                           fmt::format("distance [{}][{}] = '{}' must be a "
                                       "finite non-negative real",
                                       row, col, line.tokens[col]));
        }
        dist.push_back(d);
      }
    }
    inst.emplace(static_cast<int>(m), static_cast<int>(n), std::move(dist),
                 static_cast<int>(ell), std::move(capacities));
  } else if (body.tokens[0] == "points" && body.tokens.size() == 2) {
    const std::int64_t dim = parse_integer(body.tokens[1], body.number, "dim");
    if (dim < 1) throw ParseError(body.number, "dimension must be positive");
    std::vector<Point> coords;
    for (std::size_t row = 0; row < points; ++row) {
      Line line = expect_line(reader, fmt::format("point row {}", row));
      if (line.tokens.size() != static_cast<std::size_t>(dim)) {
        throw ParseError(line.number,
                         fmt::format("point row {} has {} coordinates, "
                                     "expected {}",
                                     row, line.tokens.size(), dim));
      }
      Point p;
      for (const auto& t : line.tokens) {
        const double x = parse_real(t, line.number);
        if (!std::isfinite(x)) {
          throw ParseError(line.number, "coordinates must be finite");
        }
        p.push_back(x);
      }
      coords.push_back(std::move(p));
    }
    std::span<const Point> all(coords);
    inst.emplace(from_euclidean_points(all.first(m), all.subspan(m),
                                       static_cast<int>(ell),
                                       std::move(capacities)));
  } else {
    throw ParseError(body.number, "expected 'matrix' or 'points <dim>'");
  }

  Line extra;
  if (reader.next(extra)) {
    throw ParseError(extra.number, "unexpected content after instance body");
  }

  if (options.check_metric) {
    auto violations =
        validate_metric(*inst, default_metric_tolerance(inst->matrix()));
    if (!violations.empty()) {
      throw MetricError(fmt::format("not a metric ({} violations); first: {}",
                                    violations.size(),
                                    violations.front().describe()));
    }
  }
  return std::move(*inst);
}

Instance parse_instance(std::string_view text, ParseOptions options) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, options);
}

std::string format_exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_instance(std::ostream& out, const Instance& inst,
                    std::string_view comment) {
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
  }
  out << "colmedian 1\n";
  out << "facilities " << inst.num_facilities() << '\n';
  out << "clients " << inst.num_clients() << '\n';
  out << "ell " << inst.ell() << '\n';
  if (inst.capacitated()) {
    out << "capacities";
    for (auto u : *inst.capacities()) out << ' ' << u;
    out << '\n';
  }
  out << "matrix\n";
  const int n = inst.num_points();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y) out << ' ';
      out << format_exact(inst.dist(x, y));
    }
    out << '\n';
  }
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

void write_solution(std::ostream& out, const Instance& inst,
                    const Solution& sol) {
  out << fmt::format("cost {:.12g}\n", sol.cost);
  out << "closed";
  for (FacilityId f : sol.closed) out << ' ' << f;
  out << '\n';
  for (ClientId c = 0; c < static_cast<ClientId>(sol.assignment.size()); ++c) {
    const FacilityId f = sol.assignment[c];
    out << fmt::format("assign {} {} {:.12g}\n", c, f,
                       inst.client_facility(c, f));
  }
}

}  // namespace colmedian
