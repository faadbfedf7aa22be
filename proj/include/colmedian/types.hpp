#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace colmedian {

using FacilityId = std::int32_t;
using ClientId = std::int32_t;

// Sorted, duplicate-free list of facility indices.
using FacilitySet = std::vector<FacilityId>;

// Sorts and deduplicates in place; returns the argument for chaining.
FacilitySet& normalize(FacilitySet& set);

// Membership mask of length num_facilities. Throws ContractViolation on
// out-of-range ids.
std::vector<char> facility_mask(int num_facilities, const FacilitySet& set);

// A closed set S together with the assignment phi and its connection cost.
struct Solution {
  FacilitySet closed;
  std::vector<FacilityId> assignment;  // indexed by client
  double cost = 0.0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Strict weak order used for every deterministic min-reduction:
// cost first, then the closed set lexicographically.
bool better_solution(const Solution& a, const Solution& b);

// --- Errors ---------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed matrix shape, wrong vector lengths, etc.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Triangle inequality, symmetry or diagonal violated.
class MetricError : public Error {
 public:
  using Error::Error;
};

// ell out of range, fractional or negative capacities, bad eps.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a text format; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// No feasible solution: all facilities closed with clients present, or
// insufficient capacity.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double required)
      : Error(what), required_(required) {}
  double required() const { return required_; }

 private:
  double required_;
};

}  // namespace colmedian
