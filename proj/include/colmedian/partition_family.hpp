#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "colmedian/types.hpp"

namespace colmedian {

// A bipartition F = A u B of the facilities, the hint handed to the
// per-partition solver: A should contain the closed set and B its support.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<char> in_a) : in_a_(std::move(in_a)) {}
  static Partition from_a_side(int universe_size, const FacilitySet& a_side);

  int size() const { return static_cast<int>(in_a_.size()); }
  bool in_a(FacilityId f) const { return in_a_[f] != 0; }
  bool in_b(FacilityId f) const { return in_a_[f] == 0; }
  int a_count() const;
  int b_count() const { return size() - a_count(); }
  FacilitySet a_side() const;
  FacilitySet b_side() const;
  std::span<const char> a_mask() const { return in_a_; }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<char> in_a_;
};

struct FamilyParams {
  int universe_size = 0;  // n
  int ell = 0;
  int support_bound = 0;  // r; must satisfy r >= ell >= 0

  // r = ceil(6 ell^3 / eps) + ell.
  static FamilyParams for_epsilon(int universe_size, int ell, double eps);
  void check() const;
};

int support_size_bound(int ell, double eps);

// Probability min(1, eps / ell^3) of sending a facility to A.
double coin_probability(int ell, double eps);

// Uniform double in [0, 1) built from the top 53 bits, so sequences are
// identical across standard libraries.
double uniform01(std::mt19937_64& rng);

// One biased-coin partition: each facility joins A independently with
// probability coin_probability(ell, eps). ell == 0 yields the all-B
// partition without consuming randomness.
Partition sample_partition(const FamilyParams& params, double eps,
                           std::mt19937_64& rng);

// Runs `trials` independent biased-coin partitions over n facilities but only
// materializes the trials that put at least one facility in A. The coins of
// all trials form one Bernoulli(p) sequence and the stream jumps between
// successes with geometric gaps, so a trial with an empty A side costs nothing.
class BiasedCoinStream {
 public:
  struct Trial {
    std::uint64_t index;
    Partition partition;
  };

  BiasedCoinStream(int universe_size, double probability, std::uint64_t trials,
                   std::uint64_t seed);

  std::optional<Trial> next();
  // Same sequence as next() without building a Partition: fills `a_side`
  // with the A members of the next trial and returns its index.
  std::optional<std::uint64_t> next_a_side(FacilitySet& a_side);

 private:
  void advance();

  int n_;
  double probability_;
  double log_miss_;
  std::uint64_t total_coins_;
  std::uint64_t cursor_ = 0;  // first coin not yet drawn
  std::uint64_t next_success_ = 0;
  std::mt19937_64 rng_;
};

// Deterministic family covering every disjoint (A0, B0) with |A0| <= ell and
// |B0| <= r: for a prime p in (n, 2n] and every multiplier a in [1, p-1],
// hash x -> (a*x mod p) mod (ell+r)^2, then color at most ell buckets A.
// Colorings that differ only on empty buckets induce the same partition, so
// each multiplier contributes one partition per set of at most ell occupied
// buckets. Partitions are produced on demand by index.
class DeterministicFamily {
 public:
  explicit DeterministicFamily(FamilyParams params);

  const FamilyParams& params() const { return params_; }
  std::int64_t prime() const { return prime_; }
  std::int64_t buckets() const { return buckets_; }

  std::size_t size() const { return offsets_.back(); }
  Partition at(std::size_t index) const;

  // Visits every partition in index order.
  void for_each(const std::function<void(const Partition&)>& visit) const;

  // p * sum_{i <= ell} C((ell+r)^2, i): the size of the undeduplicated
  // composition family, an upper bound on size().
  double size_bound() const;

 private:
  std::vector<std::int64_t> occupied_buckets(std::int64_t multiplier,
                                             std::vector<std::int64_t>* bucket_of) const;
  Partition build(std::int64_t multiplier, std::size_t local_rank) const;

  FamilyParams params_;
  std::int64_t prime_;
  std::int64_t buckets_;
  // offsets_[i] = number of partitions from multipliers 1..i.
  std::vector<std::size_t> offsets_;
};

DeterministicFamily deterministic_family(const FamilyParams& params);

// Smallest prime strictly greater than n (always <= 2n for n >= 1).
std::int64_t next_prime_above(std::int64_t n);

// n choose k as a double (exact below 2^53).
double binomial(std::int64_t n, std::int64_t k);

// Exhaustively checks the coverage contract. Throws BudgetExceeded when
// C(n, ell) * C(n - ell, r) exceeds `budget` or n > 62.
inline constexpr double kCoverageBudget = 5e7;
bool verify_family_coverage(std::span<const Partition> family,
                            const FamilyParams& params,
                            double budget = kCoverageBudget);

}  // namespace colmedian
