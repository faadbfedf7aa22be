#include "colmedian/partition_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace colmedian {

Partition Partition::from_a_side(int universe_size, const FacilitySet& a_side) {
  return Partition(facility_mask(universe_size, a_side));
}

int Partition::a_count() const {
  return static_cast<int>(std::count(in_a_.begin(), in_a_.end(), 1));
}

FacilitySet Partition::a_side() const {
  FacilitySet out;
  for (FacilityId f = 0; f < size(); ++f) {
    if (in_a_[f]) out.push_back(f);
  }
  return out;
}

FacilitySet Partition::b_side() const {
  FacilitySet out;
  for (FacilityId f = 0; f < size(); ++f) {
    if (!in_a_[f]) out.push_back(f);
  }
  return out;
}

int support_size_bound(int ell, double eps) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  const double cube = static_cast<double>(ell) * ell * ell;
  const double r = std::ceil(6.0 * cube / eps) + ell;
  if (r > std::numeric_limits<int>::max() / 2) {
    throw ParameterError(
        fmt::format("support bound for ell={} eps={} is too large", ell, eps));
  }
  return static_cast<int>(r);
}

FamilyParams FamilyParams::for_epsilon(int universe_size, int ell, double eps) {
  FamilyParams params{universe_size, ell, support_size_bound(ell, eps)};
  params.check();
  return params;
}

void FamilyParams::check() const {
  if (universe_size < 0 || ell < 0 || support_bound < ell) {
    throw ParameterError(fmt::format(
        "invalid family parameters n={} ell={} r={} (need r >= ell >= 0)",
        universe_size, ell, support_bound));
  }
}

double coin_probability(int ell, double eps) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (ell <= 0) return 0.0;
  const double cube = static_cast<double>(ell) * ell * ell;
  return std::min(1.0, eps / cube);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Partition sample_partition(const FamilyParams& params, double eps,
                           std::mt19937_64& rng) {
  params.check();
  std::vector<char> in_a(params.universe_size, 0);
  if (params.ell == 0) return Partition(std::move(in_a));
  const double p = coin_probability(params.ell, eps);
  for (auto& bit : in_a) bit = uniform01(rng) < p ? 1 : 0;
  return Partition(std::move(in_a));
}

// --- BiasedCoinStream -------------------------------------------------------

BiasedCoinStream::BiasedCoinStream(int universe_size, double probability,
                                   std::uint64_t trials, std::uint64_t seed)
    : n_(universe_size), probability_(probability), rng_(seed) {
  if (universe_size < 0) throw ParameterError("negative universe size");
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ParameterError("coin probability outside [0, 1]");
  }
  if (n_ > 0 && trials > std::numeric_limits<std::uint64_t>::max() /
                             static_cast<std::uint64_t>(n_)) {
    throw ParameterError("trial count overflows the coin sequence");
  }
  total_coins_ = trials * static_cast<std::uint64_t>(n_);
  log_miss_ = std::log1p(-probability_);
  advance();
}

// Moves next_success_ to the next coin that lands in A, or to total_coins_.
void BiasedCoinStream::advance() {
  if (probability_ <= 0.0 || cursor_ >= total_coins_) {
    next_success_ = total_coins_;
    return;
  }
  double gap = 0.0;
  if (probability_ < 1.0) {
    const double u = 1.0 - uniform01(rng_);  // (0, 1]
    gap = std::floor(std::log(u) / log_miss_);
  }
  const double remaining = static_cast<double>(total_coins_ - cursor_);
  if (gap >= remaining) {
    next_success_ = total_coins_;
    cursor_ = total_coins_;
    return;
  }
  next_success_ = cursor_ + static_cast<std::uint64_t>(gap);
  cursor_ = next_success_ + 1;
}

std::optional<std::uint64_t> BiasedCoinStream::next_a_side(
    FacilitySet& a_side) {
  a_side.clear();
  if (next_success_ >= total_coins_) return std::nullopt;
  const auto n = static_cast<std::uint64_t>(n_);
  const std::uint64_t trial = next_success_ / n;
  while (next_success_ < total_coins_ && next_success_ / n == trial) {
    a_side.push_back(static_cast<FacilityId>(next_success_ % n));
    advance();
  }
  return trial;
}

std::optional<BiasedCoinStream::Trial> BiasedCoinStream::next() {
  FacilitySet a_side;
  const auto trial = next_a_side(a_side);
  if (!trial) return std::nullopt;
  return Trial{*trial, Partition::from_a_side(n_, a_side)};
}

// --- DeterministicFamily ----------------------------------------------------

std::int64_t next_prime_above(std::int64_t n) {
  auto is_prime = [](std::int64_t v) {
    if (v < 2) return false;
    for (std::int64_t d = 2; d * d <= v; ++d) {
      if (v % d == 0) return false;
    }
    return true;
  };
  std::int64_t p = std::max<std::int64_t>(n + 1, 2);
  while (!is_prime(p)) ++p;
  return p;
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(result);
}

namespace {

// Number of subsets of size <= ell of an `occupied`-element set.
std::size_t small_subset_count(std::int64_t occupied, int ell) {
  double total = 0.0;
  for (int i = 0; i <= ell && i <= occupied; ++i) total += binomial(occupied, i);
  return static_cast<std::size_t>(total);
}

// Lexicographic unranking of a size-k combination of {0, ..., n-1}.
std::vector<std::int64_t> unrank_combination(std::int64_t n, std::int64_t k,
                                             std::size_t rank) {
  std::vector<std::int64_t> out;
  std::int64_t candidate = 0;
  for (std::int64_t pos = 0; pos < k; ++pos) {
    while (true) {
      const auto with = static_cast<std::size_t>(
          binomial(n - candidate - 1, k - pos - 1));
      if (rank < with) break;
      rank -= with;
      ++candidate;
    }
    out.push_back(candidate++);
  }
  return out;
}

}  // namespace

DeterministicFamily::DeterministicFamily(FamilyParams params)
    : params_(params) {
  params_.check();
  if (params_.universe_size < 1) {
    throw ParameterError("deterministic family needs a non-empty universe");
  }
  prime_ = next_prime_above(params_.universe_size);
  const std::int64_t k = params_.ell + params_.support_bound;
  buckets_ = std::max<std::int64_t>(1, k * k);
  offsets_.push_back(0);
  for (std::int64_t a = 1; a < prime_; ++a) {
    const auto occupied =
        static_cast<std::int64_t>(occupied_buckets(a, nullptr).size());
    offsets_.push_back(offsets_.back() +
                       small_subset_count(occupied, params_.ell));
  }
}

std::vector<std::int64_t> DeterministicFamily::occupied_buckets(
    std::int64_t multiplier, std::vector<std::int64_t>* bucket_of) const {
  std::vector<std::int64_t> buckets(params_.universe_size);
  for (std::int64_t x = 0; x < params_.universe_size; ++x) {
    buckets[x] = (multiplier * x % prime_) % buckets_;
  }
  std::vector<std::int64_t> occupied = buckets;
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
  if (bucket_of) *bucket_of = std::move(buckets);
  return occupied;
}

Partition DeterministicFamily::build(std::int64_t multiplier,
                                     std::size_t local_rank) const {
  std::vector<std::int64_t> bucket_of;
  const auto occupied = occupied_buckets(multiplier, &bucket_of);
  const auto occ = static_cast<std::int64_t>(occupied.size());
  std::int64_t size = 0;
  for (;; ++size) {
    const auto count = static_cast<std::size_t>(binomial(occ, size));
    if (local_rank < count) break;
    local_rank -= count;
  }
  std::vector<char> occupied_in_a(occupied.size(), 0);
  for (std::int64_t i : unrank_combination(occ, size, local_rank)) {
    occupied_in_a[i] = 1;
  }
  std::vector<char> in_a(params_.universe_size, 0);
  for (std::int64_t x = 0; x < params_.universe_size; ++x) {
    const auto slot =
        std::lower_bound(occupied.begin(), occupied.end(), bucket_of[x]) -
        occupied.begin();
    in_a[x] = occupied_in_a[slot];
  }
  return Partition(std::move(in_a));
}

Partition DeterministicFamily::at(std::size_t index) const {
  if (index >= size()) {
    throw ContractViolation(
        fmt::format("family index {} out of range {}", index, size()));
  }
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const auto slot = static_cast<std::int64_t>(it - offsets_.begin()) - 1;
  return build(slot + 1, index - offsets_[slot]);
}

void DeterministicFamily::for_each(
    const std::function<void(const Partition&)>& visit) const {
  for (std::int64_t a = 1; a < prime_; ++a) {
    const std::size_t count = offsets_[a] - offsets_[a - 1];
    for (std::size_t r = 0; r < count; ++r) visit(build(a, r));
  }
}

double DeterministicFamily::size_bound() const {
  double colorings = 0.0;
  for (int i = 0; i <= params_.ell; ++i) colorings += binomial(buckets_, i);
  return static_cast<double>(prime_) * colorings;
}

DeterministicFamily deterministic_family(const FamilyParams& params) {
  return DeterministicFamily(params);
}

// --- Coverage verification --------------------------------------------------

namespace {

// Calls visit(mask) for every subset of `pool` with at most `limit` bits.
template <typename Visit>
bool for_small_subsets(std::uint64_t pool, int limit, std::uint64_t chosen,
                       Visit&& visit) {
  if (!visit(chosen)) return false;
  if (limit == 0) return true;
  while (pool) {
    const std::uint64_t bit = pool & (~pool + 1);
    pool &= pool - 1;
    // Only extend with elements above every chosen one to avoid repeats.
    if (!for_small_subsets(pool, limit - 1, chosen | bit, visit)) return false;
  }
  return true;
}

}  // namespace

bool verify_family_coverage(std::span<const Partition> family,
                            const FamilyParams& params, double budget) {
  params.check();
  const int n = params.universe_size;
  const int ell = std::min(params.ell, n);
  const int r = std::min(params.support_bound, n - ell);
  const double required = binomial(n, ell) * binomial(n - ell, r);
  if (n > 62 || required > budget) {
    throw BudgetExceeded(
        fmt::format("coverage check needs {} pairs, budget is {}", required,
                    budget),
        n > 62 ? std::numeric_limits<double>::infinity() : required);
  }

  std::vector<std::uint64_t> a_masks;
  a_masks.reserve(family.size());
  for (const Partition& p : family) {
    if (p.size() != n) {
      throw StructuralError(fmt::format(
          "partition over {} elements in a family over {}", p.size(), n));
    }
    std::uint64_t m = 0;
    for (FacilityId f = 0; f < n; ++f) {
      if (p.in_a(f)) m |= std::uint64_t{1} << f;
    }
    a_masks.push_back(m);
  }
  std::sort(a_masks.begin(), a_masks.end());
  a_masks.erase(std::unique(a_masks.begin(), a_masks.end()), a_masks.end());

  const std::uint64_t all = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  return for_small_subsets(all, params.ell, 0, [&](std::uint64_t a0) {
    return for_small_subsets(all & ~a0, params.support_bound, 0,
                             [&](std::uint64_t b0) {
                               for (std::uint64_t a : a_masks) {
                                 if ((a0 & ~a) == 0 && (b0 & a) == 0) {
                                   return true;
                                 }
                               }
                               return false;
                             });
  });
}

}  // namespace colmedian
