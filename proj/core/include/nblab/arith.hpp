#ifndef NBLAB_ARITH_HPP
#define NBLAB_ARITH_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace nblab {

/// Immutable table of Moebius values mu(1..limit).
///
/// Storage is one signed byte per integer, so a limit of 1e8 needs about
/// 100 MB. Index 0 is unused and holds 0.
class MobiusTable {
 public:
  explicit MobiusTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

  /// mu(k) for 1 <= k <= limit; no bounds check.
  int operator[](std::uint64_t k) const noexcept { return mu_[k]; }

  /// mu(k) with bounds check; throws std::out_of_range.
  int at(std::uint64_t k) const;

  /// Values indexed 0..limit (entry 0 is a placeholder).
  std::span<const std::int8_t> values() const noexcept { return mu_; }

 private:
  std::uint64_t limit_;
  std::vector<std::int8_t> mu_;
};

/// Linear sieve; throws std::invalid_argument for limit == 0.
MobiusTable sieve_mobius(std::uint64_t limit);

/// Mertens function M(n) = sum_{a<=n} mu(a).
std::int64_t mertens(const MobiusTable& table, std::uint64_t n);

/// sum_{a<=N} mu(a) * floor(N/a), by direct summation. Equals 1 for N >= 1.
std::int64_t mobius_floor_sum(const MobiusTable& table, std::uint64_t N);

/// Prefix sums M(0..limit) of the table.
std::vector<std::int32_t> mertens_prefix(const MobiusTable& table);

/// Same quantity as mobius_floor_sum, grouped over equal quotients
/// floor(N/a) with a precomputed Mertens prefix. O(sqrt(N)) per call.
std::int64_t mobius_floor_sum_grouped(std::span<const std::int32_t> mertens,
                                      std::uint64_t N);

/// Euler totient phi(0..n); phi(0) = 0.
std::vector<std::uint64_t> totient_table(std::uint64_t n);

/// Jordan totient J_2(0..n), so that sum_{d|g} J_2(d) = g^2.
std::vector<std::uint64_t> jordan2_table(std::uint64_t n);

}  // namespace nblab

#endif  // NBLAB_ARITH_HPP
