#include "nblab/arith.hpp"

#include <stdexcept>
#include <string>

namespace nblab {

MobiusTable::MobiusTable(std::uint64_t limit) : limit_(limit), mu_(limit + 1, 0) {
  if (limit == 0) throw std::invalid_argument("sieve_mobius: limit must be >= 1");

  // Linear sieve: every composite is struck exactly once, by its least prime.
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  mu_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      mu_[i] = -1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (m > limit) break;
      composite[m] = true;
      if (i % p == 0) {
        mu_[m] = 0;
        break;
      }
      mu_[m] = static_cast<std::int8_t>(-mu_[i]);
    }
  }
}

int MobiusTable::at(std::uint64_t k) const {
  if (k == 0 || k > limit_) {
    throw std::out_of_range("MobiusTable: index " + std::to_string(k) +
                            " outside 1.." + std::to_string(limit_));
  }
  return mu_[k];
}

MobiusTable sieve_mobius(std::uint64_t limit) { return MobiusTable(limit); }

namespace {

void check_in_table(const MobiusTable& table, std::uint64_t n, const char* who) {
  if (n > table.limit()) {
    throw std::out_of_range(std::string(who) + ": n = " + std::to_string(n) +
                            " exceeds table limit " + std::to_string(table.limit()));
  }
}

}  // namespace

std::int64_t mertens(const MobiusTable& table, std::uint64_t n) {
  check_in_table(table, n, "mertens");
  std::int64_t sum = 0;
  for (std::uint64_t a = 1; a <= n; ++a) sum += table[a];
  return sum;
}

std::int64_t mobius_floor_sum(const MobiusTable& table, std::uint64_t N) {
  check_in_table(table, N, "mobius_floor_sum");
  std::int64_t sum = 0;
  for (std::uint64_t a = 1; a <= N; ++a) {
    sum += static_cast<std::int64_t>(table[a]) * static_cast<std::int64_t>(N / a);
  }
  return sum;
}

std::vector<std::int32_t> mertens_prefix(const MobiusTable& table) {
  std::vector<std::int32_t> prefix(table.limit() + 1, 0);
  for (std::uint64_t k = 1; k <= table.limit(); ++k) prefix[k] = prefix[k - 1] + table[k];
  return prefix;
}

std::int64_t mobius_floor_sum_grouped(std::span<const std::int32_t> mertens,
                                      std::uint64_t N) {
  if (N + 1 > mertens.size()) {
    throw std::out_of_range("mobius_floor_sum_grouped: N exceeds prefix table");
  }
  std::int64_t sum = 0;
  for (std::uint64_t lo = 1; lo <= N;) {
    const std::uint64_t q = N / lo;
    const std::uint64_t hi = N / q;
    sum += static_cast<std::int64_t>(q) * (mertens[hi] - mertens[lo - 1]);
    lo = hi + 1;
  }
  return sum;
}

std::vector<std::uint64_t> totient_table(std::uint64_t n) {
  std::vector<std::uint64_t> phi(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) phi[k] = k;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;  // not prime
    for (std::uint64_t m = p; m <= n; m += p) phi[m] -= phi[m] / p;
  }
  return phi;
}

std::vector<std::uint64_t> jordan2_table(std::uint64_t n) {
  // J_2(k) = k^2 prod_{p|k} (1 - p^-2)
  std::vector<std::uint64_t> j2(n + 1);
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t k = 0; k <= n; ++k) j2[k] = k * k;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p; m <= n; m += p) {
      if (m > p) composite[m] = true;
      j2[m] = j2[m] / (p * p) * (p * p - 1);
    }
  }
  return j2;
}

}  // namespace nblab
