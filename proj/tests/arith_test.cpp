#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "nblab/arith.hpp"

using nblab::MobiusTable;

TEST(Sieve, SmallValues) {
  const auto one = nblab::sieve_mobius(1);
  ASSERT_EQ(one.limit(), 1u);
  EXPECT_EQ(one.at(1), 1);

  const auto t = nblab::sieve_mobius(30);
  EXPECT_EQ(t.at(12), 0);
  EXPECT_EQ(t.at(30), -1);
  const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(t.at(k), expected[k - 1]) << k;
}

TEST(Sieve, RejectsZeroLimit) {
  EXPECT_THROW(nblab::sieve_mobius(0), std::invalid_argument);
}

TEST(Sieve, AtIsBoundsChecked) {
  const auto t = nblab::sieve_mobius(10);
  EXPECT_THROW(t.at(11), std::out_of_range);
  EXPECT_THROW(t.at(0), std::out_of_range);
}

TEST(Sieve, SquarefulEntriesVanishExactly) {
  const std::uint64_t limit = 20000;
  const auto t = nblab::sieve_mobius(limit);
  for (std::uint64_t k = 1; k <= limit; ++k) {
    bool squareful = false;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
      if (k % (p * p) == 0) {
        squareful = true;
        break;
      }
    }
    EXPECT_EQ(t[k] == 0, squareful) << k;
  }
}

TEST(Sieve, DivisorSumIsIndicatorOfOne) {
  const std::uint64_t limit = 100000;
  const auto t = nblab::sieve_mobius(limit);
  std::vector<int> sum(limit + 1, 0);
  for (std::uint64_t d = 1; d <= limit; ++d) {
    for (std::uint64_t m = d; m <= limit; m += d) sum[m] += t[d];
  }
  EXPECT_EQ(sum[1], 1);
  for (std::uint64_t n = 2; n <= limit; ++n) ASSERT_EQ(sum[n], 0) << n;
}

TEST(Sieve, MultiplicativeOnCoprimePairs) {
  const std::uint64_t limit = 1000000;
  const auto t = nblab::sieve_mobius(limit);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1000);
  int checked = 0;
  while (checked < 10000) {
    const auto m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    ASSERT_EQ(t[m * n], t[m] * t[n]) << m << " " << n;
    ++checked;
  }
}

TEST(Mertens, Examples) {
  const auto t = nblab::sieve_mobius(100);
  EXPECT_EQ(nblab::mertens(t, 1), 1);
  EXPECT_EQ(nblab::mertens(t, 2), 0);
  EXPECT_EQ(nblab::mertens(t, 5), -2);
  EXPECT_EQ(nblab::mertens(t, 100), 1);
  EXPECT_THROW(nblab::mertens(t, 101), std::out_of_range);
}

TEST(Mertens, PrefixMatchesDirectSum) {
  const auto t = nblab::sieve_mobius(5000);
  const auto prefix = nblab::mertens_prefix(t);
  for (std::uint64_t n = 1; n <= 5000; n += 37) {
    EXPECT_EQ(prefix[n], nblab::mertens(t, n)) << n;
  }
}

TEST(MobiusFloorSum, Examples) {
  const auto t = nblab::sieve_mobius(1000000);
  EXPECT_EQ(nblab::mobius_floor_sum(t, 1), 1);
  EXPECT_EQ(nblab::mobius_floor_sum(t, 10), 1);
  EXPECT_EQ(nblab::mobius_floor_sum(t, 1000000), 1);
  EXPECT_THROW(nblab::mobius_floor_sum(t, 1000001), std::out_of_range);
}

TEST(MobiusFloorSum, GroupedAgreesWithDirect) {
  const auto t = nblab::sieve_mobius(20000);
  const auto prefix = nblab::mertens_prefix(t);
  for (std::uint64_t N = 1; N <= 20000; N += 13) {
    EXPECT_EQ(nblab::mobius_floor_sum_grouped(prefix, N), nblab::mobius_floor_sum(t, N)) << N;
  }
}

TEST(MobiusFloorSum, EqualsOneUpToOneMillion) {
  const auto t = nblab::sieve_mobius(1000000);
  const auto prefix = nblab::mertens_prefix(t);
  for (std::uint64_t N = 1; N <= 1000000; ++N) {
    ASSERT_EQ(nblab::mobius_floor_sum_grouped(prefix, N), 1) << N;
  }
}

TEST(Totients, DivisorSums) {
  const std::uint64_t n = 2000;
  const auto phi = nblab::totient_table(n);
  const auto j2 = nblab::jordan2_table(n);
  for (std::uint64_t g = 1; g <= n; ++g) {
    std::uint64_t s1 = 0, s2 = 0;
    for (std::uint64_t d = 1; d <= g; ++d) {
      if (g % d == 0) {
        s1 += phi[d];
        s2 += j2[d];
      }
    }
    ASSERT_EQ(s1, g);
    ASSERT_EQ(s2, g * g);
  }
}
