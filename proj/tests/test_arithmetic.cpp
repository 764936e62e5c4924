#include <gtest/gtest.h>

#include <random>

#include "modcoeff/arithmetic.hpp"

using namespace modcoeff;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST(Primality, MatchesTrialDivisionBelow100k) {
  for (std::uint64_t n = 0; n < 100000; ++n) ASSERT_EQ(is_prime(n), trial_division_prime(n)) << n;
}

TEST(Primality, LargeKnownCases) {
  EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to the first nine prime bases
  EXPECT_FALSE(is_prime(4294967291ULL * 4294967279ULL));
}

TEST(Factorize, ProductRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = rng() >> (rng() % 40);
    if (n == 0) continue;
    std::uint64_t back = 1;
    for (const auto& f : factorize(n)) {
      ASSERT_TRUE(is_prime(f.p));
      for (unsigned e = 0; e < f.exponent; ++e) back *= f.p;
    }
    ASSERT_EQ(back, n);
  }
}

TEST(Factorize, SemiprimeOfTwo32BitPrimes) {
  const Factorization f = factorize(4294967291ULL * 4294967279ULL);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].p, 4294967279ULL);
  EXPECT_EQ(f[1].p, 4294967291ULL);
}

TEST(Factorize, ZeroIsDomainError) {
  try {
    factorize(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Domain);
  }
}

TEST(ArithmeticSuite, Examples) {
  EXPECT_EQ(divisor_count(1000000), 49u);
  EXPECT_EQ(radical(12), 6u);
  EXPECT_EQ(omega(12), 2u);
  EXPECT_EQ(p_adic_val(2, 12), 2u);
  EXPECT_EQ(divisor_count(1), 1u);
  EXPECT_EQ(omega(1), 0u);
  EXPECT_EQ(radical(1), 1u);
  EXPECT_EQ(omega(30030), 6u);
}

TEST(ArithmeticSuite, PadicValRejectsComposite) {
  try {
    p_adic_val(4, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Domain);
  }
}

TEST(ArithmeticSuite, DivisorCountMatchesEnumeration) {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    std::uint64_t d = 0;
    for (std::uint64_t k = 1; k <= n; ++k) d += n % k == 0;
    ASSERT_EQ(divisor_count(n), d) << n;
  }
}

TEST(Sieve, PrimeCountsAndFactorizations) {
  const PrimeSieve s(1000000);
  EXPECT_EQ(s.pi(1000000), 78498u);
  EXPECT_EQ(s.pi(100000), 9592u);
  EXPECT_EQ(s.pi(10), 4u);
  for (std::uint64_t n = 1; n <= 20000; ++n) ASSERT_EQ(s.factorize(n), factorize(n)) << n;
  EXPECT_THROW(s.factorize(1000001), Error);
}
