#include "forge/error.hpp"
#include "forge/numtheory.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace forge;
using forge::testing::uniform;

namespace {

bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int brute_phi(int n) {
  int c = 0;
  for (int k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

int brute_moebius(int n) {
  int mu = 1;
  for (int d = 2; d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return mu;
}

} // namespace

TEST(NumTheory, PrimalityAgreesWithTrialDivision) {
  for (u64 n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
  for (int i = 0; i < 200; ++i) {
    u64 n = static_cast<u64>(uniform(1, 2000000000));
    EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
  }
}

TEST(NumTheory, NextPrimeIsStrictlyGreater) {
  EXPECT_EQ(next_prime(2), 3u);
  EXPECT_EQ(next_prime(12), 13u);
  EXPECT_EQ(next_prime(13), 17u);
  EXPECT_EQ(next_prime(30), 31u);
}

TEST(NumTheory, FactorizationMultipliesBack) {
  for (int i = 0; i < 300; ++i) {
    u64 n = static_cast<u64>(uniform(2, 1000000000000LL));
    u64 prod = 1;
    u64 last = 0;
    for (const auto& f : factorize(n)) {
      EXPECT_TRUE(trial_prime(f.prime) || f.prime > 1000000) << f.prime;
      EXPECT_GT(f.prime, last);
      last = f.prime;
      for (int e = 0; e < f.exponent; ++e) prod *= f.prime;
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(NumTheory, PowMinusOneFactorization) {
  for (u64 p : {2u, 3u, 5u, 7u, 13u, 31u})
    for (int N = 1; N <= 12; ++N) {
      u128 prod = 1;
      for (const auto& [q, e] : factorize_pow_minus_one(p, N))
        for (int k = 0; k < e; ++k) prod *= q;
      EXPECT_TRUE(prod == ipow128(p, N) - 1) << p << "^" << N;
    }
}

TEST(NumTheory, PowMinusOneEffortBound) {
  EXPECT_THROW(factorize_pow_minus_one(1000003, 20), EffortBoundExceeded);
}

TEST(NumTheory, InverseModulo) {
  for (int i = 0; i < 500; ++i) {
    i64 m = uniform(2, 100000);
    i64 a = uniform(-1000000, 1000000);
    if (std::gcd(a, m) != 1) {
      EXPECT_THROW(inv_mod(a, m), Error);
      continue;
    }
    i64 b = inv_mod(a, m);
    EXPECT_EQ(mod(a % m * b, m), 1 % m);
  }
}

TEST(NumTheory, PhiAndMoebiusBruteForce) {
  for (int n = 1; n <= 400; ++n) {
    EXPECT_EQ(euler_phi(n), brute_phi(n)) << n;
    EXPECT_EQ(moebius(n), brute_moebius(n)) << n;
  }
}

TEST(NumTheory, ValuationAndPrimePower) {
  EXPECT_EQ(vp(250, 5), 3);
  EXPECT_EQ(vp(-48, 2), 4);
  EXPECT_EQ(vp_u(81, 3), 4);
  auto pp = prime_power(3125);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->first, 5u);
  EXPECT_EQ(pp->second, 5);
  EXPECT_FALSE(prime_power(12));
  EXPECT_THROW(ipow(10, 30), Error);
}
