#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace forge {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct PrimeFactor {
  u64 prime;
  int exponent;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
bool is_prime(u64 n);
u64 next_prime(u64 n);  // smallest prime > n

// Full factorisation, ascending primes. Trial division then Pollard rho.
std::vector<PrimeFactor> factorize(u64 n);

// Factorisation of p^N - 1 assembled from the cyclotomic values Phi_d(p).
// Throws EffortBoundExceeded when p^N does not fit in 127 bits or a
// cyclotomic value exceeds 63 bits.
std::vector<std::pair<u128, int>> factorize_pow_minus_one(u64 p, int N);

std::optional<std::pair<u64, int>> prime_power(u64 q);

// Exponent of p in x (x != 0).
int vp(i64 x, u64 p);
int vp_u(u64 x, u64 p);

i64 mod(i64 a, i64 m);
i64 inv_mod(i64 a, i64 m);  // throws when not invertible
u64 ipow(u64 b, int e);     // throws on overflow
u128 ipow128(u64 b, int e); // throws on overflow

std::vector<int> divisors(int n);
int moebius(int n);
int euler_phi(int n);
u64 gcd_u(u64 a, u64 b);

std::string to_string_u128(u128 v);

} // namespace forge
