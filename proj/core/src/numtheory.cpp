#include "forge/numtheory.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <map>
#include <tuple>
#include <numeric>

namespace forge {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit inputs
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

u64 gcd_u(u64 a, u64 b) { return std::gcd(a, b); }

namespace {

u64 rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd_u(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

} // namespace

std::vector<PrimeFactor> factorize(u64 n) {
  if (n == 0) throw InvalidInput("factorize: zero");
  std::map<u64, int> out;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  factor_rec(n, out);
  std::vector<PrimeFactor> v;
  for (auto [p, e] : out) v.push_back({p, e});
  return v;
}

std::vector<std::pair<u128, int>> factorize_pow_minus_one(u64 p, int N) {
  using boost::multiprecision::cpp_int;
  if (N < 1) throw InvalidInput("factorize_pow_minus_one: N < 1");
  (void)ipow128(p, N);  // overflow guard
  std::map<u64, int> acc;
  for (int d : divisors(N)) {
    // Phi_d(p) = prod_{k | d} (p^k - 1)^{mu(d/k)}
    cpp_int num = 1, den = 1;
    for (int k : divisors(d)) {
      int mu = moebius(d / k);
      if (mu == 0) continue;
      cpp_int t = boost::multiprecision::pow(cpp_int(p), k) - 1;
      if (mu > 0) num *= t; else den *= t;
    }
    cpp_int val = num / den;
    if (val > cpp_int(std::numeric_limits<i64>::max()))
      throw EffortBoundExceeded("cyclotomic factor of p^N-1 exceeds 63 bits");
    for (auto [q, e] : factorize(static_cast<u64>(val))) acc[q] += e;
  }
  std::vector<std::pair<u128, int>> out;
  for (auto [q, e] : acc) out.emplace_back(q, e);
  return out;
}

std::optional<std::pair<u64, int>> prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return std::make_pair(f[0].prime, f[0].exponent);
}

int vp(i64 x, u64 p) {
  if (x == 0) throw InvalidInput("vp of zero");
  u64 a = x < 0 ? static_cast<u64>(-(x + 1)) + 1 : static_cast<u64>(x);
  return vp_u(a, p);
}

int vp_u(u64 x, u64 p) {
  if (x == 0) throw InvalidInput("vp of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 inv_mod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
  }
  if (old_r != 1) throw InvalidInput("inv_mod: not invertible");
  return mod(old_s, m);
}

u64 ipow(u64 b, int e) {
  u128 r = ipow128(b, e);
  if (r > std::numeric_limits<u64>::max()) throw EffortBoundExceeded("ipow overflow");
  return static_cast<u64>(r);
}

u128 ipow128(u64 b, int e) {
  u128 r = 1;
  const u128 lim = (static_cast<u128>(1) << 127);
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > lim / b) throw EffortBoundExceeded("power exceeds 127 bits");
    r *= b;
  }
  return r;
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

int moebius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

} // namespace forge
