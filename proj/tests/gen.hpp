#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace forge::testing {

// Seeded generators shared by the property tests.
inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline std::vector<std::int64_t> vec(int n, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = uniform(lo, hi);
  return v;
}

} // namespace forge::testing
