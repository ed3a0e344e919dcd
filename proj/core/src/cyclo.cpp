#include "forge/cyclo.hpp"

#include "forge/error.hpp"

#include <algorithm>

namespace forge {

CycloVec cyclo_zero(u64 p, int k) {
  if (!is_prime(p) || k < 1) throw InvalidInput("cyclo: need a prime p and k >= 1");
  CycloVec v;
  v.p = p;
  v.k = k;
  v.c.assign(ipow(p, static_cast<u64>(k)), 0);
  return v;
}

u64 cyclo_order(const CycloVec& v) { return v.c.size(); }

void cyclo_add_root(CycloVec& v, u64 e, i64 mult) { v.c[e % v.c.size()] += mult; }

CycloVec cyclo_add(const CycloVec& a, const CycloVec& b) {
  if (a.p != b.p || a.k != b.k) throw InvalidInput("cyclo: mismatched rings");
  CycloVec out = a;
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

CycloVec cyclo_mul(const CycloVec& a, const CycloVec& b) {
  if (a.p != b.p || a.k != b.k) throw InvalidInput("cyclo: mismatched rings");
  CycloVec out = cyclo_zero(a.p, a.k);
  const size_t N = a.c.size();
  for (size_t i = 0; i < N; ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < N; ++j)
      if (b.c[j] != 0) out.c[(i + j) % N] += a.c[i] * b.c[j];
  }
  return out;
}

CycloVec cyclo_canonical(const CycloVec& v) {
  CycloVec out = v;
  const u64 N = v.c.size();
  const u64 step = N / v.p;
  for (u64 r = 0; r < step; ++r) {
    i64 lo = out.c[r];
    for (u64 j = 1; j < v.p; ++j) lo = std::min(lo, out.c[r + j * step]);
    for (u64 j = 0; j < v.p; ++j) out.c[r + j * step] -= lo;
  }
  return out;
}

bool cyclo_is_zero(const CycloVec& v) {
  auto c = cyclo_canonical(v);
  return std::all_of(c.c.begin(), c.c.end(), [](i64 x) { return x == 0; });
}

bool cyclo_is_integer(const CycloVec& v, i64* value) {
  // a * zeta^0 has canonical form a at 0 if a >= 0, and -a on the rest of the class otherwise
  auto c = cyclo_canonical(v);
  const u64 step = c.c.size() / c.p;
  for (u64 e = 0; e < c.c.size(); ++e)
    if (e % step != 0 && c.c[e] != 0) return false;
  i64 at0 = c.c[0];
  for (u64 j = 1; j < c.p; ++j)
    if (c.c[j * step] != (at0 == 0 ? c.c[step] : 0)) return false;
  if (value) *value = at0 != 0 ? at0 : -c.c[step];
  return true;
}

} // namespace forge
