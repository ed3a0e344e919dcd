#pragma once

#include "forge/numtheory.hpp"

#include <vector>

namespace forge {

// Element of Z[zeta_{p^k}] stored as exponent counts: sum_e c[e] zeta^e.
struct CycloVec {
  u64 p = 3;
  int k = 1;
  std::vector<i64> c;
  friend bool operator==(const CycloVec&, const CycloVec&) = default;
};

CycloVec cyclo_zero(u64 p, int k);
u64 cyclo_order(const CycloVec& v);
void cyclo_add_root(CycloVec& v, u64 e, i64 mult = 1);  // += mult * zeta^e
CycloVec cyclo_add(const CycloVec& a, const CycloVec& b);
CycloVec cyclo_mul(const CycloVec& a, const CycloVec& b);

// Unique representative modulo the relations sum_j zeta^{r + j p^{k-1}} = 0:
// the minimum over each class {r + j p^{k-1}} is subtracted.
CycloVec cyclo_canonical(const CycloVec& v);
bool cyclo_is_zero(const CycloVec& v);
// Rational integer value when the canonical form is a multiple of zeta^0.
bool cyclo_is_integer(const CycloVec& v, i64* value = nullptr);

} // namespace forge
