#pragma once

#include "forge/numtheory.hpp"
#include "forge/toraldata.hpp"

#include <string>
#include <vector>

namespace forge {

struct LevelWindow {
  int n = 0;  // 2 e_F m - 1
  Rational lo, hi;  // the window (lo, hi]

  bool contains(const Rational& r) const { return lo < r && r <= hi; }
};

LevelWindow level_window(int e_F, int m);

// Filtration jumps are offset + k / jump_den for integers k; e_F is the
// absolute ramification index of F (so varpi_F^{e_F} ~ p).
struct FilteredLattice {
  u64 p = 3;
  int rank = 1;
  Rational offset = Rational(0);
  int jump_den = 1;
  int e_F = 1;

  Rational next_jump_above(const Rational& x) const;
};

struct ImageOrder {
  u64 order = 1;
  int exponent = 0;  // order = p^exponent
  Rational s_min;    // smallest jump strictly above r / 2
  std::int64_t t = -1;
  bool in_window = false;  // r lies in some level window (n, n+1]
  int window_m = 0;
  bool bound_ok = true;    // exponent == window_m when in_window
};

ImageOrder character_image_order(const Rational& r, const FilteredLattice& lat);

// A homomorphism from a finite abelian group onto (ideally) Z/p^m, given by
// images of a generating set.
struct LevelMap {
  u64 p = 3;
  int m = 1;
  std::vector<std::string> labels;
  std::vector<u64> orders;  // order of each generator in the domain
  std::vector<u64> images;  // in Z/p^m
  u64 domain_order = 1;
  bool table_verified = false;  // homomorphism checked against an explicit table

  u64 modulus() const { return ipow(p, m); }
  bool well_defined() const;
  u64 image_order() const;
  bool surjective() const { return image_order() == modulus(); }
};

// F = Q_p model: rank-k lattice with integer jumps, functional
// v -> sum_j coords[j] v_j / p^r. Throws on order mismatch.
LevelMap factor_level_map(const Rational& r, const FilteredLattice& lat, int m, const std::vector<std::int64_t>& coords);

LevelMap torus_power_filtration(u64 q, int e, int m, int K);

LevelMap combine_product(const std::vector<LevelMap>& maps);

} // namespace forge
