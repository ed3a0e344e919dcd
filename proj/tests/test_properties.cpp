// Randomised invariants over the public operations.
#include "forge/congruence.hpp"
#include "forge/cuspcheck.hpp"
#include "forge/depthcalc.hpp"
#include "forge/ffield.hpp"
#include "forge/rootsys.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace forge;
using forge::testing::uniform;

namespace {

std::vector<int> type_exponents(const RootSystemType& t) {
  std::vector<int> e;
  const int s = t.rank;
  switch (t.family) {
    case Family::A:
      for (int i = 1; i <= s; ++i) e.push_back(i);
      break;
    case Family::B:
    case Family::C:
      for (int i = 1; i <= s; ++i) e.push_back(2 * i - 1);
      break;
    case Family::D:
      for (int i = 1; i <= s - 1; ++i) e.push_back(2 * i - 1);
      e.push_back(s - 1);
      break;
    case Family::E:
      if (s == 6) e = {1, 4, 5, 7, 8, 11};
      if (s == 7) e = {1, 5, 7, 9, 11, 13, 17};
      if (s == 8) e = {1, 7, 11, 13, 17, 19, 23, 29};
      break;
    case Family::F: e = {1, 5, 7, 11}; break;
    case Family::G: e = {1, 5}; break;
  }
  std::sort(e.begin(), e.end());
  return e;
}

TruncatedMatrix inverse(const TruncatedMatrix& h) {
  i64 d = inv_mod(tm_det(h), h.modulus());
  return tm_scale(TruncatedMatrix::from(h.p, h.K, {h.a[3], -h.a[1], -h.a[2], h.a[0]}), d);
}

} // namespace

TEST(Properties, WeylWordsPreserveCorootSet) {
  for (const auto& t : irreducible_types(6)) {
    RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> word;
      for (int i = 0; i < 8; ++i) word.push_back(static_cast<int>(uniform(1, rs.rank())));
      WeylElement w = weyl_from_word(rs, word);
      for (const auto& c : rs.coroots) EXPECT_TRUE(rs.contains(weyl_apply(w, c).expansion)) << t.name();
    }
  }
}

TEST(Properties, LongestElementNegatesPositiveCoroots) {
  for (const auto& t : irreducible_types(8)) {
    RootSystem rs = build_root_system(t);
    WeylElement w0 = longest_element(rs);
    int order = weyl_order(w0);
    EXPECT_TRUE(order == 1 || order == 2);
    std::set<std::vector<std::int64_t>> image;
    for (const auto& c : rs.positive_coroots()) {
      Coroot d = weyl_apply(w0, c);
      EXPECT_FALSE(d.positive()) << t.name();
      image.insert(d.expansion);
    }
    EXPECT_EQ(image.size(), rs.positive_coroots().size());
  }
}

TEST(Properties, CaseOneHeightsAreBounded) {
  for (const auto& t : irreducible_types(8)) {
    RootSystem rs = build_root_system(t);
    if (!minus_one_in_W_delta(rs, trivial_automorphism(rs))) continue;
    const int h = coxeter_number(t);
    for (const auto& c : rs.coroots) {
      std::int64_t m = c.height();
      EXPECT_TRUE(m != 0 && -h < m && m < h) << t.name();
    }
  }
}

TEST(Properties, CoxeterElementExponents) {
  for (const auto& t : irreducible_types(8)) {
    RootSystem rs = build_root_system(t);
    EXPECT_EQ(cyclotomic_exponents(coxeter_element(rs), coxeter_number(t)), type_exponents(t)) << t.name();
  }
}

TEST(Properties, FrobeniusFixesExactlyBaseField) {
  for (auto [p, f, n] : {std::tuple{2, 2, 3}, {3, 1, 4}, {5, 1, 2}, {7, 1, 3}, {3, 2, 2}}) {
    FieldExtension k(p, f, n);
    u64 fixed = 0;
    for (u128 i = 0; i < k.size(); ++i) {
      FFElem x = k.from_index(i);
      fixed += k.frobenius(x) == x;
      EXPECT_TRUE(k.in_base_field(k.trace(x)));
    }
    EXPECT_EQ(fixed, k.q());
  }
}

TEST(Properties, FrobeniusIsAdditiveAndMultiplicative) {
  FieldExtension k(7, 2, 3);
  for (int t = 0; t < 1000; ++t) {
    FFElem x = k.from_index(static_cast<u128>(uniform(0, static_cast<i64>(k.size() - 1))));
    FFElem y = k.from_index(static_cast<u128>(uniform(0, static_cast<i64>(k.size() - 1))));
    EXPECT_EQ(k.frobenius(k.add(x, y)), k.add(k.frobenius(x), k.frobenius(y)));
    EXPECT_EQ(k.frobenius(k.mul(x, y)), k.mul(k.frobenius(x), k.frobenius(y)));
  }
}

TEST(Properties, WitnessPartialOrbitSumsNonzero) {
  for (auto [p, f, n] : {std::tuple{5, 1, 3}, {7, 1, 4}, {3, 1, 5}, {13, 1, 6}, {11, 1, 7}, {2, 1, 9}}) {
    FieldExtension k(p, f, n);
    FFElem a = find_trace_zero_generator(k);
    FFElem s = a;
    for (int j = 1; j <= n - 2; ++j) {
      s = k.add(s, k.frobenius(a, j));
      EXPECT_FALSE(k.is_zero(s)) << p << "^" << n << " j=" << j;
    }
  }
}

TEST(Properties, ImageOrderMonotoneInDepth) {
  for (int e_F = 1; e_F <= 3; ++e_F)
    for (int den = 1; den <= 3; ++den) {
      FilteredLattice lat{3, 1, Rational(static_cast<std::int64_t>(uniform(0, den - 1)), den), den, e_F};
      u64 prev = 0;
      for (int k = 1; k <= 60; ++k) {
        u64 o = character_image_order(Rational(k, 4), lat).order;
        EXPECT_GE(o, prev);
        prev = o;
      }
    }
}

TEST(Properties, LevelMapCharacterOrder) {
  FilteredLattice lat{5, 3, Rational(0), 1, 1};
  for (int t = 0; t < 20; ++t) {
    auto c = forge::testing::vec(3, -100, 100);
    if (c[0] % 5 == 0) c[0] += 1;
    LevelMap lm = factor_level_map(Rational(4), lat, 2, c);
    // order of the character = largest additive order among generator images
    u64 order = 1;
    for (u64 v : lm.images) {
      u64 o = 1;
      while ((v * o) % 25 != 0) ++o;
      order = std::max(order, o);
    }
    EXPECT_EQ(order, lm.image_order());
  }
}

TEST(Properties, CombineProductIsSymmetric) {
  FilteredLattice lat{3, 1, Rational(0), 1, 1};
  std::vector<LevelMap> maps;
  for (i64 c : {1, 3, 4}) maps.push_back(factor_level_map(Rational(4), lat, 2, {c == 3 ? 10 : c}));
  auto key = [](const LevelMap& m) {
    std::multiset<u64> s(m.images.begin(), m.images.end());
    return std::make_tuple(m.domain_order, m.image_order(), s);
  };
  LevelMap abc = combine_product({combine_product({maps[0], maps[1]}), maps[2]});
  LevelMap cba = combine_product({maps[2], combine_product({maps[1], maps[0]})});
  EXPECT_EQ(key(abc), key(cba));
  EXPECT_EQ(key(abc), key(combine_product(maps)));
}

TEST(Properties, AmRingAxiomsAtFive) {
  for (int m : {1, 2}) {
    AmRing R = am_ring(5, m, m + 1);
    EXPECT_EQ(psi_character(R, static_cast<i64>(ipow(5, m))), am_one(R));
    for (int t = 0; t < 20; ++t) {
      auto rnd = [&] { return am_from(R, forge::testing::vec(R.rank, 0, R.pk - 1)); };
      AmElement x = rnd(), y = rnd(), z = rnd();
      EXPECT_EQ(am_mul(R, am_mul(R, x, y), z), am_mul(R, x, am_mul(R, y, z)));
      EXPECT_EQ(am_mul(R, am_add(R, x, y), z), am_add(R, am_mul(R, x, z), am_mul(R, y, z)));
    }
  }
}

TEST(Properties, HeckeActionIsDiagonalInN) {
  FiniteModel model = builtin_model("heisenberg", 3, 2);
  CongruenceReport one = verify_congruence_theorem(model, 1), two = verify_congruence_theorem(model, 2);
  ASSERT_EQ(one.operators.size(), two.operators.size());
  const int n = one.orbit_count;
  for (size_t i = 0; i < one.operators.size(); ++i) {
    const IntMatrix& a = one.operators[i].left;
    const IntMatrix& b = two.operators[i].left;
    ASSERT_EQ(b.rows(), 2 * n);
    for (int o = 0; o < n; ++o)
      for (int q = 0; q < n; ++q)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) EXPECT_EQ(b(2 * o + k, 2 * q + l), k == l ? a(o, q) : 0);
  }
}

TEST(Properties, FreeActionDimensionBookkeeping) {
  for (int m : {1, 2}) {
    FiniteModel model = builtin_model("heisenberg", 3, m);
    EquivariantSpace triv = build_space(model, coeff_trivial(model, 1));
    EquivariantSpace psi = build_space(model, coeff_am_psi(model));
    EXPECT_EQ(psi.rank, (static_cast<int>(ipow(3, m)) - 1) * triv.dimension);
    EXPECT_TRUE(psi.full());
  }
}

TEST(Properties, LambdaInvariantUnderTorusConjugation) {
  EllipticSeed s = elliptic_seed(5, 8);
  LambdaChar lc = lambda_character(s, 3, 1, 0);
  for (int t = 0; t < 40; ++t) {
    // h = a + b [[0, eps], [1, 0]] commutes with Y_1
    i64 a = uniform(0, 4), b = uniform(0, 4);
    if (a == 0 && b == 0) a = 1;
    TruncatedMatrix h = TruncatedMatrix::from(5, 8, {a, b * s.epsilon, b, a});
    i64 pn = 125;
    TruncatedMatrix X = TruncatedMatrix::from(5, 8, {uniform(0, 99) * pn, uniform(0, 99) * pn, uniform(0, 99) * pn, 0});
    X.a[3] = -X.a[0];
    TruncatedMatrix g = exp_truncated(X);
    TruncatedMatrix c = tm_mul(tm_mul(h, g), inverse(h));
    ASSERT_TRUE(in_congruence_subgroup(c, 3));
    EXPECT_EQ(lambda_value(lc, c), lambda_value(lc, g));
  }
}
