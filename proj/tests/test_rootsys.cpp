#include "forge/rootsys.hpp"
#include "forge/toraldata.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace forge;

namespace {

int literal_coxeter(Family f, int s) {
  switch (f) {
    case Family::A: return s + 1;
    case Family::B: return 2 * s;
    case Family::C: return 2 * s;
    case Family::D: return 2 * s - 2;
    case Family::E: return s == 6 ? 12 : s == 7 ? 18 : 30;
    case Family::F: return 12;
    case Family::G: return 6;
  }
  return 0;
}

int literal_cartan_det(Family f, int s) {
  switch (f) {
    case Family::A: return s + 1;
    case Family::B:
    case Family::C: return 2;
    case Family::D: return 4;
    case Family::E: return 9 - s;
    default: return 1;
  }
}

// Closure of the simple reflections.
size_t weyl_group_order(const RootSystem& rs) {
  std::set<std::vector<std::int64_t>> seen{IntMatrix::identity(rs.rank()).data()};
  std::vector<IntMatrix> frontier{IntMatrix::identity(rs.rank())};
  while (!frontier.empty()) {
    std::vector<IntMatrix> next;
    for (const auto& g : frontier)
      for (int i = 1; i <= rs.rank(); ++i) {
        IntMatrix h = simple_reflection(rs, i) * g;
        if (seen.insert(h.data()).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

std::vector<std::int64_t> image(const WeylElement& w, int i) {
  std::vector<std::int64_t> e(6, 0);
  e[i - 1] = 1;
  return weyl_apply(w, Coroot{e}).expansion;
}

} // namespace

TEST(RootSys, CoxeterTableAndRootCount) {
  for (const auto& t : irreducible_types(8)) {
    RootSystem rs = build_root_system(t);
    const int h = coxeter_number(t);
    EXPECT_EQ(h, literal_coxeter(t.family, t.rank)) << t.name();
    EXPECT_EQ(static_cast<int>(rs.positive_coroots().size()) * 2, t.rank * h) << t.name();
    EXPECT_EQ(rs.highest_coroot().height(), h - 1) << t.name();
    EXPECT_EQ(determinant(to_big(rs.cartan)), literal_cartan_det(t.family, t.rank)) << t.name();
  }
}

TEST(RootSys, TypeListAndParsing) {
  auto types = irreducible_types(8);
  // A1..8, B2..8, C3..8, D4..8, E6..8, F4, G2
  EXPECT_EQ(types.size(), 8u + 7u + 6u + 5u + 3u + 1u + 1u);
  EXPECT_EQ(RootSystemType::parse("E7").name(), "E7");
  EXPECT_FALSE(is_valid(RootSystemType{Family::E, 5}));
  EXPECT_EQ(coxeter_number(std::vector<RootSystemType>{}), 1);
  EXPECT_EQ(coxeter_number({RootSystemType{Family::A, 2}, RootSystemType{Family::G, 2}}), 6);
}

TEST(RootSys, WeylGroupOrdersByEnumeration) {
  std::map<std::string, size_t> expected{{"A3", 24}, {"B3", 48}, {"G2", 12}, {"D4", 192}, {"F4", 1152}};
  for (const auto& [name, order] : expected)
    EXPECT_EQ(weyl_group_order(build_root_system(RootSystemType::parse(name))), order) << name;
}

TEST(RootSys, ReflectionsPermuteCoroots) {
  for (const auto& t : irreducible_types(6)) {
    RootSystem rs = build_root_system(t);
    for (int i = 1; i <= rs.rank(); ++i) EXPECT_TRUE(permutes_coroots(rs, simple_reflection(rs, i)));
    WeylElement c = coxeter_element(rs);
    EXPECT_EQ(weyl_order(c), coxeter_number(t)) << t.name();
    EXPECT_TRUE(is_elliptic(c));
    WeylElement w0 = longest_element(rs);
    EXPECT_EQ(weyl_order(w0), 2);
  }
}

TEST(RootSys, MinusOneInWeylGroup) {
  auto has = [](const char* n) {
    RootSystem rs = build_root_system(RootSystemType::parse(n));
    return minus_one_in_W_delta(rs, trivial_automorphism(rs));
  };
  EXPECT_TRUE(has("B3"));
  EXPECT_TRUE(has("D4"));
  EXPECT_TRUE(has("E7"));
  EXPECT_FALSE(has("A2"));
  EXPECT_FALSE(has("D5"));
  EXPECT_FALSE(has("E6"));
  RootSystem e6 = build_root_system(RootSystemType::parse("E6"));
  EXPECT_TRUE(minus_one_in_W_delta(e6, diagram_involution(e6)));
}

TEST(RootSys, E6CoxeterElementAndItsFourthPower) {
  RootSystem e6 = build_root_system(RootSystemType::parse("E6"));
  WeylElement wh = e6_coxeter_wh(e6);
  EXPECT_EQ(weyl_order(wh), 12);
  EXPECT_EQ(cyclotomic_exponents(wh, 12), (std::vector<int>{1, 4, 5, 7, 8, 11}));
  WeylElement w = weyl_power(wh, 4);
  EXPECT_TRUE(is_elliptic(w));
  using V = std::vector<std::int64_t>;
  EXPECT_EQ(image(w, 1), (V{-1, -1, -1, -1, 0, 0}));
  EXPECT_EQ(image(w, 2), (V{1, 0, 1, 1, 1, 1}));
  EXPECT_EQ(image(w, 3), (V{1, 1, 1, 2, 1, 0}));
  EXPECT_EQ(image(w, 4), (V{-1, -1, -2, -3, -2, -1}));
  EXPECT_EQ(image(w, 5), (V{0, 1, 1, 2, 1, 1}));
  EXPECT_EQ(image(w, 6), (V{0, -1, 0, -1, -1, -1}));
}

TEST(RootSys, E6FamiliesCoverPositiveCoroots) {
  RootSystem e6 = build_root_system(RootSystemType::parse("E6"));
  std::set<std::vector<std::int64_t>> listed;
  auto fams = e6_positive_families();
  EXPECT_EQ(fams.size(), 13u);
  for (const auto& f : fams)
    for (const auto& c : f) {
      EXPECT_TRUE(e6.contains(c));
      listed.insert(c);
    }
  EXPECT_EQ(listed.size(), 36u);
}
