// Worked examples for each operation, with small independent oracles.
#include "cli.hpp"
#include "forge/congruence.hpp"
#include "forge/cuspcheck.hpp"
#include "forge/depthcalc.hpp"
#include "forge/error.hpp"
#include "forge/serialize.hpp"
#include "forge/toraldata.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace forge;

namespace {

RootSystem rs_of(const char* n) { return build_root_system(RootSystemType::parse(n)); }

std::vector<std::int64_t> e(int rank, int i) {
  std::vector<std::int64_t> v(rank, 0);
  v[i - 1] = 1;
  return v;
}

ZeroToralDatum datum(const char* type, u64 p, int n, Ramification pref = Ramification::automatic) {
  RootSystem rs = rs_of(type);
  return build_generic_element(rs.type, trivial_automorphism(rs), p, p, n, pref);
}

// reflection closure of the simple coroots
size_t closure_size(const RootSystem& rs) {
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> todo;
  for (int i = 1; i <= rs.rank(); ++i) {
    seen.insert(e(rs.rank(), i));
    todo.push_back(e(rs.rank(), i));
  }
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    for (int i = 1; i <= rs.rank(); ++i) {
      auto w = simple_reflection(rs, i).apply(v);
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  return seen.size();
}

} // namespace

TEST(Examples, CorootCounts) {
  EXPECT_EQ(rs_of("A2").coroots.size(), 6u);
  EXPECT_EQ(closure_size(rs_of("A2")), 6u);
  EXPECT_EQ(rs_of("E6").coroots.size(), 72u);
  EXPECT_EQ(closure_size(rs_of("E6")), 72u);
  EXPECT_EQ(rs_of("D5").coroots.size(), 40u);
  EXPECT_EQ(closure_size(rs_of("D5")), 40u);
}

TEST(Examples, WeylWords) {
  RootSystem a2 = rs_of("A2");
  EXPECT_EQ(weyl_from_word(a2, {}).matrix, IntMatrix::identity(2));
  EXPECT_EQ(weyl_order(weyl_from_word(a2, {1, 2})), 3);
  EXPECT_EQ(weyl_order(weyl_from_word(rs_of("E6"), {2, 3, 5, 1, 4, 6})), 12);
  WeylElement id{IntMatrix::identity(6), std::nullopt};
  EXPECT_EQ(weyl_apply(id, Coroot{e(6, 1)}).expansion, e(6, 1));
  EXPECT_EQ(weyl_order(id), 1);
  EXPECT_FALSE(is_elliptic(id));
  EXPECT_TRUE(is_elliptic(WeylElement{-IntMatrix::identity(3), std::nullopt}));
  EXPECT_EQ(cyclotomic_exponents(id, 1), (std::vector<int>(6, 0)));
  EXPECT_EQ(cyclotomic_exponents(coxeter_element(a2), 3), (std::vector<int>{1, 2}));
  for (int N = 1; N <= 8; ++N) EXPECT_EQ(weyl_order(coxeter_element(build_root_system({Family::A, N}))), N + 1);
}

TEST(Examples, DCoxeterElementShiftsCoroots) {
  for (int s : {5, 7}) {
    RootSystem d = build_root_system({Family::D, s});
    WeylElement c = coxeter_element(d);
    for (int i = 1; i <= s - 3; ++i) EXPECT_EQ(weyl_apply(c, Coroot{e(s, i)}).expansion, e(s, i + 1));
  }
}

TEST(Examples, LongestElementB2) {
  RootSystem b2 = rs_of("B2");
  EXPECT_EQ(longest_element(b2).matrix, -IntMatrix::identity(2));
  EXPECT_TRUE(minus_one_in_W_delta(b2, trivial_automorphism(b2)));
}

TEST(Examples, FieldConstruction) {
  FieldExtension f25(5, 1, 2);
  EXPECT_EQ(f25.size(), 25u);
  EXPECT_EQ(f25.frobenius(f25.x()), f25.pow(f25.x(), 5));
  FieldExtension f38(3, 1, 8);
  for (u128 i = 1; i < 6561; i += 997) EXPECT_EQ(f38.frobenius(f38.from_index(i), 8), f38.from_index(i));
  auto t0 = std::chrono::steady_clock::now();
  FieldExtension f118(11, 1, 8);
  EXPECT_TRUE(is_irreducible(11, f118.modulus()));
  EXPECT_EQ(f118.frobenius(f118.x(), 8), f118.x());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
  FieldExtension f9(3, 1, 2);
  EXPECT_EQ(frobenius(f9, f9.x(), 0), f9.x());
  EXPECT_EQ(f9.frobenius(f9.generator()), f9.pow(f9.generator(), 3));
  FFElem two = f9.from_int(2);
  EXPECT_EQ(f9.frobenius(two, 5), two);
}

TEST(Examples, TraceZeroWitnesses) {
  FieldExtension f9(3, 1, 2);
  FFElem w = find_trace_zero_generator(f9);
  EXPECT_TRUE(f9.is_zero(f9.trace(w)));
  EXPECT_EQ(f9.orbit_size(w), 2);
  int found = 0;
  for (u128 i = 1; i < 9; ++i) {
    FFElem x = f9.from_index(i);
    found += f9.is_zero(f9.add(x, f9.pow(x, 3))) && f9.pow(x, 3) != x;
  }
  EXPECT_EQ(found, 2);
  FieldExtension f125(5, 1, 3);
  FFElem v = find_trace_zero_generator(f125);
  EXPECT_FALSE(f125.is_zero(v));
  EXPECT_TRUE(f125.is_zero(f125.add(v, f125.add(f125.pow(v, 5), f125.pow(v, 25)))));
  EXPECT_NE(f125.pow(v, 5), v);
  EXPECT_THROW(find_trace_zero_generator(FieldExtension(2, 1, 2)), PreconditionError);
}

TEST(Examples, GeneratorPowers) {
  FieldExtension k(3, 1, 8);
  EXPECT_EQ(generator_power(k, 0), k.one());
  const u128 Q = 6561 - 1;
  // sigma^4 (zeta^{(3^4+1)/2}) = zeta^{3^4 (3^4+1)/2} = -zeta^{(3^4+1)/2}
  FFElem a = generator_power(k, (81 + 1) / 2);
  EXPECT_EQ(k.frobenius(a, 4), k.neg(a));
  EXPECT_EQ(static_cast<u64>((u128(41) * 81) % Q), static_cast<u64>((u128(41) + Q / 2) % Q));
  FFElem b = generator_power(k, Q / 4);
  EXPECT_EQ(k.frobenius(b), k.neg(b));
}

TEST(Examples, CaseOneUnramifiedB2) {
  ZeroToralDatum d = datum("B2", 5, 1);
  EXPECT_EQ(d.case_label, "Case1-unram");
  EXPECT_EQ(d.depth, Rational(2));
  const auto& k = d.ext.residue;
  for (const auto& c : d.coords) {
    EXPECT_EQ(c, d.coords[0]);
    EXPECT_EQ(k.frobenius(c), k.neg(c));
  }
  GenericityReport r = verify_datum(d);
  EXPECT_EQ(r.coroots.size(), 8u);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(d.cocycle.matrix * d.delta.matrix(), -IntMatrix::identity(2));
}

TEST(Examples, CaseAAndNegativeControl) {
  ZeroToralDatum d = datum("A2", 5, 1);
  EXPECT_EQ(d.case_label, "A");
  const auto& k = d.ext.residue;
  for (int i = 0; i < 2; ++i) EXPECT_EQ(d.coords[i], k.frobenius(d.coords[0], i));
  EXPECT_TRUE(verify_galois_descent(d).descent_pass());
  // swap in an element of nonzero trace
  FFElem b;
  for (u128 i = 1; i < k.size(); ++i) {
    b = k.from_index(i);
    if (!k.is_zero(k.trace(b)) && k.orbit_size(b) == 3) break;
  }
  ZeroToralDatum bad = d;
  for (int i = 0; i < 2; ++i) bad.coords[i] = k.frobenius(b, i);
  GenericityReport r = verify_galois_descent(bad);
  EXPECT_FALSE(r.descent_pass());
  for (const auto& row : r.descent) EXPECT_EQ(row.pass, row.index != 2);
  ZeroToralDatum zero = d;
  for (auto& c : zero.coords) c = k.zero();
  GenericityReport z = verify_genericity(zero);
  EXPECT_EQ(z.failing_coroots().size(), z.coroots.size());
}

TEST(Examples, E6RamifiedCoordinates) {
  ZeroToralDatum d = datum("E6", 13, 1, Ramification::ramified);
  EXPECT_EQ(d.case_label, "E6-ram");
  EXPECT_EQ(d.depth, Rational(4, 3));
  const auto& k = d.ext.residue;
  const FFElem& z = d.twist;
  EXPECT_EQ(k.pow(z, 3), k.one());
  EXPECT_NE(z, k.one());
  auto lin = [&](i64 c1, i64 c2) { return k.add(k.from_int(c1), k.scale(z, c2)); };
  std::vector<FFElem> expect{lin(2, 0), lin(1, 0), lin(-4, -2), lin(1, 0), lin(1, 0), lin(0, 3)};
  EXPECT_EQ(d.coords, expect);
  EXPECT_TRUE(verify_galois_descent(d).descent_pass());
}

TEST(Examples, D7FamiliesAtSeventeen) {
  ZeroToralDatum d = datum("D7", 17, 1);
  const auto& k = d.ext.residue;
  auto fams = dodd_families(7);
  EXPECT_EQ(fams.size(), 5u);
  for (const auto& [name, list] : fams)
    for (const auto& c : list) {
      FFElem s = k.zero();
      for (int i = 0; i < 7; ++i) s = k.add(s, k.scale(d.coords[i], c[i]));
      EXPECT_FALSE(k.is_zero(s)) << name;
    }
  EXPECT_EQ(verify_genericity(d).coroots.size(), 84u);
}

TEST(Examples, RestrictionAndAssembly) {
  EXPECT_EQ(restriction_depth(1, Rational(5, 2)), Rational(5, 2));
  Rational r = restriction_depth(2, Rational(3));
  EXPECT_EQ(r, Rational(3, 2));
  EXPECT_TRUE(Rational(1) < r && r <= Rational(2));
  Rational r3 = restriction_depth(3, Rational(4));
  EXPECT_EQ(r3, Rational(4, 3));
  FieldExtension k(7, 1, 1);
  OneToralDatum one = assemble_one_toral({{"x", Rational(3, 2), {k.one()}, k}});
  EXPECT_EQ(one.depths.size(), 1u);
  OneToralDatum eq = assemble_one_toral({{"x", Rational(3, 2), {k.one()}, k}, {"y", Rational(3, 2), {k.one()}, k}});
  EXPECT_EQ(eq.groups.size(), 1u);
  OneToralDatum three = assemble_one_toral({{"z", Rational(19, 10), {k.one()}, k},
                                            {"x", Rational(6, 5), {k.one()}, k},
                                            {"y", Rational(3, 2), {k.one()}, k}});
  ASSERT_EQ(three.depths.size(), 3u);
  EXPECT_EQ(three.groups, (std::vector<std::vector<std::string>>{{"x"}, {"y"}, {"z"}}));
  ASSERT_EQ(three.chain.size(), 4u);
  EXPECT_EQ(three.chain[2], (std::vector<std::string>{"x", "y"}));
}

TEST(Examples, TwistArithmetic) {
  ZeroToralDatum d = datum("B2", 5, 3);
  const auto& k = d.ext.residue;
  TwistResult u = twist_datum(d, 3, 2, 1);
  EXPECT_EQ(u.datum.depth, d.depth);
  EXPECT_EQ(u.datum.coords[0], k.scale(d.coords[0], 3));
  TwistResult t = twist_datum(d, 5, 2, 1);
  EXPECT_EQ(t.datum.depth, d.depth - 1);
  EXPECT_TRUE(t.window_ok);
  EXPECT_GT(t.datum.depth, Rational(2));
  EXPECT_THROW(twist_datum(d, 25, 2, 1), PreconditionError);
}

TEST(Examples, LevelWindowsAndOrders) {
  EXPECT_EQ(level_window(1, 1).n, 1);
  EXPECT_EQ(level_window(1, 2).n, 3);
  EXPECT_EQ(level_window(2, 1).n, 3);
  FilteredLattice lat{5, 1, Rational(0), 1, 1};
  EXPECT_EQ(character_image_order(Rational(2), lat).order, 5u);
  EXPECT_EQ(character_image_order(Rational(4), lat).order, 25u);
  FilteredLattice half{5, 1, Rational(1, 2), 1, 1};
  EXPECT_EQ(character_image_order(Rational(1), half).order, 1u);
}

TEST(Examples, FactorAndProductMaps) {
  FilteredLattice lat{3, 1, Rational(0), 1, 1};
  LevelMap m1 = factor_level_map(Rational(2), lat, 1, {1});
  EXPECT_TRUE(m1.surjective());
  EXPECT_EQ(m1.domain_order, 3u);
  LevelMap m2 = factor_level_map(Rational(4), lat, 2, {1});
  EXPECT_TRUE(m2.surjective());
  // kernel index = image order
  EXPECT_EQ(m2.image_order(), 9u);
  EXPECT_THROW(factor_level_map(Rational(4), lat, 2, {0}), PreconditionError);
  LevelMap single = combine_product({m2});
  EXPECT_EQ(single.images, m2.images);
  LevelMap zero{3, 2, {"z"}, {9}, {0}, 9, false};
  EXPECT_EQ(zero.image_order(), 1u);
  EXPECT_TRUE(combine_product({m2, zero}).surjective());
  for (auto [q, m, K] : {std::tuple{5u, 1, 3}, {5u, 2, 4}}) {
    LevelMap t = torus_power_filtration(q, 1, m, K);
    EXPECT_EQ(t.image_order(), ipow(5, m));
  }
}

TEST(Examples, AmRingReductions) {
  AmRing R = am_ring(3, 1, 3);
  EXPECT_EQ(psi_character(R, 0), am_one(R));
  AmElement T = psi_character(R, 1);
  EXPECT_EQ(am_mul(R, am_mul(R, T, T), T), am_one(R));
  EXPECT_EQ(am_mod_T_minus_1(R, am_sub(R, T, am_one(R))), 0u);
  // T^2 = -1 - T
  EXPECT_EQ(am_mul(R, T, T), am_from(R, {-1, -1}));
}

TEST(Examples, EquivariantDimensions) {
  FiniteModel model = builtin_model("heisenberg", 3, 1);
  EquivariantSpace triv = build_space(model, coeff_trivial(model, 1));
  OrbitData od = build_orbits(model);
  const int U = static_cast<int>(model.u_s.size() * model.u_p.size());
  EXPECT_EQ(triv.dimension, od.z_count / U);
  EXPECT_EQ(build_space(model, coeff_am_quotient(model)).length, triv.length);
  FiniteModel nonfree = builtin_model("heisenberg-nonfree", 3, 1);
  EquivariantSpace psi = build_space(nonfree, coeff_am_psi(nonfree));
  EXPECT_FALSE(psi.full());
  bool proper = false;
  for (int r : psi.orbit_rank) proper = proper || r < 2;
  EXPECT_TRUE(proper);
}

TEST(Examples, HeckeOperators) {
  FiniteModel model = builtin_model("heisenberg", 3, 1);
  EquivariantSpace space = build_space(model, coeff_trivial(model, 1));
  HeckeOperator id = hecke_operator(model, model.gamma_s.identity());
  EXPECT_EQ(id.coset_reps.size(), 1u);
  EXPECT_EQ(hecke_matrix(model, space, id), IntMatrix::identity(space.orbits.orbits.size()));
  HeckeOperator c3 = hecke_operator(model, model.gamma_s.index_of({1, 2, 0}));
  EXPECT_EQ(c3.coset_reps.size(), 2u);
  FiniteModel zero = builtin_model("heisenberg-zero", 3, 1);
  EXPECT_TRUE(verify_congruence_theorem(zero, 1).pass);
  EXPECT_TRUE(quotient_map_check(zero));
}

TEST(Examples, FreeModelComponentRanks) {
  FiniteModel model = builtin_model("heisenberg", 3, 2);
  DecompositionReport d = decompose_rational(model);
  ASSERT_EQ(d.components.size(), 2u);
  for (const auto& c : d.components) EXPECT_EQ(c.rank, d.trivial_dimension);
}

TEST(Examples, NonconstantEdgeCases) {
  FiniteModel cyc = builtin_model("cyclic", 3, 1);
  NonconstantReport triv = nonconstant_check(cyc, {IntMatrix::identity(2)}, 2);
  ASSERT_TRUE(triv.congruence);
  EXPECT_EQ(triv.congruence->N, 2);
  EXPECT_TRUE(triv.pass);
  NonconstantReport sign = nonconstant_check(builtin_model("sign", 3, 1), builtin_vmodule("sign", 3), 1);
  EXPECT_TRUE(sign.shrink);
}

TEST(Examples, ExpAndBch) {
  const u64 p = 5;
  const int K = 10, n = 2;
  EXPECT_EQ(exp_truncated(TruncatedMatrix::from(p, K, {0, 0, 0, 0})), TruncatedMatrix::identity(p, K));
  TruncatedMatrix X = TruncatedMatrix::from(p, K, {25, 50, 75, -25});
  TruncatedMatrix Y = TruncatedMatrix::from(p, K, {0, 125, 25, 0});
  TruncatedMatrix Z = tm_sub(log_truncated(tm_mul(exp_truncated(X), exp_truncated(Y))), tm_add(X, Y));
  EXPECT_GE(Z.valuation(), 2 * n);
  EXPECT_TRUE(Z.is_trace_zero());
}

TEST(Examples, LambdaAtLevelFour) {
  EllipticSeed s = elliptic_seed(5, 8);
  LambdaChar lc = lambda_character(s, 4, 2, 100);
  EXPECT_TRUE(lc.homomorphism);
  EXPECT_TRUE(lc.surjective);
}

TEST(Examples, CuspSupports) {
  EllipticSeed s = elliptic_seed(5, 8);
  TruncatedMatrix diag = TruncatedMatrix::from(5, 8, {2, 0, 0, inv_mod(2, 390625)});
  CuspReport empty = cusp_integral_check(s, 3, 1, {1}, {diag});
  for (const auto& row : empty.rows) {
    EXPECT_EQ(row.support, 0);
    EXPECT_TRUE(row.zero);
  }
  CuspReport id = cusp_integral_check(s, 4, 1, {1}, {TruncatedMatrix::identity(5, 8)});
  EXPECT_TRUE(id.pass);
  EXPECT_THROW(cusp_integral_check(s, 4, 1, {5}, {TruncatedMatrix::identity(5, 8)}), InvalidInput);
}

TEST(Examples, CliTamperedRowIsReported) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "forge_examples";
  fs::create_directories(dir);
  std::ostringstream out, err;
  ASSERT_EQ(run({"build", "--type", "E6", "--p", "13", "--n", "1", "--ramified", "-o", (dir / "e6.json").string()}, out, err), 0);
  std::ifstream in(dir / "e6.json");
  Json j = Json::parse(in);
  j["coords"][0] = std::vector<u64>{0};
  std::ofstream(dir / "tampered.json") << j.dump();
  std::ostringstream vout, verr;
  EXPECT_EQ(run({"verify", (dir / "tampered.json").string()}, vout, verr), 1);
  EXPECT_NE(vout.str().find("genericity FAIL coroot"), std::string::npos);
}
