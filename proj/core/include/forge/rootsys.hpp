#pragma once

#include "forge/intlinalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forge {

enum class Family { A, B, C, D, E, F, G };

struct RootSystemType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;  // "E6", "A2", ...
  static RootSystemType parse(const std::string& s);
  friend bool operator==(const RootSystemType&, const RootSystemType&) = default;
};

bool is_valid(const RootSystemType& t);

struct Coroot {
  std::vector<std::int64_t> expansion;  // simple-coroot coordinates
  std::int64_t height() const;          // sum of coefficients
  bool positive() const;
  friend bool operator==(const Coroot&, const Coroot&) = default;
};

struct RootSystem {
  RootSystemType type;
  // cartan(i, j) = a_ij = <alpha_j, coroot_i>, Bourbaki numbering, zero-based indices.
  IntMatrix cartan;
  std::vector<Coroot> coroots;  // lexicographic order on expansions

  int rank() const { return type.rank; }
  std::vector<std::vector<std::int64_t>> simple_coroots() const;
  std::vector<Coroot> positive_coroots() const;
  Coroot highest_coroot() const;
  bool contains(const std::vector<std::int64_t>& expansion) const;
};

struct WeylElement {
  IntMatrix matrix;  // acts on simple-coroot coordinates (columns are images)
  std::optional<std::vector<int>> word;
};

struct DiagramAutomorphism {
  std::vector<int> perm;  // zero-based: node i -> perm[i]
  IntMatrix matrix() const;
  bool trivial() const;
};

RootSystem build_root_system(const RootSystemType& t);

// Cox(G). An empty list means a torus; for products the maximum is taken.
int coxeter_number(const RootSystemType& t);
int coxeter_number(const std::vector<RootSystemType>& factors);

IntMatrix simple_reflection(const RootSystem& rs, int i);  // i one-based
WeylElement weyl_from_word(const RootSystem& rs, const std::vector<int>& word);
Coroot weyl_apply(const WeylElement& w, const Coroot& c);
WeylElement weyl_compose(const WeylElement& a, const WeylElement& b);
WeylElement weyl_power(const WeylElement& w, int k);
int weyl_order(const WeylElement& w, int bound = 1000);
bool is_elliptic(const WeylElement& w);
bool permutes_coroots(const RootSystem& rs, const IntMatrix& m);

// Exponents k (ascending, with multiplicity) with zeta_order^k an eigenvalue.
std::vector<int> cyclotomic_exponents(const WeylElement& w, int order);

WeylElement longest_element(const RootSystem& rs);
WeylElement coxeter_element(const RootSystem& rs);  // s_1 s_2 ... s_rank

DiagramAutomorphism trivial_automorphism(const RootSystem& rs);
// The standard nontrivial involution for A_N (N >= 2), D_n and E6.
DiagramAutomorphism diagram_involution(const RootSystem& rs);
DiagramAutomorphism d4_triality(const RootSystem& rs);
bool preserves_cartan(const RootSystem& rs, const DiagramAutomorphism& d);

bool minus_one_in_W_delta(const RootSystem& rs, const DiagramAutomorphism& delta);

// All irreducible types of rank <= max_rank, in table order.
std::vector<RootSystemType> irreducible_types(int max_rank);

} // namespace forge
