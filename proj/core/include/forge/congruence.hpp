#pragma once

#include "forge/groups.hpp"
#include "forge/intlinalg.hpp"
#include "forge/numtheory.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forge {

// Z_p[T] / (1 + T + ... + T^{p^m - 1}) with coefficients mod p^K.
struct AmRing {
  u64 p = 3;
  int m = 1;
  int K = 1;
  int rank = 2;  // p^m - 1
  i64 pk = 3;
};

struct AmElement {
  std::vector<i64> c;  // basis 1, T, ..., T^{rank-1}
  friend bool operator==(const AmElement&, const AmElement&) = default;
};

AmRing am_ring(u64 p, int m, int K);
AmElement am_zero(const AmRing& R);
AmElement am_one(const AmRing& R);
AmElement am_from(const AmRing& R, std::vector<i64> coeffs);
AmElement am_add(const AmRing& R, const AmElement& x, const AmElement& y);
AmElement am_sub(const AmRing& R, const AmElement& x, const AmElement& y);
AmElement am_mul(const AmRing& R, const AmElement& x, const AmElement& y);
AmElement psi_character(const AmRing& R, i64 a);  // T^a
u64 am_mod_T_minus_1(const AmRing& R, const AmElement& x);  // T -> 1, in Z/p^{min(m,K)}

// Integer matrix of multiplication by T^a on A_m (exact, over Z).
IntMatrix am_power_matrix(u64 p, int m, i64 a);

struct FiniteModel {
  std::string name;
  u64 p = 3;
  int m = 1;
  FiniteGroup gamma_s = FiniteGroup::cyclic(1);
  FiniteGroup gamma_p = FiniteGroup::cyclic(1);
  std::vector<int> u_s_gens, u_p_gens;
  std::vector<u64> lambda_images;  // lambda(u_p_gens[i]) in Z/p^m
  std::vector<std::pair<int, int>> delta_gens;

  // derived by finalize_model
  std::vector<int> u_s, u_p;
  std::map<int, u64> lambda;  // on U_p
  std::vector<int> delta;     // product indices s * |Gamma_p| + t
};

// Computes subgroups and the lambda table; throws when lambda is not a homomorphism.
void finalize_model(FiniteModel& model);

// Built-in models: "heisenberg" (free U_p-action), "heisenberg-nonfree",
// "heisenberg-zero" (lambda = 0), "cyclic" (Gamma_p = U_p = Z/p^m).
// "cyclic-v" (Gamma_p = U_p = Z/p^2) and "sign" (Gamma_p = U_p = Z/2, lambda = 0)
// carry the coefficient modules returned by builtin_vmodule.
FiniteModel builtin_model(const std::string& name, u64 p, int m);
std::vector<IntMatrix> builtin_vmodule(const std::string& name, u64 p);
FiniteModel model_from_json(const nlohmann::json& j);

struct Orbit {
  int rep = 0;                // z index of the representative
  std::vector<int> members;   // z indices
  std::vector<int> stab_p;    // U_p-components of the stabiliser of rep in U
};

// Z = Delta \ (Gamma_S x Gamma_p) with the right U-action, orbit data and transports.
struct OrbitData {
  int z_count = 0;
  std::vector<int> class_of;  // product index -> z
  std::vector<int> rep_elem;  // z -> product index of a representative
  std::vector<Orbit> orbits;
  std::vector<int> orbit_of;            // z -> orbit
  std::vector<std::pair<int, int>> transport;  // z -> (u_S, u_p) with z = rep . u
  bool free_p_action = true;            // every stabiliser meets U_p trivially
};

OrbitData build_orbits(const FiniteModel& model);

enum class CoeffKind { trivial, am_psi, am_quotient, vmodule };

struct Coefficients {
  CoeffKind kind = CoeffKind::trivial;
  int rank = 1;
  u64 modulus = 0;                 // 0: exact over Z
  std::map<int, IntMatrix> rho;    // U_p index -> matrix
};

Coefficients coeff_trivial(const FiniteModel& model, int N);
Coefficients coeff_am_psi(const FiniteModel& model);
Coefficients coeff_am_quotient(const FiniteModel& model);
// Matrices for the U_p generators, entries mod `modulus`.
Coefficients coeff_vmodule(const FiniteModel& model, const std::vector<IntMatrix>& gens, u64 modulus);

struct EquivariantSpace {
  OrbitData orbits;
  Coefficients coeff;
  std::vector<int> orbit_length;  // log_p |fixed module| per orbit (modular coefficients)
  std::vector<int> orbit_rank;    // Z-rank of the fixed lattice per orbit (exact coefficients)
  std::vector<BigMatrix> orbit_basis;  // exact coefficients only
  int length = 0;     // log_p |M|
  int rank = 0;       // Z_p-rank (exact coefficients)
  int dimension = 0;  // number of free summands of the coefficient ring

  bool full() const;  // every orbit contributes its whole coefficient module
};

EquivariantSpace build_space(const FiniteModel& model, const Coefficients& coeff);
EquivariantSpace build_space(const FiniteModel& model, const OrbitData& od, const Coefficients& coeff);

struct HeckeOperator {
  int gamma = 0;                 // index in Gamma_S
  std::vector<int> coset_reps;   // U_S gamma U_S = union gamma_i U_S
};

HeckeOperator hecke_operator(const FiniteModel& model, int gamma);
std::vector<int> double_coset_reps(const FiniteModel& model);  // generating operators

// Matrix on the ambient orbit-representative coordinates (blocks of size coeff.rank),
// reduced mod coeff.modulus when it is nonzero.
IntMatrix hecke_matrix(const FiniteModel& model, const EquivariantSpace& space, const HeckeOperator& op);

struct OperatorCheck {
  std::string gamma;
  int cosets = 0;
  IntMatrix left, right;
  bool commutes = false;
};

struct CongruenceReport {
  std::string model;
  u64 p = 0;
  int m = 0, N = 0;
  int z_count = 0, orbit_count = 0;
  bool free_action = false;
  int left_length = 0, right_length = 0;
  bool left_action_trivial = false;
  bool induced_action_trivial = false;
  bool iso_bijective = false;
  std::vector<OperatorCheck> operators;
  bool pass = false;
};

CongruenceReport verify_congruence_theorem(const FiniteModel& model, int N);

struct ComponentRank {
  int k = 0;       // component Q(zeta_{p^k})
  int degree = 0;  // phi(p^k)
  int rank = 0;
};

struct DecompositionReport {
  std::vector<ComponentRank> components;
  int rational_dimension = 0;  // rank of M(U, A_m)
  int trivial_dimension = 0;   // number of U-orbits
  bool consistent = false;     // sum rank_k phi(p^k) == rational_dimension
};

DecompositionReport decompose_rational(const FiniteModel& model);

struct QuotientCheck {
  bool surjective = false;
  BigInt source_size;  // |M(U, A_m) / (T - 1)|
  BigInt target_size;  // |M(U, A_m / (T - 1))|
  bool isomorphism = false;
};

QuotientCheck quotient_map_details(const FiniteModel& model);
bool quotient_map_check(const FiniteModel& model);

struct NonconstantReport {
  int m = 0;
  int m_prime = 0;  // largest m' with trivial U_p-action on V / p^{m'}
  bool shrink = false;
  u64 kernel_order = 0;  // |ker(U_p -> GL(V / p^m))| when shrinking
  std::optional<CongruenceReport> congruence;
  bool pass = false;
};

NonconstantReport nonconstant_check(const FiniteModel& model, const std::vector<IntMatrix>& v_gens, int K);

// Z_p[alpha] / p^m versus Z/p^m[alpha bar] for alpha = [[1, p^m], [0, 1]].
struct HeckeQuotientExample {
  BigInt lifted_size;   // |Z_p[alpha] / (p^m)|
  BigInt reduced_size;  // |Z/p^m [alpha bar]|
};

HeckeQuotientExample hecke_quotient_example(u64 p, int m);

} // namespace forge
