#pragma once

#include "forge/cyclo.hpp"
#include "forge/numtheory.hpp"

#include <array>
#include <string>
#include <vector>

namespace forge {

// p^{-offset} * [[a0, a1], [a2, a3]] with entries mod p^K.
struct TruncatedMatrix {
  u64 p = 5;
  int K = 1;
  int offset = 0;
  std::array<i64, 4> a{0, 0, 0, 0};

  static TruncatedMatrix identity(u64 p, int K);
  static TruncatedMatrix from(u64 p, int K, std::array<i64, 4> entries, int offset = 0);
  i64 modulus() const;
  int valuation() const;  // minimal entry valuation including the offset; K - offset for zero
  i64 trace() const;      // of the integral part
  bool is_trace_zero() const;
  friend bool operator==(const TruncatedMatrix&, const TruncatedMatrix&) = default;
};

TruncatedMatrix tm_add(const TruncatedMatrix& x, const TruncatedMatrix& y);
TruncatedMatrix tm_sub(const TruncatedMatrix& x, const TruncatedMatrix& y);
TruncatedMatrix tm_mul(const TruncatedMatrix& x, const TruncatedMatrix& y);
TruncatedMatrix tm_scale(const TruncatedMatrix& x, i64 c);
i64 tm_det(const TruncatedMatrix& x);  // integral matrices only, mod p^K

// exp and log on matrices with integral entries of valuation >= 1 (resp. x - 1 of valuation >= 1).
TruncatedMatrix exp_truncated(const TruncatedMatrix& X);
TruncatedMatrix log_truncated(const TruncatedMatrix& g);

struct EllipticSeed {
  u64 p = 5;
  int K = 3;
  i64 epsilon = 2;          // smallest nonsquare unit mod p
  TruncatedMatrix y1;       // p^{-1} [[0, eps], [1, 0]]
  int pairing_valuation = 0;   // min valuation of <Y_1, L_0> over a basis of L_0
  i64 residue_discriminant = 0;  // disc of the char poly of p Y_1, mod p
  bool discriminant_nonsquare = false;
  bool gram_unit = false;   // trace form on sl_2(Z_p) is perfect, so L_0^perp = L_0
  bool pass = false;
};

EllipticSeed elliptic_seed(u64 p, int K);

// Trace pairing <Y, X> in Q_p / Z_p, returned as numerator over p^{Y.offset + X.offset}.
struct PadicFraction {
  i64 num = 0;
  int den_exp = 0;  // value num / p^den_exp
};
PadicFraction trace_pairing(const TruncatedMatrix& Y, const TruncatedMatrix& X);

// Root of unity psi(y) as an exponent of zeta_{p^k}. The cusp checks use psi trivial on O and
// nontrivial on P^{-1}; the level arithmetic uses psi trivial on P and nontrivial on O.
struct RootOfUnity {
  int k = 0;     // order p^k
  u64 e = 0;
};
RootOfUnity psi_trivial_on_O(u64 p, const PadicFraction& y);
RootOfUnity psi_trivial_on_P(u64 p, const PadicFraction& y);

struct LambdaChar {
  u64 p = 5;
  int n = 0, m = 0, K = 0;
  i64 epsilon = 2;
  std::vector<TruncatedMatrix> generators;  // exp(p^n H), exp(p^n E), exp(p^n F)
  std::vector<u64> generator_values;
  int generator_pairs = 0, random_pairs = 0;
  bool homomorphism = false;
  bool surjective = false;
};

// lambda(exp X) = <Y_{n+m}, X> mod O, read in Z/p^m via y -> p^m y.
LambdaChar lambda_character(const EllipticSeed& seed, int n, int m, int random_pairs = 100, u64 rng_seed = 1);
u64 lambda_value(const LambdaChar& lc, const TruncatedMatrix& g);
bool in_congruence_subgroup(const TruncatedMatrix& g, int n);  // g in K_n = exp(p^n L_0)

enum class Parabolic { upper, lower };

struct CuspSample {
  std::string label;
  Parabolic parabolic = Parabolic::upper;
  u64 x = 1;
  int support = 0;  // number of cosets u with g u in K_n
  CycloVec sum;     // canonical form
  bool zero = false;
};

struct CuspReport {
  u64 p = 5;
  int n = 0, m = 0, K = 0;
  std::vector<u64> xs;
  int samples = 0;
  int nonempty_supports = 0;
  std::vector<CuspSample> rows;
  bool pass = false;
};

// Sample group elements in SL_2(Z_p) mod p^K: identity, K_n translates of both unipotent
// radicals, and random elements.
std::vector<TruncatedMatrix> cusp_samples(const EllipticSeed& seed, int n, int count, u64 rng_seed = 7);
// x ranges over representatives mod p^{m+1} of O - P^m.
std::vector<u64> x_classes(u64 p, int m);

CuspReport cusp_integral_check(const EllipticSeed& seed, int n, int m, const std::vector<u64>& xs,
                               const std::vector<TruncatedMatrix>& samples);

struct FourierCase {
  std::string label;
  TruncatedMatrix y;
  bool integral = false;   // <Y + x Y_m, L_0> in O
  bool predicted_full = false;
  bool exact_ran = false;
  i64 exact_value = 0;     // value of the exact character sum when it is an integer
  bool exact_zero = false;
  bool consistent = false;
};

struct FourierReport {
  u64 p = 5;
  int m = 0, K = 0, exact_precision = 0;
  u64 x = 1;
  std::vector<FourierCase> cases;
  bool pass = false;
};

// Runs the displayed Y = -x Y_m, an integral shift of it, and a shift of valuation -1.
// The exact cyclotomic sum runs over L_0 / p^e L_0 with e = exact_precision when
// p^{3e} <= 20000 and every pairing has denominator at most p^e.
FourierReport fourier_support_check(const EllipticSeed& seed, int m, u64 x, int exact_precision = 2);
FourierCase fourier_case(const EllipticSeed& seed, int m, u64 x, const TruncatedMatrix& y, const std::string& label,
                         int exact_precision = 2);

} // namespace forge
