#pragma once

#include "forge/ffield.hpp"
#include "forge/rootsys.hpp"

#include <boost/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forge {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);  // "num/den"
Rational parse_rational(const std::string& s);

enum class ExtensionKind { unramified, ramified_quadratic, ramified_cubic };

struct ExtensionSpec {
  ExtensionKind kind = ExtensionKind::unramified;
  FieldExtension residue;  // k_E, with sigma the q-Frobenius of k_E / k_F

  int ramification() const;  // e(E/F)
  int degree() const;        // [E:F]
};

// Leading term of an element of a tame extension: valuation and residue.
// An absent residue means "valuation strictly larger, not certified".
struct TameLeadingTerm {
  Rational valuation;
  std::optional<FFElem> residue;

  bool known() const { return residue.has_value(); }
};

TameLeadingTerm tame_term(const FieldExtension& k, Rational v, const FFElem& residue);
TameLeadingTerm tame_add(const FieldExtension& k, const TameLeadingTerm& x, const TameLeadingTerm& y);
TameLeadingTerm tame_scale(const FieldExtension& k, const TameLeadingTerm& x, std::int64_t c);

enum class Ramification { automatic, unramified, ramified };

struct ZeroToralDatum {
  RootSystem rs;
  DiagramAutomorphism delta;
  WeylElement cocycle;  // image of sigma
  ExtensionSpec ext;
  u64 p = 0;
  u64 q = 0;
  int n = 0;  // depth window parameter: n < r <= n + 1
  Rational depth;
  std::vector<FFElem> coords;  // X(varpi^{e r} H_{alpha_i}) residues
  FFElem twist;                // residue of sigma(varpi^{e r}) / varpi^{e r}
  std::string case_label;

  IntMatrix galois_action() const { return cocycle.matrix * delta.matrix(); }
};

struct CorootRow {
  std::vector<std::int64_t> expansion;
  FFElem residue;
  bool pass = false;
};

struct DescentRow {
  int index = 0;  // one-based simple coroot
  FFElem lhs;     // twist * sigma(a_i)
  FFElem rhs;     // X(w delta(alpha_i))
  bool pass = false;
};

struct GenericityReport {
  std::vector<CorootRow> coroots;
  std::vector<DescentRow> descent;
  bool cocycle_permutes_coroots = true;
  bool cocycle_elliptic = true;
  bool cocycle_order_divides_degree = true;
  bool descent_ran = false;
  bool genericity_ran = false;

  bool descent_pass() const;
  bool genericity_pass() const;
  bool pass() const { return descent_pass() && genericity_pass(); }
  std::vector<CorootRow> failing_coroots() const;
};

ZeroToralDatum build_generic_element(const RootSystemType& type, const DiagramAutomorphism& delta, u64 p, u64 q,
                                     int n, Ramification pref = Ramification::automatic);

GenericityReport verify_galois_descent(const ZeroToralDatum& d);
GenericityReport verify_genericity(const ZeroToralDatum& d);
GenericityReport verify_datum(const ZeroToralDatum& d);  // both halves

struct DoddCoordinates {
  FieldExtension ext;  // F_{q^{2s-2}}
  FFElem a, b;
  std::vector<FFElem> coords;
};

DoddCoordinates build_dodd_coordinates(int s, u64 q);

// The four sigma-relations of the D_s system plus a_{s-1} - a_s = b.
struct DoddRelations {
  bool shift = false;     // sigma(a_i) = a_{i+1}, i <= s-3
  bool middle = false;    // sigma(a_{s-2}) = a_1 + ... + a_s
  bool penult = false;    // sigma(a_{s-1}) = -(a_1 + ... + a_{s-1})
  bool last = false;      // sigma(a_s) = -(a_1 + ... + a_{s-2} + a_s)
  bool difference = false;
  bool a_antiinvariant = false;  // sigma^{s-1}(a) = -a
  bool b_antiinvariant = false;  // sigma(b) = -b
  bool all() const { return shift && middle && penult && last && difference && a_antiinvariant && b_antiinvariant; }
};

DoddRelations check_dodd_relations(int s, const DoddCoordinates& c);

// Positive coroots of D_s sorted into the families (1a), (1b), (1c), (2), (3);
// each entry lists the expansions of that family that are coroots.
std::map<std::string, std::vector<std::vector<std::int64_t>>> dodd_families(int s);

// The 13 families listing the positive coroots of E6.
std::vector<std::vector<std::vector<std::int64_t>>> e6_positive_families();

enum class E6Variant { unramified_cubic, ramified_cubic };

struct E6Coordinates {
  FieldExtension ext;
  FFElem a;     // trace-zero generator (unramified) or zeta (ramified)
  FFElem zeta;  // ramified only
  std::vector<FFElem> coords;
};

E6Coordinates build_e6_coordinates(E6Variant variant, u64 q);

// Eisenstein integer c1 + c2 zeta with zeta^2 = -1 - zeta.
struct Eisenstein {
  std::int64_t c1 = 0, c2 = 0;
  friend bool operator==(const Eisenstein&, const Eisenstein&) = default;
  friend auto operator<=>(const Eisenstein&, const Eisenstein&) = default;
};

Eisenstein operator+(Eisenstein x, Eisenstein y);
Eisenstein operator*(Eisenstein x, Eisenstein y);
Eisenstein operator*(std::int64_t k, Eisenstein y);

std::vector<Eisenstein> e6_ramified_symbolic_coords();
std::vector<Eisenstein> e6_ramified_values();    // one per positive coroot, in coroot order
std::vector<Eisenstein> e6_ramified_value_set();  // the set listed for the ramified case
bool e6_ramified_symbolic_descent();              // zeta a_i = X(w alpha_i) in Z[zeta]
bool eisenstein_nonzero_mod(const Eisenstein& v, u64 p);  // nonzero under every zeta -> F_p, p = 1 mod 3

WeylElement e6_coxeter_wh(const RootSystem& e6);  // s2 s3 s5 s1 s4 s6

Rational restriction_depth(int e, Rational r_prime);
std::vector<Rational> restriction_table(int e, Rational r_prime, const std::vector<Rational>& valuations);

struct ToralFactor {
  std::string id;
  Rational depth;
  std::vector<FFElem> coords;
  std::optional<FieldExtension> field;  // residue field of the coordinates, if known
};

struct OneToralDatum {
  std::vector<std::vector<std::string>> groups;  // factor ids per depth level
  std::vector<Rational> depths;                  // strictly increasing
  std::vector<std::vector<std::string>> chain;   // G^k = T . (groups < k); chain[0] empty
  std::vector<ToralFactor> factors;              // sorted by depth then id
  int window_n = 0;
};

OneToralDatum assemble_one_toral(std::vector<ToralFactor> factors);

struct TwistResult {
  ZeroToralDatum datum;
  Rational valuation;  // v(i), F-normalised
  bool window_ok = false;
  GenericityReport report;
};

TwistResult twist_datum(const ZeroToralDatum& d, std::int64_t i, int m, int e_F);

struct OneToralTwist {
  OneToralDatum datum;
  Rational valuation;
  bool window_ok = false;
};

OneToralTwist twist_datum(const OneToralDatum& d, std::int64_t i, u64 p, int m, int e_F);

} // namespace forge
