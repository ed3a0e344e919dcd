#include "forge/toraldata.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <set>

namespace forge {

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    std::int64_t den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
    return Rational(std::stoll(s.substr(0, slash)), den);
  } catch (const std::logic_error&) {
    throw InvalidInput("bad rational '" + s + "'");
  }
}

int ExtensionSpec::ramification() const {
  switch (kind) {
    case ExtensionKind::unramified: return 1;
    case ExtensionKind::ramified_quadratic: return 2;
    case ExtensionKind::ramified_cubic: return 3;
  }
  return 1;
}

int ExtensionSpec::degree() const { return ramification() * residue.n(); }

TameLeadingTerm tame_term(const FieldExtension& k, Rational v, const FFElem& residue) {
  if (k.is_zero(residue)) return TameLeadingTerm{v, std::nullopt};
  return TameLeadingTerm{v, residue};
}

TameLeadingTerm tame_add(const FieldExtension& k, const TameLeadingTerm& x, const TameLeadingTerm& y) {
  if (!x.known() && !y.known()) return TameLeadingTerm{std::min(x.valuation, y.valuation), std::nullopt};
  if (!x.known()) return y.valuation <= x.valuation ? y : TameLeadingTerm{x.valuation, std::nullopt};
  if (!y.known()) return x.valuation <= y.valuation ? x : TameLeadingTerm{y.valuation, std::nullopt};
  if (x.valuation < y.valuation) return x;
  if (y.valuation < x.valuation) return y;
  return tame_term(k, x.valuation, k.add(*x.residue, *y.residue));
}

TameLeadingTerm tame_scale(const FieldExtension& k, const TameLeadingTerm& x, std::int64_t c) {
  if (!x.known() || c % static_cast<std::int64_t>(k.p()) == 0) return TameLeadingTerm{x.valuation, std::nullopt};
  return tame_term(k, x.valuation, k.scale(*x.residue, c));
}

bool GenericityReport::descent_pass() const {
  if (!descent_ran) return true;
  if (!cocycle_permutes_coroots || !cocycle_elliptic || !cocycle_order_divides_degree) return false;
  return std::all_of(descent.begin(), descent.end(), [](const DescentRow& r) { return r.pass; });
}

bool GenericityReport::genericity_pass() const {
  if (!genericity_ran) return true;
  return std::all_of(coroots.begin(), coroots.end(), [](const CorootRow& r) { return r.pass; });
}

std::vector<CorootRow> GenericityReport::failing_coroots() const {
  std::vector<CorootRow> out;
  for (const auto& r : coroots)
    if (!r.pass) out.push_back(r);
  return out;
}

namespace {

FFElem linear_value(const FieldExtension& k, const std::vector<FFElem>& a, const std::vector<std::int64_t>& lam) {
  FFElem s = k.zero();
  for (size_t j = 0; j < lam.size(); ++j)
    if (lam[j]) s = k.add(s, k.scale(a[j], lam[j]));
  return s;
}

void require_prime_power(u64 p, u64 q) {
  auto pp = prime_power(q);
  if (!pp || pp->first != p) throw InvalidInput("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
}

int exponent_of(u64 q) { return prime_power(q)->second; }

Eisenstein eis(std::int64_t a, std::int64_t b) { return Eisenstein{a, b}; }

FFElem eval_eis(const FieldExtension& k, const Eisenstein& v, const FFElem& zeta) {
  return k.add(k.from_int(v.c1), k.scale(zeta, v.c2));
}

} // namespace

GenericityReport verify_galois_descent(const ZeroToralDatum& d) {
  GenericityReport rep;
  rep.descent_ran = true;
  const FieldExtension& k = d.ext.residue;
  const IntMatrix M = d.galois_action();
  rep.cocycle_permutes_coroots = permutes_coroots(d.rs, M);
  rep.cocycle_elliptic = is_elliptic(WeylElement{M, std::nullopt});
  try {
    rep.cocycle_order_divides_degree = d.ext.degree() % weyl_order(WeylElement{M, std::nullopt}) == 0;
  } catch (const Error&) {
    rep.cocycle_order_divides_degree = false;
  }
  for (int i = 0; i < d.rs.rank(); ++i) {
    DescentRow row;
    row.index = i + 1;
    row.lhs = k.mul(d.twist, k.frobenius(d.coords[i], 1));
    row.rhs = linear_value(k, d.coords, M.column(i));
    row.pass = row.lhs == row.rhs;
    rep.descent.push_back(std::move(row));
  }
  return rep;
}

GenericityReport verify_genericity(const ZeroToralDatum& d) {
  GenericityReport rep;
  rep.genericity_ran = true;
  const FieldExtension& k = d.ext.residue;
  const Rational v = -d.depth;
  std::vector<TameLeadingTerm> simple;
  for (const auto& a : d.coords) simple.push_back(tame_term(k, v, a));
  for (const auto& c : d.rs.coroots) {
    TameLeadingTerm acc{v, std::nullopt};
    bool first = true;
    for (size_t j = 0; j < c.expansion.size(); ++j) {
      if (!c.expansion[j]) continue;
      auto t = tame_scale(k, simple[j], c.expansion[j]);
      acc = first ? t : tame_add(k, acc, t);
      first = false;
    }
    CorootRow row;
    row.expansion = c.expansion;
    row.residue = acc.known() ? *acc.residue : k.zero();
    row.pass = acc.known() && acc.valuation == v;
    rep.coroots.push_back(std::move(row));
  }
  return rep;
}

GenericityReport verify_datum(const ZeroToralDatum& d) {
  GenericityReport rep = verify_galois_descent(d);
  GenericityReport gen = verify_genericity(d);
  rep.genericity_ran = true;
  rep.coroots = std::move(gen.coroots);
  return rep;
}

DoddCoordinates build_dodd_coordinates(int s, u64 q) {
  if (s < 5 || s % 2 == 0) throw InvalidInput("build_dodd_coordinates: s must be odd and >= 5");
  auto pp = prime_power(q);
  if (!pp) throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
  const u64 p = pp->first;
  if (p <= static_cast<u64>(2 * s - 2)) throw PreconditionError("D_s coordinates need p > 2s-2");
  FieldExtension ext(p, pp->second, 2 * s - 2);
  const u128 qs1 = ipow128(q, s - 1);
  const u128 qfull = ext.size();  // q^{2s-2}
  FFElem a = generator_power(ext, (qs1 + 1) / 2);
  FFElem b = generator_power(ext, (qfull - 1) / (2 * static_cast<u128>(q - 1)));
  std::vector<FFElem> c;
  for (int i = 0; i < s - 2; ++i) c.push_back(ext.frobenius(a, i));
  FFElem partial = ext.zero();  // a + sigma(a) + ... + sigma^{s-3}(a)
  for (int i = 0; i < s - 2; ++i) partial = ext.add(partial, c[i]);
  FFElem top = ext.frobenius(a, s - 2);
  FFElem half = ext.from_int(static_cast<i64>((p + 1) / 2));
  c.push_back(ext.mul(half, ext.add(ext.sub(b, partial), top)));
  c.push_back(ext.mul(half, ext.add(ext.sub(ext.neg(b), partial), top)));
  return DoddCoordinates{ext, a, b, c};
}

DoddRelations check_dodd_relations(int s, const DoddCoordinates& dc) {
  const auto& k = dc.ext;
  const auto& a = dc.coords;
  auto sum = [&](int from, int to) {  // one-based inclusive
    FFElem t = k.zero();
    for (int i = from; i <= to; ++i) t = k.add(t, a[i - 1]);
    return t;
  };
  DoddRelations r;
  r.shift = true;
  for (int i = 1; i <= s - 3; ++i) r.shift = r.shift && k.frobenius(a[i - 1], 1) == a[i];
  r.middle = k.frobenius(a[s - 3], 1) == sum(1, s);
  r.penult = k.frobenius(a[s - 2], 1) == k.neg(sum(1, s - 1));
  r.last = k.frobenius(a[s - 1], 1) == k.neg(k.add(sum(1, s - 2), a[s - 1]));
  r.difference = k.sub(a[s - 2], a[s - 1]) == dc.b;
  r.a_antiinvariant = k.frobenius(dc.a, s - 1) == k.neg(dc.a);
  r.b_antiinvariant = k.frobenius(dc.b, 1) == k.neg(dc.b);
  return r;
}

std::map<std::string, std::vector<std::vector<std::int64_t>>> dodd_families(int s) {
  RootSystem rs = build_root_system({Family::D, s});
  std::map<std::string, std::vector<std::vector<std::int64_t>>> out;
  auto add = [&](const std::string& label, std::vector<std::int64_t> v) {
    if (rs.contains(v)) out[label].push_back(std::move(v));
  };
  auto ones = [&](std::vector<std::int64_t>& v, int from, int to) {  // one-based inclusive
    for (int t = from; t <= to; ++t) v[t - 1] += 1;
  };
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j <= s; ++j) {
      std::vector<std::int64_t> v(s, 0);
      ones(v, i + 1, j);
      add(j <= s - 2 ? "1a" : (j == s - 1 ? "1b" : "1c"), v);
    }
  for (int i = 0; i <= s - 2; ++i)
    for (int j = i; j <= s - 2; ++j) {
      std::vector<std::int64_t> v(s, 0);
      ones(v, i + 1, s);
      ones(v, j + 1, s - 2);
      add("2", v);
    }
  for (int i = 0; i < s - 2; ++i) {
    std::vector<std::int64_t> v(s, 0);
    ones(v, i + 1, s - 2);
    v[s - 1] += 1;
    add("3", v);
  }
  return out;
}

std::vector<std::vector<std::vector<std::int64_t>>> e6_positive_families() {
  using V = std::vector<std::int64_t>;
  std::vector<std::vector<V>> fam(13);
  auto range = [](int i, int j) {
    V v(6, 0);
    for (int t = i; t <= j; ++t) v[t - 1] += 1;
    return v;
  };
  for (int j = 2; j <= 6; ++j) {
    V v = range(1, j);
    v[1] -= 1;
    fam[0].push_back(v);
  }
  for (int i = 3; i <= 6; ++i)
    for (int j = i; j <= 6; ++j) fam[1].push_back(range(i, j));
  for (int j = 3; j <= 6; ++j) {
    V v = range(2, j);
    v[2] -= 1;
    fam[2].push_back(v);
  }
  for (int i = 1; i <= 2; ++i) fam[3].push_back(range(i, 4));
  for (int i = 1; i <= 2; ++i)
    for (int j = 5; j <= 6; ++j) {
      fam[4].push_back(range(i, j));
      V v = range(i, j);
      v[3] += 1;
      fam[5].push_back(v);
    }
  fam[6] = {{0, 1, 1, 2, 2, 1}};
  fam[7] = {{1, 1, 1, 2, 2, 1}};
  fam[8] = {{1, 1, 2, 2, 1, 0}};
  fam[9] = {{1, 1, 2, 2, 1, 1}};
  fam[10] = {{1, 1, 2, 2, 2, 1}};
  fam[11] = {{1, 1, 2, 3, 2, 1}};
  fam[12] = {{1, 2, 2, 3, 2, 1}};
  return fam;
}

Eisenstein operator+(Eisenstein x, Eisenstein y) { return {x.c1 + y.c1, x.c2 + y.c2}; }

Eisenstein operator*(Eisenstein x, Eisenstein y) {
  // zeta^2 = -1 - zeta
  return {x.c1 * y.c1 - x.c2 * y.c2, x.c1 * y.c2 + x.c2 * y.c1 - x.c2 * y.c2};
}

Eisenstein operator*(std::int64_t k, Eisenstein y) { return {k * y.c1, k * y.c2}; }

WeylElement e6_coxeter_wh(const RootSystem& e6) {
  if (!(e6.type == RootSystemType{Family::E, 6})) throw InvalidInput("e6_coxeter_wh needs E6");
  return weyl_from_word(e6, {2, 3, 5, 1, 4, 6});
}

std::vector<Eisenstein> e6_ramified_symbolic_coords() {
  return {eis(2, 0), eis(1, 0), eis(-4, -2), eis(1, 0), eis(1, 0), eis(0, 3)};
}

std::vector<Eisenstein> e6_ramified_values() {
  RootSystem rs = build_root_system({Family::E, 6});
  auto a = e6_ramified_symbolic_coords();
  std::vector<Eisenstein> out;
  for (const auto& c : rs.positive_coroots()) {
    Eisenstein s;
    for (int j = 0; j < 6; ++j) s = s + c.expansion[j] * a[j];
    out.push_back(s);
  }
  return out;
}

std::vector<Eisenstein> e6_ramified_value_set() {
  std::vector<Eisenstein> v = {eis(1, 0), eis(2, 0), eis(3, 0), eis(-2, -4)};
  for (int i = -4; i <= 1; ++i) v.push_back(eis(i, -2));
  for (int i = -3; i <= 1; ++i) v.push_back(eis(i, -1));
  for (int i = -2; i <= 3; ++i) v.push_back(eis(i, 1));
  for (int i = 0; i <= 3; ++i) v.push_back(eis(i, 3));
  std::sort(v.begin(), v.end());
  return v;
}

bool e6_ramified_symbolic_descent() {
  RootSystem rs = build_root_system({Family::E, 6});
  IntMatrix w = weyl_power(e6_coxeter_wh(rs), 4).matrix;
  auto a = e6_ramified_symbolic_coords();
  for (int i = 0; i < 6; ++i) {
    Eisenstein rhs;
    for (int j = 0; j < 6; ++j) rhs = rhs + w(j, i) * a[j];
    if (!(eis(0, 1) * a[i] == rhs)) return false;
  }
  return true;
}

bool eisenstein_nonzero_mod(const Eisenstein& v, u64 p) {
  // c1 + c2 zeta vanishes under some zeta -> F_p exactly when p divides the norm
  const i64 P = static_cast<i64>(p);
  i64 a = mod(v.c1, P), b = mod(v.c2, P);
  i64 norm = mod(static_cast<i64>(mulmod(a, a, p)) - static_cast<i64>(mulmod(a, b, p)) + static_cast<i64>(mulmod(b, b, p)), P);
  return norm != 0;
}

E6Coordinates build_e6_coordinates(E6Variant variant, u64 q) {
  auto pp = prime_power(q);
  if (!pp) throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
  const u64 p = pp->first;
  if (p <= 12) throw PreconditionError("E6 coordinates need p > 12");
  if (variant == E6Variant::unramified_cubic) {
    FieldExtension ext(p, pp->second, 3);
    FFElem a = find_trace_zero_generator(ext);
    FFElem sa = ext.frobenius(a, 1);
    std::vector<FFElem> c = {sa,
                             sa,
                             ext.sub(a, ext.scale(sa, 2)),
                             sa,
                             ext.add(a, sa),
                             ext.sub(ext.scale(a, -3), ext.scale(sa, 2))};
    return E6Coordinates{ext, a, ext.zero(), c};
  }
  if (q % 3 != 1) throw PreconditionError("ramified cubic case needs q = 1 mod 3");
  FieldExtension ext(p, pp->second, 1);
  FFElem zeta = generator_power(ext, (q - 1) / 3);
  std::vector<FFElem> c;
  for (const auto& v : e6_ramified_symbolic_coords()) c.push_back(eval_eis(ext, v, zeta));
  return E6Coordinates{ext, zeta, zeta, c};
}

ZeroToralDatum build_generic_element(const RootSystemType& type, const DiagramAutomorphism& delta, u64 p, u64 q,
                                     int n, Ramification pref) {
  if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  require_prime_power(p, q);
  if (n < 0) throw InvalidInput("n must be nonnegative");
  RootSystem rs = build_root_system(type);
  const int cox = coxeter_number(type);
  if (p <= static_cast<u64>(cox))
    throw PreconditionError("p = " + std::to_string(p) + " must exceed Cox = " + std::to_string(cox));
  if (!preserves_cartan(rs, delta)) throw InvalidInput("diagram automorphism incompatible with " + type.name());
  const int f = exponent_of(q);

  ZeroToralDatum d;
  d.rs = rs;
  d.delta = delta;
  d.p = p;
  d.q = q;
  d.n = n;

  if (minus_one_in_W_delta(rs, delta)) {
    WeylElement w0 = longest_element(rs);
    if (!(w0.matrix * delta.matrix() == -IntMatrix::identity(rs.rank())))
      throw Error("longest element does not realise -1 in W delta");
    d.cocycle = w0;
    if (pref == Ramification::ramified) {
      FieldExtension k(p, f, 1);
      d.ext = ExtensionSpec{ExtensionKind::ramified_quadratic, k};
      d.depth = Rational(2 * n + 1, 2);
      d.coords.assign(rs.rank(), k.one());
      d.twist = k.from_int(-1);
      d.case_label = "Case1-ram";
    } else {
      FieldExtension k(p, f, 2);
      FFElem e0 = find_trace_zero_generator(k);  // sigma(e0) = -e0
      d.ext = ExtensionSpec{ExtensionKind::unramified, k};
      d.depth = Rational(n + 1);
      d.coords.assign(rs.rank(), e0);
      d.twist = k.one();
      d.case_label = "Case1-unram";
    }
    return d;
  }

  if (!delta.trivial())
    throw Unsupported("nontrivial diagram automorphism on " + type.name() +
                      " (only split groups of this type are modelled)");
  switch (type.family) {
    case Family::A: {
      FieldExtension k(p, f, type.rank + 1);
      FFElem a = find_trace_zero_generator(k);
      d.ext = ExtensionSpec{ExtensionKind::unramified, k};
      for (int i = 0; i < type.rank; ++i) d.coords.push_back(k.frobenius(a, i));
      d.cocycle = coxeter_element(rs);
      d.depth = Rational(n + 1);
      d.twist = k.one();
      d.case_label = "A";
      return d;
    }
    case Family::D: {
      DoddCoordinates dc = build_dodd_coordinates(type.rank, q);
      d.ext = ExtensionSpec{ExtensionKind::unramified, dc.ext};
      d.coords = dc.coords;
      d.cocycle = coxeter_element(rs);
      d.depth = Rational(n + 1);
      d.twist = dc.ext.one();
      d.case_label = "Dodd";
      return d;
    }
    case Family::E: {
      bool ram = pref == Ramification::ramified || (pref == Ramification::automatic && q % 3 == 1);
      E6Coordinates ec = build_e6_coordinates(ram ? E6Variant::ramified_cubic : E6Variant::unramified_cubic, q);
      d.cocycle = weyl_power(e6_coxeter_wh(rs), 4);
      d.coords = ec.coords;
      if (ram) {
        d.ext = ExtensionSpec{ExtensionKind::ramified_cubic, ec.ext};
        d.depth = Rational(3 * n + 1, 3);
        d.twist = ec.zeta;
        d.case_label = "E6-ram";
      } else {
        d.ext = ExtensionSpec{ExtensionKind::unramified, ec.ext};
        d.depth = Rational(n + 1);
        d.twist = ec.ext.one();
        d.case_label = "E6-unram";
      }
      return d;
    }
    default:
      break;
  }
  throw Unsupported("no construction available for " + type.name());
}

Rational restriction_depth(int e, Rational r_prime) {
  if (e < 1) throw InvalidInput("restriction_depth: e must be positive");
  if (r_prime <= 0) throw InvalidInput("restriction_depth: r' must be positive");
  return r_prime / e;
}

std::vector<Rational> restriction_table(int e, Rational r_prime, const std::vector<Rational>& valuations) {
  Rational r = restriction_depth(e, r_prime);
  std::vector<Rational> out;
  for (const auto& v : valuations) {
    if (v != -r_prime) throw InvalidInput("restriction_table: nonuniform valuation table");
    out.push_back(v / e);
  }
  (void)r;
  return out;
}

OneToralDatum assemble_one_toral(std::vector<ToralFactor> factors) {
  if (factors.empty()) throw InvalidInput("assemble_one_toral: no factors");
  std::sort(factors.begin(), factors.end(), [](const ToralFactor& a, const ToralFactor& b) {
    return a.depth != b.depth ? a.depth < b.depth : a.id < b.id;
  });
  const Rational rmin = factors.front().depth;
  if (rmin <= 0) throw InvalidInput("assemble_one_toral: depths must be positive");
  // n = ceil(rmin) - 1
  std::int64_t n = rmin.numerator() / rmin.denominator();
  if (Rational(n) == rmin) n -= 1;
  for (const auto& f : factors)
    if (f.depth > Rational(n + 1))
      throw InvalidInput("assemble_one_toral: depths do not fit in one window (" + std::to_string(n) + ", " +
                         std::to_string(n + 1) + "]");
  OneToralDatum d;
  d.window_n = static_cast<int>(n);
  for (const auto& f : factors) {
    if (d.depths.empty() || d.depths.back() != f.depth) {
      d.depths.push_back(f.depth);
      d.groups.emplace_back();
    }
    d.groups.back().push_back(f.id);
  }
  d.chain.emplace_back();
  for (size_t k = 1; k <= d.groups.size(); ++k) {
    auto g = d.chain.back();
    g.insert(g.end(), d.groups[k - 1].begin(), d.groups[k - 1].end());
    d.chain.push_back(g);
  }
  d.factors = std::move(factors);
  return d;
}

namespace {

Rational twist_valuation(std::int64_t i, u64 p, int m, int e_F, std::int64_t& unit) {
  if (m < 1 || e_F < 1) throw InvalidInput("twist: m and e_F must be positive");
  const std::int64_t pm = static_cast<std::int64_t>(ipow(p, m));
  if (mod(i, pm) == 0) throw PreconditionError("twist index is divisible by p^m");
  int k = vp(i, p);
  std::int64_t u = i;
  for (int t = 0; t < k; ++t) u /= static_cast<std::int64_t>(p);
  unit = u;
  // the model takes varpi_F^{e_F} = p, so the unit part of i is the whole residue
  return Rational(static_cast<std::int64_t>(e_F) * k);
}

} // namespace

TwistResult twist_datum(const ZeroToralDatum& d, std::int64_t i, int m, int e_F) {
  std::int64_t unit = 1;
  Rational v = twist_valuation(i, d.p, m, e_F, unit);
  TwistResult out{d, v, false, {}};
  const auto& k = d.ext.residue;
  out.datum.depth = d.depth - v;
  for (auto& c : out.datum.coords) c = k.scale(c, unit);
  std::int64_t nn = out.datum.depth.numerator() / out.datum.depth.denominator();
  if (Rational(nn) == out.datum.depth) nn -= 1;
  out.datum.n = static_cast<int>(nn);
  out.window_ok = d.depth - v > d.depth / 2;
  out.report = verify_datum(out.datum);
  return out;
}

OneToralTwist twist_datum(const OneToralDatum& d, std::int64_t i, u64 p, int m, int e_F) {
  std::int64_t unit = 1;
  Rational v = twist_valuation(i, p, m, e_F, unit);
  OneToralTwist out{d, v, false};
  for (auto& r : out.datum.depths) r -= v;
  for (auto& f : out.datum.factors) {
    f.depth -= v;
    if (f.field)
      for (auto& c : f.coords) c = f.field->scale(c, unit);
  }
  out.window_ok = d.depths.front() - v > d.depths.back() / 2;
  return out;
}

} // namespace forge
