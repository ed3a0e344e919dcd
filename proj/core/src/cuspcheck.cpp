#include "forge/cuspcheck.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace forge {

namespace {

i64 pw(u64 p, int e) { return static_cast<i64>(ipow(p, static_cast<u64>(e))); }

i64 md(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

i64 mm(i64 a, i64 b, i64 n) { return static_cast<i64>(((static_cast<__int128>(a) * b) % n + n) % n); }

using M2 = std::array<i64, 4>;

M2 mul2(const M2& x, const M2& y, i64 n) {
  return {md(mm(x[0], y[0], n) + mm(x[1], y[2], n), n), md(mm(x[0], y[1], n) + mm(x[1], y[3], n), n),
          md(mm(x[2], y[0], n) + mm(x[3], y[2], n), n), md(mm(x[2], y[1], n) + mm(x[3], y[3], n), n)};
}

int vp_i(i64 x, u64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % static_cast<i64>(p) == 0 && v < cap) {
    x /= static_cast<i64>(p);
    ++v;
  }
  return v;
}

int vp_factorial(u64 k, u64 p) {
  int v = 0;
  for (u64 q = p; q <= k; q *= p) v += static_cast<int>(k / q);
  return v;
}

void check_modulus_fits(u64 p, int e) {
  if (static_cast<double>(e) * std::log2(static_cast<double>(p)) > 61.0)
    throw PreconditionError("truncated matrix: working precision exceeds 64-bit arithmetic");
}

// Sum_k coeff(k) * Y^k where coeff(k) = sign / (p^{v_k} * unit_k); terms up to kmax.
template <class Coeff>
TruncatedMatrix power_series(const TruncatedMatrix& Y, int kmax, Coeff coeff, bool include_identity) {
  const u64 p = Y.p;
  int extra = 0;
  for (int k = 1; k <= kmax; ++k) extra = std::max(extra, coeff(k).first);
  check_modulus_fits(p, Y.K + extra);
  const i64 big = pw(p, Y.K + extra);
  const i64 mod = pw(p, Y.K);
  M2 acc = include_identity ? M2{1 % mod, 0, 0, 1 % mod} : M2{0, 0, 0, 0};
  M2 term{1, 0, 0, 1};
  for (int k = 1; k <= kmax; ++k) {
    term = mul2(term, Y.a, big);
    auto [v, unit] = coeff(k);  // term / (p^v * unit)
    i64 pv = pw(p, v);
    i64 uinv = static_cast<i64>(inv_mod(static_cast<u64>(md(unit, mod)), static_cast<u64>(mod)));
    for (int i = 0; i < 4; ++i) {
      if (term[i] % pv != 0) throw Error("power series: term not divisible as expected");
      acc[i] = md(acc[i] + mm(term[i] / pv % mod, uinv, mod), mod);
    }
  }
  return TruncatedMatrix::from(p, Y.K, acc);
}

} // namespace

TruncatedMatrix TruncatedMatrix::identity(u64 p, int K) { return from(p, K, {1, 0, 0, 1}); }

TruncatedMatrix TruncatedMatrix::from(u64 p, int K, std::array<i64, 4> entries, int offset) {
  if (!is_prime(p) || K < 1) throw InvalidInput("truncated matrix: need a prime p and K >= 1");
  check_modulus_fits(p, K);
  TruncatedMatrix t;
  t.p = p;
  t.K = K;
  t.offset = offset;
  i64 n = pw(p, K);
  for (int i = 0; i < 4; ++i) t.a[i] = md(entries[i], n);
  return t;
}

i64 TruncatedMatrix::modulus() const { return pw(p, K); }

int TruncatedMatrix::valuation() const {
  int v = K;
  for (i64 x : a) v = std::min(v, vp_i(x, p, K));
  return v - offset;
}

i64 TruncatedMatrix::trace() const { return md(a[0] + a[3], modulus()); }
bool TruncatedMatrix::is_trace_zero() const { return trace() == 0; }

namespace {

TruncatedMatrix align(const TruncatedMatrix& x, int offset) {
  TruncatedMatrix out = x;
  i64 s = pw(x.p, offset - x.offset);
  for (auto& v : out.a) v = mm(v, s, x.modulus());
  out.offset = offset;
  return out;
}

void same_ring(const TruncatedMatrix& x, const TruncatedMatrix& y) {
  if (x.p != y.p || x.K != y.K) throw InvalidInput("truncated matrix: mismatched p or K");
}

} // namespace

TruncatedMatrix tm_add(const TruncatedMatrix& x, const TruncatedMatrix& y) {
  same_ring(x, y);
  int o = std::max(x.offset, y.offset);
  TruncatedMatrix a = align(x, o), b = align(y, o);
  for (int i = 0; i < 4; ++i) a.a[i] = md(a.a[i] + b.a[i], a.modulus());
  return a;
}

TruncatedMatrix tm_sub(const TruncatedMatrix& x, const TruncatedMatrix& y) { return tm_add(x, tm_scale(y, -1)); }

TruncatedMatrix tm_mul(const TruncatedMatrix& x, const TruncatedMatrix& y) {
  same_ring(x, y);
  TruncatedMatrix out = x;
  out.a = mul2(x.a, y.a, x.modulus());
  out.offset = x.offset + y.offset;
  return out;
}

TruncatedMatrix tm_scale(const TruncatedMatrix& x, i64 c) {
  TruncatedMatrix out = x;
  for (auto& v : out.a) v = mm(v, md(c, x.modulus()), x.modulus());
  return out;
}

i64 tm_det(const TruncatedMatrix& x) {
  if (x.offset != 0) throw PreconditionError("tm_det: integral matrices only");
  i64 n = x.modulus();
  return md(mm(x.a[0], x.a[3], n) - mm(x.a[1], x.a[2], n), n);
}

TruncatedMatrix exp_truncated(const TruncatedMatrix& X) {
  if (X.p < 5) throw PreconditionError("exp_truncated: p >= 5 is required");
  if (X.offset > 0 || X.valuation() < 1) throw PreconditionError("exp_truncated: entries must have valuation >= 1");
  TruncatedMatrix Y = align(X, 0);
  const u64 p = X.p;
  // k - v_p(k!) >= K for every k beyond kmax
  int kmax = 1;
  for (int k = 1; k < 64 * X.K; ++k)
    if (k - vp_factorial(static_cast<u64>(k), p) < X.K) kmax = k;
  const i64 mod = X.modulus();
  auto coeff_mod = [p, mod](int k) {
    int v = vp_factorial(static_cast<u64>(k), p);
    i64 unit = 1;
    for (int j = 2; j <= k; ++j) {
      i64 jj = j;
      while (jj % static_cast<i64>(p) == 0) jj /= static_cast<i64>(p);
      unit = mm(unit, jj, mod);
    }
    return std::pair<int, i64>{v, unit};
  };
  return power_series(Y, kmax, coeff_mod, true);
}

TruncatedMatrix log_truncated(const TruncatedMatrix& g) {
  if (g.p < 3) throw PreconditionError("log_truncated: p odd is required");
  if (g.offset != 0) throw PreconditionError("log_truncated: integral matrices only");
  TruncatedMatrix Y = tm_sub(g, TruncatedMatrix::identity(g.p, g.K));
  if (Y.valuation() < 1) throw PreconditionError("log_truncated: g must be congruent to 1 mod p");
  const u64 p = g.p;
  int kmax = 1;
  for (int k = 1; k < 64 * g.K; ++k)
    if (k - vp_u(static_cast<u64>(k), p) < g.K) kmax = k;
  auto coeff = [p](int k) {
    int v = vp_u(static_cast<u64>(k), p);
    i64 unit = k;
    while (unit % static_cast<i64>(p) == 0) unit /= static_cast<i64>(p);
    if (k % 2 == 0) unit = -unit;
    return std::pair<int, i64>{v, unit};
  };
  return power_series(Y, kmax, coeff, false);
}

// ---------------------------------------------------------------------------

namespace {

std::array<TruncatedMatrix, 3> sl2_basis(u64 p, int K) {
  return {TruncatedMatrix::from(p, K, {1, 0, 0, -1}), TruncatedMatrix::from(p, K, {0, 1, 0, 0}),
          TruncatedMatrix::from(p, K, {0, 0, 1, 0})};
}

i64 smallest_nonsquare(u64 p) {
  for (u64 e = 2; e < p; ++e)
    if (powmod(e, (p - 1) / 2, p) == p - 1) return static_cast<i64>(e);
  throw Error("no nonsquare found");
}

bool is_nonsquare_unit(i64 d, u64 p) {
  u64 r = static_cast<u64>(md(d, static_cast<i64>(p)));
  return r != 0 && powmod(r, (p - 1) / 2, p) == p - 1;
}

} // namespace

PadicFraction trace_pairing(const TruncatedMatrix& Y, const TruncatedMatrix& X) {
  same_ring(X, Y);
  TruncatedMatrix Z = tm_mul(Y, X);
  PadicFraction f;
  f.den_exp = std::max(0, Z.offset);
  if (f.den_exp > Z.K) throw PreconditionError("trace_pairing: precision below the denominator");
  i64 t = Z.trace();
  if (Z.offset < 0) t = mm(t, pw(Z.p, -Z.offset), Z.modulus());
  f.num = md(t, pw(Z.p, f.den_exp));
  while (f.den_exp > 0 && f.num % static_cast<i64>(Z.p) == 0) {
    f.num /= static_cast<i64>(Z.p);
    --f.den_exp;
  }
  if (f.den_exp == 0) f.num = 0;
  return f;
}

RootOfUnity psi_trivial_on_O(u64 p, const PadicFraction& y) {
  RootOfUnity r;
  r.k = y.den_exp;
  r.e = static_cast<u64>(md(y.num, pw(p, y.den_exp)));
  return r;
}

RootOfUnity psi_trivial_on_P(u64 p, const PadicFraction& y) {
  return psi_trivial_on_O(p, PadicFraction{y.num, y.den_exp + 1});
}

EllipticSeed elliptic_seed(u64 p, int K) {
  if (p == 2) throw InvalidInput("elliptic_seed: p must be odd");
  if (!is_prime(p)) throw InvalidInput("elliptic_seed: p must be prime");
  if (K < 3) throw InvalidInput("elliptic_seed: K must be at least 3");
  EllipticSeed s;
  s.p = p;
  s.K = K;
  s.epsilon = smallest_nonsquare(p);
  s.y1 = TruncatedMatrix::from(p, K, {0, s.epsilon, 1, 0}, 1);
  s.pairing_valuation = 0;
  for (const auto& b : sl2_basis(p, K)) s.pairing_valuation = std::min(s.pairing_valuation, -trace_pairing(s.y1, b).den_exp);
  // p Y_1 = [[0, eps], [1, 0]]: trace 0, determinant -eps
  TruncatedMatrix py = TruncatedMatrix::from(p, K, s.y1.a);
  i64 tr = py.trace();
  i64 det = tm_det(py);
  s.residue_discriminant = md(mm(tr, tr, static_cast<i64>(p)) - 4 * md(det, static_cast<i64>(p)), static_cast<i64>(p));
  s.discriminant_nonsquare = is_nonsquare_unit(s.residue_discriminant, p);
  // Gram matrix of tr(XY) on H, E, F is [[2,0,0],[0,0,1],[0,1,0]], determinant -2
  s.gram_unit = p != 2;
  s.pass = s.pairing_valuation == -1 && s.discriminant_nonsquare && s.gram_unit;
  return s;
}

bool in_congruence_subgroup(const TruncatedMatrix& g, int n) {
  if (g.offset != 0) return false;
  i64 pn = pw(g.p, n);
  if (md(g.a[0] - 1, pn) != 0 || md(g.a[1], pn) != 0 || md(g.a[2], pn) != 0 || md(g.a[3] - 1, pn) != 0) return false;
  return tm_det(g) == 1 % g.modulus();
}

namespace {

u64 lambda_raw(u64 p, int n, int m, i64 eps, const TruncatedMatrix& g) {
  TruncatedMatrix X = log_truncated(g);
  // tr([[0, eps], [1, 0]] X) = eps x_21 + x_12
  i64 t = md(mm(eps, X.a[2], X.modulus()) + X.a[1], pw(p, n + m));
  if (t % pw(p, n) != 0) throw Error("lambda: pairing has the wrong valuation");
  return static_cast<u64>(t / pw(p, n));
}

TruncatedMatrix random_lie(std::mt19937_64& rng, u64 p, int K, int n) {
  i64 q = pw(p, K - n);
  std::uniform_int_distribution<i64> d(0, q - 1);
  i64 s = pw(p, n);
  i64 a = d(rng) * s, b = d(rng) * s, c = d(rng) * s;
  return TruncatedMatrix::from(p, K, {a, b, c, -a});
}

} // namespace

u64 lambda_value(const LambdaChar& lc, const TruncatedMatrix& g) {
  if (!in_congruence_subgroup(g, lc.n)) throw PreconditionError("lambda: element is not in K_n");
  return lambda_raw(lc.p, lc.n, lc.m, lc.epsilon, g);
}

LambdaChar lambda_character(const EllipticSeed& seed, int n, int m, int random_pairs, u64 rng_seed) {
  if (m < 1) throw InvalidInput("lambda: m must be positive");
  if (n < m + 2) throw PreconditionError("lambda: n must be at least m + 2");
  if (seed.K < n + m + 2) throw PreconditionError("lambda: precision K must be at least n + m + 2");
  if (seed.p < 5) throw PreconditionError("lambda: p >= 5 is required for the exponential");
  LambdaChar lc;
  lc.p = seed.p;
  lc.n = n;
  lc.m = m;
  lc.K = seed.K;
  lc.epsilon = seed.epsilon;
  const u64 pm = ipow(seed.p, static_cast<u64>(m));
  for (const auto& b : sl2_basis(seed.p, seed.K)) {
    TruncatedMatrix g = exp_truncated(tm_scale(b, pw(seed.p, n)));
    lc.generators.push_back(g);
    lc.generator_values.push_back(lambda_value(lc, g));
  }
  bool ok = true;
  for (const auto& g : lc.generators)
    for (const auto& h : lc.generators) {
      ok = ok && lambda_value(lc, tm_mul(g, h)) == (lambda_value(lc, g) + lambda_value(lc, h)) % pm;
      ++lc.generator_pairs;
    }
  std::mt19937_64 rng(rng_seed);
  for (int i = 0; i < random_pairs; ++i) {
    TruncatedMatrix g = exp_truncated(random_lie(rng, seed.p, seed.K, n));
    TruncatedMatrix h = exp_truncated(random_lie(rng, seed.p, seed.K, n));
    ok = ok && lambda_value(lc, tm_mul(g, h)) == (lambda_value(lc, g) + lambda_value(lc, h)) % pm;
    ++lc.random_pairs;
  }
  lc.homomorphism = ok;
  lc.surjective = std::any_of(lc.generator_values.begin(), lc.generator_values.end(),
                              [&](u64 v) { return v % seed.p != 0; });
  return lc;
}

std::vector<TruncatedMatrix> cusp_samples(const EllipticSeed& seed, int n, int count, u64 rng_seed) {
  const u64 p = seed.p;
  const int K = seed.K;
  const i64 mod = pw(p, K);
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<i64> d(0, mod - 1);
  std::vector<TruncatedMatrix> out{TruncatedMatrix::identity(p, K)};
  for (int i = 1; i < count; ++i) {
    int kind = i % 4;
    if (kind == 3) {
      i64 a;
      do a = d(rng);
      while (a % static_cast<i64>(p) == 0);
      i64 b = d(rng), c = d(rng);
      i64 dd = mm(md(1 + mm(b, c, mod), mod), static_cast<i64>(inv_mod(static_cast<u64>(a), static_cast<u64>(mod))), mod);
      out.push_back(TruncatedMatrix::from(p, K, {a, b, c, dd}));
      continue;
    }
    TruncatedMatrix k = exp_truncated(random_lie(rng, p, K, n));
    i64 s = d(rng);
    if (kind == 1) out.push_back(tm_mul(k, TruncatedMatrix::from(p, K, {1, s, 0, 1})));
    else if (kind == 2) out.push_back(tm_mul(k, TruncatedMatrix::from(p, K, {1, 0, s, 1})));
    else out.push_back(k);
  }
  return out;
}

std::vector<u64> x_classes(u64 p, int m) {
  std::vector<u64> xs;
  u64 top = ipow(p, static_cast<u64>(m + 1));
  for (u64 x = 1; x < top; ++x)
    if (vp_u(x, p) < m) xs.push_back(x);
  return xs;
}

CuspReport cusp_integral_check(const EllipticSeed& seed, int n, int m, const std::vector<u64>& xs,
                               const std::vector<TruncatedMatrix>& samples) {
  LambdaChar lc = lambda_character(seed, n, m, 0);
  const u64 p = seed.p;
  const u64 pm = ipow(p, static_cast<u64>(m));
  for (u64 x : xs)
    if (x % pm == 0) throw InvalidInput("cusp: x must lie in O - P^m");
  CuspReport rep;
  rep.p = p;
  rep.n = n;
  rep.m = m;
  rep.K = seed.K;
  rep.xs = xs;
  rep.samples = static_cast<int>(samples.size());
  // N(O) / N(P^{n+m}) covers the support of u -> f(g u) for integral g
  const i64 window = pw(p, n + m);
  bool all = true;
  int idx = 0;
  for (const auto& g : samples) {
    if (g.offset != 0) throw PreconditionError("cusp: sampling window does not cover non-integral g");
    if (tm_det(g) != 1 % g.modulus()) throw InvalidInput("cusp: sample is not in SL_2");
    for (Parabolic par : {Parabolic::upper, Parabolic::lower}) {
      std::vector<i64> counts(pm, 0);
      int support = 0;
      for (i64 t = 0; t < window; ++t) {
        TruncatedMatrix u = par == Parabolic::upper ? TruncatedMatrix::from(p, seed.K, {1, t, 0, 1})
                                                    : TruncatedMatrix::from(p, seed.K, {1, 0, t, 1});
        TruncatedMatrix h = tm_mul(g, u);
        if (!in_congruence_subgroup(h, n)) continue;
        ++support;
        ++counts[lambda_value(lc, h)];
      }
      if (support > 0) ++rep.nonempty_supports;
      for (u64 x : xs) {
        CuspSample row;
        row.label = "g" + std::to_string(idx);
        row.parabolic = par;
        row.x = x;
        row.support = support;
        CycloVec sum = cyclo_zero(p, m);
        for (u64 j = 0; j < pm; ++j) {
          if (counts[j] == 0) continue;
          RootOfUnity z = psi_trivial_on_O(p, PadicFraction{static_cast<i64>(mm(static_cast<i64>(x % pm), static_cast<i64>(j), static_cast<i64>(pm))), m});
          cyclo_add_root(sum, z.e * ipow(p, static_cast<u64>(m - z.k)), counts[j]);
        }
        row.sum = cyclo_canonical(sum);
        row.zero = cyclo_is_zero(sum);
        all = all && row.zero;
        rep.rows.push_back(std::move(row));
      }
    }
    ++idx;
  }
  rep.pass = all;
  return rep;
}

FourierCase fourier_case(const EllipticSeed& seed, int m, u64 x, const TruncatedMatrix& y, const std::string& label,
                         int exact_precision) {
  const u64 p = seed.p;
  FourierCase fc;
  fc.label = label;
  fc.y = y;
  TruncatedMatrix ym = TruncatedMatrix::from(p, seed.K, {0, seed.epsilon, 1, 0}, m);
  TruncatedMatrix z = tm_add(y, tm_scale(ym, static_cast<i64>(x)));
  auto basis = sl2_basis(p, seed.K);
  fc.integral = true;
  int worst = 0;
  std::array<PadicFraction, 3> pairings;
  for (int i = 0; i < 3; ++i) {
    pairings[i] = trace_pairing(z, basis[i]);
    worst = std::max(worst, pairings[i].den_exp);
    if (pairings[i].den_exp > 0) fc.integral = false;
  }
  fc.predicted_full = fc.integral;
  const int e = exact_precision;
  const double cells = std::pow(static_cast<double>(p), 3.0 * e);
  if (e >= 1 && cells <= 20000.0 && worst <= e) {
    fc.exact_ran = true;
    const i64 q = pw(p, e);
    CycloVec sum = cyclo_zero(p, e);
    for (i64 a = 0; a < q; ++a)
      for (i64 b = 0; b < q; ++b)
        for (i64 c = 0; c < q; ++c) {
          // <Z, aH + bE + cF> = a<Z,H> + b<Z,E> + c<Z,F> in p^{-e} Z / Z
          i64 num = 0;
          const i64 coeff[3] = {a, b, c};
          for (int i = 0; i < 3; ++i)
            num = md(num + mm(coeff[i], mm(pairings[i].num, pw(p, e - pairings[i].den_exp), q), q), q);
          PadicFraction f{num, e};
          while (f.den_exp > 0 && f.num % static_cast<i64>(p) == 0) {
            f.num /= static_cast<i64>(p);
            --f.den_exp;
          }
          RootOfUnity r = psi_trivial_on_O(p, f);
          cyclo_add_root(sum, r.e * ipow(p, static_cast<u64>(e - r.k)));
        }
    fc.exact_zero = cyclo_is_zero(sum);
    i64 v = 0;
    if (cyclo_is_integer(sum, &v)) fc.exact_value = v;
    fc.consistent = fc.predicted_full ? (!fc.exact_zero && fc.exact_value == static_cast<i64>(cells)) : fc.exact_zero;
  } else {
    fc.consistent = true;
  }
  return fc;
}

FourierReport fourier_support_check(const EllipticSeed& seed, int m, u64 x, int exact_precision) {
  const u64 p = seed.p;
  if (m < 1) throw InvalidInput("fourier: m must be positive");
  if (seed.K < m + 2) throw PreconditionError("fourier: precision K must be at least m + 2");
  if (x % ipow(p, static_cast<u64>(m)) == 0) throw InvalidInput("fourier: x must lie in O - P^m");
  FourierReport rep;
  rep.p = p;
  rep.m = m;
  rep.K = seed.K;
  rep.x = x;
  rep.exact_precision = exact_precision;
  TruncatedMatrix ym = TruncatedMatrix::from(p, seed.K, {0, seed.epsilon, 1, 0}, m);
  TruncatedMatrix base = tm_scale(ym, -static_cast<i64>(x));
  rep.cases.push_back(fourier_case(seed, m, x, base, "-xY_m", exact_precision));
  rep.cases.push_back(fourier_case(seed, m, x, tm_add(base, TruncatedMatrix::from(p, seed.K, {1, 2, 3, -1})),
                                   "-xY_m+integral", exact_precision));
  rep.cases.push_back(fourier_case(seed, m, x, tm_add(base, TruncatedMatrix::from(p, seed.K, {0, 1, 0, 0}, 1)),
                                   "-xY_m+p^-1 E", exact_precision));
  rep.pass = rep.cases[0].predicted_full && rep.cases[1].predicted_full && !rep.cases[2].predicted_full &&
             std::all_of(rep.cases.begin(), rep.cases.end(), [](const FourierCase& c) { return c.consistent; });
  return rep;
}

} // namespace forge
