#include "forge/depthcalc.hpp"

#include "forge/error.hpp"
#include "forge/ffield.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace forge {

namespace {

std::int64_t floor_div(const Rational& x) {
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() < 0 && Rational(q) != x) --q;
  return q;
}

std::int64_t ceil_div(const Rational& x) {
  std::int64_t f = floor_div(x);
  return Rational(f) == x ? f : f + 1;
}

} // namespace

LevelWindow level_window(int e_F, int m) {
  if (e_F < 1 || m < 1) throw InvalidInput("level_window: e_F and m must be positive");
  int n = 2 * e_F * m - 1;
  return LevelWindow{n, Rational(n), Rational(n + 1)};
}

Rational FilteredLattice::next_jump_above(const Rational& x) const {
  // smallest offset + k/jump_den > x
  Rational k = (x - offset) * jump_den;
  std::int64_t kk = floor_div(k) + 1;
  return offset + Rational(kk, jump_den);
}

ImageOrder character_image_order(const Rational& r, const FilteredLattice& lat) {
  if (lat.e_F < 1 || lat.jump_den < 1) throw InvalidInput("character_image_order: bad lattice");
  ImageOrder out;
  // which level window, if any, contains r
  if (r > 0) {
    std::int64_t m = ceil_div(r / (2 * lat.e_F));
    if (m >= 1 && level_window(lat.e_F, static_cast<int>(m)).contains(r)) {
      out.in_window = true;
      out.window_m = static_cast<int>(m);
    }
  }
  out.s_min = lat.next_jump_above(r / 2);
  if (r <= 0 || out.s_min > r) {
    out.order = 1;
    out.exponent = 0;
    out.t = -1;
  } else {
    // values of valuation >= s_min - r, so the deepest pole is -t
    out.t = floor_div(r - out.s_min);
    out.exponent = static_cast<int>(out.t / lat.e_F + 1);
    out.order = ipow(lat.p, out.exponent);
  }
  out.bound_ok = !out.in_window || out.exponent == out.window_m;
  return out;
}

bool LevelMap::well_defined() const {
  const u64 M = modulus();
  if (labels.size() != images.size() || orders.size() != images.size()) return false;
  for (size_t j = 0; j < images.size(); ++j)
    if (static_cast<u64>(static_cast<u128>(orders[j] % M) * (images[j] % M) % M) != 0) return false;
  return true;
}

u64 LevelMap::image_order() const {
  const u64 M = modulus();
  u64 g = M;
  for (auto v : images) g = std::gcd(g, v % M);
  return M / g;
}

LevelMap factor_level_map(const Rational& r, const FilteredLattice& lat, int m, const std::vector<std::int64_t>& coords) {
  if (lat.e_F != 1 || lat.jump_den != 1 || lat.offset.denominator() != 1 || r.denominator() != 1)
    throw Unsupported("factor_level_map models F = Q_p with integer jumps only");
  if (static_cast<int>(coords.size()) != lat.rank) throw InvalidInput("factor_level_map: coords length != rank");
  ImageOrder io = character_image_order(r, lat);
  if (io.exponent != m) throw PreconditionError("factor_level_map: image order is not p^m");
  const u64 p = lat.p;
  const std::int64_t R = r.numerator();
  const std::int64_t smin = io.s_min.numerator();
  const int len = static_cast<int>(R + 1 - smin);  // quotient p^{smin} L / p^{R+1} L
  LevelMap lm;
  lm.p = p;
  lm.m = m;
  const u64 M = lm.modulus();
  const u64 gen_order = ipow(p, len);
  lm.domain_order = 1;
  for (int j = 0; j < lat.rank; ++j) {
    lm.labels.push_back("p^" + std::to_string(smin) + " e" + std::to_string(j + 1));
    lm.orders.push_back(gen_order);
    lm.images.push_back(static_cast<u64>(mod(coords[j], static_cast<i64>(M))));
    lm.domain_order *= gen_order;
  }
  if (!lm.surjective()) throw PreconditionError("factor_level_map: functional has image smaller than p^m");
  // explicit table: class of <X, v> in P^{-t}/P, read in Z/p^{t+1} via x -> p^t x
  if (lm.domain_order <= 200000) {
    const u64 Pt1 = ipow(p, static_cast<int>(io.t + 1));
    std::vector<u64> c(lat.rank, 0);
    bool ok = true;
    for (u64 idx = 0; idx < lm.domain_order && ok; ++idx) {
      u64 t = idx;
      for (int j = 0; j < lat.rank; ++j) {
        c[j] = t % gen_order;
        t /= gen_order;
      }
      // <X, sum c_j p^smin e_j> = (sum c_j u_j) p^{smin - R}; times p^t = p^{R - smin}
      i64 num = 0;
      for (int j = 0; j < lat.rank; ++j) num = mod(num + mod(coords[j], static_cast<i64>(Pt1)) * static_cast<i64>(c[j] % Pt1), static_cast<i64>(Pt1));
      u64 direct = static_cast<u64>(num) % M;
      u64 via = 0;
      for (int j = 0; j < lat.rank; ++j) via = (via + lm.images[j] * (c[j] % M)) % M;
      ok = direct == via;
    }
    lm.table_verified = ok;
    if (!ok) throw Error("factor_level_map: table disagrees with generator images");
  }
  return lm;
}

namespace {

// O_E / p^K for E = (unramified degree f) then Eisenstein varpi^e = p.
// An element is e blocks of f coefficients: sum_i varpi^i * poly_i(x).
struct LocalRing {
  u64 p;
  int f, e, K;
  i64 pk;
  std::vector<u64> g;  // monic lift of the residue modulus

  using Elt = std::vector<i64>;

  Elt one() const {
    Elt r(e * f, 0);
    r[0] = 1;
    return r;
  }

  Elt mul(const Elt& a, const Elt& b) const {
    // product in (Z/p^K)[x]/(g) [varpi] / (varpi^e - p)
    std::vector<std::vector<i64>> acc(2 * e - 1, std::vector<i64>(2 * f - 1, 0));
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j)
        for (int s = 0; s < f; ++s) {
          i64 av = a[i * f + s];
          if (!av) continue;
          for (int t = 0; t < f; ++t) {
            i64 bv = b[j * f + t];
            if (!bv) continue;
            acc[i + j][s + t] = mod(acc[i + j][s + t] + static_cast<i64>(mulmod(static_cast<u64>(av), static_cast<u64>(bv), static_cast<u64>(pk))), pk);
          }
        }
    Elt out(e * f, 0);
    for (int i = 2 * e - 2; i >= 0; --i) {
      auto& poly = acc[i];
      for (int d = 2 * f - 2; d >= f; --d) {
        i64 c = poly[d];
        if (!c) continue;
        for (int t = 0; t < f; ++t) poly[d - f + t] = mod(poly[d - f + t] - c * static_cast<i64>(g[t]), pk);
        poly[d] = 0;
      }
      if (i >= e) {
        for (int t = 0; t < f; ++t) acc[i - e][t] = mod(acc[i - e][t] + static_cast<i64>(p) * poly[t], pk);
      } else {
        for (int t = 0; t < f; ++t) out[i * f + t] = poly[t];
      }
    }
    return out;
  }

  Elt pow(Elt a, u64 n) const {
    Elt r = one();
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }
};

} // namespace

LevelMap torus_power_filtration(u64 q, int e, int m, int K) {
  auto pp = prime_power(q);
  if (!pp) throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
  const u64 p = pp->first;
  const int f = pp->second;
  if (e < 1 || m < 1) throw InvalidInput("torus_power_filtration: e and m must be positive");
  if (e % static_cast<i64>(p) == 0) throw Unsupported("wild ramification is not modelled");
  if (p == 2 && e > 1) throw Unsupported("p = 2 is only modelled for e = 1");
  const int need = p == 2 ? std::max(m + 3, 2 * m + 1) : std::max(m + 2, 2 * m);
  if (K < need) throw PreconditionError("precision insufficient: need K >= " + std::to_string(need));

  LocalRing R{p, f, e, K, static_cast<i64>(ipow(p, K)), smallest_irreducible(p, f)};
  // U_1 = 1 + varpi O: enumerate all residues of varpi O mod p^K = varpi^{eK}
  const u128 count128 = ipow128(q, e * K - 1);
  if (count128 > 400000) throw EffortBoundExceeded("principal unit group too large to enumerate");
  const u64 count = static_cast<u64>(count128);
  // coordinates in the basis varpi^j x^t with digit bounds: the varpi-adic expansion
  // of an element of varpi O has digits for varpi^1 .. varpi^{eK-1} in k_E
  std::vector<LocalRing::Elt> U1;
  U1.reserve(count);
  for (u64 idx = 0; idx < count; ++idx) {
    LocalRing::Elt x = R.one();
    u64 t = idx;
    LocalRing::Elt pi_pow = R.one();
    LocalRing::Elt pi(e * f, 0);
    if (e == 1) pi[0] = static_cast<i64>(p); else pi[f] = 1;
    for (int j = 1; j < e * K; ++j) {
      pi_pow = R.mul(pi_pow, pi);
      for (int s = 0; s < f; ++s) {
        i64 digit = static_cast<i64>(t % p);
        t /= p;
        if (!digit) continue;
        LocalRing::Elt xs(e * f, 0);
        xs[s] = digit;
        LocalRing::Elt term = R.mul(xs, pi_pow);
        for (int c = 0; c < e * f; ++c) x[c] = mod(x[c] + term[c], R.pk);
      }
    }
    U1.push_back(std::move(x));
  }

  auto powers = [&](u64 exp) {
    std::map<LocalRing::Elt, int> s;
    for (const auto& u : U1) s.emplace(R.pow(u, exp), 0);
    return s;
  };
  std::map<LocalRing::Elt, int> Um = powers(ipow(p, m - 1));
  std::map<LocalRing::Elt, int> U2m = powers(ipow(p, 2 * m - 1));

  // cosets of U_{2m} in U_m
  std::map<LocalRing::Elt, LocalRing::Elt> coset_of;
  std::vector<LocalRing::Elt> reps;
  for (const auto& [u, unused] : Um) {
    (void)unused;
    if (coset_of.count(u)) continue;
    for (const auto& [h, unused2] : U2m) {
      (void)unused2;
      coset_of.emplace(R.mul(u, h), u);
    }
    reps.push_back(u);
  }
  const u64 Q = reps.size();
  const u64 M = ipow(p, m);
  auto cls = [&](const LocalRing::Elt& x) { return coset_of.at(x); };
  auto qorder = [&](const LocalRing::Elt& g) {
    u64 k = 1;
    LocalRing::Elt cur = g;
    while (!U2m.count(cur)) {
      cur = R.mul(cur, g);
      ++k;
    }
    return k;
  };

  LocalRing::Elt u;
  bool found = false;
  for (const auto& r : reps)
    if (qorder(r) == M) {
      u = r;
      found = true;
      break;
    }
  if (!found) throw PreconditionError("no element of order p^m in U_m/U_{2m}");

  // successive extension of lambda(u) = 1
  std::map<LocalRing::Elt, u64> lambda;  // coset rep -> value
  LocalRing::Elt cur = cls(R.one());
  for (u64 a = 0; a < M; ++a) {
    lambda[cur] = a;
    cur = cls(R.mul(cur, u));
  }
  LevelMap lm;
  lm.p = p;
  lm.m = m;
  lm.domain_order = Q;
  lm.labels.push_back("u");
  lm.orders.push_back(M);
  lm.images.push_back(1 % M);
  int gi = 0;
  for (const auto& g : reps) {
    if (lambda.count(g)) continue;
    // smallest k with g^{p^k} in H
    u64 pk = 1;
    LocalRing::Elt gp = g;
    while (!lambda.count(cls(gp))) {
      gp = R.pow(gp, p);
      pk *= p;
    }
    u64 a = lambda.at(cls(gp));
    if (a % pk) throw Error("torus_power_filtration: extension step failed");
    u64 val = (a / pk) % M;
    // H <- H <g>
    std::vector<std::pair<LocalRing::Elt, u64>> old(lambda.begin(), lambda.end());
    LocalRing::Elt gj = R.one();
    for (u64 j = 0; j < pk; ++j) {
      for (const auto& [h, hv] : old) lambda[cls(R.mul(h, gj))] = (hv + j * val) % M;
      gj = R.mul(gj, g);
    }
    lm.labels.push_back("g" + std::to_string(++gi));
    lm.orders.push_back(qorder(g));
    lm.images.push_back(val);
  }
  if (lambda.size() != Q) throw Error("torus_power_filtration: quotient not exhausted");
  // homomorphism check on all pairs (or a deterministic stride when large)
  const u64 stride = Q * Q <= 1000000 ? 1 : (Q * Q) / 1000000 + 1;
  bool ok = true;
  for (u64 idx = 0; idx < Q * Q && ok; idx += stride) {
    const auto& x = reps[idx / Q];
    const auto& y = reps[idx % Q];
    ok = lambda.at(cls(R.mul(x, y))) == (lambda.at(x) + lambda.at(y)) % M;
  }
  lm.table_verified = ok;
  if (!ok) throw Error("torus_power_filtration: lambda is not a homomorphism");
  return lm;
}

LevelMap combine_product(const std::vector<LevelMap>& maps) {
  if (maps.empty()) throw InvalidInput("combine_product: no maps");
  LevelMap out;
  out.p = maps[0].p;
  out.m = maps[0].m;
  out.domain_order = 1;
  out.table_verified = true;
  for (size_t i = 0; i < maps.size(); ++i) {
    const auto& mp = maps[i];
    if (mp.p != out.p || mp.m != out.m) throw InvalidInput("combine_product: target mismatch");
    for (size_t j = 0; j < mp.images.size(); ++j) {
      out.labels.push_back("f" + std::to_string(i + 1) + "." + mp.labels[j]);
      out.orders.push_back(mp.orders[j]);
      out.images.push_back(mp.images[j]);
    }
    out.domain_order = static_cast<u64>(static_cast<u128>(out.domain_order) * mp.domain_order);
    out.table_verified = out.table_verified && mp.table_verified;
  }
  return out;
}

} // namespace forge
