#include "forge/ffield.hpp"

#include "forge/error.hpp"

#include <mutex>

namespace forge {

namespace {

using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod g over F_p, g monic.
Poly poly_mod(Poly a, const Poly& g, u64 p) {
  const size_t dg = g.size() - 1;
  trim(a);
  while (a.size() > dg) {
    u64 c = a.back() % p;
    size_t shift = a.size() - 1 - dg;
    if (c)
      for (size_t j = 0; j < dg; ++j) a[shift + j] = (a[shift + j] + (p - c) * g[j]) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(r), g, p);
}

Poly poly_powmod(Poly a, u128 e, const Poly& g, u64 p) {
  Poly r{1};
  r = poly_mod(r, g, p);
  a = poly_mod(a, g, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, g, p);
    e >>= 1;
    if (e) a = poly_mulmod(a, a, g, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    u64 inv = static_cast<u64>(inv_mod(static_cast<i64>(b.back()), static_cast<i64>(p)));
    for (auto& c : b) c = c * inv % p;
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

} // namespace

bool is_irreducible(u64 p, const std::vector<u64>& g) {
  const int d = static_cast<int>(g.size()) - 1;
  if (d < 1 || g.back() != 1) return false;
  if (d == 1) return true;
  if (g[0] % p == 0) return false;
  std::vector<Poly> frob_pows;  // x^{p^k} mod g, k = 1..d
  Poly h{0, 1};
  for (int k = 1; k <= d; ++k) {
    h = poly_powmod(h, p, g, p);
    frob_pows.push_back(h);
  }
  Poly xpoly{0, 1};
  if (frob_pows[d - 1] != poly_mod(xpoly, g, p)) return false;
  for (auto [l, e] : factorize(static_cast<u64>(d))) {
    (void)e;
    Poly t = frob_pows[d / l - 1];
    t.resize(std::max<size_t>(t.size(), 2), 0);
    t[1] = (t[1] + p - 1) % p;
    trim(t);
    Poly gg = poly_gcd(g, t, p);
    if (gg.size() != 1) return false;
  }
  return true;
}

std::vector<u64> smallest_irreducible(u64 p, int d) {
  if (d < 1) throw InvalidInput("smallest_irreducible: degree < 1");
  u128 total = ipow128(p, d);
  for (u128 idx = 0; idx < total; ++idx) {
    Poly g(d + 1, 0);
    u128 t = idx;
    for (int j = 0; j < d; ++j) {
      g[j] = static_cast<u64>(t % p);
      t /= p;
    }
    g[d] = 1;
    if (is_irreducible(p, g)) return g;
  }
  throw Error("no irreducible polynomial found");
}

struct FieldExtension::Cache {
  std::once_flag once;
  FFElem gen;
  std::vector<std::pair<u128, int>> factors;
  std::once_flag factors_once;
};

FieldExtension::FieldExtension(u64 p, int f, int n) : p_(p), f_(f), n_(n) {
  if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  if (f < 1 || n < 1) throw InvalidInput("f and n must be positive");
  if (p >= (1ULL << 20)) throw InvalidInput("p too large for this field model");
  q_ = ipow(p, f);
  (void)ipow128(p, f * n);
  mod_ = smallest_irreducible(p, f * n);
  const int D = degree();
  // frobenius matrix columns: (x^j)^q
  Poly X = poly_powmod(Poly{0, 1}, q_, mod_, p_);
  Poly cur{1};
  cur = poly_mod(cur, mod_, p_);
  frob_.assign(D, std::vector<u64>(D, 0));
  for (int j = 0; j < D; ++j) {
    for (size_t i = 0; i < cur.size(); ++i) frob_[j][i] = cur[i];
    cur = poly_mulmod(cur, X, mod_, p_);
  }
  cache_ = std::make_shared<Cache>();
}

void FieldExtension::reduce(std::vector<u64>& a) const {
  a = poly_mod(std::move(a), mod_, p_);
  a.resize(degree(), 0);
}

FFElem FieldExtension::zero() const { return FFElem{std::vector<u64>(degree(), 0)}; }

FFElem FieldExtension::one() const { return from_int(1); }

FFElem FieldExtension::from_int(i64 v) const {
  FFElem r = zero();
  r.c[0] = static_cast<u64>(mod(v, static_cast<i64>(p_)));
  return r;
}

FFElem FieldExtension::x() const {
  Poly a{0, 1};
  reduce(a);
  return FFElem{a};
}

FFElem FieldExtension::from_coeffs(std::vector<u64> c) const {
  for (auto& v : c) v %= p_;
  reduce(c);
  return FFElem{c};
}

FFElem FieldExtension::from_index(u128 idx) const {
  FFElem r = zero();
  for (int j = 0; j < degree(); ++j) {
    r.c[j] = static_cast<u64>(idx % p_);
    idx /= p_;
  }
  return r;
}

u128 FieldExtension::size() const { return ipow128(p_, degree()); }

bool FieldExtension::is_zero(const FFElem& a) const {
  for (auto v : a.c)
    if (v) return false;
  return true;
}

FFElem FieldExtension::add(const FFElem& a, const FFElem& b) const {
  FFElem r = a;
  for (int j = 0; j < degree(); ++j) r.c[j] = (a.c[j] + b.c[j]) % p_;
  return r;
}

FFElem FieldExtension::sub(const FFElem& a, const FFElem& b) const {
  FFElem r = a;
  for (int j = 0; j < degree(); ++j) r.c[j] = (a.c[j] + p_ - b.c[j]) % p_;
  return r;
}

FFElem FieldExtension::neg(const FFElem& a) const { return sub(zero(), a); }

FFElem FieldExtension::mul(const FFElem& a, const FFElem& b) const {
  Poly r = poly_mulmod(a.c, b.c, mod_, p_);
  r.resize(degree(), 0);
  return FFElem{r};
}

FFElem FieldExtension::scale(const FFElem& a, i64 k) const {
  u64 kk = static_cast<u64>(mod(k, static_cast<i64>(p_)));
  FFElem r = a;
  for (auto& v : r.c) v = v * kk % p_;
  return r;
}

FFElem FieldExtension::pow(const FFElem& a, u128 e) const {
  Poly r = poly_powmod(a.c, e, mod_, p_);
  r.resize(degree(), 0);
  return FFElem{r};
}

FFElem FieldExtension::inv(const FFElem& a) const {
  if (is_zero(a)) throw InvalidInput("inverse of zero");
  return pow(a, size() - 2);
}

FFElem FieldExtension::frobenius(const FFElem& a, i64 k) const {
  k = mod(k, n_);
  FFElem cur = a;
  const int D = degree();
  for (i64 s = 0; s < k; ++s) {
    FFElem nxt = zero();
    for (int j = 0; j < D; ++j) {
      if (!cur.c[j]) continue;
      for (int i = 0; i < D; ++i) nxt.c[i] = (nxt.c[i] + cur.c[j] * frob_[j][i]) % p_;
    }
    cur = std::move(nxt);
  }
  return cur;
}

FFElem FieldExtension::trace(const FFElem& a) const {
  FFElem t = zero();
  FFElem cur = a;
  for (int i = 1; i <= n_; ++i) {
    cur = frobenius(cur, 1);
    t = add(t, cur);
  }
  return t;
}

bool FieldExtension::in_base_field(const FFElem& a) const { return frobenius(a, 1) == a; }

int FieldExtension::orbit_size(const FFElem& a) const {
  FFElem cur = frobenius(a, 1);
  int k = 1;
  while (!(cur == a)) {
    cur = frobenius(cur, 1);
    ++k;
  }
  return k;
}

u128 FieldExtension::order(const FFElem& a) const {
  if (is_zero(a)) throw InvalidInput("order of zero");
  std::call_once(cache_->factors_once, [&] { cache_->factors = factorize_pow_minus_one(p_, degree()); });
  u128 ord = size() - 1;
  for (auto [l, e] : cache_->factors) {
    (void)e;
    while (ord % l == 0 && pow(a, ord / l) == one()) ord /= l;
  }
  return ord;
}

const FFElem& FieldExtension::generator() const {
  std::call_once(cache_->once, [&] {
    const u128 full = size() - 1;
    for (u128 idx = 1; idx < size(); ++idx) {
      FFElem c = from_index(idx);
      if (order(c) == full) {
        cache_->gen = c;
        return;
      }
    }
    throw Error("no multiplicative generator found");
  });
  return cache_->gen;
}

FieldExtension build_extension(u64 p, int f, int n) { return FieldExtension(p, f, n); }

FFElem frobenius(const FieldExtension& ext, const FFElem& x, i64 k) { return ext.frobenius(x, k); }

FFElem find_trace_zero_generator(const FieldExtension& ext) {
  const int n = ext.n();
  if (n < 2) throw PreconditionError("trace-zero generator needs n >= 2");
  if (n % static_cast<i64>(ext.p()) == 0) throw PreconditionError("trace-zero generator needs p not dividing n");
  for (u128 idx = 1; idx < ext.size(); ++idx) {
    FFElem e0 = ext.from_index(idx);
    if (ext.orbit_size(e0) != n) continue;
    return ext.sub(ext.scale(e0, n), ext.trace(e0));
  }
  throw Error("no generator of the extension found");
}

FFElem generator_power(const FieldExtension& ext, u128 exponent) { return ext.pow(ext.generator(), exponent); }

} // namespace forge
