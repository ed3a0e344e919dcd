#include "forge/congruence.hpp"

#include "forge/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace forge {

namespace {

i64 pow_i64(u64 p, int e) { return static_cast<i64>(ipow(p, static_cast<u64>(e))); }

i64 modp(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

// Reduces a cyclic vector of length p^m (T^{p^m} = 1) into the basis 1..T^{d-1}.
std::vector<i64> reduce_cyclic(std::vector<i64> c, int d) {
  i64 top = c[d];
  c.resize(d);
  for (auto& v : c) v -= top;
  return c;
}

} // namespace

AmRing am_ring(u64 p, int m, int K) {
  if (!is_prime(p)) throw InvalidInput("am_ring: p must be prime");
  if (m < 1) throw InvalidInput("am_ring: m must be positive");
  if (K < m) throw PreconditionError("am_ring: precision K must be at least m");
  AmRing R;
  R.p = p;
  R.m = m;
  R.K = K;
  R.rank = static_cast<int>(pow_i64(p, m) - 1);
  R.pk = pow_i64(p, K);
  return R;
}

AmElement am_zero(const AmRing& R) { return AmElement{std::vector<i64>(R.rank, 0)}; }

AmElement am_one(const AmRing& R) {
  AmElement x = am_zero(R);
  x.c[0] = 1 % R.pk;
  return x;
}

AmElement am_from(const AmRing& R, std::vector<i64> coeffs) {
  if (static_cast<int>(coeffs.size()) > R.rank + 1) throw InvalidInput("am_from: too many coefficients");
  coeffs.resize(R.rank + 1, 0);
  AmElement x{reduce_cyclic(coeffs, R.rank)};
  for (auto& v : x.c) v = modp(v, R.pk);
  return x;
}

AmElement am_add(const AmRing& R, const AmElement& x, const AmElement& y) {
  AmElement z = x;
  for (int i = 0; i < R.rank; ++i) z.c[i] = modp(x.c[i] + y.c[i], R.pk);
  return z;
}

AmElement am_sub(const AmRing& R, const AmElement& x, const AmElement& y) {
  AmElement z = x;
  for (int i = 0; i < R.rank; ++i) z.c[i] = modp(x.c[i] - y.c[i], R.pk);
  return z;
}

AmElement am_mul(const AmRing& R, const AmElement& x, const AmElement& y) {
  const int n = R.rank + 1;
  std::vector<i64> c(n, 0);
  for (int i = 0; i < R.rank; ++i) {
    if (x.c[i] == 0) continue;
    for (int j = 0; j < R.rank; ++j) {
      if (y.c[j] == 0) continue;
      i64 prod = static_cast<i64>((static_cast<__int128>(x.c[i]) * y.c[j]) % R.pk);
      c[(i + j) % n] = modp(c[(i + j) % n] + prod, R.pk);
    }
  }
  AmElement z{reduce_cyclic(c, R.rank)};
  for (auto& v : z.c) v = modp(v, R.pk);
  return z;
}

AmElement psi_character(const AmRing& R, i64 a) {
  const int n = R.rank + 1;
  std::vector<i64> c(n, 0);
  c[modp(a, n)] = 1;
  AmElement z{reduce_cyclic(c, R.rank)};
  for (auto& v : z.c) v = modp(v, R.pk);
  return z;
}

u64 am_mod_T_minus_1(const AmRing& R, const AmElement& x) {
  i64 mod = pow_i64(R.p, std::min(R.m, R.K));
  i64 s = 0;
  for (i64 v : x.c) s = modp(s + v, mod);
  return static_cast<u64>(s);
}

IntMatrix am_power_matrix(u64 p, int m, i64 a) {
  const int d = static_cast<int>(pow_i64(p, m) - 1);
  const int n = d + 1;
  IntMatrix M(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<i64> c(n, 0);
    c[modp(a + j, n)] = 1;
    auto col = reduce_cyclic(c, d);
    for (int i = 0; i < d; ++i) M(i, j) = col[i];
  }
  return M;
}

// ---------------------------------------------------------------------------
// models

void finalize_model(FiniteModel& model) {
  if (!is_prime(model.p)) throw InvalidInput("model: p must be prime");
  if (model.m < 1) throw InvalidInput("model: m must be positive");
  if (model.lambda_images.size() != model.u_p_gens.size())
    throw InvalidInput("model: one lambda image per U_p generator is required");
  const u64 pm = ipow(model.p, static_cast<u64>(model.m));
  model.u_s = model.gamma_s.subgroup(model.u_s_gens);
  model.u_p = model.gamma_p.subgroup(model.u_p_gens);

  model.lambda.clear();
  model.lambda[model.gamma_p.identity()] = 0;
  std::deque<int> queue{model.gamma_p.identity()};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (size_t g = 0; g < model.u_p_gens.size(); ++g) {
      int b = model.gamma_p.mul(a, model.u_p_gens[g]);
      u64 v = (model.lambda[a] + model.lambda_images[g] % pm) % pm;
      auto it = model.lambda.find(b);
      if (it == model.lambda.end()) {
        model.lambda[b] = v;
        queue.push_back(b);
      } else if (it->second != v) {
        throw InvalidInput("model: lambda is not a homomorphism on U_p");
      }
    }
  }

  const int P = model.gamma_p.order();
  std::set<int> delta{0};
  std::deque<int> dq{0};
  std::vector<int> gens;
  for (auto [s, t] : model.delta_gens) gens.push_back(s * P + t);
  while (!dq.empty()) {
    int a = dq.front();
    dq.pop_front();
    for (int g : gens) {
      int b = model.gamma_s.mul(a / P, g / P) * P + model.gamma_p.mul(a % P, g % P);
      if (delta.insert(b).second) dq.push_back(b);
    }
  }
  model.delta.assign(delta.begin(), delta.end());
}

namespace {

FiniteModel heisenberg_base(u64 p, int m) {
  const int N = static_cast<int>(ipow(p, static_cast<u64>(m)));
  FiniteModel model;
  model.p = p;
  model.m = m;
  model.gamma_s = FiniteGroup::symmetric(3);
  model.gamma_p = FiniteGroup::heisenberg(N);
  model.u_s_gens = {model.gamma_s.index_of({1, 0, 2})};
  model.u_p_gens = {model.gamma_p.index_of({1 % N, 0, 0}), model.gamma_p.index_of({0, 0, 1 % N})};
  model.lambda_images = {1, 0};
  return model;
}

FiniteModel cyclic_base(u64 p, int m, int n, std::vector<u64> lambda) {
  FiniteModel model;
  model.p = p;
  model.m = m;
  model.gamma_s = FiniteGroup::symmetric(3);
  model.gamma_p = FiniteGroup::cyclic(n);
  model.u_s_gens = {model.gamma_s.index_of({1, 0, 2})};
  model.u_p_gens = {model.gamma_p.index_of({1 % n})};
  model.lambda_images = std::move(lambda);
  return model;
}

} // namespace

FiniteModel builtin_model(const std::string& name, u64 p, int m) {
  if (!is_prime(p)) throw InvalidInput("model: p must be prime");
  if (m < 1 || m > 4) throw InvalidInput("model: m must lie in 1..4");
  FiniteModel model;
  if (name == "heisenberg") {
    model = heisenberg_base(p, m);
  } else if (name == "heisenberg-nonfree") {
    model = heisenberg_base(p, m);
    model.delta_gens = {{model.gamma_s.identity(), model.u_p_gens[0]}};
  } else if (name == "heisenberg-zero") {
    model = heisenberg_base(p, m);
    model.lambda_images = {0, 0};
  } else if (name == "cyclic") {
    model = cyclic_base(p, m, static_cast<int>(ipow(p, static_cast<u64>(m))), {1});
  } else if (name == "cyclic-v") {
    model = cyclic_base(p, m, static_cast<int>(p * p), {m >= 2 ? ipow(p, static_cast<u64>(m - 2)) : 1});
  } else if (name == "sign") {
    model = cyclic_base(p, m, 2, {0});
  } else {
    throw InvalidInput("unknown model: " + name);
  }
  model.name = name;
  finalize_model(model);
  return model;
}

std::vector<IntMatrix> builtin_vmodule(const std::string& name, u64 p) {
  if (name == "cyclic-v") {
    IntMatrix g = IntMatrix::identity(2);
    g(0, 1) = static_cast<i64>(p * p);
    return {g};
  }
  if (name == "sign") {
    IntMatrix g(1, 1);
    g(0, 0) = -1;
    return {g};
  }
  throw InvalidInput("model has no built-in coefficient module: " + name);
}

namespace {

FiniteGroup group_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "symmetric") return FiniteGroup::symmetric(j.at("n").get<int>());
  if (kind == "cyclic") return FiniteGroup::cyclic(j.at("n").get<int>());
  if (kind == "heisenberg") return FiniteGroup::heisenberg(j.at("n").get<int>());
  if (kind == "permutations")
    return FiniteGroup::permutations(j.at("degree").get<int>(),
                                     j.at("generators").get<std::vector<FiniteGroup::Elem>>());
  throw InvalidInput("unknown group kind: " + kind);
}

int lookup(const FiniteGroup& g, const FiniteGroup::Elem& e) {
  if (!g.contains(e)) throw InvalidInput("element not in " + g.name());
  return g.index_of(e);
}

} // namespace

FiniteModel model_from_json(const nlohmann::json& j) {
  try {
    FiniteModel model;
    model.name = j.value("name", std::string("custom"));
    model.p = j.at("p").get<u64>();
    model.m = j.at("m").get<int>();
    if (!is_prime(model.p) || model.m < 1 || model.m > 6) throw InvalidInput("model: bad p or m");
    model.gamma_s = group_from_json(j.at("gamma_s"));
    model.gamma_p = group_from_json(j.at("gamma_p"));
    for (const auto& e : j.at("u_s")) model.u_s_gens.push_back(lookup(model.gamma_s, e.get<FiniteGroup::Elem>()));
    for (const auto& e : j.at("u_p")) model.u_p_gens.push_back(lookup(model.gamma_p, e.get<FiniteGroup::Elem>()));
    model.lambda_images = j.at("lambda").get<std::vector<u64>>();
    if (j.contains("delta"))
      for (const auto& pair : j.at("delta"))
        model.delta_gens.emplace_back(lookup(model.gamma_s, pair.at(0).get<FiniteGroup::Elem>()),
                                      lookup(model.gamma_p, pair.at(1).get<FiniteGroup::Elem>()));
    finalize_model(model);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("model JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// orbits

OrbitData build_orbits(const FiniteModel& model) {
  const int S = model.gamma_s.order(), P = model.gamma_p.order();
  const int total = S * P;
  auto prod = [&](int a, int s, int t) { return model.gamma_s.mul(a / P, s) * P + model.gamma_p.mul(a % P, t); };

  OrbitData od;
  od.class_of.assign(total, -1);
  for (int g = 0; g < total; ++g) {
    if (od.class_of[g] >= 0) continue;
    int z = od.z_count++;
    od.rep_elem.push_back(g);
    for (int d : model.delta) {
      int h = model.gamma_s.mul(d / P, g / P) * P + model.gamma_p.mul(d % P, g % P);
      od.class_of[h] = z;
    }
  }

  auto act = [&](int z, int s, int t) { return od.class_of[prod(od.rep_elem[z], s, t)]; };

  od.orbit_of.assign(od.z_count, -1);
  od.transport.assign(od.z_count, {0, 0});
  for (int z0 = 0; z0 < od.z_count; ++z0) {
    if (od.orbit_of[z0] >= 0) continue;
    Orbit orb;
    orb.rep = z0;
    int id = static_cast<int>(od.orbits.size());
    od.orbit_of[z0] = id;
    od.transport[z0] = {model.gamma_s.identity(), model.gamma_p.identity()};
    std::deque<int> queue{z0};
    while (!queue.empty()) {
      int z = queue.front();
      queue.pop_front();
      orb.members.push_back(z);
      auto [us, up] = od.transport[z];
      auto visit = [&](int s, int t) {
        int w = act(z, s, t);
        if (od.orbit_of[w] >= 0) return;
        od.orbit_of[w] = id;
        od.transport[w] = {model.gamma_s.mul(us, s), model.gamma_p.mul(up, t)};
        queue.push_back(w);
      };
      for (int s : model.u_s_gens) visit(s, model.gamma_p.identity());
      for (int t : model.u_p_gens) visit(model.gamma_s.identity(), t);
    }
    std::sort(orb.members.begin(), orb.members.end());
    std::set<int> stab;
    for (int s : model.u_s)
      for (int t : model.u_p)
        if (act(z0, s, t) == z0) stab.insert(t);
    orb.stab_p.assign(stab.begin(), stab.end());
    if (orb.stab_p.size() > 1) od.free_p_action = false;
    od.orbits.push_back(std::move(orb));
  }
  return od;
}

// ---------------------------------------------------------------------------
// coefficients

namespace {

IntMatrix reduce(IntMatrix a, u64 modulus) {
  if (modulus == 0) return a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = modp(a(i, j), static_cast<i64>(modulus));
  return a;
}

IntMatrix mulmod_matrix(const IntMatrix& a, const IntMatrix& b, u64 modulus) {
  IntMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      __int128 s = 0;
      for (int k = 0; k < a.cols(); ++k) s += static_cast<__int128>(a(i, k)) * b(k, j);
      out(i, j) = modulus == 0 ? static_cast<i64>(s) : static_cast<i64>(((s % modulus) + modulus) % modulus);
    }
  return out;
}

} // namespace

Coefficients coeff_trivial(const FiniteModel& model, int N) {
  if (N < 1) throw InvalidInput("coefficients: N must be positive");
  Coefficients c;
  c.kind = CoeffKind::trivial;
  c.rank = N;
  c.modulus = ipow(model.p, static_cast<u64>(model.m));
  for (int u : model.u_p) c.rho[u] = IntMatrix::identity(N);
  return c;
}

Coefficients coeff_am_psi(const FiniteModel& model) {
  Coefficients c;
  c.kind = CoeffKind::am_psi;
  c.rank = static_cast<int>(ipow(model.p, static_cast<u64>(model.m)) - 1);
  c.modulus = 0;
  for (int u : model.u_p) c.rho[u] = am_power_matrix(model.p, model.m, static_cast<i64>(model.lambda.at(u)));
  return c;
}

Coefficients coeff_am_quotient(const FiniteModel& model) {
  AmRing R = am_ring(model.p, model.m, model.m);
  Coefficients c;
  c.kind = CoeffKind::am_quotient;
  c.rank = 1;
  c.modulus = ipow(model.p, static_cast<u64>(model.m));
  for (int u : model.u_p) {
    IntMatrix x(1, 1);
    x(0, 0) = static_cast<i64>(am_mod_T_minus_1(R, psi_character(R, static_cast<i64>(model.lambda.at(u)))));
    c.rho[u] = x;
  }
  return c;
}

Coefficients coeff_vmodule(const FiniteModel& model, const std::vector<IntMatrix>& gens, u64 modulus) {
  if (gens.size() != model.u_p_gens.size()) throw InvalidInput("coefficients: one matrix per U_p generator");
  if (gens.empty()) throw InvalidInput("coefficients: no generators");
  const int r = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != r || g.cols() != r) throw InvalidInput("coefficients: generator matrices must be square of equal size");
  Coefficients c;
  c.kind = CoeffKind::vmodule;
  c.rank = r;
  c.modulus = modulus;
  const auto& G = model.gamma_p;
  c.rho[G.identity()] = IntMatrix::identity(r);
  std::deque<int> queue{G.identity()};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < gens.size(); ++i) {
      int b = G.mul(a, model.u_p_gens[i]);
      IntMatrix v = mulmod_matrix(c.rho[a], reduce(gens[i], modulus), modulus);
      auto it = c.rho.find(b);
      if (it == c.rho.end()) {
        c.rho[b] = v;
        queue.push_back(b);
      } else if (!(it->second == v)) {
        throw InvalidInput("coefficients: generator matrices do not define a representation of U_p");
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// spaces

bool EquivariantSpace::full() const {
  return dimension == static_cast<int>(orbits.orbits.size());
}

namespace {

BigMatrix stacked_fixed_system(const Coefficients& coeff, const std::vector<int>& stab) {
  std::vector<const IntMatrix*> mats;
  std::set<std::vector<i64>> seen;
  for (int t : stab) {
    const IntMatrix& r = coeff.rho.at(t);
    if (r == IntMatrix::identity(coeff.rank)) continue;
    if (seen.insert(r.data()).second) mats.push_back(&r);
  }
  BigMatrix A(static_cast<int>(mats.size()) * coeff.rank, coeff.rank);
  for (size_t k = 0; k < mats.size(); ++k)
    for (int i = 0; i < coeff.rank; ++i)
      for (int j = 0; j < coeff.rank; ++j)
        A(static_cast<int>(k) * coeff.rank + i, j) = BigInt((*mats[k])(i, j) - (i == j ? 1 : 0));
  return A;
}

} // namespace

EquivariantSpace build_space(const FiniteModel& model, const Coefficients& coeff) {
  return build_space(model, build_orbits(model), coeff);
}

EquivariantSpace build_space(const FiniteModel& model, const OrbitData& od, const Coefficients& coeff) {
  EquivariantSpace sp;
  sp.orbits = od;
  sp.coeff = coeff;
  int e = 0;
  if (coeff.modulus != 0) {
    u64 rest = coeff.modulus;
    while (rest % model.p == 0) {
      rest /= model.p;
      ++e;
    }
    if (rest != 1) throw InvalidInput("coefficients: modulus must be a power of p");
  }
  for (const auto& orb : od.orbits) {
    BigMatrix A = stacked_fixed_system(coeff, orb.stab_p);
    if (coeff.modulus == 0) {
      int k;
      BigMatrix basis;
      if (A.rows() == 0) {
        k = coeff.rank;
        basis = BigMatrix::identity(coeff.rank);
      } else {
        basis = integer_kernel(A);
        k = basis.cols();
      }
      sp.orbit_rank.push_back(k);
      sp.orbit_length.push_back(0);
      sp.orbit_basis.push_back(basis);
      sp.rank += k;
      if (k == coeff.rank) sp.dimension += 1;
    } else {
      int len;
      if (A.rows() == 0) {
        len = e * coeff.rank;
      } else {
        auto inv = smith_invariants(A);
        len = e * (coeff.rank - static_cast<int>(inv.size()));
        for (const auto& d : inv) {
          int v = 0;
          BigInt x = d < 0 ? BigInt(-d) : d;
          while (v < e && x % model.p == 0) {
            x /= model.p;
            ++v;
          }
          len += v;
        }
      }
      sp.orbit_length.push_back(len);
      sp.orbit_rank.push_back(0);
      sp.length += len;
      if (len == e * coeff.rank) sp.dimension += 1;
    }
  }
  return sp;
}

// ---------------------------------------------------------------------------
// Hecke operators

HeckeOperator hecke_operator(const FiniteModel& model, int gamma) {
  const auto& G = model.gamma_s;
  if (gamma < 0 || gamma >= G.order()) throw InvalidInput("hecke: gamma out of range");
  HeckeOperator op;
  op.gamma = gamma;
  std::set<int> reps;
  for (int u : model.u_s) {
    int g = G.mul(u, gamma);
    int best = g;
    for (int v : model.u_s) best = std::min(best, G.mul(g, v));
    reps.insert(best);
  }
  op.coset_reps.assign(reps.begin(), reps.end());
  return op;
}

std::vector<int> double_coset_reps(const FiniteModel& model) {
  const auto& G = model.gamma_s;
  std::vector<char> seen(G.order(), 0);
  std::vector<int> reps;
  for (int g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    reps.push_back(g);
    for (int a : model.u_s)
      for (int b : model.u_s) seen[G.mul(G.mul(a, g), b)] = 1;
  }
  return reps;
}

IntMatrix hecke_matrix(const FiniteModel& model, const EquivariantSpace& space, const HeckeOperator& op) {
  const auto& od = space.orbits;
  const int P = model.gamma_p.order();
  const int r = space.coeff.rank;
  const int n = static_cast<int>(od.orbits.size());
  IntMatrix H(n * r, n * r);
  for (int o = 0; o < n; ++o) {
    int rep = od.rep_elem[od.orbits[o].rep];
    for (int gi : op.coset_reps) {
      int g = model.gamma_s.mul(rep / P, gi) * P + rep % P;
      int z = od.class_of[g];
      int o2 = od.orbit_of[z];
      int up = od.transport[z].second;
      const IntMatrix& rho = space.coeff.rho.at(model.gamma_p.inverse(up));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) H(o * r + i, o2 * r + j) += rho(i, j);
    }
  }
  return reduce(H, space.coeff.modulus);
}

// ---------------------------------------------------------------------------
// congruence theorem

namespace {

std::string elem_string(const FiniteGroup::Elem& e) {
  std::string s = "[";
  for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

bool all_identity(const Coefficients& c) {
  for (const auto& [u, m] : c.rho)
    if (!(m == IntMatrix::identity(c.rank))) return false;
  return true;
}

// Left: coefficients `left` of rank N over Z/p^m. Right: N copies of A_m/(T-1).
CongruenceReport compare_with_quotient(const FiniteModel& model, const Coefficients& left) {
  const int N = left.rank;
  const u64 pm = ipow(model.p, static_cast<u64>(model.m));
  if (left.modulus != pm) throw PreconditionError("congruence: left coefficients must be taken mod p^m");
  OrbitData od = build_orbits(model);
  Coefficients right = coeff_am_quotient(model);
  EquivariantSpace L = build_space(model, od, left);
  EquivariantSpace R = build_space(model, od, right);

  CongruenceReport rep;
  rep.model = model.name;
  rep.p = model.p;
  rep.m = model.m;
  rep.N = N;
  rep.z_count = od.z_count;
  rep.orbit_count = static_cast<int>(od.orbits.size());
  rep.free_action = od.free_p_action;
  rep.left_length = L.length;
  rep.right_length = N * R.length;
  rep.left_action_trivial = all_identity(left);
  rep.induced_action_trivial = all_identity(right);

  AmRing ring = am_ring(model.p, model.m, model.m);
  u64 c = am_mod_T_minus_1(ring, am_one(ring));
  const int n = rep.orbit_count;
  rep.iso_bijective = c % model.p != 0 && rep.left_action_trivial && rep.induced_action_trivial &&
                      rep.left_length == rep.right_length;

  // Phi sends coordinate (o, k) to (k, o) scaled by c.
  const int dim = n * N;
  IntMatrix Phi(dim, dim);
  for (int o = 0; o < n; ++o)
    for (int k = 0; k < N; ++k) Phi(k * n + o, o * N + k) = static_cast<i64>(c);

  bool all = true;
  for (int g : double_coset_reps(model)) {
    HeckeOperator op = hecke_operator(model, g);
    IntMatrix HL = hecke_matrix(model, L, op);
    IntMatrix HR = hecke_matrix(model, R, op);
    IntMatrix HRN(dim, dim);
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) HRN(k * n + i, k * n + j) = HR(i, j);
    OperatorCheck chk;
    chk.gamma = elem_string(model.gamma_s.element(g));
    chk.cosets = static_cast<int>(op.coset_reps.size());
    chk.commutes = mulmod_matrix(Phi, HL, pm) == mulmod_matrix(HRN, Phi, pm);
    chk.left = HL;
    chk.right = HR;
    all = all && chk.commutes;
    rep.operators.push_back(std::move(chk));
  }
  rep.pass = all && rep.iso_bijective;
  return rep;
}

} // namespace

CongruenceReport verify_congruence_theorem(const FiniteModel& model, int N) {
  return compare_with_quotient(model, coeff_trivial(model, N));
}

DecompositionReport decompose_rational(const FiniteModel& model) {
  OrbitData od = build_orbits(model);
  EquivariantSpace sp = build_space(model, od, coeff_am_psi(model));
  DecompositionReport rep;
  rep.rational_dimension = sp.rank;
  rep.trivial_dimension = static_cast<int>(od.orbits.size());
  std::vector<int> j0s;
  for (const auto& orb : od.orbits) {
    int j0 = model.m;
    for (int t : orb.stab_p) {
      u64 a = model.lambda.at(t);
      if (a != 0) j0 = std::min(j0, vp_u(a, model.p));
    }
    j0s.push_back(j0);
  }
  int total = 0;
  for (int k = 1; k <= model.m; ++k) {
    ComponentRank c;
    c.k = k;
    c.degree = euler_phi(static_cast<int>(ipow(model.p, static_cast<u64>(k))));
    c.rank = static_cast<int>(std::count_if(j0s.begin(), j0s.end(), [k](int j) { return j >= k; }));
    total += c.rank * c.degree;
    rep.components.push_back(c);
  }
  rep.consistent = total == rep.rational_dimension;
  return rep;
}

QuotientCheck quotient_map_details(const FiniteModel& model) {
  OrbitData od = build_orbits(model);
  EquivariantSpace src = build_space(model, od, coeff_am_psi(model));
  EquivariantSpace dst = build_space(model, od, coeff_am_quotient(model));
  const BigInt pm = BigInt(ipow(model.p, static_cast<u64>(model.m)));
  QuotientCheck q;
  q.surjective = true;
  q.source_size = 1;
  q.target_size = 1;
  for (int l : dst.orbit_length)
    for (int i = 0; i < l; ++i) q.target_size *= model.p;
  BigMatrix C = to_big(am_power_matrix(model.p, model.m, 1));
  for (size_t o = 0; o < od.orbits.size(); ++o) {
    const BigMatrix& B = src.orbit_basis[o];
    const int k = B.cols();
    // the image of M_o in A_m/(T-1) = Z/p^m is generated by the coefficient sums of the basis
    BigInt g = pm;
    for (int j = 0; j < k; ++j) {
      BigInt s = 0;
      for (int i = 0; i < B.rows(); ++i) s += B(i, j);
      g = boost::multiprecision::gcd(g, s < 0 ? BigInt(-s) : s);
    }
    if (g != 1 && dst.orbit_length[o] > 0) q.surjective = false;
    if (k == 0) continue;
    BigMatrix X(k, k);
    BigMatrix CB = C * B;
    for (int j = 0; j < k; ++j) {
      auto sol = solve_rational(B, CB.column(j));
      if (!sol) throw Error("quotient map: fixed lattice is not T-stable");
      for (int i = 0; i < k; ++i) {
        if (denominator((*sol)[i]) != 1) throw Error("quotient map: T is not integral on the fixed lattice");
        X(i, j) = numerator((*sol)[i]);
      }
    }
    BigMatrix XI = X - BigMatrix::identity(k);
    BigInt d = determinant(XI);
    q.source_size *= d < 0 ? BigInt(-d) : d;
  }
  q.isomorphism = q.surjective && q.source_size == q.target_size;
  return q;
}

bool quotient_map_check(const FiniteModel& model) { return quotient_map_details(model).isomorphism; }

NonconstantReport nonconstant_check(const FiniteModel& model, const std::vector<IntMatrix>& v_gens, int K) {
  if (K < 1) throw InvalidInput("nonconstant: K must be positive");
  const u64 pK = ipow(model.p, static_cast<u64>(K));
  Coefficients full = coeff_vmodule(model, v_gens, pK);
  NonconstantReport rep;
  rep.m = model.m;
  rep.m_prime = K;
  for (const auto& [u, M] : full.rho)
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) {
        i64 x = modp(M(i, j) - (i == j ? 1 : 0), static_cast<i64>(pK));
        if (x != 0) rep.m_prime = std::min(rep.m_prime, vp_u(static_cast<u64>(x), model.p));
      }
  if (model.m > K) throw PreconditionError("nonconstant: m exceeds the precision K");
  const u64 pm = ipow(model.p, static_cast<u64>(model.m));
  if (model.m <= rep.m_prime) {
    rep.congruence = compare_with_quotient(model, coeff_vmodule(model, v_gens, pm));
    rep.pass = rep.congruence->pass;
    return rep;
  }
  rep.shrink = true;
  Coefficients red = coeff_vmodule(model, v_gens, pm);
  for (const auto& [u, M] : red.rho)
    if (M == IntMatrix::identity(red.rank)) ++rep.kernel_order;
  rep.pass = false;
  return rep;
}

HeckeQuotientExample hecke_quotient_example(u64 p, int m) {
  const BigInt pm = BigInt(ipow(p, static_cast<u64>(m)));
  // vec(I) and vec(alpha) in Z^4
  BigMatrix V(4, 2);
  V(0, 0) = 1;
  V(3, 0) = 1;
  V(0, 1) = 1;
  V(1, 1) = pm;
  V(3, 1) = 1;
  HeckeQuotientExample ex;
  ex.lifted_size = 1;
  for (int i = 0; i < rank_rational(V); ++i) ex.lifted_size *= pm;
  BigMatrix W(4, 6);
  for (int i = 0; i < 4; ++i) {
    W(i, 0) = V(i, 0);
    W(i, 1) = V(i, 1);
    W(i, 2 + i) = pm;
  }
  BigInt cov = lattice_covolume(W);
  ex.reduced_size = (pm * pm * pm * pm) / cov;
  return ex;
}

} // namespace forge
