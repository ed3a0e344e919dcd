#include "forge/rootsys.hpp"

#include "forge/error.hpp"
#include "forge/numtheory.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

namespace forge {

namespace {

const char* family_letter(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
  }
  return "?";
}

IntMatrix cartan_matrix(const RootSystemType& t) {
  const int n = t.rank;
  IntMatrix a(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  auto link = [&](int i, int j) {  // one-based, simply laced edge
    a(i - 1, j - 1) = -1;
    a(j - 1, i - 1) = -1;
  };
  switch (t.family) {
    case Family::A:
      for (int i = 1; i < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 1; i < n; ++i) link(i, i + 1);
      a(n - 1, n - 2) = -2;  // alpha_n short
      break;
    case Family::C:
      for (int i = 1; i < n; ++i) link(i, i + 1);
      a(n - 2, n - 1) = -2;  // alpha_n long
      break;
    case Family::D:
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 2, n);
      break;
    case Family::E:
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(1, 2);
      link(2, 3);
      link(3, 4);
      a(2, 1) = -2;  // <alpha_2, coroot_3>
      break;
    case Family::G:
      a(0, 1) = -3;
      a(1, 0) = -1;
      break;
  }
  return a;
}

bool lex_less(const Coroot& x, const Coroot& y) { return x.expansion < y.expansion; }

} // namespace

std::string RootSystemType::name() const { return family_letter(family) + std::to_string(rank); }

RootSystemType RootSystemType::parse(const std::string& s) {
  if (s.size() < 2) throw InvalidInput("bad root system type '" + s + "'");
  RootSystemType t;
  switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'C': t.family = Family::C; break;
    case 'D': t.family = Family::D; break;
    case 'E': t.family = Family::E; break;
    case 'F': t.family = Family::F; break;
    case 'G': t.family = Family::G; break;
    default: throw InvalidInput("bad root system family '" + s + "'");
  }
  std::string digits = s.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      digits.size() > 3)
    throw InvalidInput("bad root system rank '" + s + "'");
  t.rank = std::stoi(digits);
  if (!is_valid(t)) throw InvalidInput("invalid rank for family: " + s);
  return t;
}

bool is_valid(const RootSystemType& t) {
  switch (t.family) {
    case Family::A: return t.rank >= 1;
    case Family::B: return t.rank >= 2;
    case Family::C: return t.rank >= 3;
    case Family::D: return t.rank >= 4;
    case Family::E: return t.rank >= 6 && t.rank <= 8;
    case Family::F: return t.rank == 4;
    case Family::G: return t.rank == 2;
  }
  return false;
}

std::int64_t Coroot::height() const {
  std::int64_t h = 0;
  for (auto v : expansion) h += v;
  return h;
}

bool Coroot::positive() const {
  for (auto v : expansion)
    if (v != 0) return v > 0;
  return false;
}

std::vector<std::vector<std::int64_t>> RootSystem::simple_coroots() const {
  std::vector<std::vector<std::int64_t>> out(rank(), std::vector<std::int64_t>(rank(), 0));
  for (int i = 0; i < rank(); ++i) out[i][i] = 1;
  return out;
}

std::vector<Coroot> RootSystem::positive_coroots() const {
  std::vector<Coroot> out;
  for (const auto& c : coroots)
    if (c.positive()) out.push_back(c);
  return out;
}

Coroot RootSystem::highest_coroot() const {
  const Coroot* best = nullptr;
  for (const auto& c : coroots)
    if (!best || c.height() > best->height()) best = &c;
  return *best;
}

bool RootSystem::contains(const std::vector<std::int64_t>& e) const {
  Coroot key{e};
  return std::binary_search(coroots.begin(), coroots.end(), key, lex_less);
}

IntMatrix DiagramAutomorphism::matrix() const {
  int n = static_cast<int>(perm.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(perm[i], i) = 1;
  return m;
}

bool DiagramAutomorphism::trivial() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

IntMatrix simple_reflection(const RootSystem& rs, int i) {
  const int n = rs.rank();
  if (i < 1 || i > n) throw InvalidInput("simple reflection index out of range");
  IntMatrix s = IntMatrix::identity(n);
  // s_i(coroot_j) = coroot_j - a_ji coroot_i
  for (int j = 0; j < n; ++j) s(i - 1, j) -= rs.cartan(j, i - 1);
  return s;
}

RootSystem build_root_system(const RootSystemType& t) {
  if (!is_valid(t)) throw InvalidInput("invalid rank for family: " + t.name());
  RootSystem rs;
  rs.type = t;
  rs.cartan = cartan_matrix(t);
  const int n = t.rank;
  std::vector<IntMatrix> refl;
  for (int i = 1; i <= n; ++i) refl.push_back(simple_reflection(rs, i));

  std::set<std::vector<std::int64_t>> seen;
  std::deque<std::vector<std::int64_t>> queue;
  for (auto v : rs.simple_coroots()) {
    seen.insert(v);
    queue.push_back(v);
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& s : refl) {
      auto w = s.apply(v);
      if (seen.insert(w).second) queue.push_back(w);
    }
    if (seen.size() > 100000) throw Error("reflection closure did not terminate");
  }
  for (const auto& v : seen) rs.coroots.push_back(Coroot{v});
  std::sort(rs.coroots.begin(), rs.coroots.end(), lex_less);
  return rs;
}

int coxeter_number(const RootSystemType& t) {
  if (!is_valid(t)) throw InvalidInput("invalid rank for family: " + t.name());
  const int s = t.rank;
  switch (t.family) {
    case Family::A: return s + 1;
    case Family::B:
    case Family::C: return 2 * s;
    case Family::D: return 2 * s - 2;
    case Family::E: return s == 6 ? 12 : (s == 7 ? 18 : 30);
    case Family::F: return 12;
    case Family::G: return 6;
  }
  return 1;
}

int coxeter_number(const std::vector<RootSystemType>& factors) {
  int c = 1;
  for (const auto& f : factors) c = std::max(c, coxeter_number(f));
  return c;
}

WeylElement weyl_from_word(const RootSystem& rs, const std::vector<int>& word) {
  IntMatrix m = IntMatrix::identity(rs.rank());
  for (int i : word) m = m * simple_reflection(rs, i);
  return WeylElement{m, word};
}

Coroot weyl_apply(const WeylElement& w, const Coroot& c) {
  if (static_cast<int>(c.expansion.size()) != w.matrix.cols())
    throw InvalidInput("weyl_apply: dimension mismatch");
  return Coroot{w.matrix.apply(c.expansion)};
}

WeylElement weyl_compose(const WeylElement& a, const WeylElement& b) {
  WeylElement out{a.matrix * b.matrix, std::nullopt};
  if (a.word && b.word) {
    std::vector<int> w = *a.word;
    w.insert(w.end(), b.word->begin(), b.word->end());
    out.word = w;
  }
  return out;
}

WeylElement weyl_power(const WeylElement& w, int k) {
  WeylElement out{IntMatrix::identity(w.matrix.rows()), std::vector<int>{}};
  for (int i = 0; i < k; ++i) out = weyl_compose(out, w);
  return out;
}

int weyl_order(const WeylElement& w, int bound) {
  const IntMatrix id = IntMatrix::identity(w.matrix.rows());
  IntMatrix p = w.matrix;
  for (int k = 1; k <= bound; ++k) {
    if (p == id) return k;
    p = p * w.matrix;
  }
  throw Error("weyl_order: order exceeds bound " + std::to_string(bound));
}

bool is_elliptic(const WeylElement& w) {
  const int n = w.matrix.rows();
  if (n == 0) return true;
  return determinant(to_big(w.matrix - IntMatrix::identity(n))) != 0;
}

bool permutes_coroots(const RootSystem& rs, const IntMatrix& m) {
  std::set<std::vector<std::int64_t>> image;
  for (const auto& c : rs.coroots) {
    auto v = m.apply(c.expansion);
    if (!rs.contains(v)) return false;
    image.insert(v);
  }
  return image.size() == rs.coroots.size();
}

namespace {

using Poly = std::vector<BigInt>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial; returns nullopt when the remainder is nonzero.
std::optional<Poly> divide_monic(Poly a, const Poly& b) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) {
    if (a.empty()) return Poly{};
    return std::nullopt;
  }
  Poly q(a.size() - db, 0);
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    BigInt c = a[k];
    q[k - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  return q;
}

Poly cyclotomic_poly(int d) {
  Poly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (int e : divisors(d)) {
    if (e == d) continue;
    p = *divide_monic(p, cyclotomic_poly(e));
  }
  return p;
}

} // namespace

std::vector<int> cyclotomic_exponents(const WeylElement& w, int order) {
  const int n = w.matrix.rows();
  if (order < 1) throw InvalidInput("cyclotomic_exponents: order must be positive");
  IntMatrix p = IntMatrix::identity(n);
  for (int i = 0; i < order; ++i) p = p * w.matrix;
  if (!(p == IntMatrix::identity(n))) throw InvalidInput("cyclotomic_exponents: w^order != 1");
  Poly cp = charpoly(w.matrix);
  std::vector<int> out;
  for (int d : divisors(order)) {
    Poly phi = cyclotomic_poly(d);
    while (true) {
      auto q = divide_monic(cp, phi);
      if (!q) break;
      cp = *q;
      for (int j = 0; j < d; ++j)
        if (std::gcd(j, d) == 1) out.push_back((order / d) * j);
    }
  }
  trim(cp);
  if (cp.size() != 1) throw Error("cyclotomic_exponents: characteristic polynomial not fully factored");
  std::sort(out.begin(), out.end());
  return out;
}

WeylElement longest_element(const RootSystem& rs) {
  const int n = rs.rank();
  WeylElement w{IntMatrix::identity(n), std::vector<int>{}};
  std::vector<IntMatrix> refl;
  for (int i = 1; i <= n; ++i) refl.push_back(simple_reflection(rs, i));
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < n; ++i) {
      if (Coroot{w.matrix.column(i)}.positive()) {
        w.matrix = w.matrix * refl[i];
        w.word->push_back(i + 1);
        grew = true;
        break;
      }
    }
  }
  return w;
}

WeylElement coxeter_element(const RootSystem& rs) {
  std::vector<int> word;
  for (int i = 1; i <= rs.rank(); ++i) word.push_back(i);
  return weyl_from_word(rs, word);
}

DiagramAutomorphism trivial_automorphism(const RootSystem& rs) {
  DiagramAutomorphism d;
  for (int i = 0; i < rs.rank(); ++i) d.perm.push_back(i);
  return d;
}

DiagramAutomorphism diagram_involution(const RootSystem& rs) {
  DiagramAutomorphism d = trivial_automorphism(rs);
  const int n = rs.rank();
  switch (rs.type.family) {
    case Family::A:
      if (n < 2) throw InvalidInput("A1 has no nontrivial diagram automorphism");
      for (int i = 0; i < n; ++i) d.perm[i] = n - 1 - i;
      break;
    case Family::D:
      std::swap(d.perm[n - 2], d.perm[n - 1]);
      break;
    case Family::E:
      if (n != 6) throw InvalidInput(rs.type.name() + " has no nontrivial diagram automorphism");
      d.perm = {5, 1, 4, 3, 2, 0};
      break;
    default:
      throw InvalidInput(rs.type.name() + " has no nontrivial diagram automorphism");
  }
  return d;
}

DiagramAutomorphism d4_triality(const RootSystem& rs) {
  if (!(rs.type == RootSystemType{Family::D, 4})) throw InvalidInput("triality requires D4");
  return DiagramAutomorphism{{2, 1, 3, 0}};
}

bool preserves_cartan(const RootSystem& rs, const DiagramAutomorphism& d) {
  const int n = rs.rank();
  if (static_cast<int>(d.perm.size()) != n) return false;
  std::vector<int> sorted = d.perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rs.cartan(d.perm[i], d.perm[j]) != rs.cartan(i, j)) return false;
  return true;
}

bool minus_one_in_W_delta(const RootSystem& rs, const DiagramAutomorphism& delta) {
  if (!preserves_cartan(rs, delta)) throw InvalidInput("diagram automorphism incompatible with root system");
  // w delta = -1 for some w  <=>  delta^{-1}(-1) in W; such a w sends the
  // positive chamber to its negative, so it must be w0, and then -w0 = delta.
  return -longest_element(rs).matrix == delta.matrix();
}

std::vector<RootSystemType> irreducible_types(int max_rank) {
  std::vector<RootSystemType> out;
  for (int r = 1; r <= max_rank; ++r) out.push_back({Family::A, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Family::B, r});
  for (int r = 3; r <= max_rank; ++r) out.push_back({Family::C, r});
  for (int r = 4; r <= max_rank; ++r) out.push_back({Family::D, r});
  for (int r = 6; r <= std::min(8, max_rank); ++r) out.push_back({Family::E, r});
  if (max_rank >= 4) out.push_back({Family::F, 4});
  if (max_rank >= 2) out.push_back({Family::G, 2});
  return out;
}

} // namespace forge
