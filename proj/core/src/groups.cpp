#include "forge/groups.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace forge {

FiniteGroup::FiniteGroup(std::string name, Elem identity, Mul op, const std::vector<Elem>& generators)
    : name_(std::move(name)), mul_(std::move(op)) {
  elems_.push_back(identity);
  index_.emplace(identity, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      Elem e = mul_(elems_[i], g);
      if (index_.emplace(e, static_cast<int>(elems_.size())).second) {
        elems_.push_back(e);
        queue.push_back(static_cast<int>(elems_.size()) - 1);
        if (elems_.size() > 2000000) throw EffortBoundExceeded("group too large to enumerate");
      }
    }
  }
  for (const auto& g : generators) gens_.push_back(index_of(g));
  inv_.assign(elems_.size(), -1);
  for (int i = 0; i < order(); ++i) {
    // i^k with i^{k+1} = 1
    int cur = i;
    while (true) {
      int nx = mul(cur, i);
      if (nx == 0) break;
      cur = nx;
    }
    inv_[i] = cur;
  }
}

int FiniteGroup::index_of(const Elem& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw InvalidInput("element not in group " + name_);
  return it->second;
}

int FiniteGroup::mul(int a, int b) const { return index_of(mul_(elems_[a], elems_[b])); }

std::vector<int> FiniteGroup::subgroup(const std::vector<int>& gens) const {
  std::set<int> seen{0};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int g : gens) {
      int j = mul(i, g);
      if (seen.insert(j).second) queue.push_back(j);
    }
  }
  return {seen.begin(), seen.end()};
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 8) throw InvalidInput("symmetric group degree out of range");
  Elem id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Elem> gens;
  if (n >= 2) {
    Elem t = id;
    std::swap(t[0], t[1]);
    gens.push_back(t);
    Elem c(n);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens.push_back(c);
  }
  auto mul = [](const Elem& a, const Elem& b) {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  };
  return FiniteGroup("S" + std::to_string(n), id, mul, gens);
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InvalidInput("cyclic group order must be positive");
  auto mul = [n](const Elem& a, const Elem& b) { return Elem{(a[0] + b[0]) % n}; };
  return FiniteGroup("Z/" + std::to_string(n), Elem{0}, mul, {Elem{1 % n}});
}

FiniteGroup FiniteGroup::heisenberg(int N) {
  if (N < 2) throw InvalidInput("Heisenberg modulus must be >= 2");
  auto mul = [N](const Elem& a, const Elem& b) {
    return Elem{(a[0] + b[0]) % N, (a[1] + b[1]) % N, static_cast<int>((a[2] + b[2] + static_cast<long long>(a[0]) * b[1]) % N)};
  };
  return FiniteGroup("Heis(Z/" + std::to_string(N) + ")", Elem{0, 0, 0}, mul,
                     {Elem{1, 0, 0}, Elem{0, 1, 0}, Elem{0, 0, 1}});
}

FiniteGroup FiniteGroup::permutations(int degree, const std::vector<Elem>& generators) {
  Elem id(degree);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : generators) {
    Elem s = g;
    std::sort(s.begin(), s.end());
    if (s != id) throw InvalidInput("permutation generator is not a permutation of 0..degree-1");
  }
  auto mul = [](const Elem& a, const Elem& b) {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  };
  return FiniteGroup("Perm" + std::to_string(degree), id, mul, generators);
}

} // namespace forge
