#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace forge {

// A finite group enumerated from generators. Elements are encoded as integer
// vectors in the presentation's own format and addressed by dense indices.
class FiniteGroup {
public:
  using Elem = std::vector<int>;
  using Mul = std::function<Elem(const Elem&, const Elem&)>;

  FiniteGroup(std::string name, Elem identity, Mul mul, const std::vector<Elem>& generators);

  static FiniteGroup symmetric(int n);        // one-line permutations, (ab)(i) = a(b(i))
  static FiniteGroup cyclic(int n);           // {a}, addition mod n
  static FiniteGroup heisenberg(int N);       // (x,y,z) over Z/N, (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')
  static FiniteGroup permutations(int degree, const std::vector<Elem>& generators);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(elems_.size()); }
  int identity() const { return 0; }
  const Elem& element(int i) const { return elems_[i]; }
  int index_of(const Elem& e) const;  // throws when e is not in the group
  bool contains(const Elem& e) const { return index_.count(e) > 0; }
  int mul(int a, int b) const;
  int inverse(int a) const { return inv_[a]; }
  const std::vector<int>& generator_indices() const { return gens_; }

  // Subgroup generated by the given indices, as a sorted index list.
  std::vector<int> subgroup(const std::vector<int>& gens) const;

private:
  std::string name_;
  Mul mul_;
  std::vector<Elem> elems_;
  std::map<Elem, int> index_;
  std::vector<int> inv_;
  std::vector<int> gens_;
};

} // namespace forge
