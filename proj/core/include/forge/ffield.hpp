#pragma once

#include "forge/numtheory.hpp"

#include <memory>
#include <vector>

namespace forge {

// Coefficients over F_p of the residue class, low degree first.
struct FFElem {
  std::vector<u64> c;
  friend bool operator==(const FFElem&, const FFElem&) = default;
};

// F_{q^n} with q = p^f, realised as F_p[x]/(g) with deg g = f n.
// Frobenius is the q-power map; F_q is its fixed field.
class FieldExtension {
public:
  FieldExtension(u64 p, int f, int n);
  FieldExtension() : FieldExtension(2, 1, 1) {}

  u64 p() const { return p_; }
  int f() const { return f_; }
  int n() const { return n_; }
  int degree() const { return f_ * n_; }  // over F_p
  u64 q() const { return q_; }
  const std::vector<u64>& modulus() const { return mod_; }  // monic, ascending

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(i64 v) const;
  FFElem x() const;  // the class of the polynomial variable
  FFElem from_coeffs(std::vector<u64> c) const;
  // Enumeration order used for every "smallest element" choice.
  FFElem from_index(u128 idx) const;
  u128 size() const;

  bool is_zero(const FFElem& a) const;
  FFElem add(const FFElem& a, const FFElem& b) const;
  FFElem sub(const FFElem& a, const FFElem& b) const;
  FFElem neg(const FFElem& a) const;
  FFElem mul(const FFElem& a, const FFElem& b) const;
  FFElem scale(const FFElem& a, i64 k) const;
  FFElem pow(const FFElem& a, u128 e) const;
  FFElem inv(const FFElem& a) const;

  FFElem frobenius(const FFElem& a, i64 k = 1) const;
  FFElem trace(const FFElem& a) const;  // sum_{i=1..n} sigma^i(a)
  bool in_base_field(const FFElem& a) const;
  int orbit_size(const FFElem& a) const;  // degree of the minimal polynomial over F_q

  // Multiplicative order of a nonzero element, from the factorisation of p^{fn}-1.
  u128 order(const FFElem& a) const;
  // Smallest element of order q^n - 1 in the enumeration order. Cached.
  const FFElem& generator() const;

private:
  u64 p_;
  int f_, n_;
  u64 q_;
  std::vector<u64> mod_;
  std::vector<std::vector<u64>> frob_;  // column j = (x^j)^q
  struct Cache;
  std::shared_ptr<Cache> cache_;

  void reduce(std::vector<u64>& a) const;
};

FieldExtension build_extension(u64 p, int f, int n);
FFElem frobenius(const FieldExtension& ext, const FFElem& x, i64 k);
FFElem find_trace_zero_generator(const FieldExtension& ext);
FFElem generator_power(const FieldExtension& ext, u128 exponent);

// Smallest monic irreducible polynomial of degree d over F_p (ascending coefficients).
std::vector<u64> smallest_irreducible(u64 p, int d);
bool is_irreducible(u64 p, const std::vector<u64>& g);

} // namespace forge
