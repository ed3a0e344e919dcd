#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace forge {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Dense row-major matrix. Small sizes only; nothing here is tuned.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, T(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const T& v = (*this)(i, k);
        if (v == T(0)) continue;
        for (int j = 0; j < o.c_; ++j) out(i, j) += v * o(k, j);
      }
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& v : out.a_) v = -v;
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(r_, T(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  std::vector<T> column(int j) const {
    std::vector<T> out(r_);
    for (int i = 0; i < r_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix out(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  const std::vector<T>& data() const { return a_; }

private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;

BigMatrix to_big(const IntMatrix& m);

BigInt determinant(const BigMatrix& m);

// Characteristic polynomial det(x I - m), coefficients ascending.
std::vector<BigInt> charpoly(const IntMatrix& m);

// Saturated Z-basis of {v in Z^cols : m v = 0}, returned as columns.
BigMatrix integer_kernel(const BigMatrix& m);

// Elementary divisors of m (nonzero ones, ascending divisibility).
std::vector<BigInt> smith_invariants(const BigMatrix& m);

// |det| of the full-rank lattice spanned by the columns of m; 0 if not full rank.
BigInt lattice_covolume(const BigMatrix& m);

// Solve m x = v over Q, if consistent.
std::optional<std::vector<BigRat>> solve_rational(const BigMatrix& m, const std::vector<BigInt>& v);

// Rank over Q.
int rank_rational(const BigMatrix& m);

} // namespace forge
