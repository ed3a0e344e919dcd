#include "forge/intlinalg.hpp"

#include "forge/error.hpp"

#include <utility>

namespace forge {

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

BigInt determinant(const BigMatrix& in) {
  if (in.rows() != in.cols()) throw InvalidInput("determinant: non-square");
  int n = in.rows();
  if (n == 0) return 1;
  BigMatrix a = in;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(sw, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<BigInt> charpoly(const IntMatrix& m) {
  // Faddeev-LeVerrier; the divisions by k are exact.
  int n = m.rows();
  BigMatrix a = to_big(m);
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  BigMatrix mk = BigMatrix::identity(n);
  BigMatrix prod(n, n);
  for (int k = 1; k <= n; ++k) {
    prod = a * mk;
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += prod(i, i);
    c[n - k] = -tr / k;
    mk = prod;
    for (int i = 0; i < n; ++i) mk(i, i) += c[n - k];
  }
  return c;
}

namespace {

// Column operations turning m into column-echelon form; the same operations
// are applied to u. Returns the number of pivot columns.
int column_echelon(BigMatrix& m, BigMatrix* u) {
  int piv = 0;
  auto colop = [&](BigMatrix& x, int j, int k, const BigInt& a, const BigInt& b, const BigInt& c,
                   const BigInt& d) {
    // (col j, col k) <- (a col j + b col k, c col j + d col k)
    for (int i = 0; i < x.rows(); ++i) {
      BigInt vj = x(i, j), vk = x(i, k);
      x(i, j) = a * vj + b * vk;
      x(i, k) = c * vj + d * vk;
    }
  };
  for (int row = 0; row < m.rows() && piv < m.cols(); ++row) {
    for (int k = piv + 1; k < m.cols(); ++k) {
      if (m(row, k) == 0) continue;
      BigInt x = m(row, piv), y = m(row, k);
      // extended gcd: s x + t y = g
      BigInt old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        BigInt q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, BigInt(old_r - q * r));
        std::tie(old_s, s) = std::make_pair(s, BigInt(old_s - q * s));
        std::tie(old_t, t) = std::make_pair(t, BigInt(old_t - q * t));
      }
      BigInt g = old_r;
      // unimodular: [s t; -y/g x/g]
      BigInt a = old_s, b = old_t, c = -y / g, d = x / g;
      colop(m, piv, k, a, b, c, d);
      if (u) colop(*u, piv, k, a, b, c, d);
    }
    if (m(row, piv) != 0) ++piv;
  }
  return piv;
}

} // namespace

BigMatrix integer_kernel(const BigMatrix& m) {
  BigMatrix a = m;
  BigMatrix u = BigMatrix::identity(m.cols());
  int piv = column_echelon(a, &u);
  BigMatrix out(m.cols(), m.cols() - piv);
  for (int j = piv; j < m.cols(); ++j)
    for (int i = 0; i < m.cols(); ++i) out(i, j - piv) = u(i, j);
  return out;
}

BigInt lattice_covolume(const BigMatrix& m) {
  BigMatrix a = m;
  int piv = column_echelon(a, nullptr);
  if (piv != m.rows()) return 0;
  BigInt d = 1;
  for (int i = 0; i < piv; ++i) d *= a(i, i);
  return d < 0 ? BigInt(-d) : d;
}

std::vector<BigInt> smith_invariants(const BigMatrix& in) {
  BigMatrix a = in;
  int R = a.rows(), C = a.cols();
  std::vector<BigInt> out;
  int t = 0;
  while (t < R && t < C) {
    // pick the smallest nonzero entry in the trailing block
    int bi = -1, bj = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (a(i, j) != 0 && (bi < 0 || abs(a(i, j)) < abs(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    for (int j = 0; j < C; ++j) std::swap(a(t, j), a(bi, j));
    for (int i = 0; i < R; ++i) std::swap(a(i, t), a(i, bj));
    bool dirty = false;
    for (int i = t + 1; i < R; ++i) {
      BigInt q = a(i, t) / a(t, t);
      if (q != 0)
        for (int j = t; j < C; ++j) a(i, j) -= q * a(t, j);
      if (a(i, t) != 0) dirty = true;
    }
    for (int j = t + 1; j < C; ++j) {
      BigInt q = a(t, j) / a(t, t);
      if (q != 0)
        for (int i = t; i < R; ++i) a(i, j) -= q * a(i, t);
      if (a(t, j) != 0) dirty = true;
    }
    if (dirty) continue;
    int bad = -1;
    for (int i = t + 1; i < R && bad < 0; ++i)
      for (int j = t + 1; j < C; ++j)
        if (a(i, j) % a(t, t) != 0) {
          bad = i;
          break;
        }
    if (bad >= 0) {
      for (int j = t; j < C; ++j) a(t, j) += a(bad, j);
      continue;
    }
    out.push_back(abs(a(t, t)));
    ++t;
  }
  return out;
}

namespace {

// Reduced row echelon over Q; returns pivot columns.
std::vector<int> rref(Matrix<BigRat>& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(sel, j));
    BigRat inv = 1 / a(row, col);
    for (int j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      BigRat f = a(i, col);
      for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

std::optional<std::vector<BigRat>> solve_rational(const BigMatrix& m, const std::vector<BigInt>& v) {
  Matrix<BigRat> a(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) a(i, j) = BigRat(m(i, j));
    a(i, m.cols()) = BigRat(v[i]);
  }
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<BigRat> x(m.cols(), BigRat(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a(static_cast<int>(r), m.cols());
  return x;
}

int rank_rational(const BigMatrix& m) {
  Matrix<BigRat> a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = BigRat(m(i, j));
  return static_cast<int>(rref(a).size());
}

} // namespace forge
