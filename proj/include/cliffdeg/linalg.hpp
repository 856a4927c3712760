#pragma once

/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra over a finite field.
 *
 * The field type F supplies value_type, zero(), one(), add, sub, mul, neg and
 * inv. Two fields are used: PrimeField (F_l with l up to 2^31, for the
 * character-degree oracle and F_p-linear questions) and FieldOps (table-driven
 * F_q from ring.hpp).
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "cliffdeg/errors.hpp"
#include "cliffdeg/ring.hpp"

namespace cliffdeg {

struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t l;

  explicit PrimeField(std::uint64_t modulus) : l(modulus) {}
  value_type zero() const { return 0; }
  value_type one() const { return 1 % l; }
  value_type add(value_type a, value_type b) const { return (a + b) % l; }
  value_type sub(value_type a, value_type b) const { return (a + l - b) % l; }
  value_type neg(value_type a) const { return (l - a) % l; }
  value_type mul(value_type a, value_type b) const { return a * b % l; }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const {
    if (a % l == 0) throw InvalidConfig("inverse of zero in F_l");
    return pow(a, l - 2);
  }
  value_type from_int(long long k) const {
    long long m = static_cast<long long>(l);
    return static_cast<value_type>(((k % m) + m) % m);
  }
};

struct FieldOps {
  using value_type = Elem;
  const GaloisField* f;

  explicit FieldOps(const GaloisField& field) : f(&field) {}
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return f->add(a, b); }
  value_type sub(value_type a, value_type b) const { return f->sub(a, b); }
  value_type neg(value_type a) const { return f->neg(a); }
  value_type mul(value_type a, value_type b) const { return f->mul(a, b); }
  value_type inv(value_type a) const { return f->inv(a); }
};

template <class F>
using Vec = std::vector<typename F::value_type>;
template <class F>
using Dense = std::vector<Vec<F>>;

/// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<int> rref(const F& f, Dense<F>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != f.zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    auto inv = f.inv(m[r][c]);
    for (int j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == f.zero()) continue;
      auto factor = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(const F& f, Dense<F> m) {
  return static_cast<int>(rref(f, m).size());
}

/// Basis of {v : M v = 0}, one vector per free column, in column order.
template <class F>
std::vector<Vec<F>> nullspace(const F& f, Dense<F> m, int cols) {
  std::vector<Vec<F>> basis;
  std::vector<int> pivots = rref(f, m);
  std::vector<int> pivot_row(cols, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<int>(r);
  for (int free = 0; free < cols; ++free) {
    if (pivot_row[free] >= 0) continue;
    Vec<F> v(cols, f.zero());
    v[free] = f.one();
    for (int c = 0; c < cols; ++c)
      if (pivot_row[c] >= 0) v[c] = f.neg(m[pivot_row[c]][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
Dense<F> dense_mul(const F& f, const Dense<F>& a, const Dense<F>& b) {
  const std::size_t n = a.size(), k = b.size(), mcols = b.empty() ? 0 : b[0].size();
  Dense<F> c(n, Vec<F>(mcols, f.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      auto x = a[i][t];
      if (x == f.zero()) continue;
      for (std::size_t j = 0; j < mcols; ++j) c[i][j] = f.add(c[i][j], f.mul(x, b[t][j]));
    }
  return c;
}

template <class F>
Dense<F> dense_identity(const F& f, int n) {
  Dense<F> m(n, Vec<F>(n, f.zero()));
  for (int i = 0; i < n; ++i) m[i][i] = f.one();
  return m;
}

/// Inverse of a square matrix; throws InvalidConfig if singular.
template <class F>
Dense<F> dense_inverse(const F& f, const Dense<F>& a) {
  const int n = static_cast<int>(a.size());
  Dense<F> aug(n, Vec<F>(2 * n, f.zero()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = f.one();
  }
  std::vector<int> piv = rref(f, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw InvalidConfig("singular matrix");
  Dense<F> inv(n, Vec<F>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/**
 * Characteristic polynomial det(tI - A), coefficients low to high (monic).
 * Reduction to upper Hessenberg form by similarity, then the standard
 * recurrence on leading principal submatrices. Valid over any field.
 */
template <class F>
Vec<F> char_poly(const F& f, Dense<F> h) {
  const int n = static_cast<int>(h.size());
  for (int k = 0; k + 2 <= n; ++k) {
    int piv = -1;
    for (int i = k + 1; i < n; ++i)
      if (h[i][k] != f.zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != k + 1) {
      std::swap(h[piv], h[k + 1]);
      for (int i = 0; i < n; ++i) std::swap(h[i][piv], h[i][k + 1]);
    }
    auto inv = f.inv(h[k + 1][k]);
    for (int i = k + 2; i < n; ++i) {
      auto u = f.mul(h[i][k], inv);
      if (u == f.zero()) continue;
      // row_i -= u row_{k+1}; col_{k+1} += u col_i
      for (int j = 0; j < n; ++j) h[i][j] = f.sub(h[i][j], f.mul(u, h[k + 1][j]));
      for (int j = 0; j < n; ++j) h[j][k + 1] = f.add(h[j][k + 1], f.mul(u, h[j][i]));
    }
  }
  // p_0 = 1; p_{m}(t) = (t - h_mm) p_{m-1} - sum_{i<m} h_{i,m} (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
  std::vector<Vec<F>> p(n + 1);
  p[0] = Vec<F>{f.one()};
  for (int m = 1; m <= n; ++m) {
    Vec<F> next(m + 1, f.zero());
    const Vec<F>& prev = p[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = f.add(next[d + 1], prev[d]);
      next[d] = f.sub(next[d], f.mul(h[m - 1][m - 1], prev[d]));
    }
    auto prod = f.one();
    for (int i = m - 1; i >= 1; --i) {
      prod = f.mul(prod, h[i][i - 1]);
      auto coef = f.mul(h[i - 1][m - 1], prod);
      if (coef == f.zero()) continue;
      const Vec<F>& pi = p[i - 1];
      for (std::size_t d = 0; d < pi.size(); ++d) next[d] = f.sub(next[d], f.mul(coef, pi[d]));
    }
    p[m] = std::move(next);
  }
  return p[n];
}

template <class F>
typename F::value_type poly_eval(const F& f, const Vec<F>& poly, typename F::value_type x) {
  auto acc = f.zero();
  for (std::size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
  return acc;
}

}  // namespace cliffdeg
