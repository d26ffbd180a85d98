#pragma once

// Dense exact linear algebra over Q, used by the lattice and cone code.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "nashtor/arith.hpp"

namespace nashtor::linalg {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMatrix a) { return rref(a).size(); }

// Basis of {x : a x = 0}; `cols` is needed when a has no rows.
inline std::vector<QVector> nullspace(QMatrix a, std::size_t cols) {
  std::vector<QVector> basis;
  if (a.empty()) {
    for (std::size_t i = 0; i < cols; ++i) {
      QVector e(cols, 0);
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  const auto piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
    basis.push_back(x);
  }
  return basis;
}

// Solves lambda * rows = v. Returns nullopt when v is outside the row span.
// When the rows are dependent an arbitrary solution is returned.
inline std::optional<QVector> solve_left(const QMatrix& rows, const QVector& v) {
  const std::size_t k = rows.size();
  const std::size_t n = v.size();
  // augmented system rows^T lambda = v, one equation per coordinate
  QMatrix aug(n, QVector(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) aug[j][i] = rows[i][j];
    aug[j][k] = v[j];
  }
  const auto piv = rref(aug);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  QVector lam(k, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) lam[piv[r]] = aug[r][k];
  return lam;
}

inline std::optional<QMatrix> inverse(const QMatrix& a) {
  const std::size_t n = a.size();
  QMatrix aug(n, QVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  const auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rational determinant(QMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

inline QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  QMatrix c(n, QVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline QMatrix transpose(const QMatrix& a) {
  if (a.empty()) return {};
  QMatrix t(a[0].size(), QVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
// Stops early when fn returns true; returns whether it stopped.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(static_cast<const std::vector<std::size_t>&>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace nashtor::linalg
