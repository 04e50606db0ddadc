#pragma once

// Dense exact linear algebra over a field F (F(0), F(1), + - *, inverse(), is_zero()).

#include <optional>
#include <utility>
#include <vector>

#include "hgo/error.hpp"

namespace hgo::linalg {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
Matrix<F> zeros(std::size_t rows, std::size_t cols) {
  return Matrix<F>(rows, std::vector<F>(cols, F(0)));
}

template <class F>
Matrix<F> identity(std::size_t n) {
  Matrix<F> m = zeros<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
  return m;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
  if (a.empty()) return {};
  Matrix<F> t = zeros<F>(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

template <class F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  if (a[0].size() != k) throw InvalidArgument("matrix dimensions do not match");
  Matrix<F> c = zeros<F>(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b[l][j].is_zero()) c[i][j] = c[i][j] + a[i][l] * b[l][j];
      }
    }
  }
  return c;
}

template <class F>
std::vector<F> apply(const Matrix<F>& a, const std::vector<F>& v) {
  std::vector<F> r(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!a[i][j].is_zero() && !v[j].is_zero()) r[i] = r[i] + a[i][j] * v[j];
    }
  }
  return r;
}

template <class F>
bool equal(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (!(a[i][j] == b[i][j])) return false;
    }
  }
  return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    F inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) {
      if (!a[r][j].is_zero()) a[r][j] = a[r][j] * inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      F f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> a) {
  return rref(a).size();
}

/// Basis of {v : a v = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> a, std::size_t cols) {
  std::vector<std::size_t> pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(cols, F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with a x = b, if the system is consistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  std::size_t rows = a.size();
  if (b.size() != rows) throw InvalidArgument("right-hand side has the wrong length");
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  Matrix<F> aug = a;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<F> x(cols, F(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

template <class F>
F determinant(Matrix<F> a) {
  std::size_t n = a.size();
  F det = F(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return F(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    F inv = a[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      F f = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
    }
  }
  return det;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  std::size_t n = a.size();
  if (n == 0) return Matrix<F>{};
  Matrix<F> aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, F(0));
    aug[i][n + i] = F(1);
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv = zeros<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

}  // namespace hgo::linalg
