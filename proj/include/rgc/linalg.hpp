#pragma once

#include <utility>
#include <vector>

#include "rgc/super.hpp"

namespace rgc {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zero_matrix(int rows, int cols) {
  return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

inline Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  int n = static_cast<int>(a.size());
  int k = n ? static_cast<int>(a[0].size()) : 0;
  int m = k ? static_cast<int>(b[0].size()) : 0;
  Matrix c = zero_matrix(n, m);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) {
        if (b[t][j].is_zero()) continue;
        c[i][j] += a[i][t] * b[t][j];
      }
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  int n = static_cast<int>(a.size());
  int m = n ? static_cast<int>(a[0].size()) : 0;
  Matrix t = zero_matrix(m, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

// Gaussian elimination to row echelon form, in place. Returns rank.
inline int row_reduce(Matrix& m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][col].is_zero()) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rational inv = Rational(1) / m[rank][col];
    for (int c = col; c < cols; ++c) m[rank][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      Rational f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline int rank(Matrix m) { return row_reduce(m); }

// Inverse of a square nondegenerate matrix; empty result if singular.
inline Matrix inverse(const Matrix& a) {
  int n = static_cast<int>(a.size());
  if (rank(a) != n) return {};
  Matrix aug = zero_matrix(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = Rational(1);
  }
  row_reduce(aug);
  Matrix inv = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// True when v lies in the column space of m.
inline bool in_column_space(const Matrix& m, const std::vector<Rational>& v) {
  Matrix mt = transpose(m);
  int base = rank(mt);
  mt.push_back(v);
  return rank(std::move(mt)) == base;
}

inline bool InnerProduct::is_nondegenerate() const {
  return rank(g_) == dim();
}

}  // namespace rgc
