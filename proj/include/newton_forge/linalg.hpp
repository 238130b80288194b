#pragma once

#include "vec.hpp"

#include <optional>
#include <vector>

namespace nf {

using RatMatrix = std::vector<std::vector<Rat>>;

// Row-reduces in place, returns the rank.
inline size_t row_reduce(RatMatrix& m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    Rat p = m[rank][col];
    for (size_t j = col; j < cols; ++j) m[rank][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline size_t matrix_rank(RatMatrix m) { return row_reduce(m); }

inline size_t nullspace_dim(const RatMatrix& m) {
  if (m.empty()) return 0;
  return m[0].size() - matrix_rank(m);
}

// Solves M x = b for square M; nullopt when singular.
inline std::optional<RatVec> solve_square(RatMatrix m, RatVec b) {
  const size_t n = m.size();
  for (size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
  if (row_reduce(m) < n) return std::nullopt;
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

// Affine rank of a point set (dimension of its affine hull).
inline size_t affine_rank(const std::vector<RatVec>& pts) {
  if (pts.size() <= 1) return 0;
  RatMatrix m;
  for (size_t i = 1; i < pts.size(); ++i) m.push_back(sub(pts[i], pts[0]));
  return matrix_rank(m);
}

}  // namespace nf
