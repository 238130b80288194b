#pragma once

#include "vec.hpp"

#include <optional>
#include <vector>

namespace nf {

// Exact phase-1 simplex (Bland's rule, so it terminates) for feasibility of
//   A x = b,  x >= 0.
// Returns a feasible x when one exists. Everything is rational; there is no
// tolerance anywhere.
inline std::optional<std::vector<Rat>> lp_feasible_eq(std::vector<std::vector<Rat>> A,
                                                      std::vector<Rat> b) {
  const size_t m = A.size();
  const size_t n = m == 0 ? 0 : A[0].size();
  if (m == 0) return std::vector<Rat>(n, Rat(0));

  for (size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
    }
  }

  // columns: n originals + m artificials
  const size_t cols = n + m;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols + 1, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1;
    t[i][cols] = b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  // phase-1 objective: minimize sum of artificials; reduced-cost row starts
  // as the sum of the constraint rows over the original columns
  std::vector<Rat> obj(cols + 1, Rat(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) obj[j] += t[i][j];

  while (true) {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (obj[j] > 0) { enter = j; break; }  // Bland: smallest index
    }
    if (enter == cols) break;
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      if (leave == m) { leave = i; continue; }
      Rat cur = t[i][cols] * t[leave][enter];
      Rat best = t[leave][cols] * t[i][enter];
      if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) break;  // unbounded direction cannot happen in phase 1
    Rat piv = t[leave][enter];
    for (size_t j = 0; j <= cols; ++j) t[leave][j] /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rat f = obj[enter];
      for (size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (obj[cols] != 0) return std::nullopt;  // residual artificial value
  std::vector<Rat> x(n, Rat(0));
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][cols];
  return x;
}

// Is p in the convex hull of pts? Decided by exact linear feasibility.
inline bool point_in_hull(const RatVec& p, const std::vector<RatVec>& pts) {
  if (pts.empty()) return false;
  const size_t d = p.size();
  for (const auto& v : pts)
    if (v == p) return true;
  // cheap bounding-box reject
  for (size_t k = 0; k < d; ++k) {
    Rat lo = pts[0][k], hi = pts[0][k];
    for (const auto& v : pts) {
      if (v[k] < lo) lo = v[k];
      if (v[k] > hi) hi = v[k];
    }
    if (p[k] < lo || p[k] > hi) return false;
  }
  // sum_i l_i v_i = p, sum_i l_i = 1, l >= 0
  std::vector<std::vector<Rat>> A(d + 1, std::vector<Rat>(pts.size()));
  std::vector<Rat> b(d + 1);
  for (size_t k = 0; k < d; ++k) {
    for (size_t i = 0; i < pts.size(); ++i) A[k][i] = pts[i][k];
    b[k] = p[k];
  }
  for (size_t i = 0; i < pts.size(); ++i) A[d][i] = 1;
  b[d] = 1;
  return lp_feasible_eq(A, b).has_value();
}

// Does conv(pts) contain a point q with q >= a (componentwise)?
// Used for the set order: the region {x : exists q in B, q >= x} is convex,
// so membership of all of A reduces to the vertices of A.
inline bool hull_dominates_point(const std::vector<RatVec>& pts, const RatVec& a) {
  if (pts.empty()) return false;
  const size_t d = a.size();
  for (const auto& v : pts)
    if (geq(v, a)) return true;
  for (size_t k = 0; k < d; ++k) {
    Rat hi = pts[0][k];
    for (const auto& v : pts)
      if (v[k] > hi) hi = v[k];
    if (hi < a[k]) return false;
  }
  // sum l_i v_i - s = a, sum l_i = 1, l >= 0, s >= 0
  const size_t n = pts.size();
  std::vector<std::vector<Rat>> A(d + 1, std::vector<Rat>(n + d, Rat(0)));
  std::vector<Rat> b(d + 1);
  for (size_t k = 0; k < d; ++k) {
    for (size_t i = 0; i < n; ++i) A[k][i] = pts[i][k];
    A[k][n + k] = -1;
    b[k] = a[k];
  }
  for (size_t i = 0; i < n; ++i) A[d][i] = 1;
  b[d] = 1;
  return lp_feasible_eq(A, b).has_value();
}

// Does conv(pts) contain a point q with q <= a?
inline bool hull_dominated_by_point(const std::vector<RatVec>& pts, const RatVec& a) {
  std::vector<RatVec> neg(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) neg[i] = negate(pts[i]);
  return hull_dominates_point(neg, negate(a));
}

}  // namespace nf
