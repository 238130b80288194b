#pragma once

#include "rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nf {

// Exact rational coordinate vector. The dimension is the length.
using RatVec = std::vector<Rat>;

inline RatVec rat_vec(std::initializer_list<Rat> xs) { return RatVec(xs); }

inline void check_dim(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  check_dim(a, b);
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
  check_dim(a, b);
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
  check_dim(a, b);
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec scale(const Rat& c, const RatVec& a) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline RatVec negate(const RatVec& a) { return scale(Rat(-1), a); }

inline bool is_zero(const RatVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

// componentwise partial order
inline bool leq(const RatVec& a, const RatVec& b) {
  check_dim(a, b);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool geq(const RatVec& a, const RatVec& b) { return leq(b, a); }

// sign pattern of a vector: +1 if all entries >= 0 (not all zero handled by
// caller), -1 if all <= 0, 0 if strictly mixed
inline int orthant_sign(const RatVec& a) {
  bool has_pos = false, has_neg = false;
  for (const Rat& x : a) {
    if (x > 0) has_pos = true;
    if (x < 0) has_neg = true;
  }
  if (has_pos && has_neg) return 0;
  return has_neg ? -1 : 1;
}

inline bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline RatVec unit_vec(int dim, int i, const Rat& c = 1) {
  RatVec r(dim, Rat(0));
  r[i] = c;
  return r;
}

inline RatVec zero_vec(int dim) { return RatVec(dim, Rat(0)); }

// 2D cross product (z-component)
inline Rat cross2(const RatVec& a, const RatVec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

inline RatVec cross3(const RatVec& a, const RatVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace nf
