#pragma once

#include "polytope.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace nf {

// Homogeneous convex CPWL function F(x) = max_i <v_i, x>, kept as its list
// of linear generators. F is the support function of its Newton polytope.
struct CpwlFn {
  int dim = 0;
  std::vector<RatVec> generators;  // deduplicated, lex-sorted

  bool operator==(const CpwlFn& o) const { return dim == o.dim && generators == o.generators; }
};

inline CpwlFn make_cpwl(int dim, std::vector<RatVec> gens) {
  if (gens.empty()) throw std::invalid_argument("cpwl needs at least one generator");
  for (const auto& g : gens)
    if ((int)g.size() != dim) throw std::invalid_argument("dimension mismatch");
  sort_vertices(gens);
  return CpwlFn{dim, std::move(gens)};
}

inline Rat eval(const CpwlFn& F, const RatVec& x) {
  if ((int)x.size() != F.dim) throw std::invalid_argument("dimension mismatch");
  Rat best = dot(F.generators[0], x);
  for (size_t i = 1; i < F.generators.size(); ++i) {
    Rat v = dot(F.generators[i], x);
    if (v > best) best = v;
  }
  return best;
}

inline Polytope newton_polytope(const CpwlFn& F) {
  return convex_hull(F.generators, F.dim);
}

// a1*F1 + a2*F2 as a max of sums over generator pairs
inline CpwlFn scale_add(const Rat& a1, const CpwlFn& F1, const Rat& a2, const CpwlFn& F2) {
  if (F1.dim != F2.dim) throw std::invalid_argument("dimension mismatch");
  if (a1 < 0 || a2 < 0) throw std::invalid_argument("coefficients must be non-negative");
  std::vector<RatVec> gens;
  for (const auto& u : F1.generators)
    for (const auto& v : F2.generators) gens.push_back(add(scale(a1, u), scale(a2, v)));
  return make_cpwl(F1.dim, std::move(gens));
}

// The sub-gradient of a support function at x is the face of N(F) in
// direction x; at x = 0 it is all of N(F).
inline Polytope subgradient(const CpwlFn& F, const RatVec& x) {
  Polytope N = newton_polytope(F);
  if (is_zero(x)) return N;
  return support_face(N, x);
}

// Set order: A <= B iff every point of A is dominated by a point of B and
// every point of B dominates a point of A. Each quantifier reduces to the
// vertices of the quantified polytope; membership on the other side is an
// exact feasibility query.
inline bool set_leq(const Polytope& A, const Polytope& B) {
  if (A.dim != B.dim) throw std::invalid_argument("dimension mismatch");
  for (const auto& a : A.vertices)
    if (!hull_dominates_point(B.vertices, a)) return false;
  for (const auto& b : B.vertices)
    if (!hull_dominated_by_point(A.vertices, b)) return false;
  return true;
}

struct IsotonicResult {
  bool ok = false;
  // on failure: the offending Newton-polytope edge and a constructed pair
  // x <= y with subgradient(F,x) incomparable to subgradient(F,y)
  std::optional<std::pair<RatVec, RatVec>> witness_edge;
  std::optional<RatVec> witness_x, witness_y;
  std::string reason;
};

// Checks isotonicity of the gradient of F via positive edges of N(F).
// On failure the witness pair is built the way the equivalence proof does:
// take v' > 0 orthogonal to the edge direction, tilt it into the positive
// orthant, and step off the edge's supporting direction by +-delta.
inline IsotonicResult isotonic_check(const CpwlFn& F) {
  if (F.dim > 3) throw std::domain_error("isotonic_check needs dim <= 3");
  IsotonicResult res;
  Polytope N = newton_polytope(F);
  auto pe = positive_edges(N);
  if (pe.ok) {
    res.ok = true;
    return res;
  }
  auto [i, j] = *pe.witness;
  RatVec p = N.vertices[i], q = N.vertices[j];
  RatVec pq = sub(p, q);  // strictly mixed signs
  res.witness_edge = std::make_pair(p, q);

  // v' > 0 with <v', p-q> = 0
  Rat pos = 0, neg = 0;
  for (const Rat& c : pq) {
    if (c > 0) pos += c;
    if (c < 0) neg -= c;
  }
  RatVec vp(pq.size());
  for (size_t k = 0; k < pq.size(); ++k)
    vp[k] = pq[k] > 0 ? neg : (pq[k] < 0 ? pos : Rat(1));
  // alpha making v = p - q + alpha v' strictly positive
  Rat alpha = 1;
  for (size_t k = 0; k < pq.size(); ++k) {
    if (pq[k] < 0) {
      Rat need = (Rat(1) - pq[k]) / vp[k];
      if (need > alpha) alpha = need;
    }
  }
  RatVec v = add(pq, scale(alpha, vp));
  if (dot(v, pq) <= 0) throw std::logic_error("tilted direction lost its sign");

  RatVec z = edge_support_direction(N, i, j);
  Rat delta = 1;
  for (int it = 0; it < 256; ++it) {
    RatVec x = sub(z, scale(delta, v));
    RatVec y = add(z, scale(delta, v));
    Polytope fx = support_face(N, x);
    Polytope fy = support_face(N, y);
    if (fx.is_point() && fx.vertices[0] == q && fy.is_point() && fy.vertices[0] == p) {
      res.witness_x = x;
      res.witness_y = y;
      res.reason = "subgradients at the witness pair are incomparable";
      return res;
    }
    delta /= 2;
  }
  throw std::logic_error("failed to separate the witness edge");
}

}  // namespace nf
