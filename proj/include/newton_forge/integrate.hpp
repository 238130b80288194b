#pragma once

#include "cpwl.hpp"
#include "polytope.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nf {

// Convex piecewise-affine function with biases, as a max of affine pieces.
// Only the 1D/2D analysis operations accept biases; the Newton-polytope
// path stays homogeneous.
struct AffinePiece {
  RatVec grad;
  Rat bias;
};

struct MaxAffine {
  int dim = 0;
  std::vector<AffinePiece> pieces;
};

inline MaxAffine make_max_affine(int dim, std::vector<AffinePiece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("max-affine needs at least one piece");
  for (const auto& p : pieces)
    if ((int)p.grad.size() != dim) throw std::invalid_argument("dimension mismatch");
  return MaxAffine{dim, std::move(pieces)};
}

inline MaxAffine to_max_affine(const CpwlFn& F) {
  MaxAffine m;
  m.dim = F.dim;
  for (const auto& g : F.generators) m.pieces.push_back({g, Rat(0)});
  return m;
}

inline Rat eval(const MaxAffine& f, const RatVec& x) {
  Rat best = dot(f.pieces[0].grad, x) + f.pieces[0].bias;
  for (size_t i = 1; i < f.pieces.size(); ++i) {
    Rat v = dot(f.pieces[i].grad, x) + f.pieces[i].bias;
    if (v > best) best = v;
  }
  return best;
}

// ---------------------------------------------------------------------------
// 1D: exact integral of |f - (a y + b)| over [0,1] and slope witnesses

namespace detail {

// integral of |s y + c| over [lo, hi], splitting at the zero crossing
inline Rat integral_abs_affine_1d(const Rat& s, const Rat& c, const Rat& lo, const Rat& hi) {
  auto prim = [&](const Rat& y) { return s * y * y / 2 + c * y; };  // primitive of s y + c
  if (s == 0) return rat_abs(c) * (hi - lo);
  Rat root = -c / s;
  if (root <= lo || root >= hi) return rat_abs(prim(hi) - prim(lo));
  return rat_abs(prim(root) - prim(lo)) + rat_abs(prim(hi) - prim(root));
}

// breakpoints of a 1D max-affine on [lo, hi] (all pairwise crossings)
inline std::vector<Rat> breakpoints_1d(const MaxAffine& f, const Rat& lo, const Rat& hi) {
  std::vector<Rat> cuts = {lo, hi};
  for (size_t i = 0; i < f.pieces.size(); ++i)
    for (size_t j = i + 1; j < f.pieces.size(); ++j) {
      Rat ds = f.pieces[i].grad[0] - f.pieces[j].grad[0];
      if (ds == 0) continue;
      Rat y = (f.pieces[j].bias - f.pieces[i].bias) / ds;
      if (y > lo && y < hi) cuts.push_back(y);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

inline size_t active_piece_1d(const MaxAffine& f, const Rat& y) {
  size_t best = 0;
  Rat bv = f.pieces[0].grad[0] * y + f.pieces[0].bias;
  for (size_t i = 1; i < f.pieces.size(); ++i) {
    Rat v = f.pieces[i].grad[0] * y + f.pieces[i].bias;
    if (v > bv || (v == bv && f.pieces[i].grad[0] > f.pieces[best].grad[0])) {
      bv = v;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

inline Rat integrate_abs_vs_affine_1d(const MaxAffine& f, const Rat& a, const Rat& b) {
  if (f.dim != 1) throw std::invalid_argument("needs a 1D function");
  auto cuts = detail::breakpoints_1d(f, Rat(0), Rat(1));
  Rat total = 0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rat mid = (cuts[k] + cuts[k + 1]) / 2;
    const auto& piece = f.pieces[detail::active_piece_1d(f, mid)];
    total += detail::integral_abs_affine_1d(piece.grad[0] - a, piece.bias - b, cuts[k], cuts[k + 1]);
  }
  return total;
}

struct SlopeWitness {
  RatVec x_low;   // point with a small subgradient
  Rat g_low;      // g_low <= a + 8 * integral
  RatVec x_high;  // point with a large subgradient
  Rat g_high;     // g_high >= a - 8 * integral
  Rat integral;   // exact value of int_0^1 |f - (a y + b)|
};

// 1D slope extraction: somewhere on [0,1] the subgradient of f is close to
// the slope of any affine comparison line, with error 8 * L1-distance.
inline SlopeWitness slope_witness_1d(const MaxAffine& f, const Rat& a, const Rat& b) {
  if (f.dim != 1) throw std::invalid_argument("needs a 1D function");
  SlopeWitness w;
  w.integral = integrate_abs_vs_affine_1d(f, a, b);
  Rat bound_hi = a + 8 * w.integral;
  Rat bound_lo = a - 8 * w.integral;
  auto cuts = detail::breakpoints_1d(f, Rat(0), Rat(1));
  bool found_lo = false, found_hi = false;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rat mid = (cuts[k] + cuts[k + 1]) / 2;
    Rat slope = f.pieces[detail::active_piece_1d(f, mid)].grad[0];
    if (!found_lo && slope <= bound_hi) {
      w.x_low = {mid};
      w.g_low = slope;
      found_lo = true;
    }
    if (slope >= bound_lo) {  // keep the last qualifying piece
      w.x_high = {mid};
      w.g_high = slope;
      found_hi = true;
    }
  }
  if (!found_lo || !found_hi) throw std::logic_error("slope witness bound violated");
  return w;
}

// ---------------------------------------------------------------------------
// 2D: exact expectation of |F - G| over a rectangle

struct Box2 {
  Rat x0, x1, y0, y1;
};

namespace detail {

inline Ring box_ring(const Box2& box) {
  return {{box.x0, box.y0}, {box.x1, box.y0}, {box.x1, box.y1}, {box.x0, box.y1}};
}

// split a convex ring by the line <n,x> = c; returns the (possibly empty)
// pieces on each side, dropping slivers of zero area
inline std::vector<Ring> split_ring(const Ring& ring, const RatVec& n, const Rat& c) {
  std::vector<Ring> out;
  for (int side = 0; side < 2; ++side) {
    Halfplane hp = side == 0 ? Halfplane{n, c} : Halfplane{negate(n), -c};
    Ring piece = clip_ring(ring, hp);
    if (piece.size() >= 3 && ring_area2(piece) != 0) out.push_back(std::move(piece));
  }
  return out;
}

// integral of an affine function over a polygon: area times value at centroid
inline Rat integral_affine_over_ring(const Ring& ring, const RatVec& g, const Rat& b) {
  Rat a2 = ring_area2(ring);
  if (a2 == 0) return 0;
  RatVec cen = ring_centroid(ring);
  return (a2 / 2) * (dot(g, cen) + b);
}

inline size_t active_piece_2d(const MaxAffine& f, const RatVec& x) {
  size_t best = 0;
  Rat bv = dot(f.pieces[0].grad, x) + f.pieces[0].bias;
  for (size_t i = 1; i < f.pieces.size(); ++i) {
    Rat v = dot(f.pieces[i].grad, x) + f.pieces[i].bias;
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

// Exact E|F - G| over the box: overlay both linear-region subdivisions
// (all pairwise bisector lines), triangulate each cell by a fan from its
// lex-min vertex, split each triangle along the zero set of the affine
// difference, and integrate the signed affine pieces in closed form.
inline Rat integrate_abs_diff(const MaxAffine& F, const MaxAffine& G, const Box2& box) {
  if (F.dim != 2 || G.dim != 2) throw std::invalid_argument("needs 2D functions");
  if (box.x0 >= box.x1 || box.y0 >= box.y1) throw std::invalid_argument("empty or unbounded box");

  std::vector<Ring> cells = {detail::box_ring(box)};
  auto cut_all = [&](const MaxAffine& f) {
    for (size_t i = 0; i < f.pieces.size(); ++i)
      for (size_t j = i + 1; j < f.pieces.size(); ++j) {
        RatVec dn = sub(f.pieces[i].grad, f.pieces[j].grad);
        if (is_zero(dn)) continue;
        Rat c = f.pieces[j].bias - f.pieces[i].bias;
        std::vector<Ring> next;
        for (const auto& cell : cells)
          for (auto& piece : detail::split_ring(cell, dn, c)) next.push_back(std::move(piece));
        cells = std::move(next);
      }
  };
  cut_all(F);
  cut_all(G);

  Rat total = 0;
  for (const auto& cell : cells) {
    RatVec probe = ring_centroid(cell);
    const auto& pf = F.pieces[detail::active_piece_2d(F, probe)];
    const auto& pg = G.pieces[detail::active_piece_2d(G, probe)];
    RatVec dg = sub(pf.grad, pg.grad);
    Rat db = pf.bias - pg.bias;

    // fan from the lex-min vertex, canonical for reproducibility
    size_t lo = 0;
    for (size_t i = 1; i < cell.size(); ++i)
      if (lex_less(cell[i], cell[lo])) lo = i;
    for (size_t k = 1; k + 1 < cell.size(); ++k) {
      Ring tri = {cell[lo], cell[(lo + k) % cell.size()], cell[(lo + k + 1) % cell.size()]};
      if (ring_area2(tri) == 0) continue;
      if (is_zero(dg)) {
        total += rat_abs(detail::integral_affine_over_ring(tri, dg, db));
        continue;
      }
      for (const auto& part : detail::split_ring(tri, dg, -db))
        total += rat_abs(detail::integral_affine_over_ring(part, dg, db));
    }
  }
  Rat area = (box.x1 - box.x0) * (box.y1 - box.y0);
  return total / area;
}

}  // namespace nf
