#pragma once

#include "linalg.hpp"
#include "lp.hpp"
#include "vec.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nf {

// V-representation with exact rational coordinates. Vertices are always the
// extreme points, pairwise distinct, in lexicographic order; two polytopes
// are equal iff their canonical vertex lists are equal. Face data (rings,
// facets, edges) is computed on demand for dim <= 3 by pure functions, so
// values stay immutable and thread-safe.
struct Polytope {
  int dim = 0;
  std::vector<RatVec> vertices;

  bool operator==(const Polytope& o) const { return dim == o.dim && vertices == o.vertices; }
  bool is_point() const { return vertices.size() == 1; }
};

using Ring = std::vector<RatVec>;  // ccw cycle of a convex polygon

inline void sort_vertices(std::vector<RatVec>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// Andrew's monotone chain with exact cross products; collinear interior
// points are dropped, so the ring holds extreme points only (ccw, starting
// at the lex-min vertex). Collinear input degenerates to a 2-point "ring".
inline Ring hull_ring_2d(std::vector<RatVec> pts) {
  sort_vertices(pts);
  if (pts.size() <= 2) return pts;
  const size_t n = pts.size();
  Ring lower, upper;
  for (const auto& p : pts) {
    while (lower.size() >= 2 &&
           cross2(sub(lower.back(), lower[lower.size() - 2]), sub(p, lower[lower.size() - 2])) <= 0)
      lower.pop_back();
    lower.push_back(p);
  }
  for (size_t i = n; i-- > 0;) {
    const auto& p = pts[i];
    while (upper.size() >= 2 &&
           cross2(sub(upper.back(), upper[upper.size() - 2]), sub(p, upper[upper.size() - 2])) <= 0)
      upper.pop_back();
    upper.push_back(p);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

inline Polytope convex_hull(std::vector<RatVec> pts, int dim) {
  if (pts.empty()) throw std::invalid_argument("convex hull of empty set");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  for (const auto& p : pts)
    if ((int)p.size() != dim) throw std::invalid_argument("dimension mismatch");
  sort_vertices(pts);
  Polytope P;
  P.dim = dim;
  if (pts.size() == 1) {
    P.vertices = pts;
    return P;
  }
  if (dim == 1) {
    P.vertices = {pts.front(), pts.back()};
    return P;
  }
  if (dim == 2) {
    P.vertices = hull_ring_2d(pts);
    sort_vertices(P.vertices);
    return P;
  }
  // general dimension: p is extreme iff p is not in the hull of the rest
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<RatVec> rest;
    rest.reserve(pts.size() - 1);
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) rest.push_back(pts[j]);
    if (!point_in_hull(pts[i], rest)) P.vertices.push_back(pts[i]);
  }
  return P;
}

inline Polytope make_point(RatVec p) {
  Polytope P;
  P.dim = (int)p.size();
  P.vertices = {std::move(p)};
  return P;
}

// vertex subsets of a polytope are already extreme; skip re-filtering
inline Polytope polytope_from_extreme(int dim, std::vector<RatVec> vs) {
  Polytope P;
  P.dim = dim;
  P.vertices = std::move(vs);
  sort_vertices(P.vertices);
  return P;
}

inline Polytope translate(const Polytope& P, const RatVec& b) {
  Polytope Q;
  Q.dim = P.dim;
  Q.vertices.reserve(P.vertices.size());
  for (const auto& v : P.vertices) Q.vertices.push_back(add(v, b));
  sort_vertices(Q.vertices);
  return Q;
}

inline Polytope scale(const Rat& a, const Polytope& P) {
  if (a == 0) return make_point(zero_vec(P.dim));
  Polytope Q;
  Q.dim = P.dim;
  for (const auto& v : P.vertices) Q.vertices.push_back(scale(a, v));
  sort_vertices(Q.vertices);
  return Q;
}

inline Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
  if (P.dim != Q.dim) throw std::invalid_argument("dimension mismatch");
  if (P.is_point()) return translate(Q, P.vertices[0]);
  if (Q.is_point()) return translate(P, Q.vertices[0]);
  std::vector<RatVec> sums;
  sums.reserve(P.vertices.size() * Q.vertices.size());
  for (const auto& p : P.vertices)
    for (const auto& q : Q.vertices) sums.push_back(add(p, q));
  return convex_hull(std::move(sums), P.dim);
}

inline Rat support_value(const Polytope& P, const RatVec& u) {
  if ((int)u.size() != P.dim) throw std::invalid_argument("dimension mismatch");
  if (is_zero(u)) throw std::invalid_argument("zero direction");
  Rat best = dot(P.vertices[0], u);
  for (size_t i = 1; i < P.vertices.size(); ++i) {
    Rat v = dot(P.vertices[i], u);
    if (v > best) best = v;
  }
  return best;
}

inline Polytope support_face(const Polytope& P, const RatVec& u) {
  Rat h = support_value(P, u);
  std::vector<RatVec> face;
  for (const auto& v : P.vertices)
    if (dot(v, u) == h) face.push_back(v);
  return polytope_from_extreme(P.dim, std::move(face));
}

inline Polytope conv_with_point(const Polytope& P, const RatVec& q) {
  if ((int)q.size() != P.dim) throw std::invalid_argument("dimension mismatch");
  auto pts = P.vertices;
  pts.push_back(q);
  return convex_hull(std::move(pts), P.dim);
}

inline bool point_in_polytope(const Polytope& P, const RatVec& x) {
  if ((int)x.size() != P.dim) throw std::invalid_argument("dimension mismatch");
  return point_in_hull(x, P.vertices);
}

// ---------------------------------------------------------------------------
// face structure (dim <= 3)

struct Facet {
  RatVec normal;             // outward, canonically scaled
  Rat offset;                // <normal, x> = offset on the facet
  std::vector<size_t> ring;  // vertex indices, cyclic order
};

namespace detail {

inline void normalize_direction(RatVec& n, Rat& off) {
  for (const auto& c : n) {
    if (c != 0) {
      Rat a = rat_abs(c);
      for (auto& x : n) x /= a;
      off /= a;
      return;
    }
  }
}

// cyclic order of coplanar 3D points (indices into pts)
inline std::vector<size_t> ring_order_in_plane(const std::vector<RatVec>& pts,
                                               const std::vector<size_t>& idx) {
  if (idx.size() <= 2) return idx;
  const RatVec& o = pts[idx[0]];
  RatVec u, normal;
  bool found = false;
  for (size_t a = 1; a < idx.size() && !found; ++a) {
    u = sub(pts[idx[a]], o);
    if (is_zero(u)) continue;
    for (size_t b = 1; b < idx.size(); ++b) {
      RatVec w = cross3(u, sub(pts[idx[b]], o));
      if (!is_zero(w)) {
        normal = w;
        found = true;
        break;
      }
    }
  }
  if (!found) throw std::logic_error("ring_order_in_plane: points are collinear");
  RatVec v = cross3(normal, u);
  std::vector<RatVec> proj;
  std::vector<size_t> back;
  for (size_t i : idx) {
    proj.push_back({dot(sub(pts[i], o), u), dot(sub(pts[i], o), v)});
    back.push_back(i);
  }
  Ring ring = hull_ring_2d(proj);
  std::vector<size_t> out;
  for (const auto& rp : ring) {
    for (size_t k = 0; k < proj.size(); ++k) {
      if (proj[k] == rp) {
        out.push_back(back[k]);
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

// facets of a full-dimensional 3-polytope, by supporting-plane enumeration
inline std::vector<Facet> facets_3d(const Polytope& P) {
  if (P.dim != 3) throw std::invalid_argument("facets_3d needs dim 3");
  const auto& V = P.vertices;
  const size_t n = V.size();
  std::map<std::pair<RatVec, Rat>, std::vector<size_t>> planes;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        RatVec nor = cross3(sub(V[j], V[i]), sub(V[k], V[i]));
        if (is_zero(nor)) continue;
        Rat off = dot(nor, V[i]);
        bool above = false, below = false;
        for (size_t t = 0; t < n && !(above && below); ++t) {
          Rat d = dot(nor, V[t]) - off;
          if (d > 0) above = true;
          if (d < 0) below = true;
        }
        if (above && below) continue;
        if (above) {
          nor = negate(nor);
          off = -off;
        }
        detail::normalize_direction(nor, off);
        auto& slot = planes[{nor, off}];
        if (slot.empty()) {
          for (size_t t = 0; t < n; ++t)
            if (dot(nor, V[t]) == off) slot.push_back(t);
        }
      }
  std::vector<Facet> out;
  for (auto& [key, idx] : planes) {
    Facet f;
    f.normal = key.first;
    f.offset = key.second;
    f.ring = detail::ring_order_in_plane(V, idx);
    out.push_back(std::move(f));
  }
  return out;
}

// ccw ring of a 2D polytope's vertices
inline Ring ring_2d(const Polytope& P) {
  if (P.dim != 2) throw std::invalid_argument("ring_2d needs dim 2");
  return hull_ring_2d(P.vertices);
}

using EdgeIdx = std::pair<size_t, size_t>;

// edges as index pairs into P.vertices; requires dim <= 3
inline std::vector<EdgeIdx> edges_of(const Polytope& P) {
  const auto& V = P.vertices;
  const size_t n = V.size();
  if (n <= 1) return {};
  if (n == 2) return {{0, 1}};
  if (P.dim > 3) throw std::domain_error("face data unavailable for dim > 3");

  auto index_of = [&](const RatVec& v) {
    auto it = std::lower_bound(V.begin(), V.end(), v, lex_less);
    return (size_t)(it - V.begin());
  };

  std::vector<EdgeIdx> edges;
  auto add_ring_edges = [&](const std::vector<size_t>& ring) {
    for (size_t a = 0; a < ring.size(); ++a) {
      size_t i = ring[a], j = ring[(a + 1) % ring.size()];
      edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  };

  if (P.dim == 2) {
    Ring ring = ring_2d(P);
    std::vector<size_t> idx;
    for (const auto& v : ring) idx.push_back(index_of(v));
    add_ring_edges(idx);
  } else {  // dim == 3
    size_t rank = affine_rank(V);
    if (rank <= 1) return {{0, n - 1}};
    if (rank == 2) {
      std::vector<size_t> all(n);
      for (size_t i = 0; i < n; ++i) all[i] = i;
      add_ring_edges(detail::ring_order_in_plane(V, all));
    } else {
      for (const auto& f : facets_3d(P)) add_ring_edges(f.ring);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// A direction whose support face is exactly the edge {vi, vj}.
inline RatVec edge_support_direction(const Polytope& P, size_t i, size_t j) {
  const auto& V = P.vertices;
  RatVec d = sub(V[j], V[i]);
  if (V.size() == 2) {
    if (P.dim == 2) return {-d[1], d[0]};
    if (P.dim == 3) {
      for (int ax = 0; ax < 3; ++ax) {
        RatVec z = cross3(d, unit_vec(3, ax));
        if (!is_zero(z)) return z;
      }
    }
    throw std::domain_error("no supporting direction for a segment in dim 1");
  }
  RatVec z;
  if (P.dim == 2) {
    z = {d[1], -d[0]};  // outward for ccw order; fix sign against the rest
    for (const auto& v : V) {
      Rat dv = dot(z, v) - dot(z, V[i]);
      if (dv > 0) {
        z = negate(z);
        break;
      }
      if (dv < 0) break;
    }
  } else {
    size_t rank = affine_rank(V);
    if (rank == 2) {
      // flat polygon in 3-space: in-plane outward edge normal
      std::vector<size_t> all(V.size());
      for (size_t t = 0; t < all.size(); ++t) all[t] = t;
      auto ring = detail::ring_order_in_plane(V, all);
      RatVec plane_n = cross3(sub(V[ring[1]], V[ring[0]]), sub(V[ring[2]], V[ring[0]]));
      z = cross3(plane_n, d);
      for (const auto& v : V) {
        Rat dv = dot(z, v) - dot(z, V[i]);
        if (dv > 0) {
          z = negate(z);
          break;
        }
        if (dv < 0) break;
      }
    } else {
      // sum of the two adjacent facet normals lies strictly inside the
      // normal cone of the edge
      std::vector<RatVec> normals;
      for (const auto& f : facets_3d(P)) {
        for (size_t a = 0; a < f.ring.size(); ++a) {
          size_t x = f.ring[a], y = f.ring[(a + 1) % f.ring.size()];
          if ((x == i && y == j) || (x == j && y == i)) {
            normals.push_back(f.normal);
            break;
          }
        }
      }
      if (normals.size() != 2) throw std::logic_error("edge is not on exactly two facets");
      z = add(normals[0], normals[1]);
    }
  }
  Polytope face = support_face(P, z);
  std::vector<RatVec> want = {V[i], V[j]};
  sort_vertices(want);
  if (face.vertices != want) throw std::logic_error("edge support direction check failed");
  return z;
}

// ---------------------------------------------------------------------------
// positive edges (Claim 2.4 machinery)

struct OrientedEdge {
  RatVec tail, head;  // head - tail is componentwise non-negative
};

struct PositiveEdgesResult {
  bool ok = false;
  std::vector<OrientedEdge> edges;
  std::optional<EdgeIdx> witness;  // an edge whose direction has mixed signs
};

inline PositiveEdgesResult positive_edges(const Polytope& P) {
  PositiveEdgesResult res;
  auto es = edges_of(P);  // a point has no edges and so has positive edges
  for (const auto& [i, j] : es) {
    RatVec d = sub(P.vertices[j], P.vertices[i]);
    int s = orthant_sign(d);
    if (s == 0) {
      res.ok = false;
      res.edges.clear();
      res.witness = EdgeIdx{i, j};
      return res;
    }
    if (s > 0)
      res.edges.push_back({P.vertices[i], P.vertices[j]});
    else
      res.edges.push_back({P.vertices[j], P.vertices[i]});
  }
  res.ok = true;
  return res;
}

// ---------------------------------------------------------------------------
// homothety: P = a Q + b with a >= 0

inline std::optional<std::pair<Rat, RatVec>> homothetic(const Polytope& P, const Polytope& Q) {
  if (P.dim != Q.dim) throw std::invalid_argument("dimension mismatch");
  if (P.is_point()) return std::make_pair(Rat(0), P.vertices[0]);
  if (Q.is_point()) return std::nullopt;  // aQ+b is a point, P is not
  if (P.vertices.size() != Q.vertices.size()) return std::nullopt;
  Rat a = -1;
  for (int k = 0; k < P.dim; ++k) {
    RatVec u = unit_vec(P.dim, k);
    RatVec mu = negate(u);
    Rat wp = support_value(P, u) + support_value(P, mu);
    Rat wq = support_value(Q, u) + support_value(Q, mu);
    if (wq != 0) {
      a = wp / wq;
      break;
    }
    if (wp != 0) return std::nullopt;
  }
  if (a <= 0) return std::nullopt;
  RatVec b = sub(P.vertices.front(), scale(a, Q.vertices.front()));
  if (translate(scale(a, Q), b) == P) return std::make_pair(a, b);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// supporting-plane certificate: is the triangle (t0,t1,t2) exactly a 2-face?
// Returns the outward normal when it is.

inline std::optional<RatVec> triangle_face_normal(const Polytope& P, const RatVec& t0,
                                                  const RatVec& t1, const RatVec& t2) {
  RatVec n = cross3(sub(t1, t0), sub(t2, t0));
  if (is_zero(n)) return std::nullopt;
  Rat off = dot(n, t0);
  bool above = false, below = false;
  for (const auto& v : P.vertices) {
    if (v == t0 || v == t1 || v == t2) continue;
    Rat d = dot(n, v) - off;
    if (d >= 0) above = true;
    if (d <= 0) below = true;
    if (above && below) return std::nullopt;  // coplanar extra vertex or cut plane
  }
  if (!above) return n;
  if (!below) return negate(n);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// 2D convex clipping (exact)

struct Halfplane {
  RatVec normal;  // <normal, x> <= offset
  Rat offset;
};

inline Ring clip_ring(const Ring& ring, const Halfplane& hp) {
  if (ring.empty()) return {};
  Ring out;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const RatVec& a = ring[i];
    const RatVec& b = ring[(i + 1) % n];
    Rat da = hp.offset - dot(hp.normal, a);
    Rat db = hp.offset - dot(hp.normal, b);
    if (da >= 0) out.push_back(a);
    if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
      Rat t = da / (da - db);
      out.push_back(add(a, scale(t, sub(b, a))));
    }
  }
  return out;
}

inline std::vector<Halfplane> bounding_halfplanes(const Polytope& Q) {
  std::vector<Halfplane> hps;
  if (Q.vertices.size() == 1) {
    const RatVec& p = Q.vertices[0];
    for (int k = 0; k < 2; ++k) {
      hps.push_back({unit_vec(2, k), p[k]});
      hps.push_back({unit_vec(2, k, -1), -p[k]});
    }
    return hps;
  }
  if (Q.vertices.size() == 2) {
    const RatVec& a = Q.vertices[0];
    const RatVec& b = Q.vertices[1];
    RatVec d = sub(b, a);
    RatVec n = {-d[1], d[0]};
    hps.push_back({n, dot(n, a)});
    hps.push_back({negate(n), dot(negate(n), a)});
    hps.push_back({d, dot(d, b)});
    hps.push_back({negate(d), dot(negate(d), a)});
    return hps;
  }
  Ring ring = ring_2d(Q);
  for (size_t i = 0; i < ring.size(); ++i) {
    RatVec d = sub(ring[(i + 1) % ring.size()], ring[i]);
    RatVec n = {d[1], -d[0]};  // outward for ccw
    hps.push_back({n, dot(n, ring[i])});
  }
  return hps;
}

inline std::optional<Polytope> polygon_intersect(const Polytope& P, const Polytope& Q) {
  if (P.dim != 2 || Q.dim != 2) throw std::invalid_argument("polygon_intersect needs dim 2");
  Ring ring = P.vertices.size() >= 3 ? ring_2d(P) : Ring(P.vertices.begin(), P.vertices.end());
  for (const auto& hp : bounding_halfplanes(Q)) {
    ring = clip_ring(ring, hp);
    if (ring.empty()) return std::nullopt;
  }
  return convex_hull(std::vector<RatVec>(ring.begin(), ring.end()), 2);
}

// doubled signed area of a ccw ring
inline Rat ring_area2(const Ring& ring) {
  Rat a = 0;
  for (size_t i = 0; i < ring.size(); ++i)
    a += cross2(ring[i], ring[(i + 1) % ring.size()]);
  return a;
}

inline RatVec ring_centroid(const Ring& ring) {
  Rat a2 = ring_area2(ring);
  if (a2 == 0) throw std::invalid_argument("degenerate ring has no area centroid");
  Rat cx = 0, cy = 0;
  for (size_t i = 0; i < ring.size(); ++i) {
    const RatVec& p = ring[i];
    const RatVec& q = ring[(i + 1) % ring.size()];
    Rat w = cross2(p, q);
    cx += (p[0] + q[0]) * w;
    cy += (p[1] + q[1]) * w;
  }
  return {cx / (3 * a2), cy / (3 * a2)};
}

}  // namespace nf
