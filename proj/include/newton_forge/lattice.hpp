#pragma once

#include "polytope.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace nf {

// Radius-r ball around the origin in the infinite triangular lattice,
// in axial coordinates (a, b) with the six neighbor offsets below. The
// plane embedding uses the basis (1,0) and (1/2, s) with s a rational
// stand-in for sqrt(3)/2; only combinatorics and convex position matter,
// and the realization certificate validates the choice.
struct LatticeBall {
  int r = 0;
  Rat s = Rat(7, 8);
  std::vector<std::pair<int, int>> axial;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::vector<int>> adj;              // sorted neighbor lists
  std::vector<std::array<int, 3>> triangles;      // sorted vertex triples
  std::vector<RatVec> plane;                      // rational 2D embedding

  int n() const { return (int)axial.size(); }
  int origin() const { return index.at({0, 0}); }
};

inline constexpr std::array<std::pair<int, int>, 6> kHexOffsets = {
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};

inline int hex_dist(int a, int b) {
  int c = a + b;
  return (std::abs(a) + std::abs(b) + std::abs(c)) / 2;
}

inline LatticeBall build_ball(int r, Rat s = Rat(7, 8)) {
  if (r < 0) throw std::invalid_argument("radius must be >= 0");
  LatticeBall g;
  g.r = r;
  g.s = s;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      if (hex_dist(a, b) <= r) {
        g.index[{a, b}] = (int)g.axial.size();
        g.axial.emplace_back(a, b);
      }
  g.adj.resize(g.axial.size());
  for (int i = 0; i < g.n(); ++i) {
    auto [a, b] = g.axial[i];
    for (auto [da, db] : kHexOffsets) {
      auto it = g.index.find({a + da, b + db});
      if (it != g.index.end()) g.adj[i].push_back(it->second);
    }
    std::sort(g.adj[i].begin(), g.adj[i].end());
  }
  // the two triangle orientations, rooted at their unique base vertex
  for (int i = 0; i < g.n(); ++i) {
    auto [a, b] = g.axial[i];
    auto tri = [&](std::pair<int, int> p, std::pair<int, int> q) {
      auto ip = g.index.find(p);
      auto iq = g.index.find(q);
      if (ip == g.index.end() || iq == g.index.end()) return;
      std::array<int, 3> t = {i, ip->second, iq->second};
      std::sort(t.begin(), t.end());
      g.triangles.push_back(t);
    };
    tri({a + 1, b}, {a, b + 1});      // pointing up
    tri({a + 1, b}, {a + 1, b - 1});  // pointing down
  }
  std::sort(g.triangles.begin(), g.triangles.end());
  g.triangles.erase(std::unique(g.triangles.begin(), g.triangles.end()), g.triangles.end());
  g.plane.resize(g.axial.size());
  for (int i = 0; i < g.n(); ++i) {
    auto [a, b] = g.axial[i];
    g.plane[i] = {Rat(a) + Rat(b) / 2, Rat(b) * g.s};
  }
  return g;
}

inline int edge_count(const LatticeBall& g) {
  int e = 0;
  for (const auto& ns : g.adj) e += (int)ns.size();
  return e / 2;
}

// ---------------------------------------------------------------------------
// vertex-set helpers (bitmask over the ball's vertex universe)

struct VertSet {
  std::vector<uint64_t> w;
  explicit VertSet(int n = 0) : w((n + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (uint64_t x : w) c += __builtin_popcountll(x);
    return c;
  }
  bool empty() const {
    for (uint64_t x : w)
      if (x) return false;
    return true;
  }
  VertSet& operator|=(const VertSet& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    return *this;
  }
  VertSet& operator&=(const VertSet& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    return *this;
  }
  VertSet& and_not(const VertSet& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    return *this;
  }
  bool subset_of(const VertSet& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  template <typename F>
  void for_each(F f) const {
    for (size_t wi = 0; wi < w.size(); ++wi) {
      uint64_t x = w[wi];
      while (x) {
        int b = __builtin_ctzll(x);
        f((int)(wi * 64 + b));
        x &= x - 1;
      }
    }
  }
};

inline VertSet to_set(const LatticeBall& g, const std::vector<int>& vs) {
  VertSet s(g.n());
  for (int v : vs) s.set(v);
  return s;
}

inline std::vector<int> to_vector(const VertSet& s) {
  std::vector<int> out;
  s.for_each([&](int v) { out.push_back(v); });
  return out;
}

// closed neighborhood B_1(v)
inline VertSet b1_vertex(const LatticeBall& g, int v) {
  VertSet s(g.n());
  s.set(v);
  for (int u : g.adj[v]) s.set(u);
  return s;
}

inline VertSet b1_set(const LatticeBall& g, const VertSet& u) {
  VertSet s = u;
  u.for_each([&](int v) {
    for (int x : g.adj[v]) s.set(x);
  });
  return s;
}

// outer vertex boundary of K inside the ball
inline VertSet boundary(const LatticeBall& g, const VertSet& k) {
  VertSet b = b1_set(g, k);
  b.and_not(k);
  return b;
}

inline std::vector<int> boundary_vertices(const LatticeBall& g, const std::vector<int>& k) {
  return to_vector(boundary(g, to_set(g, k)));
}

// connected components of the graph induced by the set, BFS from the
// smallest index so the order is deterministic
inline std::vector<VertSet> components(const LatticeBall& g, VertSet rest) {
  std::vector<VertSet> comps;
  while (!rest.empty()) {
    int start = -1;
    rest.for_each([&](int v) {
      if (start < 0) start = v;
    });
    VertSet comp(g.n());
    std::vector<int> stack = {start};
    comp.set(start);
    rest.reset(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.adj[v])
        if (rest.test(u)) {
          rest.reset(u);
          comp.set(u);
          stack.push_back(u);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const LatticeBall& g, const VertSet& s) {
  if (s.empty()) return true;
  return components(g, s).size() == 1;
}

// exhaustive 2-vertex-removal connectivity check (Claim 3.2 instance)
inline bool check_3_connected(const LatticeBall& g) {
  if (g.r < 1) throw std::invalid_argument("check_3_connected needs r >= 1");
  const int n = g.n();
  if (n < 4) return false;
  VertSet all(n);
  for (int i = 0; i < n; ++i) all.set(i);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      VertSet s = all;
      s.reset(u);
      s.reset(v);
      if (!is_connected(g, s)) return false;
    }
  return true;
}

// T(U): all ball triangles contained in the graph induced by the closed
// neighborhood B_1(U)
inline std::vector<std::array<int, 3>> triangle_set(const LatticeBall& g,
                                                    const std::vector<int>& u) {
  VertSet closed = b1_set(g, to_set(g, u));
  std::vector<std::array<int, 3>> out;
  for (const auto& t : g.triangles)
    if (closed.test(t[0]) && closed.test(t[1]) && closed.test(t[2])) out.push_back(t);
  return out;
}

// pseudomanifold: edge-connected through shared edges, every edge in at
// most two triangles
inline bool is_pseudomanifold(const std::vector<std::array<int, 3>>& tris) {
  if (tris.size() <= 1) return true;
  std::map<std::pair<int, int>, std::vector<int>> by_edge;
  for (size_t i = 0; i < tris.size(); ++i) {
    const auto& t = tris[i];
    by_edge[{t[0], t[1]}].push_back((int)i);
    by_edge[{t[0], t[2]}].push_back((int)i);
    by_edge[{t[1], t[2]}].push_back((int)i);
  }
  for (const auto& [e, owners] : by_edge)
    if (owners.size() > 2) return false;
  std::vector<int> comp(tris.size(), -1);
  std::vector<int> stack = {0};
  comp[0] = 0;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    const auto& t = tris[i];
    for (auto e : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}})
      for (int j : by_edge[e])
        if (comp[j] < 0) {
          comp[j] = 0;
          stack.push_back(j);
        }
  }
  for (int c : comp)
    if (c < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// realization: inverse stereographic lift onto the rational unit sphere

struct RealizeResult {
  Polytope polytope;                // P_r
  std::vector<RatVec> lifted;       // per ball vertex
  std::vector<RatVec> tri_normals;  // outward facet normal per ball triangle
  bool vertex_count_ok = false;
  bool all_triangles_faces = false;
  std::vector<int> failed_triangles;
};

inline RatVec stereographic_lift(const RatVec& p) {
  Rat n2 = dot(p, p);
  Rat den = n2 + 1;
  return {2 * p[0] / den, 2 * p[1] / den, (n2 - 1) / den};
}

inline RealizeResult realize_polytope(const LatticeBall& g) {
  if (g.r < 1) throw std::invalid_argument("realize_polytope needs r >= 1");
  RealizeResult res;
  res.lifted.reserve(g.n());
  for (int i = 0; i < g.n(); ++i) res.lifted.push_back(stereographic_lift(g.plane[i]));
  res.polytope = convex_hull(res.lifted, 3);
  res.vertex_count_ok = (int)res.polytope.vertices.size() == g.n();
  res.all_triangles_faces = true;
  res.tri_normals.resize(g.triangles.size());
  for (size_t t = 0; t < g.triangles.size(); ++t) {
    const auto& tri = g.triangles[t];
    auto nrm = triangle_face_normal(res.polytope, res.lifted[tri[0]], res.lifted[tri[1]],
                                    res.lifted[tri[2]]);
    if (!nrm) {
      res.all_triangles_faces = false;
      res.failed_triangles.push_back((int)t);
    } else {
      res.tri_normals[t] = *nrm;
    }
  }
  return res;
}

}  // namespace nf
