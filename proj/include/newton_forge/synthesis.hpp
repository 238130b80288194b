#pragma once

#include "convert.hpp"
#include "cpwl.hpp"
#include "linalg.hpp"
#include "polytope.hpp"

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace nf {

// A Minkowski summand of a polygon: a segment or a triangle, stored in
// canonical position (lex-min vertex at the origin), so the parts of a
// positive-edge polygon live in the non-negative quadrant.
struct DecompositionPart {
  bool is_triangle = false;
  Polytope shape;  // dim 2
};

namespace detail {

inline Polytope canonical_part(const Polytope& P) {
  return translate(P, negate(P.vertices.front()));
}

// ratio a/b for parallel segment vectors (b != 0)
inline Rat parallel_ratio(const RatVec& a, const RatVec& b) {
  for (size_t k = 0; k < b.size(); ++k)
    if (b[k] != 0) return a[k] / b[k];
  throw std::logic_error("zero direction vector");
}

// intersection of the lines through (a, a+da) and (b, b+db)
inline RatVec line_intersect(const RatVec& a, const RatVec& da, const RatVec& b, const RatVec& db) {
  Rat den = cross2(da, db);
  if (den == 0) throw std::logic_error("parallel lines do not intersect");
  Rat t = cross2(sub(b, a), db) / den;
  return add(a, scale(t, da));
}

inline Polytope segment2(const RatVec& a, const RatVec& b) {
  return convex_hull({a, b}, 2);
}

// Minkowski difference P (-) Q = intersection of P - q over vertices q
inline std::optional<Polytope> minkowski_diff(const Polytope& P, const Polytope& Q) {
  std::optional<Polytope> acc;
  for (const auto& q : Q.vertices) {
    Polytope shifted = translate(P, negate(q));
    if (!acc) {
      acc = shifted;
      continue;
    }
    acc = polygon_intersect(*acc, shifted);
    if (!acc) return std::nullopt;
  }
  return acc;
}

}  // namespace detail

// Minkowski decomposition of a polygon into segments and triangles, by
// repeatedly contracting a pair of parallel edges (case a) or a scaled copy
// of the enclosing triangle at the farthest vertex (case b). Each step is
// verified by an exact re-sum and removes at least one vertex.
inline std::vector<DecompositionPart> decompose_polygon(const Polytope& P) {
  if (P.dim != 2) throw std::invalid_argument("decompose_polygon needs dim 2");
  std::vector<DecompositionPart> parts;
  Polytope cur = P;
  while (true) {
    const size_t n = cur.vertices.size();
    if (n == 1) break;
    if (n <= 3) {
      parts.push_back({n == 3, detail::canonical_part(cur)});
      break;
    }
    Ring ring = ring_2d(cur);
    const size_t m = ring.size();
    std::vector<RatVec> E(m);
    for (size_t i = 0; i < m; ++i) E[i] = sub(ring[(i + 1) % m], ring[i]);

    // case (a): two parallel sides
    bool reduced = false;
    for (size_t i = 0; i < m && !reduced; ++i)
      for (size_t j = i + 1; j < m && !reduced; ++j) {
        if (cross2(E[i], E[j]) != 0) continue;
        Rat c = detail::parallel_ratio(E[j], E[i]);  // c < 0: opposite traversal
        RatVec shorter = (rat_abs(c) >= 1) ? E[i] : negate(E[j]);
        for (const RatVec& w : {shorter, negate(shorter)}) {
          auto rest = detail::minkowski_diff(cur, detail::segment2(zero_vec(2), w));
          if (!rest) continue;
          Polytope seg = detail::segment2(zero_vec(2), w);
          if (minkowski_sum(*rest, seg) == cur && rest->vertices.size() < n) {
            parts.push_back({false, detail::canonical_part(seg)});
            cur = *rest;
            reduced = true;
            break;
          }
        }
        if (!reduced) throw std::logic_error("parallel-edge contraction failed");
      }
    if (reduced) continue;

    // case (b): no parallel edges; contract by a homothet of the enclosing
    // triangle built from the lex-smallest edge and the farthest vertex
    size_t e1 = 0;
    auto edge_key = [&](size_t i) {
      const RatVec& a = ring[i];
      const RatVec& b = ring[(i + 1) % m];
      return lex_less(a, b) ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    for (size_t i = 1; i < m; ++i)
      if (edge_key(i) < edge_key(e1)) e1 = i;

    const RatVec& A = ring[e1];
    size_t vi = 0;
    Rat best_dist = -1;
    for (size_t i = 0; i < m; ++i) {
      Rat d = rat_abs(cross2(E[e1], sub(ring[i], A)));
      if (d > best_dist) {
        best_dist = d;
        vi = i;
      }
    }
    const RatVec& V = ring[vi];
    size_t prev = (vi + m - 1) % m;
    RatVec d2 = E[prev];            // edge into V
    RatVec d3 = E[vi];              // edge out of V
    RatVec x12 = detail::line_intersect(A, E[e1], V, d2);
    RatVec x13 = detail::line_intersect(A, E[e1], V, d3);
    // scale factor: smallest edge-to-triangle-side ratio
    Rat m1 = detail::parallel_ratio(E[e1], sub(x13, x12));
    Rat m2 = detail::parallel_ratio(d2, sub(V, x12));
    Rat m3 = detail::parallel_ratio(d3, sub(x13, V));
    Rat mm = rat_abs(m1);
    if (rat_abs(m2) < mm) mm = rat_abs(m2);
    if (rat_abs(m3) < mm) mm = rat_abs(m3);
    Polytope tri = convex_hull({scale(mm, x12), scale(mm, x13), scale(mm, V)}, 2);
    auto rest = detail::minkowski_diff(cur, tri);
    if (!rest || minkowski_sum(*rest, tri) != cur || rest->vertices.size() >= n)
      throw std::logic_error("triangle contraction failed");
    parts.push_back({true, detail::canonical_part(tri)});
    cur = *rest;
  }
  return parts;
}

inline Polytope resum_parts(const std::vector<DecompositionPart>& parts, int dim = 2) {
  Polytope acc = make_point(zero_vec(dim));
  for (const auto& p : parts) acc = minkowski_sum(acc, p.shape);
  return acc;
}

// ---------------------------------------------------------------------------
// depth-2 planar synthesis (positive-edge homogeneous functions)

struct SynthesisResult {
  std::optional<ReluNetwork> net;
  IsotonicResult iso;  // carries the witness when the precondition fails
};

// Builds a monotone net of depth <= 2 for a homogeneous monotone planar
// function with isotonic gradient: decompose N(F) into positive segments
// and triangles, emit <u,x> + relu(<v-u,x>) per segment and the nested
// two-relu form per triangle, and translate by the lex-min vertex.
inline SynthesisResult synthesize_depth2_planar(const CpwlFn& F) {
  if (F.dim != 2) throw std::invalid_argument("synthesize_depth2_planar needs dim 2");
  SynthesisResult res;
  Polytope N = newton_polytope(F);
  for (const auto& v : N.vertices)
    if (orthant_sign(v) != 1) throw std::invalid_argument("function is not monotone");
  res.iso = isotonic_check(F);
  if (!res.iso.ok) return res;

  auto parts = decompose_polygon(N);
  RatVec base = N.vertices.front();  // lex-min; the parts sum to N - base

  ReluNetwork net;
  net.input_dim = 2;
  net.kind = NetKind::monotone;
  AffineGate top{{}, Rat(0)};
  for (int k = 0; k < 2; ++k)
    if (base[k] != 0) top.in.emplace_back(k, base[k]);

  auto linear_gate = [&](const RatVec& v) {
    AffineGate a{{}, Rat(0)};
    for (int k = 0; k < 2; ++k)
      if (v[k] != 0) a.in.emplace_back(k, v[k]);
    net.gates.push_back(a);
    return net.gate_id((int)net.gates.size() - 1);
  };
  auto relu_gate = [&](int src) {
    net.gates.push_back(ReluGate{src});
    return net.gate_id((int)net.gates.size() - 1);
  };

  for (const auto& part : parts) {
    std::vector<RatVec> vs = part.shape.vertices;  // lex order = chain order here
    for (size_t i = 1; i < vs.size(); ++i)
      if (orthant_sign(sub(vs[i], vs[i - 1])) != 1)
        throw std::logic_error("decomposition part of a positive polygon is not positive");
    if (!part.is_triangle) {
      int r = relu_gate(linear_gate(sub(vs[1], vs[0])));
      top.in.emplace_back(r, Rat(1));
    } else {
      int r_inner = relu_gate(linear_gate(sub(vs[2], vs[1])));
      AffineGate mid{{}, Rat(0)};
      RatVec step = sub(vs[1], vs[0]);
      for (int k = 0; k < 2; ++k)
        if (step[k] != 0) mid.in.emplace_back(k, step[k]);
      mid.in.emplace_back(r_inner, Rat(1));
      net.gates.push_back(mid);
      int r_outer = relu_gate(net.gate_id((int)net.gates.size() - 1));
      top.in.emplace_back(r_outer, Rat(1));
    }
  }
  net.gates.push_back(top);
  net.output = net.gate_id((int)net.gates.size() - 1);

  // exact polytope check: parts + base must rebuild N(F)
  Polytope rebuilt = translate(resum_parts(parts), base);
  if (!(rebuilt == N)) throw std::logic_error("synthesis does not rebuild the Newton polytope");
  res.net = net;
  return res;
}

// ---------------------------------------------------------------------------
// builders

// m_n(x) = relu(x_n + m_{n-1}(x_1..x_{n-1})), a depth-n monotone network
// whose Newton polytope is the orthoscheme conv{0, e1, e1+e2, ...}.
inline ReluNetwork build_m_n(int n) {
  if (n < 1) throw std::invalid_argument("build_m_n needs n >= 1");
  ReluNetwork net;
  net.input_dim = n;
  net.kind = NetKind::monotone;
  int prev_relu = -1;
  for (int i = 0; i < n; ++i) {
    AffineGate a{{{i, Rat(1)}}, Rat(0)};
    if (prev_relu >= 0) a.in.emplace_back(prev_relu, Rat(1));
    net.gates.push_back(a);
    net.gates.push_back(ReluGate{net.gate_id((int)net.gates.size() - 1)});
    prev_relu = net.gate_id((int)net.gates.size() - 1);
  }
  net.output = prev_relu;
  return net;
}

inline CpwlFn m_n_function(int n) {
  std::vector<RatVec> gens;
  RatVec acc = zero_vec(n);
  gens.push_back(acc);
  for (int i = 0; i < n; ++i) {
    acc[i] = 1;
    gens.push_back(acc);
  }
  return make_cpwl(n, std::move(gens));
}

// depth-m icnn circuit for an m-vertex polytope: every vertex (in lex
// order) enters through the add-q trick, expanded into translate /
// add-zero / translate, so each vertex costs exactly one AddPoint
inline PolytopeCircuit build_polytope_icnn(const Polytope& P) {
  PolytopeCircuit c;
  c.dim = P.dim;
  c.kind = CircuitKind::icnn;
  if (P.is_point()) {
    c.gates.push_back(PointGate{P.vertices[0]});
    c.output = 0;
    return c;
  }
  auto push = [&](CGate g) {
    c.gates.push_back(std::move(g));
    return (int)c.gates.size() - 1;
  };
  int cur = push(PointGate{P.vertices[0]});
  for (const auto& q : P.vertices) {
    int neg = push(PointGate{negate(q)});
    int shifted = push(SumGate{{{cur, Rat(1)}, {neg, Rat(1)}}});
    int zeroed = push(AddPointGate{shifted, zero_vec(P.dim)});
    int pos = push(PointGate{q});
    cur = push(SumGate{{{zeroed, Rat(1)}, {pos, Rat(1)}}});
  }
  c.output = cur;
  return c;
}

// MAX_n as a depth-n icnn: the simplex on the standard basis vectors
inline std::pair<PolytopeCircuit, ReluNetwork> build_max_icnn(int n) {
  if (n < 2) throw std::invalid_argument("build_max_icnn needs n >= 2");
  std::vector<RatVec> basis;
  for (int i = 0; i < n; ++i) basis.push_back(unit_vec(n, i));
  PolytopeCircuit c = build_polytope_icnn(polytope_from_extreme(n, std::move(basis)));
  return {c, circuit_to_net(c)};
}

// the square pyramid P_* and its support function (Prop 1.6 fixture)
inline std::pair<Polytope, CpwlFn> pyramid_fixture() {
  std::vector<RatVec> V = {{Rat(0), Rat(0), Rat(0)},
                           {Rat(1), Rat(0), Rat(0)},
                           {Rat(0), Rat(1), Rat(0)},
                           {Rat(1), Rat(1), Rat(0)},
                           {Rat(1), Rat(1), Rat(1)}};
  Polytope P = convex_hull(V, 3);
  return {P, make_cpwl(3, std::move(V))};
}

// ---------------------------------------------------------------------------
// indecomposability probe: assign a scale to every edge; each 2-face's edge
// cycle must close, which pins all scales equal exactly when the polytope
// is indecomposable. Returns the dimension of the solution space (1 for
// simplices and for P_*).
inline size_t edge_scaling_nullspace_dim(const Polytope& P) {
  auto edges = edges_of(P);
  auto edge_index = [&](size_t i, size_t j) {
    EdgeIdx key{std::min(i, j), std::max(i, j)};
    for (size_t k = 0; k < edges.size(); ++k)
      if (edges[k] == key) return k;
    throw std::logic_error("edge not found");
  };

  RatMatrix rows;
  auto add_cycle = [&](const std::vector<size_t>& ring) {
    std::vector<RatVec> exprs((size_t)P.dim, RatVec(edges.size(), Rat(0)));
    for (size_t a = 0; a < ring.size(); ++a) {
      size_t i = ring[a], j = ring[(a + 1) % ring.size()];
      RatVec d = sub(P.vertices[j], P.vertices[i]);
      size_t e = edge_index(i, j);
      for (int k = 0; k < P.dim; ++k) exprs[k][e] += d[k];
    }
    for (auto& r : exprs) rows.push_back(std::move(r));
  };

  if (P.dim == 2) {
    Ring ring = ring_2d(P);
    std::vector<size_t> idx;
    for (const auto& v : ring) {
      auto it = std::lower_bound(P.vertices.begin(), P.vertices.end(), v, lex_less);
      idx.push_back((size_t)(it - P.vertices.begin()));
    }
    add_cycle(idx);
  } else if (P.dim == 3) {
    for (const auto& f : facets_3d(P)) add_cycle(f.ring);
  } else {
    throw std::domain_error("edge scaling system needs dim <= 3");
  }
  return nullspace_dim(rows);
}

}  // namespace nf
