#pragma once

#include "circuit.hpp"
#include "network.hpp"

#include <map>
#include <stdexcept>

namespace nf {

// Gate-for-gate translation of a bias-free monotone/icnn network into a
// polytope circuit: input-layer linear combinations fold into Point gates,
// affine gates become Sums, relu gates become add-zero gates. Depth and
// support-function semantics are preserved.
inline PolytopeCircuit net_to_circuit(const ReluNetwork& net) {
  if (net.kind == NetKind::general)
    throw std::invalid_argument("net_to_circuit needs monotone or icnn kind");
  auto viol = validate(net);
  if (!viol.empty()) throw std::invalid_argument("invalid network: " + viol.front().rule);

  PolytopeCircuit c;
  c.dim = net.input_dim;
  c.kind = net.kind == NetKind::monotone ? CircuitKind::monotone : CircuitKind::icnn;

  std::map<int, int> input_point;              // input id -> Point{e_i} gate
  std::vector<int> gate_of(net.num_nodes(), -1);
  auto point_for_input = [&](int i) {
    auto it = input_point.find(i);
    if (it != input_point.end()) return it->second;
    c.gates.push_back(PointGate{unit_vec(net.input_dim, i)});
    int id = (int)c.gates.size() - 1;
    input_point[i] = id;
    return id;
  };
  auto circuit_id = [&](int node) {
    return node < net.input_dim ? point_for_input(node) : gate_of[node];
  };

  for (size_t i = 0; i < net.gates.size(); ++i) {
    int id = net.gate_id((int)i);
    if (const auto* a = std::get_if<AffineGate>(&net.gates[i])) {
      if (a->bias != 0) throw std::invalid_argument("net_to_circuit: nonzero bias");
      RatVec lin = zero_vec(net.input_dim);
      SumGate sum;
      for (const auto& [src, w] : a->in) {
        if (w == 0) continue;
        if (src < net.input_dim) {
          lin[src] += w;
        } else {
          if (w < 0) throw std::invalid_argument("net_to_circuit: negative inner weight");
          sum.terms.emplace_back(circuit_id(src), w);
        }
      }
      if (sum.terms.empty()) {
        c.gates.push_back(PointGate{lin});
      } else {
        if (!is_zero(lin)) {
          c.gates.push_back(PointGate{lin});
          sum.terms.emplace_back((int)c.gates.size() - 1, Rat(1));
        }
        c.gates.push_back(sum);
      }
      gate_of[id] = (int)c.gates.size() - 1;
    } else {
      const auto& r = std::get<ReluGate>(net.gates[i]);
      c.gates.push_back(AddPointGate{circuit_id(r.in), zero_vec(net.input_dim)});
      gate_of[id] = (int)c.gates.size() - 1;
    }
  }
  c.output = circuit_id(net.output);
  return c;
}

// Inverse translation. Monotone circuits map straight back; an icnn
// AddPoint with q != 0 expands through the identity
//   conv(P u {q}) = conv((P + {-q}) u {0}) + {q},
// i.e. an affine shift by <-q,x>, a relu, and a shift back.
inline ReluNetwork circuit_to_net(const PolytopeCircuit& c) {
  auto viol = validate_circuit(c);
  if (!viol.empty()) throw std::invalid_argument("invalid circuit: " + viol.front().rule);
  ReluNetwork net;
  net.input_dim = c.dim;
  net.kind = c.kind == CircuitKind::monotone ? NetKind::monotone : NetKind::icnn;

  std::vector<int> node_of(c.gates.size(), -1);
  auto add_gate = [&](Gate g) {
    net.gates.push_back(std::move(g));
    return net.gate_id((int)net.gates.size() - 1);
  };
  auto linear_terms = [&](const RatVec& v) {
    std::vector<std::pair<int, Rat>> in;
    for (int k = 0; k < c.dim; ++k)
      if (v[k] != 0) in.emplace_back(k, v[k]);
    return in;
  };

  for (size_t i = 0; i < c.gates.size(); ++i) {
    if (const auto* p = std::get_if<PointGate>(&c.gates[i])) {
      node_of[i] = add_gate(AffineGate{linear_terms(p->q), Rat(0)});
    } else if (const auto* s = std::get_if<SumGate>(&c.gates[i])) {
      AffineGate a{{}, Rat(0)};
      for (const auto& [src, w] : s->terms) a.in.emplace_back(node_of[src], w);
      node_of[i] = add_gate(a);
    } else {
      const auto& ap = std::get<AddPointGate>(c.gates[i]);
      if (is_zero(ap.q)) {
        node_of[i] = add_gate(ReluGate{node_of[ap.in]});
      } else {
        AffineGate shift{linear_terms(negate(ap.q)), Rat(0)};
        shift.in.emplace_back(node_of[ap.in], Rat(1));
        int shifted = add_gate(shift);
        int relu = add_gate(ReluGate{shifted});
        AffineGate back{linear_terms(ap.q), Rat(0)};
        back.in.emplace_back(relu, Rat(1));
        node_of[i] = add_gate(back);
      }
    }
  }
  net.output = node_of[c.output];
  return net;
}

// Face-restriction transform: replace every gate's polytope P by
// (P n H(P,u)) - h(P,u) u^, which lives in the hyperplane orthogonal to u.
// Points project orthogonally; Sums persist by face additivity; an
// AddPoint survives, becomes a projected point, or disappears depending on
// how the added point's height compares with the source's support value
// (detected by exact comparison).
inline PolytopeCircuit restrict_circuit_to_face(const PolytopeCircuit& c, const RatVec& u) {
  if (is_zero(u)) throw std::invalid_argument("zero direction");
  GateTrace tr = eval_circuit(c);
  RatVec uhat = scale(Rat(1) / dot(u, u), u);
  auto project = [&](const RatVec& p) { return sub(p, scale(dot(p, u), uhat)); };

  PolytopeCircuit out;
  out.dim = c.dim;
  out.kind = c.kind;
  std::vector<int> newid(c.gates.size(), -1);
  auto push = [&](CGate g) {
    out.gates.push_back(std::move(g));
    return (int)out.gates.size() - 1;
  };

  for (size_t i = 0; i < c.gates.size(); ++i) {
    if (const auto* p = std::get_if<PointGate>(&c.gates[i])) {
      newid[i] = push(PointGate{project(p->q)});
    } else if (const auto* s = std::get_if<SumGate>(&c.gates[i])) {
      SumGate ns;
      for (const auto& [src, w] : s->terms) ns.terms.emplace_back(newid[src], w);
      newid[i] = push(ns);
    } else {
      const auto& ap = std::get<AddPointGate>(c.gates[i]);
      Rat hq = dot(ap.q, u);
      Rat hsrc = support_value(tr.polys[ap.in], u);
      if (hq > hsrc) {
        newid[i] = push(PointGate{project(ap.q)});
      } else if (hq == hsrc) {
        newid[i] = push(AddPointGate{newid[ap.in], project(ap.q)});
      } else {
        newid[i] = newid[ap.in];
      }
    }
  }
  out.output = newid[c.output];
  return out;
}

}  // namespace nf
