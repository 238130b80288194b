#pragma once

#include "polytope.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nf {

// Polytope-construction circuit: the Newton-polytope image of a bias-free
// network. Point gates are the sources; Sum is Minkowski sum with positive
// coefficients; AddPoint(src, q) is conv(src u {q}), with q = 0 the "add
// zero" of the monotone model. Depth counts AddPoint gates on a path.
enum class CircuitKind { monotone, icnn };

struct PointGate {
  RatVec q;
};

struct SumGate {
  std::vector<std::pair<int, Rat>> terms;  // (gate id, coefficient > 0)
};

struct AddPointGate {
  int in;
  RatVec q;
};

using CGate = std::variant<PointGate, SumGate, AddPointGate>;

struct PolytopeCircuit {
  int dim = 0;
  CircuitKind kind = CircuitKind::monotone;
  std::vector<CGate> gates;
  int output = 0;
};

inline const char* kind_name(CircuitKind k) {
  return k == CircuitKind::monotone ? "monotone" : "icnn";
}

struct CircuitViolation {
  int gate;
  std::string rule;
};

inline std::vector<CircuitViolation> validate_circuit(const PolytopeCircuit& c) {
  std::vector<CircuitViolation> out;
  if (c.dim < 1) out.push_back({-1, "dim must be positive"});
  for (size_t i = 0; i < c.gates.size(); ++i) {
    int id = (int)i;
    if (const auto* p = std::get_if<PointGate>(&c.gates[i])) {
      if ((int)p->q.size() != c.dim) out.push_back({id, "point has wrong dimension"});
      if (c.kind == CircuitKind::monotone && orthant_sign(p->q) != 1)
        out.push_back({id, "monotone circuit points must be non-negative"});
    } else if (const auto* s = std::get_if<SumGate>(&c.gates[i])) {
      if (s->terms.empty()) out.push_back({id, "sum gate with no terms"});
      for (const auto& [src, a] : s->terms) {
        if (src < 0 || src >= id) out.push_back({id, "term not earlier in the order"});
        if (a <= 0) out.push_back({id, "sum coefficients must be strictly positive"});
      }
    } else {
      const auto& ap = std::get<AddPointGate>(c.gates[i]);
      if (ap.in < 0 || ap.in >= id) out.push_back({id, "source not earlier in the order"});
      if ((int)ap.q.size() != c.dim) out.push_back({id, "added point has wrong dimension"});
      if (c.kind == CircuitKind::monotone && !is_zero(ap.q))
        out.push_back({id, "monotone circuit allows add-zero only"});
    }
  }
  if (c.output < 0 || c.output >= (int)c.gates.size())
    out.push_back({-1, "output gate does not exist"});
  return out;
}

inline int depth_circuit(const PolytopeCircuit& c) {
  std::vector<int> d(c.gates.size(), 0);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    if (std::holds_alternative<PointGate>(c.gates[i])) {
      d[i] = 0;
    } else if (const auto* s = std::get_if<SumGate>(&c.gates[i])) {
      int m = 0;
      for (const auto& [src, a] : s->terms)
        if (d[src] > m) m = d[src];
      d[i] = m;
    } else {
      d[i] = d[std::get<AddPointGate>(c.gates[i]).in] + 1;
    }
  }
  return d[c.output];
}

// The polytope computed at every gate.
struct GateTrace {
  std::vector<Polytope> polys;
  int output = 0;
  const Polytope& out() const { return polys[output]; }
};

inline GateTrace eval_circuit(const PolytopeCircuit& c) {
  auto viol = validate_circuit(c);
  if (!viol.empty()) throw std::invalid_argument("invalid circuit: " + viol.front().rule);
  GateTrace tr;
  tr.output = c.output;
  tr.polys.reserve(c.gates.size());
  for (size_t i = 0; i < c.gates.size(); ++i) {
    if (const auto* p = std::get_if<PointGate>(&c.gates[i])) {
      tr.polys.push_back(make_point(p->q));
    } else if (const auto* s = std::get_if<SumGate>(&c.gates[i])) {
      Polytope acc = scale(s->terms[0].second, tr.polys[s->terms[0].first]);
      for (size_t t = 1; t < s->terms.size(); ++t)
        acc = minkowski_sum(acc, scale(s->terms[t].second, tr.polys[s->terms[t].first]));
      tr.polys.push_back(std::move(acc));
    } else {
      const auto& ap = std::get<AddPointGate>(c.gates[i]);
      tr.polys.push_back(conv_with_point(tr.polys[ap.in], ap.q));
    }
  }
  return tr;
}

}  // namespace nf
