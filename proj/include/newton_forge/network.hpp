#pragma once

#include "integrate.hpp"
#include "rng.hpp"
#include "vec.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nf {

// ReLU-network DAG. Node ids: 0..input_dim-1 are the inputs, gate i has id
// input_dim + i. Gates must reference earlier ids only. Depth is the
// maximum number of Relu gates on a directed path (the "hidden layer"
// count, not layers + 1).
enum class NetKind { general, monotone, icnn };

struct AffineGate {
  std::vector<std::pair<int, Rat>> in;  // (node id, weight)
  Rat bias;
};

struct ReluGate {
  int in;
};

using Gate = std::variant<AffineGate, ReluGate>;

struct ReluNetwork {
  int input_dim = 0;
  NetKind kind = NetKind::general;
  std::vector<Gate> gates;
  int output = 0;

  int gate_id(int i) const { return input_dim + i; }
  int num_nodes() const { return input_dim + (int)gates.size(); }
};

inline const char* kind_name(NetKind k) {
  switch (k) {
    case NetKind::general: return "general";
    case NetKind::monotone: return "monotone";
    case NetKind::icnn: return "icnn";
  }
  return "?";
}

struct Violation {
  int node;  // node id, -1 for network-level problems
  std::string rule;
};

// Structural and weight-discipline validation. Monotone: every affine
// weight >= 0 (biases are free). ICNN: only weights on edges from inputs
// are unrestricted; gate-to-gate weights must be >= 0.
inline std::vector<Violation> validate(const ReluNetwork& net) {
  std::vector<Violation> out;
  if (net.input_dim < 1) out.push_back({-1, "input_dim must be positive"});
  for (size_t i = 0; i < net.gates.size(); ++i) {
    int id = net.gate_id((int)i);
    if (const auto* a = std::get_if<AffineGate>(&net.gates[i])) {
      for (const auto& [src, w] : a->in) {
        if (src < 0 || src >= net.num_nodes()) {
          out.push_back({id, "edge from unknown node"});
        } else if (src >= id) {
          out.push_back({id, "not topologically ordered (cycle)"});
        }
        bool from_input = src >= 0 && src < net.input_dim;
        if (net.kind == NetKind::monotone && w < 0)
          out.push_back({id, "negative weight in monotone network"});
        if (net.kind == NetKind::icnn && !from_input && w < 0)
          out.push_back({id, "negative gate-to-gate weight in icnn"});
      }
    } else {
      const auto& r = std::get<ReluGate>(net.gates[i]);
      if (r.in < 0 || r.in >= id) out.push_back({id, "relu source invalid or not earlier"});
    }
  }
  if (net.output < 0 || net.output >= net.num_nodes())
    out.push_back({-1, "output node does not exist"});
  return out;
}

inline std::vector<Rat> node_values(const ReluNetwork& net, const RatVec& x) {
  if ((int)x.size() != net.input_dim) throw std::invalid_argument("dimension mismatch");
  std::vector<Rat> val(net.num_nodes());
  for (int i = 0; i < net.input_dim; ++i) val[i] = x[i];
  for (size_t i = 0; i < net.gates.size(); ++i) {
    int id = net.gate_id((int)i);
    if (const auto* a = std::get_if<AffineGate>(&net.gates[i])) {
      Rat s = a->bias;
      for (const auto& [src, w] : a->in) s += w * val[src];
      val[id] = s;
    } else {
      const auto& r = std::get<ReluGate>(net.gates[i]);
      val[id] = val[r.in] > 0 ? val[r.in] : Rat(0);
    }
  }
  return val;
}

inline Rat eval_net(const ReluNetwork& net, const RatVec& x) {
  return node_values(net, x)[net.output];
}

inline int depth(const ReluNetwork& net) {
  std::vector<int> d(net.num_nodes(), 0);
  for (size_t i = 0; i < net.gates.size(); ++i) {
    int id = net.gate_id((int)i);
    if (const auto* a = std::get_if<AffineGate>(&net.gates[i])) {
      int m = 0;
      for (const auto& [src, w] : a->in)
        if (d[src] > m) m = d[src];
      d[id] = m;
    } else {
      d[id] = d[std::get<ReluGate>(net.gates[i]).in] + 1;
    }
  }
  return d[net.output];
}

// Zeroes all biases. Only valid for networks computing homogeneous
// functions; this is enforced by a sampled exact-equality check.
inline ReluNetwork strip_bias(const ReluNetwork& net, Rng& rng, int samples = 200) {
  ReluNetwork out = net;
  for (auto& g : out.gates)
    if (auto* a = std::get_if<AffineGate>(&g)) a->bias = 0;
  for (int s = 0; s < samples; ++s) {
    RatVec x = rng.vec(net.input_dim, 20, 6);
    if (eval_net(net, x) != eval_net(out, x))
      throw std::domain_error("strip_bias: network is not homogeneous");
  }
  return out;
}

// Horizon r' >= 1 such that every relu input is non-negative on [r',inf)^n.
// Each gate's pre-activation is monotone, so its minimum over the box is at
// the corner (t,...,t); the per-gate thresholds are propagated bottom-up
// (child horizons are absorbed additively, a conservative but exact-to-
// verify bound) and the result is checked by one corner evaluation.
inline Rat affine_horizon(const ReluNetwork& net) {
  if (net.kind != NetKind::monotone) throw std::invalid_argument("affine_horizon needs a monotone network");
  std::vector<Rat> H(net.num_nodes(), Rat(0));
  Rat r = 1;
  for (size_t i = 0; i < net.gates.size(); ++i) {
    int id = net.gate_id((int)i);
    if (const auto* a = std::get_if<AffineGate>(&net.gates[i])) {
      Rat input_slope = 0, need = 0;
      for (const auto& [src, w] : a->in) {
        if (src < net.input_dim)
          input_slope += w;
        else
          need += w * H[src];
      }
      if (a->bias < 0) need -= a->bias;
      if (need == 0) {
        H[id] = 0;
      } else if (input_slope > 0) {
        H[id] = need / input_slope;
      } else {
        // no direct input slope: fall back to the max child horizon plus
        // the exact corner threshold of this gate's own affine part
        Rat m = 0;
        for (const auto& [src, w] : a->in)
          if (src >= net.input_dim && H[src] > m) m = H[src];
        H[id] = m + need;
      }
    } else {
      const auto& rg = std::get<ReluGate>(net.gates[i]);
      H[id] = H[rg.in];
      if (H[id] > r) r = H[id];
    }
  }
  // soundness check at the corner: pre-activations are monotone in t, so a
  // single evaluation at (r,...,r) certifies the whole box [r,inf)^n
  auto corner_ok = [&](const Rat& t) {
    auto vals = node_values(net, RatVec(net.input_dim, t));
    for (size_t i = 0; i < net.gates.size(); ++i)
      if (const auto* rg = std::get_if<ReluGate>(&net.gates[i]))
        if (vals[rg->in] < 0) return false;
    return true;
  };
  for (int tries = 0; tries < 128; ++tries) {
    if (corner_ok(r)) return r;
    r *= 2;
  }
  throw std::domain_error("affine_horizon: some relu input stays negative on every box");
}

// Extracts the max-of-affine form of a convex network (monotone or icnn
// weight discipline; general networks may be non-convex and are rejected).
inline MaxAffine to_max_affine(const ReluNetwork& net) {
  std::vector<std::vector<AffinePiece>> pieces(net.num_nodes());
  for (int i = 0; i < net.input_dim; ++i)
    pieces[i] = {{unit_vec(net.input_dim, i), Rat(0)}};
  for (size_t i = 0; i < net.gates.size(); ++i) {
    int id = net.gate_id((int)i);
    if (const auto* a = std::get_if<AffineGate>(&net.gates[i])) {
      std::vector<AffinePiece> acc = {{zero_vec(net.input_dim), a->bias}};
      for (const auto& [src, w] : a->in) {
        if (w == 0) continue;
        if (src >= net.input_dim && w < 0)
          throw std::domain_error("to_max_affine: negative gate-to-gate weight");
        if (src < net.input_dim) {
          for (auto& p : acc) p.grad[src] += w;
          continue;
        }
        std::vector<AffinePiece> next;
        for (const auto& p : acc)
          for (const auto& q : pieces[src])
            next.push_back({add(p.grad, scale(w, q.grad)), p.bias + w * q.bias});
        acc = std::move(next);
      }
      pieces[id] = std::move(acc);
    } else {
      const auto& r = std::get<ReluGate>(net.gates[i]);
      pieces[id] = pieces[r.in];
      pieces[id].push_back({zero_vec(net.input_dim), Rat(0)});
    }
  }
  return make_max_affine(net.input_dim, pieces[net.output]);
}

}  // namespace nf
