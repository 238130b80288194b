#pragma once

#include "lattice.hpp"
#include "rng.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace nf {

// One execution of the coloring game. Selecting q colors the closed ball
// B_1(q) white; the game recurses into the black connected components and
// the cost is 1 + the maximum component cost. Every node checks the two
// structural claims: at most six new components per move, and the boundary
// of V_B stays inside B_1 of the selected path.
struct GameNode {
  std::vector<int> vertices;  // V_B at this node
  int selected = -1;          // chosen q; -1 at leaves
  int cost = 0;
  std::vector<GameNode> children;
};

using Strategy = std::function<int(const LatticeBall&, const std::vector<int>&)>;

namespace detail {

inline GameNode run_game(const LatticeBall& g, const Strategy& strat, const VertSet& vb,
                         VertSet b1_path, bool require_member) {
  GameNode node;
  node.vertices = to_vector(vb);
  // Claim 3.8 instance (seeded with the root boundary so partial starts work)
  if (!boundary(g, vb).subset_of(b1_path))
    throw std::logic_error("game invariant violated: boundary escapes B1(selected path)");
  if ((int)node.vertices.size() <= 1) {
    node.cost = (int)node.vertices.size();
    return node;
  }
  int q = strat(g, node.vertices);
  if (q < 0 || q >= g.n() || (require_member && !vb.test(q)))
    throw std::invalid_argument("strategy selected a vertex outside V_B");
  node.selected = q;
  VertSet rest = vb;
  rest.and_not(b1_vertex(g, q));
  auto comps = components(g, rest);
  if (comps.size() > 6)
    throw std::logic_error("game invariant violated: more than six components");
  b1_path |= b1_vertex(g, q);
  int worst = 0;
  for (const auto& c : comps) {
    node.children.push_back(run_game(g, strat, c, b1_path, require_member));
    worst = std::max(worst, node.children.back().cost);
  }
  node.cost = 1 + worst;
  return node;
}

}  // namespace detail

inline GameNode play(const LatticeBall& g, const Strategy& strat, const std::vector<int>& vb) {
  VertSet s = to_set(g, vb);
  return detail::run_game(g, strat, s, boundary(g, s), /*require_member=*/true);
}

// number of components of V_B minus B_1(q)  (Claim 3.7 probe)
inline int component_split_check(const LatticeBall& g, const std::vector<int>& vb, int q) {
  VertSet rest = to_set(g, vb);
  if (!rest.test(q)) throw std::invalid_argument("q must be in V_B");
  rest.and_not(b1_vertex(g, q));
  return (int)components(g, rest).size();
}

// ---------------------------------------------------------------------------
// exact optimum by memoized exhaustive search (small regions only)

class OptimalGame {
 public:
  OptimalGame(const LatticeBall& g, const std::vector<int>& universe, int guard = 25)
      : g_(g), verts_(universe) {
    std::sort(verts_.begin(), verts_.end());
    if ((int)verts_.size() > guard)
      throw std::domain_error("optimal_cost: region exceeds the exhaustive-search guard");
    local_.assign(g.n(), -1);
    for (size_t i = 0; i < verts_.size(); ++i) local_[verts_[i]] = (int)i;
    nbr_.resize(verts_.size());
    adj_.resize(verts_.size());
    for (size_t i = 0; i < verts_.size(); ++i) {
      uint64_t closed = 1ULL << i;
      uint64_t open = 0;
      for (int u : g.adj[verts_[i]])
        if (local_[u] >= 0) {
          closed |= 1ULL << local_[u];
          open |= 1ULL << local_[u];
        }
      nbr_[i] = closed;
      adj_[i] = open;
    }
  }

  int cost(uint64_t mask) {
    int pc = __builtin_popcountll(mask);
    if (pc <= 1) return pc;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    int best = pc;  // coloring one vertex at a time always achieves |V_B|
    uint64_t bits = mask;
    while (bits) {
      int q = __builtin_ctzll(bits);
      bits &= bits - 1;
      uint64_t rest = mask & ~nbr_[q];
      int worst = 0;
      for (uint64_t comp : split(rest)) {
        worst = std::max(worst, cost(comp));
        if (1 + worst >= best) break;
      }
      best = std::min(best, 1 + worst);
      if (best == 1) break;
    }
    memo_[mask] = best;
    return best;
  }

  int cost_of(const std::vector<int>& vb) {
    uint64_t mask = 0;
    for (int v : vb) {
      if (local_[v] < 0) throw std::invalid_argument("vertex outside the search universe");
      mask |= 1ULL << local_[v];
    }
    return cost(mask);
  }

 private:
  std::vector<uint64_t> split(uint64_t rest) const {
    std::vector<uint64_t> comps;
    while (rest) {
      uint64_t comp = rest & (~rest + 1);  // lowest bit
      while (true) {
        uint64_t grow = comp;
        uint64_t frontier = comp;
        while (frontier) {
          int v = __builtin_ctzll(frontier);
          frontier &= frontier - 1;
          grow |= adj_[v] & rest;
        }
        if (grow == comp) break;
        comp = grow;
      }
      comps.push_back(comp);
      rest &= ~comp;
    }
    return comps;
  }

  const LatticeBall& g_;
  std::vector<int> verts_;
  std::vector<int> local_;
  std::vector<uint64_t> nbr_;  // closed neighborhoods, local bits
  std::vector<uint64_t> adj_;  // open neighborhoods, local bits
  std::unordered_map<uint64_t, int> memo_;
};

inline int optimal_cost(const LatticeBall& g, const std::vector<int>& vb, int guard = 25) {
  OptimalGame opt(g, vb, guard);
  return opt.cost_of(vb);
}

// ---------------------------------------------------------------------------
// strategies

// Colors the weighted-median row (a straight fiber of the lattice) from the
// left, which splits the region into halves of bounded size; the recursion
// on components keeps the total cost linear in r.
inline Strategy separator_strategy() {
  return [](const LatticeBall& ball, const std::vector<int>& vb) {
    std::map<int, int> row_count;
    for (int v : vb) row_count[ball.axial[v].second] += 1;
    int half = (int)vb.size() / 2;
    int row = row_count.begin()->first;
    int acc = 0;
    for (const auto& [b, c] : row_count) {
      acc += c;
      if (acc > half) {
        row = b;
        break;
      }
    }
    int pick = -1;
    for (int v : vb)
      if (ball.axial[v].second == row && (pick < 0 || ball.axial[v].first < ball.axial[pick].first))
        pick = v;
    return pick;
  };
}

// Picks the vertex whose closed ball covers the most of V_B.
inline Strategy greedy_strategy() {
  return [](const LatticeBall& ball, const std::vector<int>& vb) {
    VertSet s = to_set(ball, vb);
    int best = vb[0], best_cover = -1;
    for (int v : vb) {
      VertSet cover = b1_vertex(ball, v);
      cover &= s;
      int c = cover.count();
      if (c > best_cover) {
        best_cover = c;
        best = v;
      }
    }
    return best;
  };
}

// ---------------------------------------------------------------------------
// isoperimetry scans (Lemma 3.5 instances)

struct IsoScanReport {
  int r = 0;
  long long scanned = 0;
  int min_boundary = -1;
  Rat min_ratio;              // min |dK| / r over the size window
  std::vector<int> argmin;    // a witness K
};

// all subsets of V(B_r) within the 1/100..99/100 size window
inline IsoScanReport iso_scan_exhaustive(const LatticeBall& g) {
  const int n = g.n();
  if (n > 25) throw std::domain_error("exhaustive scan is limited to r <= 2");
  std::vector<uint64_t> open(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.adj[v]) open[v] |= 1ULL << u;
  IsoScanReport rep;
  rep.r = g.r;
  const uint64_t full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  // window bounds: 1/100 |V| < |K| < 99/100 |V|
  for (uint64_t k = 1; k < full; ++k) {
    int size = __builtin_popcountll(k);
    if (100 * size <= n || 100 * size >= 99 * n) continue;
    uint64_t nb = 0;
    uint64_t bits = k;
    while (bits) {
      int v = __builtin_ctzll(bits);
      bits &= bits - 1;
      nb |= open[v];
    }
    int bd = __builtin_popcountll(nb & ~k);
    ++rep.scanned;
    if (rep.min_boundary < 0 || bd < rep.min_boundary) {
      rep.min_boundary = bd;
      rep.argmin.clear();
      for (int v = 0; v < n; ++v)
        if ((k >> v) & 1) rep.argmin.push_back(v);
    }
  }
  rep.min_ratio = Rat(rep.min_boundary) / Rat(g.r);
  return rep;
}

// random connected subsets in the window, grown by seeded BFS
inline IsoScanReport iso_scan_sampled(const LatticeBall& g, long long samples, Rng& rng) {
  const int n = g.n();
  IsoScanReport rep;
  rep.r = g.r;
  long long lo = n / 100 + 1;
  long long hi = (99 * n - 1) / 100;
  if (hi * 100 == 99 * n) --hi;
  if (lo > hi) throw std::domain_error("size window is empty at this radius");
  for (long long it = 0; it < samples; ++it) {
    int target = (int)rng.range(lo, hi);
    VertSet k(n);
    std::vector<int> pool = {(int)rng.below((uint64_t)n)};
    k.set(pool[0]);
    int size = 1;
    while (size < target && !pool.empty()) {
      size_t pi = rng.below(pool.size());
      int v = pool[pi];
      std::vector<int> fresh;
      for (int u : g.adj[v])
        if (!k.test(u)) fresh.push_back(u);
      if (fresh.empty()) {
        pool.erase(pool.begin() + pi);
        continue;
      }
      int u = fresh[rng.below(fresh.size())];
      k.set(u);
      pool.push_back(u);
      ++size;
    }
    if (size <= n / 100 || 100 * size >= 99 * n) continue;
    int bd = boundary(g, k).count();
    ++rep.scanned;
    if (rep.min_boundary < 0 || bd < rep.min_boundary) {
      rep.min_boundary = bd;
      rep.argmin = to_vector(k);
    }
  }
  rep.min_ratio = Rat(rep.min_boundary) / Rat(g.r);
  return rep;
}

}  // namespace nf
