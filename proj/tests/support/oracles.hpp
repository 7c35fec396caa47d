#pragma once

// Slow reference implementations used only by tests. These deliberately
// avoid the production algorithms: exhaustive simple-path enumeration for
// shortest paths, direct set arithmetic for similarity, full all-pairs
// snapshots for distance preservation.

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "krho/balls.hpp"
#include "krho/graph.hpp"

namespace krho::testing {

struct PathOpt {
  double dist = kInf;
  int hops = -1;  // -1 = unreachable
};

// Lexicographic (weight, hops) optimum over all simple paths s -> t,
// found by exhaustive DFS. Only usable on tiny graphs.
inline PathOpt enumerate_closest(const WeightedGraph& g, NodeId s, NodeId t) {
  PathOpt best;
  std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
  auto dfs = [&](auto&& self, NodeId u, double w, int h) -> void {
    if (u == t) {
      if (w < best.dist || (w == best.dist && (best.hops < 0 || h < best.hops))) {
        best.dist = w;
        best.hops = h;
      }
      return;
    }
    used[static_cast<std::size_t>(u)] = 1;
    for (const Edge& e : g.neighbors(u))
      if (!used[static_cast<std::size_t>(e.to)]) self(self, e.to, w + e.w, h + 1);
    used[static_cast<std::size_t>(u)] = 0;
  };
  dfs(dfs, s, 0.0, 0);
  return best;
}

// Ball check straight from the definitions: compute every (dist, hops) pair
// by enumeration, order nodes by (dist, hops, id), and demand that the first
// rho of them (everything reachable, when fewer) sit within k hops. The hop
// preference inside a distance tie mirrors the production selection rule.
inline bool has_ball_by_enumeration(const WeightedGraph& g, NodeId v, int k,
                                    int rho) {
  const int n = g.node_count();
  std::vector<std::tuple<double, int, NodeId>> reach;  // (dist, hops, node)
  for (NodeId u = 0; u < n; ++u) {
    if (u == v) continue;
    PathOpt o = enumerate_closest(g, v, u);
    if (o.hops >= 0) reach.push_back({o.dist, o.hops, u});
  }
  std::sort(reach.begin(), reach.end());
  std::size_t take = std::min(reach.size(), static_cast<std::size_t>(rho));
  for (std::size_t i = 0; i < take; ++i)
    if (std::get<1>(reach[i]) > k) return false;
  return true;
}

// All-pairs (dist, hops) snapshot via the production closest-path search —
// used to assert that shortcut insertion changes no distance while never
// increasing any hop count.
struct PairSnapshot {
  std::vector<std::vector<double>> dist;
  std::vector<std::vector<int>> hops;
};

inline PairSnapshot all_pairs(const WeightedGraph& g) {
  const int n = g.node_count();
  PairSnapshot s;
  s.dist.assign(static_cast<std::size_t>(n),
                std::vector<double>(static_cast<std::size_t>(n), kInf));
  s.hops.assign(static_cast<std::size_t>(n),
                std::vector<int>(static_cast<std::size_t>(n), -1));
  for (NodeId u = 0; u < n; ++u) {
    ClosestPathTree t = closest_path_tree(g, u);
    for (NodeId v = 0; v < n; ++v) {
      s.dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = t.dist(v);
      s.hops[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = t.hops(v);
    }
  }
  return s;
}

// True iff inserting `s` into g preserved every pairwise distance exactly
// and made no hop distance worse.
inline bool distances_preserved(const WeightedGraph& before,
                                const WeightedGraph& after) {
  PairSnapshot a = all_pairs(before);
  PairSnapshot b = all_pairs(after);
  const int n = before.node_count();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      std::size_t ui = static_cast<std::size_t>(u), vi = static_cast<std::size_t>(v);
      if (a.dist[ui][vi] != b.dist[ui][vi]) return false;
      int ha = a.hops[ui][vi], hb = b.hops[ui][vi];
      if ((ha < 0) != (hb < 0)) return false;
      if (ha >= 0 && hb > ha) return false;
    }
  }
  return true;
}

// Exact Jaccard similarity of two integer sets.
inline double jaccard(const std::set<std::uint64_t>& a,
                      const std::set<std::uint64_t>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (std::uint64_t x : a) inter += b.count(x);
  return static_cast<double>(inter) /
         static_cast<double>(a.size() + b.size() - inter);
}

// Convenience fixtures.
inline WeightedGraph path_graph(int n, double w = 1.0) {
  WeightedGraph g(n);
  for (NodeId u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1, w);
  return g;
}

inline WeightedGraph complete_graph(int n, double w = 1.0) {
  WeightedGraph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v, w);
  return g;
}

}  // namespace krho::testing
