#include "krho/balls.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace krho {

void check_k_rho(const WeightedGraph& g, int k, int rho) {
  require(k >= 1, "k must be >= 1");
  require(rho >= 1, "rho must be >= 1");
  require(rho <= g.node_count() - 1,
          "rho must be <= n-1 (got rho=" + std::to_string(rho) +
              ", n=" + std::to_string(g.node_count()) + ")");
}

namespace {

// Shared Dijkstra core for profiles: settles in (dist, hops, id) order and
// reports each settled node. Stops when told to.
template <typename Visit>
void scan_closest(const WeightedGraph& g, NodeId source, Visit visit) {
  struct Label {
    double dist;
    int hops;
    NodeId node;
  };
  struct After {
    bool operator()(const Label& a, const Label& b) const {
      if (a.dist != b.dist) return a.dist > b.dist;
      if (a.hops != b.hops) return a.hops > b.hops;
      return a.node > b.node;
    }
  };
  const std::size_t n = static_cast<std::size_t>(g.node_count());
  std::vector<char> settled(n, 0);
  std::vector<double> bd(n, kInf);
  std::vector<int> bh(n, 0);
  std::priority_queue<Label, std::vector<Label>, After> heap;
  bd[static_cast<std::size_t>(source)] = 0.0;
  heap.push({0.0, 0, source});
  while (!heap.empty()) {
    Label top = heap.top();
    heap.pop();
    std::size_t ti = static_cast<std::size_t>(top.node);
    if (settled[ti]) continue;
    settled[ti] = 1;
    if (!visit(top.node, bd[ti], bh[ti])) return;
    for (const Edge& e : g.neighbors(top.node)) {
      std::size_t vi = static_cast<std::size_t>(e.to);
      if (settled[vi]) continue;
      double nd = bd[ti] + e.w;
      int nh = bh[ti] + 1;
      if (nd < bd[vi] || (nd == bd[vi] && nh < bh[vi])) {
        bd[vi] = nd;
        bh[vi] = nh;
        heap.push({nd, nh, e.to});
      }
    }
  }
}

}  // namespace

BallProfile ball_profile(const WeightedGraph& g, NodeId v, int k, int rho) {
  check_k_rho(g, k, rho);
  require(v >= 0 && v < g.node_count(), "node out of range");

  BallProfile p;
  p.v = v;

  // Pass order is nondecreasing (dist, hops, id), so rho_dist is fixed the
  // moment the rho-th non-source node settles, the first node seen with more
  // than k hops carries the k_radius, and the settle sequence itself is the
  // rho-nearest selection order. Once the frontier passes rho_dist with the
  // k_radius known, nothing further can matter.
  struct Hit {
    double dist;
    int hops;
    NodeId node;
  };
  std::vector<Hit> near;  // settled non-source nodes with dist <= rho_dist
  int seen = 0;
  scan_closest(g, v, [&](NodeId u, double d, int h) {
    if (u == v) return true;
    if (seen < rho) {
      ++seen;
      if (seen == rho) p.rho_dist = d;
    }
    if (h > k && p.k_radius == kInf) p.k_radius = d;
    if (d <= p.rho_dist || p.rho_dist == kInf) near.push_back({d, h, u});
    // Stop once past the rho-radius with the k_radius already known.
    return !(p.rho_dist < kInf && d > p.rho_dist && p.k_radius < kInf);
  });

  // The selection = first rho entries in settle order (everything reached
  // when under-populated). Hop preference inside the rho_dist tie class is
  // exactly what lets a partially repaired tie still form a ball.
  std::size_t take = std::min(near.size(), static_cast<std::size_t>(rho));
  std::vector<Hit> out;
  for (std::size_t i = 0; i < take; ++i)
    if (near[i].hops > k) out.push_back(near[i]);
  std::sort(out.begin(), out.end(), [](const Hit& a, const Hit& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.node < b.node;
  });
  for (const Hit& h : out) p.missing.push_back(h.node);
  p.has_ball = p.missing.empty();
  return p;
}

ViolationReport verify_krho(const WeightedGraph& g, int k, int rho,
                            int workers) {
  check_k_rho(g, k, rho);
  const std::size_t n = static_cast<std::size_t>(g.node_count());
  std::vector<char> bad(n, 0);
  parallel_for(n, workers, [&](std::size_t i) {
    bad[i] = !ball_profile(g, static_cast<NodeId>(i), k, rho).has_ball;
  });
  ViolationReport r;
  for (std::size_t i = 0; i < n; ++i)
    if (bad[i]) r.violators.push_back(static_cast<NodeId>(i));
  return r;
}

WeightedGraph apply_shortcuts(const WeightedGraph& g, const ShortcutSet& s) {
  require(s.directed() == g.directed(),
          "shortcut set orientation does not match graph");
  WeightedGraph out = g;
  if (s.empty()) return out;

  // Validate weights in batches: one closest-path scan per distinct source.
  std::map<NodeId, std::vector<Shortcut>> by_source;
  for (const Shortcut& sc : s.items()) by_source[sc.u].push_back(sc);
  for (auto& [u, list] : by_source) {
    ClosestPathTree t = closest_path_tree(g, u);
    for (const Shortcut& sc : list) {
      require(sc.v >= 0 && sc.v < g.node_count(), "shortcut endpoint out of range");
      require(!g.has_edge(sc.u, sc.v),
              "shortcut " + std::to_string(sc.u) + "-" + std::to_string(sc.v) +
                  " duplicates an existing edge");
      require(t.reached(sc.v),
              "shortcut " + std::to_string(sc.u) + "-" + std::to_string(sc.v) +
                  " connects different components");
      require(t.dist(sc.v) == sc.w,
              "shortcut " + std::to_string(sc.u) + "-" + std::to_string(sc.v) +
                  " weight differs from the shortest path distance");
    }
  }
  for (const Shortcut& sc : s.items()) out.add_edge(sc.u, sc.v, sc.w);
  return out;
}

}  // namespace krho
