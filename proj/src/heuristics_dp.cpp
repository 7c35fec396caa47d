#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "krho/heuristics.hpp"

namespace krho {

namespace {

int saturating_add(int a, int b) {
  return std::min(a + b, kDpUnreachable);
}

// Children lists of the tree, restricted to reached nodes, each sorted by id.
std::vector<std::vector<NodeId>> tree_children(const ClosestPathTree& tree,
                                               int n) {
  std::vector<std::vector<NodeId>> children(static_cast<std::size_t>(n));
  for (NodeId v : tree.reach_order()) {
    NodeId p = tree.parent(v);
    if (p >= 0) children[static_cast<std::size_t>(p)].push_back(v);
  }
  for (auto& c : children) std::sort(c.begin(), c.end());
  return children;
}

}  // namespace

int DpTable::f(NodeId u, int t) const {
  if (t >= k) return kDpUnreachable;
  return cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)];
}

DpTable dp_table(const WeightedGraph& g, NodeId s, int k, int rho) {
  check_k_rho(g, k, rho);
  require(k >= 2, "the dynamic program needs k >= 2 (use solve_k1 for k = 1)");
  require(s >= 0 && s < g.node_count(), "source out of range");

  DpTable table;
  table.source = s;
  table.k = k;
  table.tree = closest_path_tree(g, s, rho);
  const int n = g.node_count();
  auto children = tree_children(table.tree, n);

  for (NodeId v : table.tree.reach_order())
    if (v != s) table.nodes.push_back(v);
  std::sort(table.nodes.begin(), table.nodes.end());

  // Deepest nodes first so every child is settled before its parent.
  std::vector<NodeId> by_depth = table.nodes;
  std::sort(by_depth.begin(), by_depth.end(), [&](NodeId a, NodeId b) {
    int ha = table.tree.hops(a), hb = table.tree.hops(b);
    if (ha != hb) return ha > hb;
    return a < b;
  });

  table.cost.assign(static_cast<std::size_t>(k),
                    std::vector<int>(static_cast<std::size_t>(n), 0));
  table.cut.assign(static_cast<std::size_t>(k),
                   std::vector<char>(static_cast<std::size_t>(n), 0));
  for (NodeId u : by_depth) {
    bool buyable = !g.has_edge(s, u);  // an existing edge cannot be re-bought
    for (int t = 0; t < k; ++t) {
      int cut_cost = buyable ? 1 : kDpUnreachable;
      int skip_cost = 0;
      for (NodeId w : children[static_cast<std::size_t>(u)]) {
        cut_cost = saturating_add(cut_cost, table.f(w, 1));
        skip_cost = saturating_add(skip_cost, table.f(w, t + 1));
      }
      bool take = cut_cost < skip_cost;
      table.cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)] =
          take ? cut_cost : skip_cost;
      table.cut[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)] =
          take ? 1 : 0;
    }
  }

  table.total = 0;
  for (NodeId u : children[static_cast<std::size_t>(s)])
    table.total = saturating_add(table.total, table.f(u, 0));
  require(table.total < kDpUnreachable,
          "no source-anchored shortcut set exists for node " +
              std::to_string(s) +
              ": heavier direct edges block every repair");

  // Traceback: collect the Cut choices top-down.
  std::vector<std::pair<NodeId, int>> stack;
  for (NodeId u : children[static_cast<std::size_t>(s)]) stack.push_back({u, 0});
  while (!stack.empty()) {
    auto [u, t] = stack.back();
    stack.pop_back();
    bool take = table.cut[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)] != 0;
    if (take) table.targets.push_back(u);
    int child_t = take ? 1 : t + 1;
    for (NodeId w : children[static_cast<std::size_t>(u)])
      stack.push_back({w, child_t});
  }
  std::sort(table.targets.begin(), table.targets.end());
  require(static_cast<int>(table.targets.size()) == table.total,
          "dynamic program traceback out of sync with table total");
  return table;
}

std::vector<DpSolution> dp_solutions(const WeightedGraph& g, int k, int rho,
                                     const std::vector<NodeId>& sources) {
  std::vector<DpSolution> out;
  out.reserve(sources.size());
  for (NodeId s : sources) {
    DpTable table = dp_table(g, s, k, rho);
    // Every minimal per-source solution stays below rho/(k-1) shortcuts.
    require(static_cast<int>(table.targets.size()) * (k - 1) < rho,
            "per-source shortcut bound violated at node " + std::to_string(s));
    DpSolution sol{s, std::move(table.targets), {}};
    sol.weights.reserve(sol.targets.size());
    for (NodeId x : sol.targets) sol.weights.push_back(table.tree.dist(x));
    out.push_back(std::move(sol));
  }
  return out;
}

ShortcutSet krho_dp(const WeightedGraph& g, int k, int rho,
                    const std::vector<NodeId>& sources) {
  ShortcutSet out(g.directed());
  for (const DpSolution& sol : dp_solutions(g, k, rho, sources))
    for (std::size_t i = 0; i < sol.targets.size(); ++i)
      out.insert(sol.source, sol.targets[i], sol.weights[i]);
  return out;
}

ShortcutSet krho_dp(const WeightedGraph& g, int k, int rho) {
  std::vector<NodeId> all(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v)
    all[static_cast<std::size_t>(v)] = v;
  return krho_dp(g, k, rho, all);
}

ShortcutSet krho_dp_star(const WeightedGraph& g, int k, int rho,
                         double batch_fraction, std::uint64_t seed) {
  check_k_rho(g, k, rho);
  require(batch_fraction > 0.0 && batch_fraction <= 1.0,
          "batch fraction must be in (0, 1]");
  const int n = g.node_count();
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t batch = static_cast<std::size_t>(
      std::ceil(batch_fraction * static_cast<double>(n)));
  WeightedGraph cur = g;
  ShortcutSet out(g.directed());
  for (std::size_t at = 0; at < order.size(); at += batch) {
    std::vector<NodeId> sources(
        order.begin() + static_cast<std::ptrdiff_t>(at),
        order.begin() + static_cast<std::ptrdiff_t>(
                            std::min(at + batch, order.size())));
    ShortcutSet stage = krho_dp(cur, k, rho, sources);
    for (const Shortcut& s : stage.items()) {
      out.insert(s.u, s.v, s.w);
      if (!cur.has_edge(s.u, s.v)) cur.add_edge(s.u, s.v, s.w);
    }
  }
  return out;
}

ShortcutSet solve_k1(const WeightedGraph& g, int rho) {
  check_k_rho(g, 1, rho);
  ShortcutSet out(g.directed());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    BallProfile prof = ball_profile(g, v, 1, rho);
    if (prof.has_ball) continue;
    ClosestPathTree tree = closest_path_tree(g, v, rho);
    for (NodeId u : prof.missing) {
      if (g.has_edge(v, u)) continue;  // blocked: heavier edge already there
      out.insert(v, u, tree.dist(u));
    }
  }
  return out;
}

ShortcutSet krho_greedy(const WeightedGraph& g, int k, int rho) {
  check_k_rho(g, k, rho);
  WeightedGraph cur = g;
  ShortcutSet out(g.directed());
  for (NodeId v = 0; v < cur.node_count(); ++v) {
    BallProfile prof = ball_profile(cur, v, k, rho);
    if (prof.has_ball) continue;
    ClosestPathTree tree = closest_path_tree(cur, v, rho);
    for (NodeId u : prof.missing) {
      if (cur.has_edge(v, u)) continue;
      out.insert(v, u, tree.dist(u));
      cur.add_edge(v, u, tree.dist(u));
    }
  }
  return out;
}

}  // namespace krho
