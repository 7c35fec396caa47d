#include <algorithm>
#include <numeric>

#include "krho/exact.hpp"

namespace krho {

std::vector<NodeId> rho_neighborhood(const WeightedGraph& g, NodeId s,
                                     int rho) {
  check_k_rho(g, 1, rho);
  require(s >= 0 && s < g.node_count(), "node out of range");
  ClosestPathTree t = closest_path_tree(g, s);
  // reach_order is sorted by (dist, id) with the source somewhere in the
  // dist-0 prefix; drop it, then cut after the rho-th member keeping ties.
  std::vector<NodeId> near;
  for (NodeId v : t.reach_order())
    if (v != s) near.push_back(v);
  if (static_cast<int>(near.size()) > rho) {
    double r = t.dist(near[static_cast<std::size_t>(rho) - 1]);
    auto past = std::find_if(near.begin() + rho, near.end(),
                             [&](NodeId v) { return t.dist(v) > r; });
    near.erase(past, near.end());
  }
  std::sort(near.begin(), near.end());
  return near;
}

std::vector<Shortcut> candidate_shortcuts(const WeightedGraph& g, int rho) {
  int n = g.node_count();
  std::vector<std::vector<NodeId>> near(static_cast<std::size_t>(n));
  std::vector<ClosestPathTree> trees;
  trees.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    trees.push_back(closest_path_tree(g, v));
    near[static_cast<std::size_t>(v)] = rho_neighborhood(g, v, rho);
  }
  std::vector<Shortcut> out;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : near[static_cast<std::size_t>(u)]) {
      if (g.has_edge(u, v)) continue;
      NodeId a = std::min(u, v), b = std::max(u, v);
      out.push_back({a, b, trees[static_cast<std::size_t>(a)].dist(b)});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr long long kSubsetBudget = 10'000'000;

// C(n, k) capped so the budget comparison cannot overflow.
long long choose_capped(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > (kSubsetBudget * 4) / (n - k + i)) return kSubsetBudget * 4;
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace

ShortcutSet brute_force_msp(const WeightedGraph& g, int k, int rho,
                            int max_card) {
  check_k_rho(g, k, rho);
  std::vector<Shortcut> cand = candidate_shortcuts(g, rho);
  int m = static_cast<int>(cand.size());
  int cap = max_card >= 0 ? std::min(max_card, m) : m;

  long long used = 0;
  for (int card = 0; card <= cap; ++card) {
    long long combos = choose_capped(m, card);
    if (used + combos > kSubsetBudget)
      fail("oracle out of budget: " + std::to_string(m) +
           " candidates need more than " + std::to_string(kSubsetBudget) +
           " subsets by cardinality " + std::to_string(card));
    used += combos;

    std::vector<int> idx(static_cast<std::size_t>(card));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ShortcutSet s(g.directed());
      for (int i : idx) s.insert(cand[static_cast<std::size_t>(i)].u,
                                 cand[static_cast<std::size_t>(i)].v,
                                 cand[static_cast<std::size_t>(i)].w);
      if (verify_krho(apply_shortcuts(g, s), k, rho).ok()) return s;

      // next lexicographic combination
      int i = card - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - card + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < card; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(i)] + (j - i);
    }
  }
  fail("no shortcut set of cardinality <= " + std::to_string(cap) +
       " over " + std::to_string(m) + " candidates repairs the graph");
}

}  // namespace krho
