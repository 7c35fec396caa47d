#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "krho/heuristics.hpp"

namespace krho {

namespace {

std::pair<NodeId, NodeId> canon(const WeightedGraph& g, NodeId a, NodeId b) {
  if (!g.directed() && a > b) std::swap(a, b);
  return {a, b};
}

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

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

std::vector<BallProfile> all_profiles(const WeightedGraph& g, int k, int rho) {
  std::vector<BallProfile> out;
  out.reserve(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v)
    out.push_back(ball_profile(g, v, k, rho));
  return out;
}

// Depth of the subtree hanging below x once the other shortcut ends are
// severed: descend through children but never into another element of cuts.
int subtree_depth(const std::vector<std::vector<NodeId>>& children,
                  const std::set<NodeId>& cuts, NodeId x) {
  int depth = 0;
  std::vector<std::pair<NodeId, int>> stack{{x, 0}};
  while (!stack.empty()) {
    auto [u, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    for (NodeId w : children[static_cast<std::size_t>(u)])
      if (cuts.count(w) == 0) stack.push_back({w, d + 1});
  }
  return depth;
}

// Population mean / standard deviation of the candidate scores.
std::pair<double, double> score_stats(const std::vector<CandidateScore>& cs) {
  if (cs.empty()) return {0.0, 0.0};
  double sum = 0.0, sq = 0.0;
  for (const CandidateScore& c : cs) {
    sum += c.score;
    sq += c.score * c.score;
  }
  double mu = sum / static_cast<double>(cs.size());
  double var = sq / static_cast<double>(cs.size()) - mu * mu;
  return {mu, std::sqrt(std::max(0.0, var))};
}

// Candidates passing the threshold and eligibility rules, best score first.
std::vector<CandidateScore> pc_accept(const WeightedGraph& g, int k, int rho,
                                      bool use_minhash, std::uint64_t seed) {
  std::vector<CandidateScore> cands = pc_candidates(g, k, rho);
  auto [mu, sigma] = score_stats(cands);
  double bar = mu + 3.0 * sigma;

  // Eligibility: beyond the outlier bar, a candidate needs corroboration
  // from at least k distinct contributors, and its insertion must move at
  // least two nodes into balls overall. (Stricter per-contributor demands
  // are unsatisfiable for k = 2: a contributor off the pair can only ever
  // gain the far endpoint itself, never two nodes.)
  std::vector<CandidateScore> accepted;
  for (const CandidateScore& c : cands) {
    if (c.score <= bar || c.contributors() < k) continue;
    int moved = 0;
    for (const auto& [u, gain] : c.gains) moved += gain;
    if (moved >= 2) accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const CandidateScore& a, const CandidateScore& b) {
              if (a.score != b.score) return a.score > b.score;
              return std::make_pair(a.x, a.y) < std::make_pair(b.x, b.y);
            });
  if (!use_minhash || accepted.empty()) return accepted;

  // Thin overlapping winners: the benefit set of a candidate is every pair
  // (node, member) the candidate alone would move into that node's ball.
  std::vector<BallProfile> before = all_profiles(g, k, rho);
  MinHashFilter mh(64, 0.5, seed);
  std::vector<CandidateScore> kept;
  for (const CandidateScore& c : accepted) {
    WeightedGraph aug = g;
    aug.add_edge(c.x, c.y, c.w);
    std::vector<std::uint64_t> benefit;
    for (NodeId a = 0; a < g.node_count(); ++a) {
      const BallProfile& pre = before[static_cast<std::size_t>(a)];
      if (pre.has_ball) continue;
      BallProfile post = ball_profile(aug, a, k, rho);
      std::set<NodeId> still(post.missing.begin(), post.missing.end());
      for (NodeId b : pre.missing)
        if (still.count(b) == 0) benefit.push_back(pair_key(a, b));
    }
    if (mh.offer(benefit)) kept.push_back(c);
  }
  return kept;
}

// Shortcuts shared by at least two sources' perturbation families, best
// score first, with their weights.
std::vector<std::tuple<NodeId, NodeId, double>> sa_accept(
    const WeightedGraph& g, int k, int rho, bool use_minhash,
    std::uint64_t seed) {
  std::vector<NodeId> all(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v)
    all[static_cast<std::size_t>(v)] = v;
  std::vector<DpSolution> sols = dp_solutions(g, k, rho, all);
  std::map<std::pair<NodeId, NodeId>, int> scores =
      sa_perturbations(g, k, rho, sols);

  std::vector<std::pair<std::pair<NodeId, NodeId>, int>> selected;
  for (const auto& [pair, score] : scores)
    if (score >= 2) selected.push_back({pair, score});
  std::sort(selected.begin(), selected.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  // Weights are plain shortest-path distances; one tree per left endpoint.
  std::map<NodeId, ClosestPathTree> trees;
  auto dist_of = [&](NodeId a, NodeId b) {
    auto it = trees.find(a);
    if (it == trees.end())
      it = trees.emplace(a, closest_path_tree(g, a)).first;
    return it->second.dist(b);
  };

  std::vector<std::tuple<NodeId, NodeId, double>> kept;
  if (!use_minhash) {
    for (const auto& [pair, score] : selected)
      kept.push_back({pair.first, pair.second, dist_of(pair.first, pair.second)});
    return kept;
  }

  // For the filter, a shortcut (t,x) benefits the sources that cut x and can
  // reach t quickly enough in the graph as augmented so far.
  std::map<NodeId, std::vector<std::pair<NodeId, int>>> cutters;
  for (const DpSolution& sol : sols) {
    if (sol.targets.empty()) continue;
    ClosestPathTree tree = closest_path_tree(g, sol.source, rho);
    auto children = tree_children(tree, g.node_count());
    std::set<NodeId> cuts(sol.targets.begin(), sol.targets.end());
    for (NodeId x : sol.targets)
      cutters[x].push_back({sol.source, subtree_depth(children, cuts, x)});
  }

  WeightedGraph aug = g;
  MinHashFilter mh(64, 0.5, seed);
  for (const auto& [pair, score] : selected) {
    std::vector<std::uint64_t> benefit;
    auto gather = [&](NodeId anchor, NodeId x) {
      auto it = cutters.find(x);
      if (it == cutters.end()) return;
      for (auto [source, depth] : it->second) {
        ClosestPathTree tree = closest_path_tree(aug, source);
        if (tree.reached(anchor) && tree.hops(anchor) + 1 + depth <= k)
          benefit.push_back(static_cast<std::uint64_t>(source));
      }
    };
    gather(pair.first, pair.second);
    gather(pair.second, pair.first);
    std::sort(benefit.begin(), benefit.end());
    benefit.erase(std::unique(benefit.begin(), benefit.end()), benefit.end());
    if (!mh.offer(benefit)) continue;
    double w = dist_of(pair.first, pair.second);
    kept.push_back({pair.first, pair.second, w});
    aug.add_edge(pair.first, pair.second, w);
  }
  return kept;
}

}  // namespace

int CandidateScore::min_gain() const {
  int best = 0;
  for (std::size_t i = 0; i < gains.size(); ++i)
    best = (i == 0) ? gains[i].second : std::min(best, gains[i].second);
  return best;
}

std::vector<CandidateScore> pc_candidates(const WeightedGraph& g, int k,
                                          int rho) {
  check_k_rho(g, k, rho);
  const int n = g.node_count();
  std::vector<BallProfile> profiles = all_profiles(g, k, rho);

  std::map<std::pair<NodeId, NodeId>, std::set<NodeId>> contributors;
  std::map<std::pair<NodeId, NodeId>, double> weight_of;

  for (NodeId u = 0; u < n; ++u) {
    const BallProfile& prof = profiles[static_cast<std::size_t>(u)];
    if (prof.has_ball) continue;
    ClosestPathTree tree = closest_path_tree(g, u, rho);
    auto children = tree_children(tree, n);

    // Important breadth: of a node's leaf children, only the two smallest
    // ids may act as the deficient endpoint.
    std::vector<char> allowed(static_cast<std::size_t>(n), 1);
    for (NodeId p = 0; p < n; ++p) {
      int leaves = 0;
      for (NodeId c : children[static_cast<std::size_t>(p)]) {
        if (!children[static_cast<std::size_t>(c)].empty()) continue;
        if (++leaves > 2) allowed[static_cast<std::size_t>(c)] = 0;
      }
    }

    for (NodeId v : prof.missing) {
      bool leaf = children[static_cast<std::size_t>(v)].empty();
      if (leaf && !allowed[static_cast<std::size_t>(v)]) continue;
      std::vector<NodeId> path = tree.path_to(v);
      const int hops = static_cast<int>(path.size()) - 1;
      for (int i = 0; i <= std::min(hops, k - 1); ++i) {
        for (int j = std::max(i + 2, hops + i + 1 - k); j <= hops; ++j) {
          NodeId x = path[static_cast<std::size_t>(i)];
          NodeId y = path[static_cast<std::size_t>(j)];
          if (g.has_edge(x, y)) continue;
          auto key = canon(g, x, y);
          contributors[key].insert(u);
          weight_of[key] = tree.dist(y) - tree.dist(x);
        }
      }
    }
  }

  std::vector<CandidateScore> out;
  out.reserve(contributors.size());
  for (const auto& [key, nodes] : contributors) {
    CandidateScore cs;
    cs.x = key.first;
    cs.y = key.second;
    cs.w = weight_of[key];
    WeightedGraph aug = g;
    aug.add_edge(cs.x, cs.y, cs.w);
    for (NodeId u : nodes) {
      int before =
          static_cast<int>(profiles[static_cast<std::size_t>(u)].missing.size());
      int after =
          static_cast<int>(ball_profile(aug, u, k, rho).missing.size());
      cs.gains.push_back({u, before - after});
      cs.score += 1.0 / static_cast<double>(std::max(1, after));
    }
    out.push_back(std::move(cs));
  }
  return out;
}

ShortcutSet krho_dp_pc(const WeightedGraph& g, int k, int rho,
                       bool use_minhash, std::uint64_t seed) {
  std::vector<CandidateScore> survivors = pc_accept(g, k, rho, use_minhash, seed);
  WeightedGraph cur = g;
  ShortcutSet out(g.directed());
  for (const CandidateScore& c : survivors) {
    out.insert(c.x, c.y, c.w);
    cur.add_edge(c.x, c.y, c.w);
  }
  out.merge(krho_dp(cur, k, rho));
  return out;
}

std::vector<SaAlternative> sa_alternatives(const WeightedGraph& g, int k,
                                           int rho, const DpSolution& base,
                                           int pred_cap) {
  check_k_rho(g, k, rho);
  if (pred_cap < 0) {
    pred_cap = 0;
    while ((1 << pred_cap) < rho) ++pred_cap;  // ceil(log2 rho)
    pred_cap = std::max(1, pred_cap);
  }

  std::vector<SaAlternative> out;
  if (base.targets.empty()) return out;
  ClosestPathTree tree = closest_path_tree(g, base.source, rho);
  auto children = tree_children(tree, g.node_count());
  std::set<NodeId> cuts(base.targets.begin(), base.targets.end());

  for (NodeId x : base.targets) {
    int depth = subtree_depth(children, cuts, x);
    if (depth >= k - 1) continue;
    const int window = k - 1 - depth;  // admissible steps past a landing point

    std::vector<NodeId> path = tree.path_to(x);
    const int last = static_cast<int>(path.size()) - 1;
    std::set<int> landings{0};
    for (int p = 0; p <= last; ++p)
      if (cuts.count(path[static_cast<std::size_t>(p)]) != 0)
        landings.insert(p);

    std::set<int> positions;
    for (int z : landings)
      for (int d = 0; d < window && z + d <= last; ++d) positions.insert(z + d);

    std::vector<int> usable;
    for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
      int p = *it;
      if (p == 0 || p == last) continue;  // the source / x itself
      NodeId t = path[static_cast<std::size_t>(p)];
      if (g.has_edge(t, x)) continue;
      usable.push_back(p);  // descending: closest to x first
      if (static_cast<int>(usable.size()) == pred_cap) break;
    }
    for (int p : usable)
      out.push_back({x, path[static_cast<std::size_t>(p)], depth});
  }
  return out;
}

std::map<std::pair<NodeId, NodeId>, int> sa_perturbations(
    const WeightedGraph& g, int k, int rho,
    const std::vector<DpSolution>& base, int pred_cap) {
  std::map<std::pair<NodeId, NodeId>, int> scores;
  for (const DpSolution& sol : base) {
    std::set<std::pair<NodeId, NodeId>> distinct;
    for (NodeId x : sol.targets) distinct.insert(canon(g, sol.source, x));
    for (const SaAlternative& alt : sa_alternatives(g, k, rho, sol, pred_cap))
      distinct.insert(canon(g, alt.t, alt.x));
    for (const auto& pair : distinct) scores[pair] += 1;
  }
  return scores;
}

ShortcutSet krho_dp_sa(const WeightedGraph& g, int k, int rho,
                       bool use_minhash, std::uint64_t seed) {
  auto kept = sa_accept(g, k, rho, use_minhash, seed);
  WeightedGraph cur = g;
  ShortcutSet out(g.directed());
  for (const auto& [u, v, w] : kept) {
    out.insert(u, v, w);
    cur.add_edge(u, v, w);
  }
  out.merge(krho_dp(cur, k, rho));
  return out;
}

ShortcutSet krho_dp_pc_sa_mh(const WeightedGraph& g, int k, int rho,
                             std::uint64_t seed) {
  WeightedGraph cur = g;
  ShortcutSet out(g.directed());
  for (const CandidateScore& c :
       pc_accept(g, k, rho, true, mix64(seed ^ 0x5043ULL))) {
    out.insert(c.x, c.y, c.w);
    cur.add_edge(c.x, c.y, c.w);
  }
  for (const auto& [u, v, w] :
       sa_accept(cur, k, rho, true, mix64(seed ^ 0x5341ULL))) {
    out.insert(u, v, w);
    cur.add_edge(u, v, w);
  }
  out.merge(krho_dp(cur, k, rho));
  return out;
}

}  // namespace krho
