#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "krho/balls.hpp"
#include "krho/graph.hpp"
#include "krho/shortest_paths.hpp"

namespace krho {

/// Cost sentinel for impossible subtree assignments in the dynamic program.
constexpr int kDpUnreachable = 1 << 28;

/// Exact solver for k = 1: a missing neighbour can only be fixed by a direct
/// shortcut, so every node simply buys its missing set (undirected dedup
/// halves the count). Pairs blocked by an existing heavier-than-distance
/// edge cannot be bought and are skipped; such instances have no valid
/// shortcut set at k = 1 at all.
ShortcutSet solve_k1(const WeightedGraph& g, int rho);

/// Greedy baseline: scan nodes in id order against the partially augmented
/// graph; a node without a ball buys a direct shortcut to every member of
/// its missing set (in (dist, id) order). No lookahead — fixing one missing
/// node often repairs later ones for free, but the greedy still buys them.
ShortcutSet krho_greedy(const WeightedGraph& g, int k, int rho);

/// Subtree dynamic program for one source, over the closest-path tree
/// truncated to the rho nearest nodes. f(u,t) is the fewest shortcuts into
/// the subtree rooted at u that keep everything within k hops of the source
/// when u's parent sits at depth t; Cut buys (source,u) and resets u to
/// depth 1, Skip leaves u at depth t+1. t >= k is impossible, and a node the
/// source already neighbours cannot be bought (Cut is impossible there).
/// Ties prefer Skip, so shortcuts sit as deep as an optimal table allows.
struct DpTable {
  NodeId source = -1;
  int k = 0;
  ClosestPathTree tree{-1, 0};
  std::vector<NodeId> nodes;              // tree nodes except the source
  std::vector<std::vector<int>> cost;     // cost[t][node], t in 0..k-1
  std::vector<std::vector<char>> cut;     // 1 = Cut, 0 = Skip
  int total = 0;                          // sum of f(u,0) over source children
  std::vector<NodeId> targets;            // traceback: shortcut ends, ascending

  int f(NodeId u, int t) const;           // kDpUnreachable when t >= k
};

DpTable dp_table(const WeightedGraph& g, NodeId s, int k, int rho);

/// Per-source slice of a kρ-DP run: all shortcuts anchor at the source.
/// weights[i] is the shortest-path distance to targets[i], i.e. the weight
/// the shortcut (source, targets[i]) must carry.
struct DpSolution {
  NodeId source = -1;
  std::vector<NodeId> targets;
  std::vector<double> weights;
};

std::vector<DpSolution> dp_solutions(const WeightedGraph& g, int k, int rho,
                                     const std::vector<NodeId>& sources);

/// Union of per-source dynamic programs (k >= 2; use solve_k1 for k = 1).
/// Throws if any source exceeds the per-source bound |S_i| < rho/(k-1) or
/// admits no source-anchored solution at all.
ShortcutSet krho_dp(const WeightedGraph& g, int k, int rho,
                    const std::vector<NodeId>& sources);
ShortcutSet krho_dp(const WeightedGraph& g, int k, int rho);

/// Staged variant: processes the seed-shuffled nodes in batches of
/// ceil(batch_fraction * n), inserting each batch's shortcuts before the
/// next batch runs, so later sources see earlier repairs.
ShortcutSet krho_dp_star(const WeightedGraph& g, int k, int rho,
                         double batch_fraction = 0.1, std::uint64_t seed = 0);

/// A pair-shortcutting candidate (x,y) with its pooled score. Each node u
/// that could fix one of its missing members with (x,y) contributes once:
/// the reciprocal of how many members u would still miss if only (x,y) were
/// inserted (floored at one). gains records, per contributing node, how many
/// members the candidate moves into that node's ball.
struct CandidateScore {
  NodeId x = -1;
  NodeId y = -1;
  double w = 0.0;  // shortest-path distance between x and y
  double score = 0.0;
  std::vector<std::pair<NodeId, int>> gains;  // (contributor, gain), ascending

  int contributors() const { return static_cast<int>(gains.size()); }
  int min_gain() const;
};

/// Enumerates candidates along the tree path from each deficient node u to
/// each of its missing members v: every ordered pair (x,y) on that path with
/// hops(u,x) + 1 + hops(y,v) <= k. Of a tree node's leaf children only the
/// two smallest ids may appear as the missing endpoint v ("important
/// breadth"). Results are keyed by the undirected pair and sorted by it.
std::vector<CandidateScore> pc_candidates(const WeightedGraph& g, int k,
                                          int rho);

/// Pair-shortcutting pipeline: accept candidates scoring above mu + 3*sigma
/// (population statistics over all candidate scores) that are corroborated
/// by at least k distinct contributors and move at least two nodes into
/// balls overall; optionally thin the winners with the minhash filter
/// (descending score); insert survivors; finish with the dynamic program on
/// every node of the augmented graph.
ShortcutSet krho_dp_pc(const WeightedGraph& g, int k, int rho,
                       bool use_minhash, std::uint64_t seed = 0);

/// One perturbation family member: replacing (source,x) by (t,x) keeps the
/// source's solution minimal and its ball intact, because t lies within the
/// slack window k-1-depth(subtree below x) behind a shortcut landing point.
struct SaAlternative {
  NodeId x = -1;        // the shortcut end being re-anchored
  NodeId t = -1;        // the alternative anchor on the source->x tree path
  int subtree_depth = 0;
};

/// All alternative anchors for one source's DP solution, capped at pred_cap
/// candidates per shortcut (closest to x first). pred_cap < 0 selects
/// ceil(log2 rho).
std::vector<SaAlternative> sa_alternatives(const WeightedGraph& g, int k,
                                           int rho, const DpSolution& base,
                                           int pred_cap = -1);

/// Shared alignment scores: every source counts each distinct shortcut that
/// appears in its base solution or any of its perturbations exactly once, so
/// a score of two or more certifies membership in two sources' minimal
/// solutions. Keys are undirected-canonical (min,max) pairs.
std::map<std::pair<NodeId, NodeId>, int> sa_perturbations(
    const WeightedGraph& g, int k, int rho,
    const std::vector<DpSolution>& base, int pred_cap = -1);

/// Set-alignment pipeline: run the dynamic program everywhere, score the
/// perturbation families, insert all shortcuts scoring >= 2 (descending
/// score, optionally minhash-thinned), and re-run the dynamic program on the
/// augmented graph.
ShortcutSet krho_dp_sa(const WeightedGraph& g, int k, int rho,
                       bool use_minhash, std::uint64_t seed = 0);

/// MinHash duplicate-benefit filter. Keeps c shared sets of already-seen
/// hash minima; a candidate whose benefit-set fingerprint collides on more
/// than max_collision_fraction of the c functions is rejected, everything
/// else is accepted and registered. The collision fraction against a single
/// registered set estimates the Jaccard index; against many it upper-bounds
/// the maximum, which is exactly the redundancy signal wanted.
class MinHashFilter {
public:
  MinHashFilter(int c, double max_collision_fraction, std::uint64_t seed);

  int functions() const { return static_cast<int>(keys_.size()); }

  /// Element-wise minima of the keyed hashes; requires a non-empty set.
  std::vector<std::uint64_t> fingerprint(
      const std::vector<std::uint64_t>& elements) const;

  /// Fraction of the c functions whose minimum was already registered.
  double collision_fraction(const std::vector<std::uint64_t>& fp) const;

  /// Accepts (and registers) or rejects the candidate with this benefit
  /// set. Empty sets are rejected outright: no evidence of benefit.
  bool offer(const std::vector<std::uint64_t>& benefit);

private:
  std::vector<std::uint64_t> keys_;
  std::vector<std::vector<std::uint64_t>> seen_;  // sorted minima per function
  double max_fraction_;
};

/// Streams the benefit sets through a fresh filter in the given order and
/// returns the indices of the accepted candidates, ascending.
std::vector<int> minhash_filter(
    const std::vector<std::vector<std::uint64_t>>& benefit_sets, int c,
    double max_collision_fraction, std::uint64_t seed = 0);

/// Combined pipeline: pair-shortcutting acceptance, then set alignment on
/// the augmented graph, then a final dynamic-program completion — each stage
/// sees the previous stage's insertions, both filters use minhashing.
ShortcutSet krho_dp_pc_sa_mh(const WeightedGraph& g, int k, int rho,
                             std::uint64_t seed = 0);

}  // namespace krho
