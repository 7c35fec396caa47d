#pragma once

#include <vector>

#include "krho/graph.hpp"
#include "krho/shortest_paths.hpp"

namespace krho {

/// How node v sees its rho nearest neighbourhood under hop bound k.
///
/// The rho-nearest selection orders nodes by (dist, hops, id) and takes the
/// first rho (or everything reachable when fewer exist). Sorting hops ahead
/// of id means nodes tied at the rho-th distance prefer members reachable in
/// few hops, so a tie never spoils a ball that some choice of rho nearest
/// neighbours would satisfy — and never grants one no choice satisfies.
///
///   rho_dist  distance of the rho-th closest node (+inf if fewer than rho
///             nodes are reachable),
///   k_radius  smallest distance of any node more than k hops away (+inf if
///             none),
///   missing   selected nodes with hop distance > k, sorted by (dist, id),
///   has_ball  true iff missing is empty. Implies rho_dist < k_radius or a
///             tie resolved by hop preference.
///
/// Unreachable nodes never appear in missing: a node whose component has
/// fewer than rho+1 nodes owns a ball as soon as everything it can reach
/// lies within k hops.
struct BallProfile {
  NodeId v = -1;
  double rho_dist = kInf;
  double k_radius = kInf;
  bool has_ball = false;
  std::vector<NodeId> missing;
};

BallProfile ball_profile(const WeightedGraph& g, NodeId v, int k, int rho);

/// Nodes without a (k,rho)-ball, ascending. Empty means g is a (k,rho)-graph.
struct ViolationReport {
  std::vector<NodeId> violators;
  bool ok() const { return violators.empty(); }
};

ViolationReport verify_krho(const WeightedGraph& g, int k, int rho,
                            int workers = 1);

/// Returns g plus all shortcuts in s. Each shortcut is validated: endpoints
/// distinct and in range, pair not already an edge (hop distance > 1), and
/// weight exactly equal to d(u,v). Distances are therefore preserved.
WeightedGraph apply_shortcuts(const WeightedGraph& g, const ShortcutSet& s);

void check_k_rho(const WeightedGraph& g, int k, int rho);

}  // namespace krho
