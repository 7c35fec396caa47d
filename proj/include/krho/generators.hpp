#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "krho/graph.hpp"

namespace krho {

enum class WeightMode { Unit, Uniform01 };

/// Gilbert random graph: each of the n(n-1)/2 pairs becomes an edge
/// independently with probability p. Uniform01 weights are drawn from the
/// dyadic grid j/2^26, j in [1, 2^26], so every path weight is exact in
/// double arithmetic and distances are almost surely pairwise distinct.
/// The same (n, p, seed) always yields the same edge set in both modes.
WeightedGraph gen_gilbert(int n, double p, std::uint64_t seed,
                          WeightMode weights = WeightMode::Unit);

/// Threshold hyperbolic random graph (temperature 0): points on a disk of
/// radius R, angle uniform, radius density alpha*sinh(alpha*r) with
/// alpha = (gamma_pl - 1)/2; nodes connect iff their hyperbolic distance is
/// at most R. R is calibrated by bisection so the empirical mean degree of a
/// pilot sample matches avg_deg; the calibration is deterministic and cached
/// per (n, avg_deg, gamma_pl). Degrees follow a power law with exponent
/// gamma_pl. Unit weights.
WeightedGraph gen_hyperbolic(int n, double avg_deg, double gamma_pl,
                             std::uint64_t seed);

/// Degree-preserving Markov-chain powerlaw graph: samples a degree sequence
/// with P[deg = x] proportional to x^-gamma_pl on [1, n-1] until it passes
/// the Erdos-Gallai test, realizes it deterministically (Havel-Hakimi), then
/// applies swaps_per_edge * |E| random double-edge swaps, rejecting any swap
/// that would create a loop or a duplicate edge. Degrees are preserved
/// exactly. Unit weights.
WeightedGraph gen_mc_powerlaw(int n, double gamma_pl, int swaps_per_edge,
                              std::uint64_t seed);

/// Largest connected component, nodes renumbered by ascending original id.
/// Ties between equal-sized components go to the one with the smallest
/// member id. Random-model experiments run on this by default; sparse
/// generators routinely leave isolated fragments behind.
WeightedGraph largest_component(const WeightedGraph& g);

/// What a node of a transformed instance stands for.
enum class NodeRole {
  Original,            // node of the input graph
  EdgeNode,            // midpoint node representing one input edge
  Subdivision,         // path node between an original node and an edge node
  PitchforkBase,       // star center of a pitchfork gadget
  PitchforkSatellite,  // the one star leaf also adjacent to the host node
  PitchforkLeaf,       // remaining star leaves
  BlowupLeaf,          // degree-1 node attached to a pitchfork leaf
};

/// Result of the vertex-cover reduction: the transformed graph plus the
/// bookkeeping needed to read solutions back.
struct TransformArtifacts {
  WeightedGraph graph{0};
  std::vector<NodeRole> roles;
  int gamma = 0;
  int k = 0;
  int rho = 0;  // always equals gamma
  // Input edge (u, v) with u < v -> id of its edge node.
  std::map<std::pair<NodeId, NodeId>, NodeId> edge_node;
  // Original node -> base of its pitchfork; -1 for non-original nodes.
  std::vector<NodeId> base_of;

  /// Ids of all edge nodes, ascending.
  std::vector<NodeId> edge_nodes() const;

  /// The shortcut set {(v, base_of[v], weight 2)} for v in the given node
  /// set — the canonical encoding of a vertex-cover candidate.
  ShortcutSet canonical_shortcuts(const std::vector<NodeId>& cover) const;
};

/// Reduces an (unweighted) vertex-cover instance to a shortcut instance:
/// every input edge {u,v} becomes the path u - s_1 .. s_{k-3} - w_{u,v} -
/// s'_1 .. s'_{k-3} - v, and every input node gets a pitchfork: a star with
/// base b_v and gamma+1 leaves, one of which (the satellite) is also
/// adjacent to v. All unit weights; the instance parameters are (k, rho =
/// gamma). gamma < 0 selects the default 7|V| + 6. blowup_y > 0 additionally
/// attaches that many degree-1 nodes to the last pitchfork leaf of node 0,
/// which changes neither the violator set nor any solver's behaviour.
TransformArtifacts vc_to_msp_transform(const WeightedGraph& g_vc, int k,
                                       int gamma = -1, int blowup_y = 0);

/// Star instance where heuristics provably overshoot: center 0, n-1 rays of
/// k-3 subdivision nodes each, and one pitchfork at the center. rho is the
/// largest value for which exactly the ray tips (`satellites`) lack balls —
/// found by scanning downward and checking, erroring out if no value works.
/// One shortcut (center, base, weight 2) repairs every tip at once.
struct LowerBoundStar {
  WeightedGraph graph{0};
  std::vector<NodeRole> roles;
  int k = 0;
  int rho = 0;
  NodeId center = 0;
  NodeId base = -1;
  std::vector<NodeId> satellites;  // ray tips, ascending
};

LowerBoundStar lowerbound_star(int n, int k, int gamma);

}  // namespace krho
