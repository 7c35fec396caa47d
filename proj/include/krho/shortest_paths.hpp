#pragma once

#include <vector>

#include "krho/graph.hpp"

namespace krho {

/// Closest paths minimize total weight first and hop count second. The tree
/// stores, per reached node, that lexicographic optimum plus the chosen
/// parent; ties on (dist, hops) are broken towards the smallest parent id,
/// which makes the tree fully deterministic.
class ClosestPathTree {
public:
  ClosestPathTree(NodeId source, int n)
      : source_(source),
        dist_(static_cast<std::size_t>(n), kInf),
        hops_(static_cast<std::size_t>(n), -1),
        parent_(static_cast<std::size_t>(n), -1) {}

  NodeId source() const { return source_; }
  bool reached(NodeId v) const { return hops_[static_cast<std::size_t>(v)] >= 0; }
  double dist(NodeId v) const { return dist_[static_cast<std::size_t>(v)]; }
  int hops(NodeId v) const { return hops_[static_cast<std::size_t>(v)]; }
  NodeId parent(NodeId v) const { return parent_[static_cast<std::size_t>(v)]; }

  /// Settled nodes (source included) sorted by (dist, node id).
  const std::vector<NodeId>& reach_order() const { return order_; }

  /// Tree path source -> v as a node sequence; empty if v unreached.
  std::vector<NodeId> path_to(NodeId v) const {
    if (!reached(v)) return {};
    std::vector<NodeId> p;
    for (NodeId x = v; x != -1; x = parent_[static_cast<std::size_t>(x)])
      p.push_back(x);
    std::reverse(p.begin(), p.end());
    return p;
  }

  void set(NodeId v, double d, int h, NodeId p) {
    dist_[static_cast<std::size_t>(v)] = d;
    hops_[static_cast<std::size_t>(v)] = h;
    parent_[static_cast<std::size_t>(v)] = p;
  }
  void push_order(NodeId v) { order_.push_back(v); }
  void sort_order() {
    std::stable_sort(order_.begin(), order_.end(), [this](NodeId a, NodeId b) {
      double da = dist(a), db = dist(b);
      if (da != db) return da < db;
      return a < b;
    });
  }

private:
  NodeId source_;
  std::vector<double> dist_;
  std::vector<int> hops_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> order_;
};

/// Dijkstra on the lexicographic key (dist, hops). With limit >= 0 the
/// search settles `limit` nodes beyond the source plus every further node
/// tied at the last settled distance, i.e. exactly the (possibly
/// over-populated) set of the `limit` nearest nodes. limit < 0 settles all
/// reachable nodes.
ClosestPathTree closest_path_tree(const WeightedGraph& g, NodeId source,
                                  int limit = -1);

}  // namespace krho
