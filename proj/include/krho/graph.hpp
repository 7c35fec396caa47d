#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "krho/util.hpp"

namespace krho {

using NodeId = int;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  NodeId to;
  double w;
};

/// Simple weighted graph over nodes 0..n-1. No self loops, no parallel
/// edges. Undirected by default; the directed flag switches adjacency to
/// one-way arcs (used by the directed ILP variant).
class WeightedGraph {
public:
  explicit WeightedGraph(int n = 0, bool directed = false)
      : adj_(static_cast<std::size_t>(n)), directed_(directed) {}

  int node_count() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return m_; }
  bool directed() const { return directed_; }

  bool has_edge(NodeId u, NodeId v) const {
    return edges_.count(key(u, v)) != 0;
  }

  /// Weight of edge (u,v), or +inf if absent.
  double edge_weight(NodeId u, NodeId v) const {
    if (!has_edge(u, v)) return kInf;
    for (const Edge& e : adj_[static_cast<std::size_t>(u)])
      if (e.to == v) return e.w;
    return kInf;  // unreachable
  }

  /// Inserts edge {u,v} with weight w. Errors on self loops, duplicate
  /// edges, out-of-range endpoints or non-finite/negative weight.
  void add_edge(NodeId u, NodeId v, double w = 1.0) {
    check_endpoints(u, v);
    require(w >= 0.0 && w < kInf, "edge weight must be finite and >= 0");
    require(!has_edge(u, v), "duplicate edge " + std::to_string(u) + "-" +
                                 std::to_string(v));
    adj_[static_cast<std::size_t>(u)].push_back({v, w});
    edges_.insert(key(u, v));
    if (!directed_) {
      adj_[static_cast<std::size_t>(v)].push_back({u, w});
      edges_.insert(key(v, u));
    }
    ++m_;
  }

  /// Loader variant: collapses duplicates keeping the minimum weight.
  /// Returns true if the edge was new, false if it collapsed into an
  /// existing one.
  bool add_edge_min(NodeId u, NodeId v, double w) {
    check_endpoints(u, v);
    require(w >= 0.0 && w < kInf, "edge weight must be finite and >= 0");
    if (!has_edge(u, v)) {
      add_edge(u, v, w);
      return true;
    }
    lower_weight(u, v, w);
    if (!directed_) lower_weight(v, u, w);
    return false;
  }

  const std::vector<Edge>& neighbors(NodeId u) const {
    return adj_[static_cast<std::size_t>(u)];
  }

  /// Degree in the adjacency sense (out-degree when directed).
  int degree(NodeId u) const {
    return static_cast<int>(adj_[static_cast<std::size_t>(u)].size());
  }

private:
  std::uint64_t key(NodeId u, NodeId v) const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  void check_endpoints(NodeId u, NodeId v) const {
    require(u >= 0 && u < node_count() && v >= 0 && v < node_count(),
            "edge endpoint out of range");
    require(u != v, "self loop " + std::to_string(u) + " rejected");
  }

  void lower_weight(NodeId u, NodeId v, double w) {
    for (Edge& e : adj_[static_cast<std::size_t>(u)])
      if (e.to == v && w < e.w) e.w = w;
  }

  std::vector<std::vector<Edge>> adj_;
  std::unordered_set<std::uint64_t> edges_;
  std::int64_t m_ = 0;
  bool directed_ = false;
};

/// A shortcut is an extra edge {u,v} whose weight must equal the shortest
/// path distance d(u,v), so inserting it never changes any pairwise
/// distance. Stored with u < v for undirected graphs.
struct Shortcut {
  NodeId u;
  NodeId v;
  double w;

  friend bool operator==(const Shortcut& a, const Shortcut& b) {
    return a.u == b.u && a.v == b.v && a.w == b.w;
  }
  friend bool operator<(const Shortcut& a, const Shortcut& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  }
};

/// Deduplicated, canonically ordered set of shortcuts.
class ShortcutSet {
public:
  ShortcutSet() = default;
  explicit ShortcutSet(bool directed) : directed_(directed) {}

  bool directed() const { return directed_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Shortcut>& items() const { return items_; }

  bool contains(NodeId u, NodeId v) const {
    Shortcut c = orient(u, v, 0.0);
    for (const Shortcut& s : items_)
      if (s.u == c.u && s.v == c.v) return true;
    return false;
  }

  /// Inserts {u,v}; returns false (and keeps the set unchanged) if the pair
  /// is already present. Weights of duplicate inserts must agree.
  bool insert(NodeId u, NodeId v, double w) {
    require(u != v, "degenerate shortcut");
    Shortcut s = orient(u, v, w);
    auto it = std::lower_bound(items_.begin(), items_.end(), s,
                               [](const Shortcut& a, const Shortcut& b) {
                                 if (a.u != b.u) return a.u < b.u;
                                 return a.v < b.v;
                               });
    if (it != items_.end() && it->u == s.u && it->v == s.v) {
      require(it->w == s.w, "conflicting weights for duplicate shortcut");
      return false;
    }
    items_.insert(it, s);
    return true;
  }

  void merge(const ShortcutSet& other) {
    for (const Shortcut& s : other.items()) insert(s.u, s.v, s.w);
  }

  friend bool operator==(const ShortcutSet& a, const ShortcutSet& b) {
    return a.directed_ == b.directed_ && a.items_ == b.items_;
  }

private:
  Shortcut orient(NodeId u, NodeId v, double w) const {
    if (!directed_ && u > v) std::swap(u, v);
    return {u, v, w};
  }

  std::vector<Shortcut> items_;  // sorted by (u,v)
  bool directed_ = false;
};

}  // namespace krho
