#include "krho/shortest_paths.hpp"

#include <queue>

namespace krho {

namespace {

struct Label {
  double dist;
  int hops;
  NodeId parent;
  NodeId node;
};

// Heap pops by (dist, hops, node): nondecreasing distance, fewest hops
// within a distance class. Parent only participates in label improvement.
struct LabelAfter {
  bool operator()(const Label& a, const Label& b) const {
    if (a.dist != b.dist) return a.dist > b.dist;
    if (a.hops != b.hops) return a.hops > b.hops;
    return a.node > b.node;
  }
};

}  // namespace

ClosestPathTree closest_path_tree(const WeightedGraph& g, NodeId source,
                                  int limit) {
  const int n = g.node_count();
  require(source >= 0 && source < n, "source out of range");
  require(limit != 0, "limit must be >= 1, or negative for no limit");

  ClosestPathTree tree(source, n);
  std::vector<char> settled(static_cast<std::size_t>(n), 0);
  // Best tentative label per node. An untouched node has bd = +inf, so the
  // distance comparison alone admits it; hop/parent comparisons only ever
  // run against real labels. Parent ties resolve to the smallest id.
  std::vector<double> bd(static_cast<std::size_t>(n), kInf);
  std::vector<int> bh(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> bp(static_cast<std::size_t>(n), -1);

  auto improves = [&](double d, int h, NodeId p, std::size_t vi) {
    if (d != bd[vi]) return d < bd[vi];
    if (h != bh[vi]) return h < bh[vi];
    return p < bp[vi];
  };

  std::priority_queue<Label, std::vector<Label>, LabelAfter> heap;
  bd[static_cast<std::size_t>(source)] = 0.0;
  heap.push({0.0, 0, -1, source});

  int beyond_source = 0;
  double cutoff = kInf;  // distance of the limit-th settled node
  bool cutoff_set = false;

  while (!heap.empty()) {
    Label top = heap.top();
    heap.pop();
    std::size_t ti = static_cast<std::size_t>(top.node);
    if (settled[ti]) continue;
    if (cutoff_set && top.dist > cutoff) break;

    settled[ti] = 1;
    tree.set(top.node, bd[ti], bh[ti], bp[ti]);
    tree.push_order(top.node);
    if (top.node != source && !cutoff_set) {
      ++beyond_source;
      if (limit > 0 && beyond_source >= limit) {
        cutoff = top.dist;  // keep settling ties at this distance
        cutoff_set = true;
      }
    }

    for (const Edge& e : g.neighbors(top.node)) {
      std::size_t vi = static_cast<std::size_t>(e.to);
      if (settled[vi]) continue;
      double nd = bd[ti] + e.w;
      int nh = bh[ti] + 1;
      if (improves(nd, nh, top.node, vi)) {
        bd[vi] = nd;
        bh[vi] = nh;
        bp[vi] = top.node;
        heap.push({nd, nh, top.node, e.to});
      }
    }
  }

  tree.sort_order();
  return tree;
}

}  // namespace krho
