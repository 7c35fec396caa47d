#pragma once

#include <iosfwd>
#include <string>

#include "krho/graph.hpp"

namespace krho {

/// Text format, one graph per file:
///
///   n m [directed|undirected] [weighted|unit]
///   u v [w]          (m lines, 0-based ids; omitted weight means 1.0)
///
/// Comment lines start with '#'. Matrix Market coordinate files
/// (1-based ids, %%MatrixMarket header) are read through format "mtx".
struct LoadStats {
  int duplicate_edges = 0;  // collapsed, min weight kept
  int self_loops = 0;       // dropped
};

struct LoadedGraph {
  WeightedGraph graph;
  LoadStats stats;
};

LoadedGraph read_graph(std::istream& in, const std::string& format = "edgelist");
LoadedGraph load_graph(const std::string& path,
                       const std::string& format = "edgelist");

void write_graph(std::ostream& out, const WeightedGraph& g);
void save_graph(const std::string& path, const WeightedGraph& g);

/// Round-trip safe decimal rendering of an edge weight.
std::string format_weight(double w);

}  // namespace krho
