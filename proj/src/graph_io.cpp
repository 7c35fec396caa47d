#include "krho/graph_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace krho {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

double parse_weight(const std::string& t, int line) {
  try {
    std::size_t used = 0;
    double w = std::stod(t, &used);
    if (used != t.size() || !std::isfinite(w) || w < 0.0)
      parse_fail(line, "bad weight '" + t + "'");
    return w;
  } catch (const std::exception&) {
    parse_fail(line, "bad weight '" + t + "'");
  }
}

long parse_int(const std::string& t, int line, const char* what) {
  try {
    std::size_t used = 0;
    long v = std::stol(t, &used);
    if (used != t.size()) parse_fail(line, std::string("bad ") + what);
    return v;
  } catch (const std::exception&) {
    parse_fail(line, std::string("bad ") + what + " '" + t + "'");
  }
}

LoadedGraph read_edgelist(std::istream& in) {
  std::string line;
  int lineno = 0;
  // Header.
  std::vector<std::string> head;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    head = tokens(line);
    break;
  }
  if (head.empty()) fail("empty graph file");
  if (head.size() < 2 || head.size() > 4)
    parse_fail(lineno, "header must be 'n m [directed|undirected] [weighted|unit]'");
  long n = parse_int(head[0], lineno, "node count");
  long m = parse_int(head[1], lineno, "edge count");
  if (n < 0 || m < 0) parse_fail(lineno, "negative count in header");
  bool directed = false;
  for (std::size_t i = 2; i < head.size(); ++i) {
    // "unit"/"weighted" is advisory for readers: per-line weights decide.
    if (head[i] == "directed") directed = true;
    else if (head[i] == "undirected") directed = false;
    else if (head[i] != "unit" && head[i] != "weighted")
      parse_fail(lineno, "unknown header flag '" + head[i] + "'");
  }

  LoadedGraph out{WeightedGraph(static_cast<int>(n), directed), {}};
  long edges_seen = 0;
  while (edges_seen < m && std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> tok = tokens(line);
    if (tok.size() != 2 && tok.size() != 3)
      parse_fail(lineno, "expected 'u v [w]'");
    long u = parse_int(tok[0], lineno, "node id");
    long v = parse_int(tok[1], lineno, "node id");
    if (u < 0 || u >= n || v < 0 || v >= n)
      parse_fail(lineno, "node id out of range");
    double w = 1.0;
    if (tok.size() == 3) w = parse_weight(tok[2], lineno);
    ++edges_seen;
    if (u == v) {
      ++out.stats.self_loops;
      continue;
    }
    if (!out.graph.add_edge_min(static_cast<NodeId>(u), static_cast<NodeId>(v), w))
      ++out.stats.duplicate_edges;
  }
  if (edges_seen < m)
    fail("edge list ends early: header promised " + std::to_string(m) +
         " edges, got " + std::to_string(edges_seen));
  return out;
}

LoadedGraph read_mtx(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool pattern = false;
  bool first = true;
  long n = 0, m = 0;
  LoadedGraph out{WeightedGraph(0), {}};
  long edges_seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '%') {
      if (lineno == 1 || first) {
        if (line.find("pattern") != std::string::npos) pattern = true;
      }
      continue;
    }
    std::vector<std::string> tok = tokens(line);
    if (first) {
      if (tok.size() != 3) parse_fail(lineno, "expected 'rows cols nnz'");
      long rows = parse_int(tok[0], lineno, "rows");
      long cols = parse_int(tok[1], lineno, "cols");
      m = parse_int(tok[2], lineno, "nnz");
      n = std::max(rows, cols);
      out.graph = WeightedGraph(static_cast<int>(n), false);
      first = false;
      continue;
    }
    if (tok.size() != 2 && tok.size() != 3)
      parse_fail(lineno, "expected 'u v [w]'");
    long u = parse_int(tok[0], lineno, "node id") - 1;  // 1-based on disk
    long v = parse_int(tok[1], lineno, "node id") - 1;
    if (u < 0 || u >= n || v < 0 || v >= n)
      parse_fail(lineno, "node id out of range");
    double w = 1.0;
    if (tok.size() == 3 && !pattern) w = parse_weight(tok[2], lineno);
    ++edges_seen;
    if (u == v) {
      ++out.stats.self_loops;
      continue;
    }
    if (!out.graph.add_edge_min(static_cast<NodeId>(u), static_cast<NodeId>(v), w))
      ++out.stats.duplicate_edges;
  }
  if (first) fail("empty mtx file");
  if (edges_seen != m)
    fail("mtx entry count mismatch: header promised " + std::to_string(m) +
         ", got " + std::to_string(edges_seen));
  return out;
}

}  // namespace

LoadedGraph read_graph(std::istream& in, const std::string& format) {
  if (format == "edgelist") return read_edgelist(in);
  if (format == "mtx") return read_mtx(in);
  fail("unknown graph format '" + format + "'");
}

LoadedGraph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path + "'");
  return read_graph(in, format);
}

std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  if (back == w) {
    // Prefer the shortest representation that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
      char s[40];
      std::snprintf(s, sizeof s, "%.*g", prec, w);
      std::sscanf(s, "%lf", &back);
      if (back == w) return s;
    }
  }
  return buf;
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  bool unit = true;
  std::vector<Shortcut> edges;  // reuse the (u,v,w) triple for sorting
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Edge& e : g.neighbors(u)) {
      if (!g.directed() && e.to < u) continue;
      edges.push_back({u, e.to, e.w});
      if (e.w != 1.0) unit = false;
    }
  }
  std::sort(edges.begin(), edges.end());
  out << g.node_count() << ' ' << edges.size() << ' '
      << (g.directed() ? "directed" : "undirected") << ' '
      << (unit ? "unit" : "weighted") << '\n';
  for (const Shortcut& e : edges) {
    out << e.u << ' ' << e.v;
    if (!unit) out << ' ' << format_weight(e.w);
    out << '\n';
  }
}

void save_graph(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  require(out.good(), "cannot write '" + path + "'");
  write_graph(out, g);
  require(static_cast<bool>(out << std::flush), "write to '" + path + "' failed");
}

}  // namespace krho
