#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "krho/exact.hpp"

namespace krho {

namespace {

std::string fmt(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string flow_name(const FlowVar& f) {
  return "x_s" + std::to_string(f.s) + "_e" + std::to_string(f.e) + "_" +
         std::to_string(f.u) + "_" + std::to_string(f.v);
}

std::string shortcut_name(const ShortcutVar& s) {
  return "sc_" + std::to_string(s.u) + "_" + std::to_string(s.v);
}

std::string relax_name(const RelaxVar& r) {
  return "u_s" + std::to_string(r.s) + "_e" + std::to_string(r.e);
}

}  // namespace

std::string IlpModel::col_name(int col) const {
  require(col >= 0 && col < col_count(), "column out of range");
  if (col < shortcut_base())
    return flow_name(flow_vars[static_cast<std::size_t>(col)]);
  if (col < relax_base())
    return shortcut_name(
        shortcut_vars[static_cast<std::size_t>(col - shortcut_base())]);
  return relax_name(relax_vars[static_cast<std::size_t>(col - relax_base())]);
}

IlpModel build_ilp(const WeightedGraph& g, int k, int rho,
                   IlpVariant variant) {
  check_k_rho(g, k, rho);
  int n = g.node_count();

  IlpModel m;
  m.variant = variant;
  m.k = k;
  m.rho = rho;
  m.graph = g;

  std::vector<ClosestPathTree> trees;
  trees.reserve(static_cast<std::size_t>(n));
  std::vector<std::vector<NodeId>> near(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    trees.push_back(closest_path_tree(g, v));
    near[static_cast<std::size_t>(v)] = rho_neighborhood(g, v, rho);
  }
  auto dist = [&](NodeId a, NodeId b) {
    return trees[static_cast<std::size_t>(a)].dist(b);
  };

  // shortcut vars: ordered arcs (u,v) with v in N_rho(u) and no edge (u,v)
  std::map<std::pair<NodeId, NodeId>, int> sc_col;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : near[static_cast<std::size_t>(u)])
      if (!g.has_edge(u, v)) {
        sc_col[{u, v}] = static_cast<int>(m.shortcut_vars.size());
        m.shortcut_vars.push_back({u, v, dist(u, v)});
      }

  // flow and relaxation vars, per (s, e) block
  struct Block {
    NodeId s, e;
    int flow0;   // first flow column of the block
    int relax;   // relaxation column (offset into relax_vars)
  };
  std::vector<Block> blocks;
  std::vector<std::vector<NodeId>> plus(static_cast<std::size_t>(n));
  for (NodeId s = 0; s < n; ++s) {
    auto& np = plus[static_cast<std::size_t>(s)];
    np = near[static_cast<std::size_t>(s)];
    np.insert(std::lower_bound(np.begin(), np.end(), s), s);
    for (NodeId e : near[static_cast<std::size_t>(s)]) {
      Block b{s, e, static_cast<int>(m.flow_vars.size()),
              static_cast<int>(m.relax_vars.size())};
      blocks.push_back(b);
      for (NodeId u : np)
        for (NodeId v : np)
          if (u != v) m.flow_vars.push_back({s, e, u, v});
      m.relax_vars.push_back({s, e});
    }
  }

  int sc_base = m.shortcut_base();
  int rx_base = m.relax_base();

  // arc(u,v) inside a block: column offset within the ordered-pair grid
  auto flow_col = [&](const Block& b, NodeId u, NodeId v) {
    const auto& np = plus[static_cast<std::size_t>(b.s)];
    int sz = static_cast<int>(np.size());
    int iu = static_cast<int>(std::lower_bound(np.begin(), np.end(), u) -
                              np.begin());
    int iv = static_cast<int>(std::lower_bound(np.begin(), np.end(), v) -
                              np.begin());
    int off = iu * (sz - 1) + (iv > iu ? iv - 1 : iv);
    return b.flow0 + off;
  };

  auto tag = [](const Block& b) {
    return "_s" + std::to_string(b.s) + "_e" + std::to_string(b.e);
  };

  for (const Block& b : blocks) {
    const auto& np = plus[static_cast<std::size_t>(b.s)];
    const ClosestPathTree& ts = trees[static_cast<std::size_t>(b.s)];
    require(ts.reached(b.e), "internal error: unreachable target in "
                             "rho-neighborhood of node " +
                                 std::to_string(b.s));

    // unit flow out of the source
    IlpRow eq2{"eq2" + tag(b), {}, '=', 1.0};
    for (NodeId v : np)
      if (v != b.s) {
        eq2.terms.push_back({flow_col(b, b.s, v), 1.0});
        eq2.terms.push_back({flow_col(b, v, b.s), -1.0});
      }
    m.rows.push_back(std::move(eq2));

    // unit flow into the target, written in negated form
    IlpRow eq3{"eq3" + tag(b), {}, '=', -1.0};
    for (NodeId v : np)
      if (v != b.e) {
        eq3.terms.push_back({flow_col(b, v, b.e), -1.0});
        eq3.terms.push_back({flow_col(b, b.e, v), -1.0});
      }
    m.rows.push_back(std::move(eq3));

    // conservation at every intermediate node
    for (NodeId i : np) {
      if (i == b.s || i == b.e) continue;
      IlpRow eq4{"eq4" + tag(b) + "_n" + std::to_string(i), {}, '=', 0.0};
      for (NodeId w : np)
        if (w != i) {
          eq4.terms.push_back({flow_col(b, w, i), 1.0});
          eq4.terms.push_back({flow_col(b, i, w), -1.0});
        }
      m.rows.push_back(std::move(eq4));
    }

    // total arc weight pinned to the shortest-path distance
    IlpRow eq5{"eq5" + tag(b), {}, '=', ts.dist(b.e)};
    // total arc count bounded by k unless the relaxation var lifts it
    IlpRow eq6{"eq6" + tag(b), {}, '<', static_cast<double>(m.k)};
    for (NodeId u : np)
      for (NodeId v : np) {
        if (u == v) continue;
        int col = flow_col(b, u, v);
        double w = g.has_edge(u, v) ? g.edge_weight(u, v) : dist(u, v);
        if (!(w < kInf)) continue;  // unusable arc, pinned to zero below
        eq5.terms.push_back({col, w});
        eq6.terms.push_back({col, 1.0});
      }
    eq6.terms.push_back(
        {rx_base + b.relax, -static_cast<double>(ts.hops(b.e))});
    m.rows.push_back(std::move(eq5));
    m.rows.push_back(std::move(eq6));

    // arcs over non-edges: purchasable ones charge their shortcut var,
    // the rest are pinned to zero
    for (NodeId u : np)
      for (NodeId v : np) {
        if (u == v || g.has_edge(u, v)) continue;
        int col = flow_col(b, u, v);
        auto fwd = sc_col.find({u, v});
        if (m.variant == IlpVariant::Directed) {
          if (fwd == sc_col.end()) {
            m.fixed_zero.push_back(col);
            continue;
          }
          IlpRow eq9{"eq9" + tag(b) + "_" + std::to_string(u) + "_" +
                         std::to_string(v),
                     {},
                     '<',
                     0.0};
          eq9.terms.push_back({col, 1.0});
          eq9.terms.push_back({sc_base + fwd->second, -1.0});
          m.rows.push_back(std::move(eq9));
        } else {
          auto rev = sc_col.find({v, u});
          if (fwd == sc_col.end() && rev == sc_col.end()) {
            m.fixed_zero.push_back(col);
            continue;
          }
          IlpRow eq10{"eq10" + tag(b) + "_" + std::to_string(u) + "_" +
                          std::to_string(v),
                      {},
                      '<',
                      0.0};
          eq10.terms.push_back({col, 1.0});
          if (fwd != sc_col.end())
            eq10.terms.push_back({sc_base + fwd->second, -1.0});
          if (rev != sc_col.end())
            eq10.terms.push_back({sc_base + rev->second, -1.0});
          m.rows.push_back(std::move(eq10));
        }
      }
  }

  // per source: exemption count equals the tie overhang of its
  // rho-neighborhood (zero when under-populated)
  std::size_t cursor = 0;
  for (NodeId s = 0; s < n; ++s) {
    const auto& ns = near[static_cast<std::size_t>(s)];
    if (ns.empty()) continue;
    IlpRow eq7{"eq7_s" + std::to_string(s), {}, '=',
               static_cast<double>(
                   std::max<int>(0, static_cast<int>(ns.size()) - rho))};
    for (NodeId e : ns) {
      (void)e;
      eq7.terms.push_back({rx_base + static_cast<int>(cursor), 1.0});
      ++cursor;
    }
    m.rows.push_back(std::move(eq7));
  }
  require(cursor == m.relax_vars.size(),
          "internal error: relaxation column bookkeeping");

  return m;
}

namespace {

// CPLEX-LP text, wrapped below the classic line-length ceiling.
class LpWriter {
public:
  explicit LpWriter(std::ostream& os) : os_(os) {}

  void line(const std::string& s) {
    flush();
    os_ << s << "\n";
  }

  void begin(const std::string& head) {
    flush();
    buf_ = " " + head;
  }

  void term(const std::string& t) {
    if (buf_.size() + t.size() + 1 > 480) {
      os_ << buf_ << "\n";
      buf_ = "  ";
    }
    buf_ += " " + t;
  }

  void flush() {
    if (!buf_.empty()) {
      os_ << buf_ << "\n";
      buf_.clear();
    }
  }

private:
  std::ostream& os_;
  std::string buf_;
};

std::string signed_term(double coef, const std::string& name, bool first) {
  double a = std::abs(coef);
  std::string mag = (a == 1.0 ? name : fmt(a) + " " + name);
  if (coef < 0) return "- " + mag;
  return first ? mag : "+ " + mag;
}

}  // namespace

void write_lp(const IlpModel& model, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), "cannot open " + path + " for writing");
  LpWriter w(os);

  w.line("Minimize");
  w.begin("obj:");
  if (model.shortcut_vars.empty()) {
    w.term("0");
  } else {
    for (std::size_t i = 0; i < model.shortcut_vars.size(); ++i)
      w.term(signed_term(1.0, shortcut_name(model.shortcut_vars[i]), i == 0));
  }

  w.line("Subject To");
  for (const IlpRow& row : model.rows) {
    w.begin(row.name + ":");
    for (std::size_t i = 0; i < row.terms.size(); ++i)
      w.term(signed_term(row.terms[i].coef,
                         model.col_name(row.terms[i].col), i == 0));
    w.term(row.sense == '=' ? "=" : "<=");
    w.term(fmt(row.rhs));
  }

  w.line("Bounds");
  for (int col : model.fixed_zero) w.line(" " + model.col_name(col) + " = 0");

  w.line("Binary");
  for (const ShortcutVar& v : model.shortcut_vars)
    w.line(" " + shortcut_name(v));
  for (const RelaxVar& v : model.relax_vars) w.line(" " + relax_name(v));

  w.line("General");
  for (const FlowVar& v : model.flow_vars) w.line(" " + flow_name(v));

  w.line("End");
  w.flush();
  os.flush();
  require(os.good(), "write failure on " + path);
}

ShortcutSet decode_shortcuts(const IlpModel& model,
                             const std::map<std::string, double>& values) {
  ShortcutSet out(model.graph.directed());
  for (const ShortcutVar& v : model.shortcut_vars) {
    auto it = values.find(shortcut_name(v));
    if (it != values.end() && it->second >= 0.5) out.insert(v.u, v.v, v.w);
  }
  return out;
}

}  // namespace krho
