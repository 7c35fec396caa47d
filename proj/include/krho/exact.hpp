#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "krho/balls.hpp"
#include "krho/graph.hpp"
#include "krho/shortest_paths.hpp"

namespace krho {

/// N_rho(s): every node u != s with d(s,u) <= distance of the rho-th
/// closest node. Tie-inclusive, so the set can hold more than rho members;
/// when fewer than rho nodes are reachable it holds all of them. Ascending
/// node ids.
std::vector<NodeId> rho_neighborhood(const WeightedGraph& g, NodeId s,
                                     int rho);

/// Undirected shortcut candidates: pairs {u,v} with u < v, not an edge, and
/// at least one endpoint inside the other's rho-neighborhood. Weight is set
/// to d(u,v). Sorted by (u,v).
std::vector<Shortcut> candidate_shortcuts(const WeightedGraph& g, int rho);

/// Exhaustive minimum-cardinality solver. Tries cardinalities 0,1,2,... and
/// within each the lexicographic combinations of candidate_shortcuts(); the
/// first subset whose application yields a (k,rho)-graph wins. With
/// max_card >= 0 the search stops at that cardinality. The total number of
/// subsets examined is capped; exceeding the cap raises an "oracle out of
/// budget" error rather than returning a wrong answer.
ShortcutSet brute_force_msp(const WeightedGraph& g, int k, int rho,
                            int max_card = -1);

/// Which linking rule ties flows to shortcut purchases: Directed charges
/// each orientation separately, Undirected lets one purchase serve both.
enum class IlpVariant { Directed, Undirected };

struct FlowVar {
  NodeId s, e, u, v;  // unit of flow s->e routed over arc (u,v)
};

struct ShortcutVar {
  NodeId u, v;  // candidate shortcut arc (u,v)
  double w;     // its weight d(u,v)
};

struct RelaxVar {
  NodeId s, e;  // 1 exempts e from the hop bound around s
};

struct IlpTerm {
  int col;
  double coef;
};

struct IlpRow {
  std::string name;
  std::vector<IlpTerm> terms;
  char sense;  // '=' or '<' (meaning <=)
  double rhs;
};

/// Mixed-integer model for minimum shortcutting. Column layout: flow vars
/// first, then shortcut vars, then relaxation vars. Flow vars exist for
/// every source s, every target e in N_rho(s) and every ordered pair (u,v)
/// over N_rho(s) plus s itself; arcs that are neither local edges nor
/// purchasable shortcuts are pinned to zero via fixed_zero.
struct IlpModel {
  IlpVariant variant = IlpVariant::Undirected;
  int k = 0;
  int rho = 0;
  WeightedGraph graph{0};

  std::vector<FlowVar> flow_vars;
  std::vector<ShortcutVar> shortcut_vars;
  std::vector<RelaxVar> relax_vars;
  std::vector<int> fixed_zero;  // columns forced to 0
  std::vector<IlpRow> rows;

  int flow_base() const { return 0; }
  int shortcut_base() const { return static_cast<int>(flow_vars.size()); }
  int relax_base() const {
    return shortcut_base() + static_cast<int>(shortcut_vars.size());
  }
  int col_count() const {
    return relax_base() + static_cast<int>(relax_vars.size());
  }
  std::string col_name(int col) const;
};

/// Builds the model: per source s and target e in N_rho(s), one unit of
/// flow from s to e routed over the local clique, forced onto a shortest
/// path (sum of arc weights equals d(s,e)) of at most k arcs unless the
/// relaxation var exempts e; per source, the number of exemptions equals
/// the tie overhang |N_rho(s)| - rho (never negative). Arcs over non-edges
/// cost a shortcut purchase, which is what the objective minimizes.
IlpModel build_ilp(const WeightedGraph& g, int k, int rho, IlpVariant variant);

/// Serializes the model as CPLEX-LP text: Minimize / Subject To / Bounds /
/// Binary / General / End, one named row per constraint, variables in a
/// fixed sorted order. Byte-stable for equal models.
void write_lp(const IlpModel& model, const std::string& path);

enum class SolveStatus { Optimal, Timeout, Infeasible, SolverError };

struct SolveOutcome {
  SolveStatus status = SolveStatus::SolverError;
  std::optional<int> objective;
  std::optional<ShortcutSet> shortcuts;
  double wall_time = 0.0;  // seconds
  std::string message;     // diagnostics for non-Optimal outcomes
};

const char* to_string(SolveStatus s);

/// Variable assignments from a solver solution file. Accepted lines:
/// "<name> <value>" or "<index> <name> <value> [...]"; '#', '%' and '\'
/// start comments; a non-comment word "infeasible" (or the marker comment
/// "# infeasible") flags infeasibility.
struct SolutionFile {
  std::map<std::string, double> values;
  bool infeasible = false;
};

SolutionFile read_solution_file(const std::string& path);

/// Shortcut vars with value >= 0.5, decoded to an undirected set (the
/// Directed variant may collapse both orientations of a pair into one).
ShortcutSet decode_shortcuts(const IlpModel& model,
                             const std::map<std::string, double>& values);

/// Writes the LP file, runs `solver_cmd` (placeholders {lp} and {sol}
/// replaced by temp paths) under a wall-clock timeout, reads the solution,
/// decodes the purchased shortcuts and verifies the shortcutted graph.
/// timeout_s = 0 reports Timeout without launching the solver.
SolveOutcome solve_external(const IlpModel& model,
                            const std::string& solver_cmd,
                            int timeout_s = 1800);

}  // namespace krho
