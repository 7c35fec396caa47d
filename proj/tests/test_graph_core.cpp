#include <sstream>

#include "doctest.h"
#include "krho/balls.hpp"
#include "krho/graph.hpp"
#include "krho/graph_io.hpp"
#include "krho/shortest_paths.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace krho;
using namespace krho::testing;

TEST_CASE("graph basics and edge rules") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 0.5);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));  // undirected
  CHECK(g.edge_weight(2, 1) == 0.5);
  CHECK(g.edge_weight(0, 3) == kInf);
  CHECK_THROWS_AS(g.add_edge(0, 1, 2.0), Error);  // duplicate
  CHECK_THROWS_AS(g.add_edge(2, 2), Error);       // self loop
  CHECK_THROWS_AS(g.add_edge(0, 9), Error);       // out of range
  CHECK_THROWS_AS(g.add_edge(0, 3, -1.0), Error); // negative weight

  CHECK(g.add_edge_min(0, 3, 2.0));       // new
  CHECK_FALSE(g.add_edge_min(0, 3, 1.0)); // collapsed, min kept
  CHECK(g.edge_weight(3, 0) == 1.0);
  CHECK_FALSE(g.add_edge_min(0, 3, 5.0)); // larger weight ignored
  CHECK(g.edge_weight(0, 3) == 1.0);

  WeightedGraph d(3, true);
  d.add_edge(0, 1);
  CHECK(d.has_edge(0, 1));
  CHECK_FALSE(d.has_edge(1, 0));
}

TEST_CASE("shortcut set canonical order and dedup") {
  ShortcutSet s;
  CHECK(s.insert(4, 1, 2.0));
  CHECK(s.insert(0, 3, 1.0));
  CHECK_FALSE(s.insert(1, 4, 2.0));  // same undirected pair
  CHECK(s.size() == 2);
  CHECK(s.items()[0].u == 0);
  CHECK(s.items()[1].u == 1);
  CHECK(s.items()[1].v == 4);
  CHECK(s.contains(4, 1));
  CHECK_THROWS_AS(s.insert(1, 4, 7.0), Error);  // conflicting weight
  CHECK_THROWS_AS(s.insert(2, 2, 0.0), Error);  // degenerate

  ShortcutSet t;
  t.insert(1, 4, 2.0);
  t.insert(2, 3, 1.5);
  s.merge(t);
  CHECK(s.size() == 3);

  ShortcutSet dir(true);
  CHECK(dir.insert(4, 1, 2.0));
  CHECK(dir.insert(1, 4, 2.0));  // distinct arcs when directed
  CHECK(dir.size() == 2);
}

TEST_CASE("closest paths minimize weight then hops") {
  // Triangle where the heavier direct edge still wins on hops.
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 2.0);
  ClosestPathTree t = closest_path_tree(g, 0);
  CHECK(t.dist(2) == 2.0);
  CHECK(t.hops(2) == 1);
  CHECK(t.parent(2) == 0);
}

TEST_CASE("closest path ties break to the smallest parent id") {
  // Diamond: two equal (dist, hops) routes to node 3.
  WeightedGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  ClosestPathTree t = closest_path_tree(g, 0);
  CHECK(t.dist(3) == 2.0);
  CHECK(t.hops(3) == 2);
  CHECK(t.parent(3) == 1);
  CHECK(t.path_to(3) == std::vector<NodeId>{0, 1, 3});
}

TEST_CASE("closest paths match exhaustive enumeration on random graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    for (bool unit : {true, false}) {
      WeightedGraph g = random_graph(7, 0.45, seed * 17 + unit, unit);
      for (NodeId s = 0; s < g.node_count(); ++s) {
        ClosestPathTree t = closest_path_tree(g, s);
        for (NodeId v = 0; v < g.node_count(); ++v) {
          if (v == s) continue;
          PathOpt ref = enumerate_closest(g, s, v);
          CAPTURE(seed);
          CAPTURE(s);
          CAPTURE(v);
          CHECK(t.dist(v) == ref.dist);
          CHECK(t.hops(v) == ref.hops);
        }
      }
    }
  }
}

TEST_CASE("tree paths replay the recorded (dist, hops) optimum") {
  WeightedGraph g = random_graph(8, 0.4, 99, false);
  ClosestPathTree t = closest_path_tree(g, 0);
  for (NodeId v = 1; v < g.node_count(); ++v) {
    if (!t.reached(v)) continue;
    std::vector<NodeId> p = t.path_to(v);
    REQUIRE(p.front() == 0);
    REQUIRE(p.back() == v);
    double w = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      w += g.edge_weight(p[i], p[i + 1]);
    CHECK(w == t.dist(v));
    CHECK(static_cast<int>(p.size()) - 1 == t.hops(v));
  }
}

TEST_CASE("reach order is sorted by (dist, id) and limit keeps ties") {
  // 0 - {1,2} at distance 1, then 3 behind 2.
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(0, 2, 1.0);
  g.add_edge(2, 3, 1.0);

  ClosestPathTree full = closest_path_tree(g, 0);
  CHECK(full.reach_order() == std::vector<NodeId>{0, 1, 2, 3});

  // limit=1 must settle both distance-1 nodes (tie at the last distance).
  ClosestPathTree lim = closest_path_tree(g, 0, 1);
  CHECK(lim.reach_order() == std::vector<NodeId>{0, 1, 2});
  CHECK_FALSE(lim.reached(3));

  ClosestPathTree lim2 = closest_path_tree(g, 0, 3);
  CHECK(lim2.reach_order().size() == 4);

  CHECK_THROWS_AS(closest_path_tree(g, 0, 0), Error);
  CHECK_THROWS_AS(closest_path_tree(g, 7), Error);
}

TEST_CASE("ball profile on the 5-path") {
  WeightedGraph g = path_graph(5);
  BallProfile p = ball_profile(g, 0, 2, 3);
  CHECK(p.rho_dist == 3.0);
  CHECK(p.k_radius == 3.0);
  CHECK_FALSE(p.has_ball);
  CHECK(p.missing == std::vector<NodeId>{3});

  // Middle node reaches its three nearest within two hops.
  BallProfile mid = ball_profile(g, 2, 2, 3);
  CHECK(mid.has_ball);
  CHECK(mid.missing.empty());
}

TEST_CASE("ball profile on complete and isolated nodes") {
  WeightedGraph k4 = complete_graph(4);
  for (NodeId v = 0; v < 4; ++v) {
    BallProfile p = ball_profile(k4, v, 1, 3);
    CHECK(p.has_ball);
    CHECK(p.rho_dist == 1.0);
    CHECK(p.k_radius == kInf);
  }

  WeightedGraph g(3);
  g.add_edge(0, 1);
  BallProfile iso = ball_profile(g, 2, 2, 2);
  CHECK(iso.rho_dist == kInf);
  CHECK(iso.has_ball);
  CHECK(iso.missing.empty());

  // Under-populated component: everything reachable within k -> ball.
  BallProfile half = ball_profile(g, 0, 2, 2);
  CHECK(half.rho_dist == kInf);
  CHECK(half.has_ball);
}

TEST_CASE("distance ties at the rho-th neighbour prefer low-hop members") {
  // From 0: node 3 at (0.5, 1 hop), 1 at (1, 1), 4 at (1, 2),
  // then a tie at distance 2: node 2 via 2 hops, node 5 via 3 hops.
  WeightedGraph g(6);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 3, 0.5);
  g.add_edge(3, 4, 0.5);
  g.add_edge(4, 5, 1.0);

  BallProfile four = ball_profile(g, 0, 2, 4);
  CHECK(four.rho_dist == 2.0);
  CHECK(four.k_radius == 2.0);  // node 5: distance 2, three hops
  CHECK(four.has_ball);         // the 2-hop member of the tie fills slot 4
  CHECK(four.missing.empty());

  BallProfile five = ball_profile(g, 0, 2, 5);
  CHECK(five.rho_dist == 2.0);
  CHECK_FALSE(five.has_ball);  // now both tied nodes are needed
  CHECK(five.missing == std::vector<NodeId>{5});
}

TEST_CASE("ball profile agrees with the definition oracle on random graphs") {
  for (std::uint64_t seed = 3; seed <= 10; ++seed) {
    WeightedGraph g = random_graph(7, 0.35, seed, seed % 2 == 0);
    for (int k = 1; k <= 3; ++k) {
      for (int rho = 1; rho <= 6; ++rho) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
          CAPTURE(seed);
          CAPTURE(k);
          CAPTURE(rho);
          CAPTURE(v);
          CHECK(ball_profile(g, v, k, rho).has_ball ==
                has_ball_by_enumeration(g, v, k, rho));
        }
      }
    }
  }
}

TEST_CASE("ball profile parameter validation") {
  WeightedGraph g = path_graph(4);
  CHECK_THROWS_AS(ball_profile(g, 0, 2, 4), Error);  // rho > n-1
  CHECK_THROWS_AS(ball_profile(g, 0, 2, 0), Error);
  CHECK_THROWS_AS(ball_profile(g, 0, 0, 2), Error);
  CHECK_THROWS_AS(ball_profile(g, 9, 2, 2), Error);
}

TEST_CASE("verify_krho flags exactly the deficient nodes") {
  WeightedGraph g = path_graph(5);
  ViolationReport r = verify_krho(g, 2, 3);
  CHECK(r.violators == std::vector<NodeId>{0, 4});
  CHECK_FALSE(r.ok());

  CHECK(verify_krho(complete_graph(4), 1, 3).ok());

  // Worker count must not change the outcome.
  ViolationReport r4 = verify_krho(g, 2, 3, 4);
  CHECK(r4.violators == r.violators);
}

TEST_CASE("apply_shortcuts validates and preserves distances") {
  WeightedGraph g = path_graph(5);

  ShortcutSet ok;
  ok.insert(0, 3, 3.0);
  WeightedGraph g2 = apply_shortcuts(g, ok);
  CHECK(g2.edge_count() == 5);
  CHECK(closest_path_tree(g2, 0).hops(4) == 2);
  CHECK(distances_preserved(g, g2));

  ShortcutSet bad_weight;
  bad_weight.insert(0, 2, 5.0);
  CHECK_THROWS_AS(apply_shortcuts(g, bad_weight), Error);

  ShortcutSet dup;
  dup.insert(0, 1, 1.0);
  CHECK_THROWS_AS(apply_shortcuts(g, dup), Error);

  WeightedGraph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  ShortcutSet cross;
  cross.insert(0, 2, 1.0);
  CHECK_THROWS_AS(apply_shortcuts(split, cross), Error);
}

TEST_CASE("shortcut insertion lowers hop distance monotonically") {
  WeightedGraph g = path_graph(5);
  ShortcutSet s;
  s.insert(0, 2, 2.0);
  WeightedGraph g2 = apply_shortcuts(g, s);
  CHECK(closest_path_tree(g, 0).hops(4) == 4);
  CHECK(closest_path_tree(g2, 0).hops(4) == 3);
  CHECK(distances_preserved(g, g2));
}

TEST_CASE("apply_shortcuts on random graphs keeps all pairwise distances") {
  for (std::uint64_t seed = 21; seed <= 26; ++seed) {
    WeightedGraph g = random_graph(8, 0.4, seed, false);
    ClosestPathTree t = closest_path_tree(g, 0);
    ShortcutSet s;
    for (NodeId v = 1; v < g.node_count() && s.size() < 2; ++v)
      if (t.reached(v) && t.hops(v) > 1 && !g.has_edge(0, v))
        s.insert(0, v, t.dist(v));
    if (s.empty()) continue;
    WeightedGraph g2 = apply_shortcuts(g, s);
    CAPTURE(seed);
    CHECK(distances_preserved(g, g2));
  }
}

TEST_CASE("graph text format round-trips exactly") {
  WeightedGraph g = random_graph(9, 0.4, 5, false);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in(out.str());
  LoadedGraph back = read_graph(in);
  CHECK(back.graph.node_count() == g.node_count());
  CHECK(back.graph.edge_count() == g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (const Edge& e : g.neighbors(u))
      CHECK(back.graph.edge_weight(u, e.to) == e.w);

  std::ostringstream out2;
  write_graph(out2, back.graph);
  CHECK(out.str() == out2.str());  // byte-stable rewrite
}

TEST_CASE("unit graphs serialize without weights") {
  WeightedGraph g = path_graph(3);
  std::ostringstream out;
  write_graph(out, g);
  CHECK(out.str() == "3 2 undirected unit\n0 1\n1 2\n");
  std::istringstream in(out.str());
  CHECK(read_graph(in).graph.edge_weight(1, 2) == 1.0);
}

TEST_CASE("loader collapses duplicates, drops loops, reports counts") {
  std::istringstream in(
      "# comment\n"
      "4 5 undirected weighted\n"
      "0 1 2.0\n"
      "1 0 1.0\n"
      "2 2 3.0\n"
      "1 2 1.5\n"
      "2 3 0.5\n");
  LoadedGraph lg = read_graph(in);
  CHECK(lg.graph.edge_count() == 3);
  CHECK(lg.graph.edge_weight(0, 1) == 1.0);  // min weight kept
  CHECK(lg.stats.duplicate_edges == 1);
  CHECK(lg.stats.self_loops == 1);
}

TEST_CASE("loader reports malformed lines with their number") {
  std::istringstream missing("3 2\n0 1\n");
  CHECK_THROWS_WITH_AS(read_graph(missing),
                       doctest::Contains("header promised"), Error);

  std::istringstream bad("3 1\n0 x\n");
  try {
    read_graph(bad);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream range("2 1\n0 5\n");
  CHECK_THROWS_AS(read_graph(range), Error);
}

TEST_CASE("matrix market coordinate files load 1-based entries") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% generated\n"
      "4 4 3\n"
      "1 2 1.5\n"
      "2 3 0.25\n"
      "4 1 1.0\n");
  LoadedGraph lg = read_graph(in, "mtx");
  CHECK(lg.graph.node_count() == 4);
  CHECK(lg.graph.edge_count() == 3);
  CHECK(lg.graph.edge_weight(0, 1) == 1.5);
  CHECK(lg.graph.edge_weight(3, 0) == 1.0);

  std::istringstream pat(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "3 3 2\n"
      "1 2\n"
      "2 3\n");
  CHECK(read_graph(pat, "mtx").graph.edge_weight(0, 1) == 1.0);

  CHECK_THROWS_AS(read_graph(in, "nope"), Error);
}

TEST_CASE("weight formatting round-trips and prefers short forms") {
  CHECK(format_weight(1.0) == "1");
  CHECK(format_weight(0.5) == "0.5");
  double w = 3.0 / 67108864.0;  // dyadic grid point
  double back = 0.0;
  std::sscanf(format_weight(w).c_str(), "%lf", &back);
  CHECK(back == w);
  std::sscanf(format_weight(0.1).c_str(), "%lf", &back);
  CHECK(back == 0.1);
}
