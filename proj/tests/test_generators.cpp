#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "krho/balls.hpp"
#include "krho/generators.hpp"
#include "krho/shortest_paths.hpp"

using namespace krho;

namespace {

std::multiset<std::pair<NodeId, NodeId>> edge_multiset(const WeightedGraph& g) {
  std::multiset<std::pair<NodeId, NodeId>> s;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (const Edge& e : g.neighbors(u))
      if (u < e.to) s.insert({u, e.to});
  return s;
}

std::vector<int> sorted_degrees(const WeightedGraph& g) {
  std::vector<int> d;
  for (NodeId u = 0; u < g.node_count(); ++u) d.push_back(g.degree(u));
  std::sort(d.begin(), d.end());
  return d;
}

double mean_degree(const WeightedGraph& g) {
  return 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
}

std::map<NodeRole, int> role_counts(const std::vector<NodeRole>& roles) {
  std::map<NodeRole, int> c;
  for (NodeRole r : roles) ++c[r];
  return c;
}

}  // namespace

TEST_CASE("gilbert: trivial probabilities") {
  CHECK(gen_gilbert(6, 1.0, 3).edge_count() == 15);  // K_6
  CHECK(gen_gilbert(6, 0.0, 3).edge_count() == 0);
  CHECK(gen_gilbert(0, 0.5, 3).node_count() == 0);
}

TEST_CASE("gilbert: determinism, edge statistics, weight modes") {
  WeightedGraph a = gen_gilbert(60, 0.1, 7);
  WeightedGraph b = gen_gilbert(60, 0.1, 7);
  CHECK(edge_multiset(a) == edge_multiset(b));
  CHECK(edge_multiset(a) != edge_multiset(gen_gilbert(60, 0.1, 8)));

  // n=1000, p=3/1000: mean 1498.5, sigma ~38.7; 4 sigma ~155.
  WeightedGraph big = gen_gilbert(1000, 0.003, 42);
  CHECK(std::abs(static_cast<double>(big.edge_count()) - 1498.5) < 155.0);

  WeightedGraph w = gen_gilbert(40, 0.3, 11, WeightMode::Uniform01);
  CHECK(edge_multiset(w) == edge_multiset(gen_gilbert(40, 0.3, 11)));
  for (NodeId u = 0; u < w.node_count(); ++u)
    for (const Edge& e : w.neighbors(u)) {
      CHECK(e.w > 0.0);
      CHECK(e.w <= 1.0);
      CHECK(e.w * 67108864.0 == std::floor(e.w * 67108864.0));  // dyadic grid
    }

  CHECK_THROWS_AS(gen_gilbert(5, 1.5, 0), Error);
}

TEST_CASE("mc powerlaw: degrees preserved, graph simple, chain mixes") {
  // swaps = 0 reproduces the deterministic realization.
  WeightedGraph base = gen_mc_powerlaw(70, 3.0, 0, 5);
  WeightedGraph mixed = gen_mc_powerlaw(70, 3.0, 100, 5);
  CHECK(sorted_degrees(base) == sorted_degrees(mixed));
  CHECK(base.edge_count() == mixed.edge_count());
  CHECK(sorted_degrees(mixed).front() >= 1);

  // Simplicity is structural (add_edge rejects loops/duplicates); spot-check
  // determinism and seed sensitivity.
  CHECK(edge_multiset(mixed) == edge_multiset(gen_mc_powerlaw(70, 3.0, 100, 5)));

  int differing = 0;
  const int kSeeds = 40;
  for (int s = 0; s < kSeeds; ++s) {
    WeightedGraph g0 = gen_mc_powerlaw(70, 3.0, 0, 1000 + s);
    WeightedGraph g1 = gen_mc_powerlaw(70, 3.0, 100, 1000 + s);
    CHECK(sorted_degrees(g0) == sorted_degrees(g1));
    if (edge_multiset(g0) != edge_multiset(g1)) ++differing;
  }
  CHECK(differing >= 38);  // >= 95% of seeds moved at least one edge
}

TEST_CASE("hyperbolic: tiny instance is simple" * doctest::timeout(300)) {
  WeightedGraph g = gen_hyperbolic(2, 0.5, 3.0, 9);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() <= 1);
  CHECK_THROWS_AS(gen_hyperbolic(10, 20.0, 3.0, 1), Error);
}

TEST_CASE("hyperbolic: determinism and mean degree at scale" *
          doctest::timeout(600)) {
  WeightedGraph a = gen_hyperbolic(300, 3.0, 3.0, 2);
  CHECK(edge_multiset(a) == edge_multiset(gen_hyperbolic(300, 3.0, 3.0, 2)));
  CHECK(edge_multiset(a) != edge_multiset(gen_hyperbolic(300, 3.0, 3.0, 3)));

  WeightedGraph big = gen_hyperbolic(10000, 3.0, 3.0, 17);
  CHECK(mean_degree(big) > 2.4);
  CHECK(mean_degree(big) < 3.6);
}

TEST_CASE("hyperbolic: powerlaw degree tail" * doctest::timeout(600)) {
  // Pool degrees over seeds; the CCDF above degree 10 should fall with
  // log-log slope close to -(gamma_pl - 1) = -2.
  std::map<int, long> hist;
  long total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WeightedGraph g = gen_hyperbolic(10000, 3.0, 3.0, seed);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      ++hist[g.degree(u)];
      ++total;
    }
  }
  std::vector<std::pair<double, double>> pts;  // (log deg, log ccdf)
  long above = 0;
  for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
    above += it->second;
    if (it->first >= 10)
      pts.push_back({std::log(static_cast<double>(it->first)),
                     std::log(static_cast<double>(above) / total)});
  }
  REQUIRE(pts.size() >= 5);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double nn = static_cast<double>(pts.size());
  double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  CAPTURE(slope);
  CHECK(slope > -2.6);
  CHECK(slope < -1.6);
}

TEST_CASE("vc reduction: single edge layout and violators") {
  WeightedGraph vc(2);
  vc.add_edge(0, 1);
  TransformArtifacts r = vc_to_msp_transform(vc, 3, 20);
  CHECK(r.graph.node_count() == 47);  // 2 + 1 + 2*(20+2)
  CHECK(r.rho == 20);
  CHECK(r.k == 3);

  std::map<NodeRole, int> c = role_counts(r.roles);
  CHECK(c[NodeRole::Original] == 2);
  CHECK(c[NodeRole::EdgeNode] == 1);
  CHECK(c[NodeRole::Subdivision] == 0);
  CHECK(c[NodeRole::PitchforkBase] == 2);
  CHECK(c[NodeRole::PitchforkSatellite] == 2);
  CHECK(c[NodeRole::PitchforkLeaf] == 40);

  std::vector<NodeId> w = r.edge_nodes();
  REQUIRE(w.size() == 1);
  CHECK(r.roles[static_cast<std::size_t>(w[0])] == NodeRole::EdgeNode);
  CHECK(r.edge_node.at({0, 1}) == w[0]);

  ViolationReport v = verify_krho(r.graph, r.k, r.rho);
  CHECK(v.violators == w);

  // Either endpoint is a cover; its canonical shortcut repairs the instance.
  for (NodeId cover : {0, 1}) {
    WeightedGraph fixed =
        apply_shortcuts(r.graph, r.canonical_shortcuts({cover}));
    CAPTURE(cover);
    CHECK(verify_krho(fixed, r.k, r.rho).ok());
  }
}

TEST_CASE("vc reduction: k=4 gadgets subdivide and still isolate edge nodes") {
  WeightedGraph vc(2);
  vc.add_edge(0, 1);
  TransformArtifacts r = vc_to_msp_transform(vc, 4, 20);
  CHECK(r.graph.node_count() == 2 + 3 + 2 * 22);
  CHECK(role_counts(r.roles)[NodeRole::Subdivision] == 2);
  // Endpoints sit 2(k-3)+2 = 4 hops apart through the template.
  ClosestPathTree t = closest_path_tree(r.graph, 0);
  CHECK(t.hops(1) == 4);
  CHECK(verify_krho(r.graph, 4, 20).violators == r.edge_nodes());
  WeightedGraph fixed = apply_shortcuts(r.graph, r.canonical_shortcuts({1}));
  CHECK(verify_krho(fixed, 4, 20).ok());
}

TEST_CASE("vc reduction: covers repair, non-covers do not (triangle+tail)") {
  WeightedGraph vc(4);
  vc.add_edge(0, 1);
  vc.add_edge(1, 2);
  vc.add_edge(0, 2);
  vc.add_edge(2, 3);
  TransformArtifacts r = vc_to_msp_transform(vc, 3);
  CHECK(r.gamma == 7 * 4 + 6);
  CHECK(verify_krho(r.graph, r.k, r.rho).violators == r.edge_nodes());

  auto is_cover = [&](unsigned mask) {
    for (NodeId u = 0; u < 4; ++u)
      for (const Edge& e : vc.neighbors(u))
        if (u < e.to && !(mask & (1u << u)) && !(mask & (1u << e.to)))
          return false;
    return true;
  };
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<NodeId> set;
    for (NodeId u = 0; u < 4; ++u)
      if (mask & (1u << u)) set.push_back(u);
    bool repaired =
        verify_krho(apply_shortcuts(r.graph, r.canonical_shortcuts(set)), r.k,
                    r.rho)
            .ok();
    CAPTURE(mask);
    CHECK(repaired == is_cover(mask));
  }
}

TEST_CASE("vc reduction: blowup nodes sit far away and change nothing") {
  WeightedGraph vc(2);
  vc.add_edge(0, 1);
  TransformArtifacts plain = vc_to_msp_transform(vc, 3, 20);
  TransformArtifacts blown = vc_to_msp_transform(vc, 3, 20, 5);
  CHECK(blown.graph.node_count() == plain.graph.node_count() + 5);
  CHECK(verify_krho(blown.graph, blown.k, blown.rho).violators ==
        blown.edge_nodes());

  std::vector<NodeId> blowup;
  for (NodeId v = 0; v < blown.graph.node_count(); ++v)
    if (blown.roles[static_cast<std::size_t>(v)] == NodeRole::BlowupLeaf)
      blowup.push_back(v);
  REQUIRE(blowup.size() == 5);
  for (NodeId w : blown.edge_nodes()) {
    ClosestPathTree t = closest_path_tree(blown.graph, w);
    for (NodeId z : blowup) CHECK(t.hops(z) >= blown.k + 2);
  }
}

TEST_CASE("vc reduction parameter validation") {
  WeightedGraph vc(2);
  vc.add_edge(0, 1);
  CHECK_THROWS_AS(vc_to_msp_transform(vc, 2), Error);
  CHECK_THROWS_AS(vc_to_msp_transform(vc, 3, 10, -1), Error);
}

TEST_CASE("lowerbound star: structure and rho selection") {
  LowerBoundStar s = lowerbound_star(5, 3, 41);
  CHECK(s.graph.node_count() == 5 + 41 + 2);
  CHECK(s.satellites.size() == 4);
  // A pitchfork leaf keeps its ball while base + gamma siblings + center
  // stay selected: rho = gamma + 2. One step higher pulls the 4-hop tips in.
  CHECK(s.rho == 41 + 2);
  CHECK(verify_krho(s.graph, 3, s.rho).violators == s.satellites);
  CHECK(verify_krho(s.graph, 3, s.rho + 1).violators != s.satellites);

  // The pitchfork shortcut from the center repairs every ray tip at once.
  ShortcutSet fix;
  fix.insert(s.center, s.base, 2.0);
  CHECK(verify_krho(apply_shortcuts(s.graph, fix), 3, s.rho).ok());
}

TEST_CASE("lowerbound star: subdivided rays at k=4") {
  LowerBoundStar s = lowerbound_star(3, 4, 27);
  CHECK(s.graph.node_count() == 3 + 2 + 27 + 2);
  // Leaves additionally keep the (n-1)(k-3) subdivision nodes in reach:
  // rho = gamma + 2 + (n-1)(k-3).
  CHECK(s.rho == 27 + 2 + 2);
  CHECK(verify_krho(s.graph, 4, s.rho).violators == s.satellites);
  ShortcutSet fix;
  fix.insert(s.center, s.base, 2.0);
  CHECK(verify_krho(apply_shortcuts(s.graph, fix), 4, s.rho).ok());
}
