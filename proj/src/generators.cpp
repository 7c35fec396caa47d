#include "krho/generators.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <string>
#include <tuple>
#include <unordered_set>

#include "krho/balls.hpp"
#include "krho/util.hpp"

namespace krho {

namespace {

// Uniform in [0, 1) with 53 random bits.
double rand01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on the dyadic grid {1/2^26, 2/2^26, ..., 1}: path sums of such
// weights are exact doubles, so distance comparisons never need tolerances.
double dyadic01(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 38) + 1) * 0x1.0p-26;
}

std::size_t rand_below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

}  // namespace

WeightedGraph gen_gilbert(int n, double p, std::uint64_t seed,
                          WeightMode weights) {
  require(n >= 0, "node count must be >= 0");
  require(p >= 0.0 && p <= 1.0, "edge probability must lie in [0, 1]");
  WeightedGraph g(n);
  std::mt19937_64 rng(mix64(seed));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      // Draw both numbers for every pair so the edge set depends only on
      // (n, p, seed), not on the weight mode.
      double coin = rand01(rng);
      double w = dyadic01(rng);
      if (coin < p)
        g.add_edge(u, v, weights == WeightMode::Unit ? 1.0 : w);
    }
  }
  return g;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct DiskPoint {
  double cosh_r;
  double sinh_r;
  double angle;
};

DiskPoint draw_point(std::mt19937_64& rng, double alpha, double radius) {
  // Inverse CDF of the radial density alpha*sinh(alpha r)/(cosh(alpha R)-1).
  double u = rand01(rng);
  double r = std::acosh(1.0 + u * (std::cosh(alpha * radius) - 1.0)) / alpha;
  double theta = rand01(rng) * kTwoPi;
  return {std::cosh(r), std::sinh(r), theta};
}

// Hyperbolic distance <= R, compared through cosh (monotone on [0, inf)).
bool disk_connected(const DiskPoint& a, const DiskPoint& b,
                    double cosh_radius) {
  double c = a.cosh_r * b.cosh_r -
             a.sinh_r * b.sinh_r * std::cos(a.angle - b.angle);
  return c <= cosh_radius;
}

// Monte-Carlo mean degree for a disk of the given radius: fixed substreams
// make the estimate (and with it the calibrated radius) deterministic.
double estimate_mean_degree(int n, double alpha, double radius) {
  const int kBatches = 20;
  const int kPairs = 50000;
  double cosh_radius = std::cosh(radius);
  long long hits = 0;
  for (int b = 0; b < kBatches; ++b) {
    std::mt19937_64 rng(
        mix64(0x9d15ca11b8a7e5ffULL + static_cast<std::uint64_t>(b)));
    for (int i = 0; i < kPairs; ++i) {
      DiskPoint x = draw_point(rng, alpha, radius);
      DiskPoint y = draw_point(rng, alpha, radius);
      if (disk_connected(x, y, cosh_radius)) ++hits;
    }
  }
  return static_cast<double>(n - 1) * static_cast<double>(hits) /
         (static_cast<double>(kBatches) * kPairs);
}

// Mean degree falls monotonically in R (larger disks push points outward
// faster than the connection threshold grows), so bisection applies.
double calibrate_disk_radius(int n, double avg_deg, double gamma_pl) {
  static std::mutex cache_mutex;
  static std::map<std::tuple<int, long long, long long>, double> cache;
  std::tuple<int, long long, long long> key{
      n, std::llround(avg_deg * 1e9), std::llround(gamma_pl * 1e9)};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  double alpha = (gamma_pl - 1.0) / 2.0;
  double lo = 0.25;
  double hi = 2.0 * std::log(static_cast<double>(n)) + 12.0;
  if (estimate_mean_degree(n, alpha, lo) < avg_deg ||
      estimate_mean_degree(n, alpha, hi) > avg_deg)
    fail("hyperbolic calibration cannot reach average degree " +
         std::to_string(avg_deg) + " for n=" + std::to_string(n));
  for (int it = 0; it < 30; ++it) {
    double mid = 0.5 * (lo + hi);
    if (estimate_mean_degree(n, alpha, mid) > avg_deg)
      lo = mid;
    else
      hi = mid;
  }
  double radius = 0.5 * (lo + hi);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, radius);
  }
  return radius;
}

}  // namespace

WeightedGraph gen_hyperbolic(int n, double avg_deg, double gamma_pl,
                             std::uint64_t seed) {
  require(n >= 2, "hyperbolic model needs n >= 2");
  require(gamma_pl > 2.0, "powerlaw exponent must exceed 2");
  require(avg_deg > 0.0 && avg_deg < static_cast<double>(n),
          "average degree must lie in (0, n)");
  double alpha = (gamma_pl - 1.0) / 2.0;
  double radius = calibrate_disk_radius(n, avg_deg, gamma_pl);
  double cosh_radius = std::cosh(radius);

  std::mt19937_64 rng(mix64(seed));
  std::vector<DiskPoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back(draw_point(rng, alpha, radius));

  WeightedGraph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (disk_connected(pts[static_cast<std::size_t>(u)],
                         pts[static_cast<std::size_t>(v)], cosh_radius))
        g.add_edge(u, v, 1.0);
  return g;
}

namespace {

std::vector<int> sample_powerlaw_degrees(int n, double gamma_pl,
                                         std::mt19937_64& rng) {
  std::vector<double> cum(static_cast<std::size_t>(n - 1));
  double total = 0.0;
  for (int x = 1; x < n; ++x) {
    total += std::pow(static_cast<double>(x), -gamma_pl);
    cum[static_cast<std::size_t>(x - 1)] = total;
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double u = rand01(rng) * total;
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    deg[static_cast<std::size_t>(i)] = static_cast<int>(it - cum.begin()) + 1;
  }
  return deg;
}

bool erdos_gallai(std::vector<int> d) {
  long long sum = 0;
  for (int x : d) sum += x;
  if (sum % 2 != 0) return false;
  std::sort(d.begin(), d.end(), std::greater<int>());
  const std::size_t n = d.size();
  std::vector<long long> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];
  for (std::size_t r = 1; r <= n; ++r) {
    long long lhs = prefix[r];
    // Among positions r..n-1 (sorted desc), entries above r contribute r
    // each, the rest their own degree.
    auto split = std::partition_point(
        d.begin() + static_cast<std::ptrdiff_t>(r), d.end(),
        [&](int x) { return x > static_cast<int>(r); });
    std::size_t big = static_cast<std::size_t>(split - d.begin()) - r;
    long long rhs =
        static_cast<long long>(r) * (static_cast<long long>(r) - 1) +
        static_cast<long long>(big) * static_cast<long long>(r) +
        (prefix[n] - prefix[r + big]);
    if (lhs > rhs) return false;
  }
  return true;
}

WeightedGraph havel_hakimi(const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  WeightedGraph g(n);
  std::vector<std::pair<int, NodeId>> rem;  // (residual degree, id)
  rem.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v)
    rem.push_back({degrees[static_cast<std::size_t>(v)], v});
  for (;;) {
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    int d = rem[0].first;
    if (d == 0) break;
    require(static_cast<std::size_t>(d) < rem.size(),
            "degree sequence not realizable");
    NodeId u = rem[0].second;
    rem[0].first = 0;
    for (int i = 1; i <= d; ++i) {
      require(rem[static_cast<std::size_t>(i)].first > 0,
              "degree sequence not realizable");
      g.add_edge(u, rem[static_cast<std::size_t>(i)].second, 1.0);
      --rem[static_cast<std::size_t>(i)].first;
    }
  }
  return g;
}

}  // namespace

WeightedGraph gen_mc_powerlaw(int n, double gamma_pl, int swaps_per_edge,
                              std::uint64_t seed) {
  require(n >= 2, "powerlaw model needs n >= 2");
  require(gamma_pl > 0.0, "powerlaw exponent must be positive");
  require(swaps_per_edge >= 0, "swap count must be >= 0");

  std::mt19937_64 rng(mix64(seed));
  std::vector<int> deg;
  bool graphical = false;
  for (int attempt = 0; attempt < 1000 && !graphical; ++attempt) {
    deg = sample_powerlaw_degrees(n, gamma_pl, rng);
    graphical = erdos_gallai(deg);
  }
  require(graphical, "no graphical degree sequence within 1000 attempts");

  WeightedGraph g = havel_hakimi(deg);

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::unordered_set<std::uint64_t> present;
  auto ekey = [n](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(b);
  };
  for (NodeId u = 0; u < n; ++u)
    for (const Edge& e : g.neighbors(u))
      if (u < e.to) {
        edges.push_back({u, e.to});
        present.insert(ekey(u, e.to));
      }

  if (!edges.empty()) {
    long long total = static_cast<long long>(swaps_per_edge) *
                      static_cast<long long>(edges.size());
    for (long long step = 0; step < total; ++step) {
      std::size_t i = rand_below(rng, edges.size());
      std::size_t j = rand_below(rng, edges.size());
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      if (rand01(rng) < 0.5) std::swap(c, d);
      // Propose (a,c) and (b,d); shared endpoints or existing edges abort.
      if (i == j || a == c || a == d || b == c || b == d) continue;
      if (present.count(ekey(a, c)) || present.count(ekey(b, d))) continue;
      present.erase(ekey(a, b));
      present.erase(ekey(c, d));
      present.insert(ekey(a, c));
      present.insert(ekey(b, d));
      edges[i] = {std::min(a, c), std::max(a, c)};
      edges[j] = {std::min(b, d), std::max(b, d)};
    }
  }

  WeightedGraph out(n);
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) out.add_edge(u, v, 1.0);
  return out;
}

std::vector<NodeId> TransformArtifacts::edge_nodes() const {
  std::vector<NodeId> out;
  out.reserve(edge_node.size());
  for (const auto& [e, w] : edge_node) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

ShortcutSet TransformArtifacts::canonical_shortcuts(
    const std::vector<NodeId>& cover) const {
  ShortcutSet s;
  for (NodeId v : cover) {
    require(v >= 0 && static_cast<std::size_t>(v) < base_of.size() &&
                base_of[static_cast<std::size_t>(v)] >= 0,
            "cover node " + std::to_string(v) + " has no pitchfork");
    s.insert(v, base_of[static_cast<std::size_t>(v)], 2.0);
  }
  return s;
}

TransformArtifacts vc_to_msp_transform(const WeightedGraph& g_vc, int k,
                                       int gamma, int blowup_y) {
  require(!g_vc.directed(), "vertex-cover input must be undirected");
  require(k >= 3, "reduction requires k >= 3");
  require(blowup_y >= 0, "blowup count must be >= 0");
  const int nv = g_vc.node_count();
  require(blowup_y == 0 || nv >= 1, "blowup needs at least one pitchfork");
  if (gamma < 0) gamma = 7 * nv + 6;
  require(gamma >= 1, "gamma must be >= 1");

  std::vector<std::pair<NodeId, NodeId>> vc_edges;
  for (NodeId u = 0; u < nv; ++u)
    for (const Edge& e : g_vc.neighbors(u))
      if (u < e.to) vc_edges.push_back({u, e.to});
  std::sort(vc_edges.begin(), vc_edges.end());

  const int seg = k - 3;
  const int n_total = nv + static_cast<int>(vc_edges.size()) * (2 * seg + 1) +
                      nv * (gamma + 2) + blowup_y;

  TransformArtifacts t;
  t.graph = WeightedGraph(n_total);
  t.roles.assign(static_cast<std::size_t>(n_total), NodeRole::Original);
  t.gamma = gamma;
  t.k = k;
  t.rho = gamma;
  t.base_of.assign(static_cast<std::size_t>(n_total), -1);

  NodeId next = nv;
  auto take = [&](NodeRole role) {
    t.roles[static_cast<std::size_t>(next)] = role;
    return next++;
  };

  // One path gadget per input edge: u - subs - w_{u,v} - subs - v.
  for (auto [u, v] : vc_edges) {
    NodeId prev = u;
    for (int i = 0; i < seg; ++i) {
      NodeId s = take(NodeRole::Subdivision);
      t.graph.add_edge(prev, s, 1.0);
      prev = s;
    }
    NodeId w = take(NodeRole::EdgeNode);
    t.graph.add_edge(prev, w, 1.0);
    t.edge_node[{u, v}] = w;
    prev = w;
    for (int i = 0; i < seg; ++i) {
      NodeId s = take(NodeRole::Subdivision);
      t.graph.add_edge(prev, s, 1.0);
      prev = s;
    }
    t.graph.add_edge(prev, v, 1.0);
  }

  // One pitchfork per original node; the satellite ties it to its host.
  NodeId blow_target = -1;
  for (NodeId v = 0; v < nv; ++v) {
    NodeId b = take(NodeRole::PitchforkBase);
    t.base_of[static_cast<std::size_t>(v)] = b;
    NodeId sat = take(NodeRole::PitchforkSatellite);
    t.graph.add_edge(b, sat, 1.0);
    t.graph.add_edge(v, sat, 1.0);
    for (int i = 0; i < gamma; ++i) {
      NodeId leaf = take(NodeRole::PitchforkLeaf);
      t.graph.add_edge(b, leaf, 1.0);
      if (v == 0) blow_target = leaf;
    }
  }
  for (int i = 0; i < blowup_y; ++i) {
    NodeId z = take(NodeRole::BlowupLeaf);
    t.graph.add_edge(blow_target, z, 1.0);
  }
  require(next == n_total, "transform node budget mismatch");
  return t;
}

LowerBoundStar lowerbound_star(int n, int k, int gamma) {
  require(n >= 2, "star needs n >= 2");
  require(k >= 3, "star construction requires k >= 3");
  require(gamma >= 1, "gamma must be >= 1");

  const int n_total = n + (n - 1) * (k - 3) + gamma + 2;
  LowerBoundStar s;
  s.graph = WeightedGraph(n_total);
  s.roles.assign(static_cast<std::size_t>(n_total), NodeRole::Original);
  s.k = k;
  s.center = 0;

  NodeId next = 1;
  auto take = [&](NodeRole role) {
    s.roles[static_cast<std::size_t>(next)] = role;
    return next++;
  };
  for (int ray = 0; ray < n - 1; ++ray) {
    NodeId prev = s.center;
    for (int i = 0; i < k - 3; ++i) {
      NodeId sub = take(NodeRole::Subdivision);
      s.graph.add_edge(prev, sub, 1.0);
      prev = sub;
    }
    NodeId tip = take(NodeRole::Original);
    s.graph.add_edge(prev, tip, 1.0);
    s.satellites.push_back(tip);
  }
  s.base = take(NodeRole::PitchforkBase);
  NodeId sat = take(NodeRole::PitchforkSatellite);
  s.graph.add_edge(s.base, sat, 1.0);
  s.graph.add_edge(s.center, sat, 1.0);
  for (int i = 0; i < gamma; ++i) {
    NodeId leaf = take(NodeRole::PitchforkLeaf);
    s.graph.add_edge(s.base, leaf, 1.0);
  }
  require(next == n_total, "star node budget mismatch");

  // Largest rho for which exactly the ray tips lack balls. Existence is part
  // of the construction's contract; not finding one signals a bug.
  for (int rho = n_total - 1; rho >= 1; --rho) {
    if (verify_krho(s.graph, k, rho).violators == s.satellites) {
      s.rho = rho;
      return s;
    }
  }
  fail("no rho isolates the ray tips of the lower-bound star");
}

WeightedGraph largest_component(const WeightedGraph& g) {
  require(!g.directed(), "largest_component expects an undirected graph");
  const int n = g.node_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int best_root = -1;
  int best_size = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    int size = 0;
    stack.assign(1, s);
    comp[static_cast<std::size_t>(s)] = s;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (const Edge& e : g.neighbors(u)) {
        int& c = comp[static_cast<std::size_t>(e.to)];
        if (c != -1) continue;
        c = s;
        stack.push_back(e.to);
      }
    }
    if (size > best_size) {  // first root wins ties: roots ascend
      best_size = size;
      best_root = s;
    }
  }
  std::vector<NodeId> renum(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (NodeId u = 0; u < n; ++u)
    if (comp[static_cast<std::size_t>(u)] == best_root)
      renum[static_cast<std::size_t>(u)] = next++;
  WeightedGraph lcc(best_size);
  for (NodeId u = 0; u < n; ++u) {
    NodeId ru = renum[static_cast<std::size_t>(u)];
    if (ru == -1) continue;
    for (const Edge& e : g.neighbors(u))
      if (u < e.to) lcc.add_edge(ru, renum[static_cast<std::size_t>(e.to)], e.w);
  }
  return lcc;
}

}  // namespace krho
