#include <doctest.h>

#include <random>

#include "nsd/colorer.hpp"
#include "nsd/generate.hpp"
#include "nsd/mad.hpp"
#include "testutil.hpp"

using nsd::ConfigKind;
using nsd::Graph;
using nsd::MatchMode;

TEST_CASE("choose_k") {
  CHECK(nsd::choose_k(testutil::star_graph(6)) == 6);
  CHECK(nsd::choose_k(testutil::star_graph(9)) == 9);
  CHECK(nsd::choose_k(testutil::path_graph(4)) == 6);
}

TEST_CASE("reduce: C1 on P4 gives P3") {
  Graph p4 = testutil::path_graph(4);
  auto m = nsd::find_configs(p4, 6, MatchMode::FirstByIndex);
  REQUIRE(m.size() == 1);
  REQUIRE(m[0].kind == ConfigKind::C1);
  nsd::ReductionPlan plan = nsd::reduce(p4, m[0], 6);
  CHECK(plan.reduced.vertex_count() == 3);
  CHECK(plan.reduced.edge_count() == 2);
  CHECK(nsd::precedes(nsd::degree_profile(plan.reduced, 6),
                      nsd::degree_profile(p4, 6)));
  CHECK(plan.free_edges == std::vector<nsd::Edge>{{0, 1}});
}

TEST_CASE("reduce: C8 on the star deletes d-2 leaves") {
  Graph star = testutil::star_graph(6);
  auto m = nsd::find_configs(star, 6, MatchMode::FirstByIndex);
  REQUIRE(m.size() == 1);
  REQUIRE(m[0].kind == ConfigKind::C8);
  nsd::ReductionPlan plan = nsd::reduce(star, m[0], 6);
  CHECK(plan.reduced.vertex_count() == 3);  // centre and two leaves: P3
  CHECK(plan.reduced.edge_count() == 2);
  CHECK(plan.free_edges.size() == 4);
  CHECK(nsd::precedes(nsd::degree_profile(plan.reduced, 6),
                      nsd::degree_profile(star, 6)));
}

TEST_CASE("reduce: C4 host loses the 2-2 triangle edge") {
  // triangle u-v-w with d(u)=d(w)=2 and three extra leaves at v blocking
  // C1..C3, so C4 is first-by-index
  Graph g(6);
  g.add_edge(0, 1);  // v=0, u=1
  g.add_edge(0, 2);  // w=2
  g.add_edge(1, 2);  // the triangle edge
  g.add_edge(0, 3);
  g.add_edge(0, 4);
  g.add_edge(0, 5);
  auto m = nsd::find_configs(g, 6, MatchMode::FirstByIndex);
  REQUIRE(m.size() == 1);
  REQUIRE(m[0].kind == ConfigKind::C4);
  auto before = nsd::degree_profile(g, 6);
  nsd::ReductionPlan plan = nsd::reduce(g, m[0], 6);
  CHECK(plan.reduced.vertex_count() == 6);
  CHECK(plan.reduced.edge_count() == 5);
  CHECK(!plan.reduced.has_edge(1, 2));
  auto after = nsd::degree_profile(plan.reduced, 6);
  CHECK(before.counts[2] == 2);
  CHECK(after.counts[2] == 0);
  CHECK(nsd::precedes(after, before));
}

TEST_CASE("reduce rejects invalid matches") {
  nsd::ConfigMatch fake;
  fake.kind = ConfigKind::C1;
  fake.k = 6;
  fake.roles = {{"v", 0}, {"u", 1}};
  CHECK_THROWS_AS(nsd::reduce(testutil::complete_graph(4), fake, 6),
                  nsd::ColorerInternalError);
}

TEST_CASE("color_graph on the star") {
  Graph star = testutil::star_graph(6);
  nsd::ColorerResult res = nsd::color_graph(star);
  CHECK(res.k == 6);
  CHECK(nsd::is_nsd(star, res.coloring));
  CHECK(res.coloring.max_color_used() <= 7);
  std::set<int> used;
  for (int leaf = 1; leaf <= 6; ++leaf)
    used.insert(res.coloring.color({0, leaf}));
  CHECK(used.size() == 6);
}

TEST_CASE("color_graph gates its hypotheses") {
  CHECK_THROWS_AS(nsd::color_graph(testutil::path_graph(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(nsd::color_graph(testutil::complete_graph(8)),
                  std::invalid_argument);  // mad = 7 >= 3
  Graph with_iso = testutil::star_graph(6);
  int a = with_iso.add_vertex();
  int b = with_iso.add_vertex();
  with_iso.add_edge(a, b);
  CHECK_THROWS_AS(nsd::color_graph(with_iso), nsd::IsolatedEdgeError);
}

TEST_CASE("color_graph across the generated corpus") {
  std::mt19937_64 mix(404);
  long long fallbacks = 0;
  for (int it = 0; it < 60; ++it) {
    uint64_t s = mix();
    int delta = 6 + static_cast<int>(s % 4);
    int n = delta + 1 + static_cast<int>((s >> 16) % 20);
    Graph g = nsd::generate_sparse(s, n, delta);
    nsd::ColorerResult res = nsd::color_graph(g);
    CHECK(nsd::is_nsd(g, res.coloring));
    CHECK(res.coloring.max_color_used() <= g.max_degree() + 1);
    CHECK(res.stats.fallback_failures == 0);
    fallbacks += res.stats.fallback_activations;
  }
  // activations are permitted; failures are not
  CHECK(fallbacks >= 0);
}

TEST_CASE("reduction invariants along full runs") {
  std::mt19937_64 mix(2025);
  for (int it = 0; it < 10; ++it) {
    uint64_t s = mix();
    Graph g = nsd::generate_sparse(s, 18, 6);
    nsd::ColorerOptions opts;
    opts.trace = true;
    nsd::ColorerResult res = nsd::color_graph(g, opts);
    CHECK(!res.stats.trace.empty());
    CHECK(res.stats.reductions > 0);
  }
}

TEST_CASE("color_recursive fuzz over wild sparse graphs") {
  // subdivided random graphs with pendant decorations: denser local
  // structure (triangles, theta shapes, 2-chains) than the generator corpus
  std::mt19937_64 rng(31337);
  nsd::ColorerOptions opts;
  for (int it = 0; it < 200; ++it) {
    Graph g = testutil::wild_sparse(rng, 4 + static_cast<int>(rng() % 5),
                                    0.3 + 0.05 * (it % 7));
    int k = std::max(6, g.max_degree());
    nsd::ColorerStats stats;
    nsd::EdgeColoring col = nsd::color_recursive(g, k, stats, opts);
    CHECK(stats.fallback_failures == 0);
    CHECK(col.max_color_used() <= k + 1);
    for (const auto& comp : g.components()) {
      if (comp.size() == 2) {
        CHECK(col.color(nsd::make_edge(comp[0], comp[1])) == 1);
        continue;
      }
      if (comp.size() < 3) continue;
      Graph sub = g.induced(comp);
      nsd::EdgeColoring subcol(sub.vertex_count(), k + 1);
      for (const nsd::Edge& e : sub.edges())
        subcol.assign(e, col.color(nsd::make_edge(
                             comp[static_cast<size_t>(e.first)],
                             comp[static_cast<size_t>(e.second)])));
      CHECK(nsd::is_nsd(sub, subcol));
    }
  }
}

TEST_CASE("trees with a high-degree hub exercise deep recursions") {
  // caterpillar: hub of degree 6, then a long tail of 2-chains
  Graph g(16);
  for (int i = 1; i <= 6; ++i) g.add_edge(0, i);
  for (int i = 6; i < 15; ++i) g.add_edge(i, i + 1);
  REQUIRE(nsd::mad_less_than(g, nsd::Rational{3, 1}));
  nsd::ColorerResult res = nsd::color_graph(g);
  CHECK(nsd::is_nsd(g, res.coloring));
  CHECK(res.coloring.max_color_used() <= 7);
}
