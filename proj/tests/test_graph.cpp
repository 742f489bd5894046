#include <doctest.h>

#include <random>

#include "nsd/generate.hpp"
#include "nsd/graph.hpp"
#include "nsd/mad.hpp"
#include "testutil.hpp"

using nsd::Graph;

TEST_CASE("graph6 decode of known strings") {
  Graph one = nsd::parse_graph6("@");
  CHECK(one.vertex_count() == 1);
  CHECK(one.edge_count() == 0);

  Graph k2 = nsd::parse_graph6("A_");
  CHECK(k2.vertex_count() == 2);
  CHECK(k2.has_edge(0, 1));

  // "D?{" is the 5-vertex star with centre 4: the first six pair bits ('?')
  // are all zero, '{' = 111100 covers (0,4),(1,4),(2,4),(3,4).
  Graph star = nsd::parse_graph6("D?{");
  CHECK(star.vertex_count() == 5);
  CHECK(star.edge_count() == 4);
  for (int v = 0; v < 4; ++v) CHECK(star.has_edge(v, 4));
  CHECK(!star.has_edge(2, 3));

  Graph k5 = nsd::parse_graph6("D~{");
  CHECK(k5.edge_count() == 10);
}

TEST_CASE("graph6 encode of known graphs") {
  CHECK(nsd::encode_graph6(Graph(1)) == "@");
  Graph k2(2);
  k2.add_edge(0, 1);
  CHECK(nsd::encode_graph6(k2) == "A_");
  CHECK(nsd::encode_graph6(testutil::complete_graph(5)) == "D~{");
}

TEST_CASE("graph6 malformed inputs carry byte offsets") {
  CHECK_THROWS_AS(nsd::parse_graph6(""), nsd::Graph6Error);
  CHECK_THROWS_AS(nsd::parse_graph6("D?"), nsd::Graph6Error);   // truncated
  CHECK_THROWS_AS(nsd::parse_graph6("D?{x"), nsd::Graph6Error); // trailing
  CHECK_THROWS_AS(nsd::parse_graph6("D\x20{"), nsd::Graph6Error);
  try {
    nsd::parse_graph6("D\x20{");
  } catch (const nsd::Graph6Error& e) {
    CHECK(e.offset() == 1);
  }
}

TEST_CASE("graph6 round trip on random graphs incl. the long length form") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 1000; ++iter) {
    int n = 1 + static_cast<int>(rng() % 40);
    Graph g = testutil::random_graph(rng, n, 0.3);
    Graph back = nsd::parse_graph6(nsd::encode_graph6(g));
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
  }
  for (int n : {62, 63, 70}) {
    Graph g = testutil::random_graph(rng, n, 0.1);
    Graph back = nsd::parse_graph6(nsd::encode_graph6(g));
    CHECK(back.edges() == g.edges());
  }
}

TEST_CASE("parsed and generated graphs are simple and symmetric") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = testutil::random_graph(rng, 2 + static_cast<int>(rng() % 12),
                                     0.4);
    CHECK(g.check_simple_symmetric());
    CHECK(nsd::parse_graph6(nsd::encode_graph6(g)).check_simple_symmetric());
  }
}

TEST_CASE("degree profiles") {
  auto p = nsd::degree_profile(testutil::star_graph(6), 6);
  CHECK(p.counts[1] == 6);
  CHECK(p.counts[6] == 1);
  CHECK(p.counts[2] == 0);

  auto c5 = nsd::degree_profile(testutil::cycle_graph(5), 6);
  CHECK(c5.counts[2] == 5);

  auto p4 = nsd::degree_profile(testutil::path_graph(4), 6);
  CHECK(p4.counts[1] == 2);
  CHECK(p4.counts[2] == 2);

  CHECK_THROWS(nsd::degree_profile(testutil::star_graph(7), 6));
}

TEST_CASE("precedes is the lexicographic order on (n_k,...,n_1)") {
  nsd::DegreeProfile a{6, {0, 6, 0, 0, 0, 0, 1}};
  nsd::DegreeProfile b{6, {0, 7, 0, 0, 0, 0, 1}};
  CHECK(nsd::precedes(a, b));
  CHECK(!nsd::precedes(b, a));
  CHECK(!nsd::precedes(a, a));  // strict

  nsd::DegreeProfile many_twos{6, {0, 0, 99, 0, 0, 0, 0}};
  nsd::DegreeProfile one_six{6, {0, 0, 0, 0, 0, 0, 1}};
  CHECK(nsd::precedes(many_twos, one_six));

  nsd::DegreeProfile other_k{7, {0, 0, 0, 0, 0, 0, 0, 0}};
  CHECK_THROWS(nsd::precedes(a, other_k));
}

TEST_CASE("precedes is a strict total order on random profiles") {
  std::mt19937_64 rng(3);
  std::vector<nsd::DegreeProfile> ps;
  for (int i = 0; i < 30; ++i) {
    nsd::DegreeProfile p{4, {0, 0, 0, 0, 0}};
    for (int d = 1; d <= 4; ++d) p.counts[static_cast<size_t>(d)] = rng() % 3;
    ps.push_back(p);
  }
  for (const auto& a : ps)
    for (const auto& b : ps) {
      bool ab = nsd::precedes(a, b), ba = nsd::precedes(b, a);
      CHECK(!(ab && ba));
      if (!ab && !ba) CHECK(a.counts == b.counts);
    }
}

TEST_CASE("vertex deletion compacts indices and reports the map") {
  Graph g = testutil::cycle_graph(5);
  auto [h, map] = g.delete_vertices({1, 3});
  CHECK(h.vertex_count() == 3);
  CHECK(map[0] == 0);
  CHECK(map[1] == -1);
  CHECK(map[2] == 1);
  CHECK(map[4] == 2);
  CHECK(h.edge_count() == 1);  // only 4-0 survives
  CHECK(h.has_edge(0, 2));
}

TEST_CASE("generate_sparse meets its contract") {
  Graph g = nsd::generate_sparse(42, 20, 6);
  CHECK(g.max_degree() == 6);
  CHECK(g.is_connected());
  CHECK(nsd::mad_less_than(g, nsd::Rational{3, 1}));

  SUBCASE("determinism") {
    Graph h = nsd::generate_sparse(42, 20, 6);
    CHECK(g.edges() == h.edges());
  }
  SUBCASE("minimal case is the star") {
    Graph s = nsd::generate_sparse(9, 7, 6);
    CHECK(s.edges() == testutil::star_graph(6).edges());
  }
  SUBCASE("bad parameters rejected") {
    CHECK_THROWS(nsd::generate_sparse(1, 6, 6));
    CHECK_THROWS(nsd::generate_sparse(1, 10, 5));
  }
}
