#include <doctest.h>

#include <random>

#include "nsd/mad.hpp"
#include "testutil.hpp"

using nsd::Graph;
using nsd::Rational;

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational{4, 6} == Rational{2, 3});
  CHECK(Rational{-4, -6} == Rational{2, 3});
  CHECK(Rational{1, 2} < Rational{2, 3});
  CHECK(Rational{7, 3} > Rational{2, 1});
  CHECK((Rational{1, 2} + Rational{1, 3}) == Rational{5, 6});
  CHECK((Rational{1, 2} - Rational{1, 2}) == Rational{0, 1});
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("mad_bruteforce on closed cases") {
  CHECK(nsd::mad_bruteforce(testutil::cycle_graph(5)) == Rational{2, 1});
  CHECK(nsd::mad_bruteforce(testutil::complete_graph(4)) == Rational{3, 1});
  CHECK(nsd::mad_bruteforce(testutil::star_graph(3)) == Rational{3, 2});
  CHECK_THROWS(nsd::mad_bruteforce(Graph(23)));
}

TEST_CASE("mad_exact basics") {
  CHECK(nsd::mad_exact(Graph(5)) == Rational{0, 1});
  CHECK(nsd::mad_exact(testutil::cycle_graph(7)) == Rational{2, 1});
  CHECK(nsd::mad_exact(testutil::complete_graph(4)) == Rational{3, 1});
  for (int n = 2; n <= 12; ++n) {
    std::mt19937_64 rng(static_cast<uint64_t>(n));
    Graph tree(n);
    for (int v = 1; v < n; ++v)
      tree.add_edge(static_cast<int>(rng() % static_cast<uint64_t>(v)), v);
    CHECK(nsd::mad_exact(tree) == Rational{2 * (n - 1), n});
    CHECK(nsd::mad_exact(tree) == nsd::mad_bruteforce(tree));
  }
}

TEST_CASE("mad_exact equals mad_bruteforce on random graphs") {
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 1 + static_cast<int>(rng() % 12);
    double p = (iter % 10) / 10.0;
    Graph g = testutil::random_graph(rng, n, p);
    Rational m = nsd::mad_exact(g);
    CHECK(m == nsd::mad_bruteforce(g));
    CHECK(m >= Rational{2 * g.edge_count(), g.vertex_count()});
  }
}

TEST_CASE("adding an edge never decreases mad") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 3 + static_cast<int>(rng() % 8);
    Graph g = testutil::random_graph(rng, n, 0.4);
    Rational before = nsd::mad_exact(g);
    int u = static_cast<int>(rng() % static_cast<uint64_t>(n));
    int v = static_cast<int>(rng() % static_cast<uint64_t>(n));
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v);
    CHECK(before <= nsd::mad_exact(g));
  }
}

TEST_CASE("mad lower bound 2m/n is attained by cycles and cliques") {
  for (int n : {3, 5, 8}) {
    Graph c = testutil::cycle_graph(n);
    CHECK(nsd::mad_exact(c) == Rational{2 * c.edge_count(), n});
    Graph k = testutil::complete_graph(n);
    CHECK(nsd::mad_exact(k) == Rational{2 * k.edge_count(), n});
  }
}

TEST_CASE("mad_less_than decisions") {
  CHECK(!nsd::mad_less_than(testutil::complete_graph(4), Rational{3, 1}));
  CHECK(nsd::mad_less_than(testutil::cycle_graph(5), Rational{3, 1}));
  CHECK(nsd::mad_less_than(testutil::star_graph(6), Rational{3, 1}));
  CHECK(nsd::mad_bruteforce(testutil::star_graph(6)) == Rational{12, 7});
  CHECK_THROWS(nsd::mad_less_than(testutil::cycle_graph(5), Rational{0, 1}));
}

TEST_CASE("mad_less_than agrees with mad_exact on random graphs and bounds") {
  std::mt19937_64 rng(99);
  std::vector<Rational> bounds = {{3, 1}, {5, 2}, {2, 1}, {8, 3}, {7, 2}};
  for (int iter = 0; iter < 120; ++iter) {
    int n = 1 + static_cast<int>(rng() % 10);
    Graph g = testutil::random_graph(rng, n, 0.35);
    Rational m = nsd::mad_exact(g);
    for (const Rational& b : bounds)
      CHECK(nsd::mad_less_than(g, b) == (m < b));
  }
}
