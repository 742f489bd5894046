#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "nsd/colorer.hpp"
#include "nsd/coloring.hpp"
#include "nsd/configs.hpp"
#include "nsd/graph.hpp"
#include "nsd/mad.hpp"

// One hand-built host per reduction case (and per proof branch). Each host is
// arranged so that its case is the first-by-index configuration, which is
// what the recursion relies on when applying the scripted extension. Every
// run must finish without touching the fallback.

using nsd::ConfigKind;
using nsd::Graph;

namespace {

void add_path(Graph& g, const std::vector<int>& vs) {
  for (size_t i = 0; i + 1 < vs.size(); ++i) g.add_edge(vs[i], vs[i + 1]);
}

struct CaseHost {
  std::string name;
  std::function<Graph()> build;
  int k;
  ConfigKind kind;
  std::string branch_key;  // entry expected in stats.by_branch
};

std::vector<CaseHost> case_hosts() {
  std::vector<CaseHost> hosts;
  hosts.push_back({"C1 path", [] {
                     Graph g(4);
                     add_path(g, {0, 1, 2, 3});
                     return g;
                   }, 6, ConfigKind::C1, "C1"});
  hosts.push_back({"C2 six-cycle", [] {
                     Graph g(6);
                     for (int i = 0; i < 6; ++i) g.add_edge(i, (i + 1) % 6);
                     return g;
                   }, 6, ConfigKind::C2, "C2"});
  hosts.push_back({"C3 small-nbr + 2-vertex", [] {
                     // v=0 (3) with u=1 (3), w=2 (2), v1=3 (4); 2-chains 4, 5
                     Graph g(6);
                     g.add_edge(0, 1);
                     g.add_edge(0, 2);
                     g.add_edge(0, 3);
                     g.add_edge(1, 4);
                     g.add_edge(1, 5);
                     g.add_edge(2, 3);
                     g.add_edge(3, 4);
                     g.add_edge(3, 5);
                     return g;
                   }, 6, ConfigKind::C3, "C3"});
  hosts.push_back({"C4 triangle with two 2-vertices", [] {
                     Graph g(6);
                     g.add_edge(0, 1);
                     g.add_edge(0, 2);
                     g.add_edge(1, 2);
                     g.add_edge(0, 3);
                     g.add_edge(0, 4);
                     g.add_edge(0, 5);
                     return g;
                   }, 6, ConfigKind::C4, "C4"});
  hosts.push_back({"C5 leaf + bad 2-vertex", [] {
                     Graph g(12);
                     for (int l = 1; l <= 5; ++l) g.add_edge(0, l);
                     g.add_edge(2, 6);
                     g.add_edge(6, 7);
                     for (int l = 8; l < 12; ++l) g.add_edge(7, l);
                     return g;
                   }, 6, ConfigKind::C5, "C5"});
  hosts.push_back({"C6 two bad 2-vertices", [] {
                     Graph g(7);
                     g.add_edge(0, 1);
                     g.add_edge(0, 2);
                     g.add_edge(0, 5);
                     g.add_edge(0, 6);
                     g.add_edge(1, 3);
                     g.add_edge(2, 4);
                     g.add_edge(3, 5);
                     g.add_edge(4, 5);
                     g.add_edge(5, 6);
                     return g;
                   }, 6, ConfigKind::C6, "C6"});
  hosts.push_back({"C7 good-2 witness", [] {
                     Graph g(11);
                     for (int l = 1; l <= 4; ++l) g.add_edge(0, l);
                     g.add_edge(0, 5);
                     g.add_edge(5, 6);
                     for (int l = 7; l < 11; ++l) g.add_edge(6, l);
                     return g;
                   }, 6, ConfigKind::C7, "C7/good2"});
  hosts.push_back({"C7 bad-3 witness", [] {
                     Graph g(17);
                     for (int l = 1; l <= 4; ++l) g.add_edge(0, l);
                     g.add_edge(0, 5);
                     g.add_edge(5, 6);
                     g.add_edge(5, 7);
                     for (int l = 8; l < 12; ++l) g.add_edge(6, l);
                     g.add_edge(7, 12);
                     for (int l = 13; l < 17; ++l) g.add_edge(12, l);
                     return g;
                   }, 6, ConfigKind::C7, "C7/bad3"});
  hosts.push_back({"C8 star", [] {
                     Graph g(7);
                     for (int l = 1; l <= 6; ++l) g.add_edge(0, l);
                     return g;
                   }, 6, ConfigKind::C8, "C8"});
  hosts.push_back({"C9 good-2 witness", [] {
                     Graph g(7);
                     g.add_edge(0, 1);
                     g.add_edge(0, 2);
                     g.add_edge(0, 3);
                     g.add_edge(0, 4);
                     g.add_edge(1, 5);
                     g.add_edge(5, 3);
                     g.add_edge(2, 4);
                     g.add_edge(3, 4);
                     g.add_edge(3, 6);
                     g.add_edge(4, 6);
                     return g;
                   }, 6, ConfigKind::C9, "C9/good2"});
  hosts.push_back({"C9 bad-3 witness", [] {
                     Graph g(9);
                     g.add_edge(0, 1);
                     g.add_edge(0, 2);
                     g.add_edge(0, 3);
                     g.add_edge(0, 4);
                     g.add_edge(1, 5);
                     g.add_edge(5, 3);
                     g.add_edge(2, 4);
                     g.add_edge(2, 6);
                     g.add_edge(6, 3);
                     g.add_edge(3, 7);
                     g.add_edge(4, 7);
                     g.add_edge(4, 8);
                     g.add_edge(8, 3);
                     return g;
                   }, 6, ConfigKind::C9, "C9/bad3"});
  hosts.push_back({"C10 lone bad 2-chain", [] {
                     // hubs 0,1,2 joined by single 2-chains plus one bad pair
                     Graph g(11);
                     add_path(g, {0, 3, 4, 1});
                     add_path(g, {0, 5, 1});
                     add_path(g, {0, 10, 1});
                     add_path(g, {0, 6, 2});
                     add_path(g, {0, 7, 2});
                     add_path(g, {1, 8, 2});
                     add_path(g, {1, 9, 2});
                     return g;
                   }, 6, ConfigKind::C10, "C10"});
  hosts.push_back({"C11 lone leaf", [] {
                     Graph g(10);
                     g.add_edge(0, 1);
                     add_path(g, {0, 2, 6});
                     add_path(g, {0, 3, 6});
                     add_path(g, {0, 4, 7});
                     add_path(g, {0, 5, 7});
                     add_path(g, {6, 8, 7});
                     add_path(g, {6, 9, 7});
                     return g;
                   }, 6, ConfigKind::C11, "C11"});
  hosts.push_back({"C12 small palette", [] {
                     Graph g(10);
                     add_path(g, {0, 1, 6});
                     add_path(g, {0, 2, 6});
                     add_path(g, {0, 5, 6});
                     add_path(g, {0, 3, 7});
                     add_path(g, {0, 4, 7});
                     add_path(g, {6, 8, 7});
                     add_path(g, {6, 9, 7});
                     return g;
                   }, 6, ConfigKind::C12, "C12/k le8"});
  hosts.push_back({"C12 large palette", [] {
                     // four degree-5 hubs, all spokes are single 2-chains
                     Graph g(14);
                     add_path(g, {0, 4, 1});
                     add_path(g, {0, 5, 1});
                     add_path(g, {0, 6, 2});
                     add_path(g, {0, 7, 2});
                     add_path(g, {0, 8, 3});
                     add_path(g, {1, 9, 2});
                     add_path(g, {1, 10, 3});
                     add_path(g, {1, 11, 3});
                     add_path(g, {2, 12, 3});
                     add_path(g, {2, 13, 3});
                     return g;
                   }, 9, ConfigKind::C12, "C12/k ge9"});
  hosts.push_back({"C13 adjacent pair", [] {
                     Graph g(9);
                     g.add_edge(0, 1);
                     g.add_edge(0, 2);
                     g.add_edge(0, 3);
                     g.add_edge(0, 4);
                     g.add_edge(1, 2);
                     g.add_edge(2, 5);
                     g.add_edge(3, 6);
                     g.add_edge(4, 6);
                     g.add_edge(5, 7);
                     g.add_edge(5, 8);
                     g.add_edge(6, 7);
                     g.add_edge(6, 8);
                     g.add_edge(6, 5);
                     return g;
                   }, 6, ConfigKind::C13, "C13/adjacent"});
  hosts.push_back({"C13 independent k=6", [] {
                     Graph g(9);
                     add_path(g, {0, 1, 5});
                     add_path(g, {0, 2, 5});
                     add_path(g, {0, 3, 6});
                     add_path(g, {0, 4, 6});
                     add_path(g, {5, 7, 6});
                     add_path(g, {5, 8, 6});
                     return g;
                   }, 6, ConfigKind::C13, "C13/k6"});
  hosts.push_back({"C13 independent k=7", [] {
                     Graph g(9);
                     add_path(g, {0, 1, 5});
                     add_path(g, {0, 2, 5});
                     add_path(g, {0, 3, 6});
                     add_path(g, {0, 4, 6});
                     add_path(g, {5, 7, 6});
                     add_path(g, {5, 8, 6});
                     return g;
                   }, 7, ConfigKind::C13, "C13/k7plus"});
  return hosts;
}

}  // namespace

TEST_CASE("every reduction case runs scripted on a dedicated host") {
  for (const CaseHost& host : case_hosts()) {
    CAPTURE(host.name);
    Graph g = host.build();
    REQUIRE(g.check_simple_symmetric());
    REQUIRE(nsd::mad_less_than(g, nsd::Rational{3, 1}));
    REQUIRE(g.max_degree() <= host.k);

    auto first = nsd::find_configs(g, host.k, nsd::MatchMode::FirstByIndex);
    REQUIRE(first.size() == 1);
    CHECK(first[0].kind == host.kind);

    nsd::ColorerStats stats;
    nsd::ColorerOptions opts;
    nsd::EdgeColoring col = nsd::color_recursive(g, host.k, stats, opts);
    CHECK(nsd::is_nsd(g, col));
    CHECK(col.max_color_used() <= host.k + 1);
    CHECK(stats.fallback_activations == 0);
    CHECK(stats.fallback_failures == 0);
    CHECK(stats.by_branch.count(host.branch_key) == 1);
  }
}

TEST_CASE("fallback rescues a mis-transcribed scripted extension") {
  // tampering with the branch tag makes the C7 script derive nonsense; the
  // exhaustive fallback must still complete the coloring
  Graph g(11);
  for (int l = 1; l <= 4; ++l) g.add_edge(0, l);
  g.add_edge(0, 5);
  g.add_edge(5, 6);
  for (int l = 7; l < 11; ++l) g.add_edge(6, l);
  auto first = nsd::find_configs(g, 6, nsd::MatchMode::FirstByIndex);
  REQUIRE(first.size() == 1);
  REQUIRE(first[0].kind == ConfigKind::C7);
  nsd::ReductionPlan plan = nsd::reduce(g, first[0], 6);
  REQUIRE(plan.branch == "good2");
  plan.branch = "bad3";

  nsd::ColorerStats stats;
  nsd::ColorerOptions opts;
  nsd::EdgeColoring sub = nsd::color_recursive(plan.reduced, 6, stats, opts);
  nsd::EdgeColoring lifted(g.vertex_count(), 7);
  std::set<nsd::Edge> skip(plan.free_edges.begin(), plan.free_edges.end());
  for (const auto& [he, re] : plan.edge_map)
    if (!skip.count(he)) lifted.assign(he, sub.color(re));
  nsd::ColorerStats ext_stats;
  nsd::extend(g, lifted, plan, 6, ext_stats, opts);
  CHECK(ext_stats.fallback_activations == 1);
  CHECK(ext_stats.fallback_failures == 0);
  CHECK(nsd::is_nsd(g, lifted));
}

TEST_CASE("reduction plans on the case hosts satisfy the shrink invariants") {
  for (const CaseHost& host : case_hosts()) {
    CAPTURE(host.name);
    Graph g = host.build();
    auto first = nsd::find_configs(g, host.k, nsd::MatchMode::FirstByIndex);
    REQUIRE(first.size() == 1);
    nsd::ReductionPlan plan = nsd::reduce(g, first[0], host.k);
    CHECK(nsd::verify_match(g, plan.match));
    CHECK(plan.reduced.check_simple_symmetric());
    CHECK(plan.reduced.max_degree() <= host.k);
    CHECK(nsd::precedes(nsd::degree_profile(plan.reduced, host.k),
                        nsd::degree_profile(g, host.k)));
    CHECK(nsd::mad_less_than(plan.reduced, nsd::Rational{3, 1}));
    // every non-free surviving edge must lift a color
    std::set<nsd::Edge> free(plan.free_edges.begin(), plan.free_edges.end());
    std::set<nsd::Edge> mapped;
    for (const auto& [he, re] : plan.edge_map) mapped.insert(he);
    for (const nsd::Edge& e : g.edges())
      if (!free.count(e)) {
        bool survives = mapped.count(e) > 0;
        CHECK(survives);
      }
  }
}
