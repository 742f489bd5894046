#include "nsd/generate.hpp"

#include <queue>
#include <random>
#include <vector>

#include "nsd/mad.hpp"

namespace nsd {

namespace {

int bfs_distance(const Graph& g, int s, int t) {
  std::vector<int> dist(static_cast<size_t>(g.vertex_count()), -1);
  std::queue<int> q;
  q.push(s);
  dist[static_cast<size_t>(s)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (u == t) return dist[static_cast<size_t>(u)];
    for (int v : g.neighbors(u))
      if (dist[static_cast<size_t>(v)] < 0) {
        dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
        q.push(v);
      }
  }
  return -1;
}

}  // namespace

Graph generate_sparse(uint64_t seed, int n, int target_delta) {
  if (target_delta < 6)
    throw std::invalid_argument("generate_sparse: target_delta < 6");
  if (n < target_delta + 1)
    throw std::invalid_argument("generate_sparse: n < target_delta + 1");
  std::mt19937_64 rng(seed);
  Graph g(n);
  // Hub 0 pinned at the target degree; everything else stays strictly below,
  // so the maximum degree is exact.
  for (int v = 1; v <= target_delta; ++v) g.add_edge(0, v);
  for (int v = target_delta + 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u)
      if (g.degree(u) < target_delta) open.push_back(u);
    std::uniform_int_distribution<size_t> pick(0, open.size() - 1);
    g.add_edge(open[pick(rng)], v);
  }
  // Extra edges between far-apart vertices, kept only while mad stays < 3.
  // The distance >= 3 rule avoids triangles and parallel shortcuts; in the
  // minimal case n = target_delta + 1 (a star) it admits no extras at all.
  std::uniform_int_distribution<int> anyv(0, n - 1);
  int attempts = 2 * n;
  for (int i = 0; i < attempts; ++i) {
    int u = anyv(rng);
    int v = anyv(rng);
    if (u == v || g.has_edge(u, v)) continue;
    if (g.degree(u) >= target_delta || g.degree(v) >= target_delta) continue;
    if (bfs_distance(g, u, v) < 3) continue;
    g.add_edge(u, v);
    if (!mad_less_than(g, Rational{3, 1})) g.remove_edge(u, v);
  }
  if (g.max_degree() != target_delta || !g.is_connected() ||
      !mad_less_than(g, Rational{3, 1}))
    throw std::runtime_error("generate_sparse: constraints not satisfied");
  return g;
}

}  // namespace nsd
