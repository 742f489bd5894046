#include "nsd/mad.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace nsd {

namespace {

// Dinic on integer capacities. Small graphs only; no scaling needed.
class Dinic {
 public:
  explicit Dinic(int n) : head_(static_cast<size_t>(n)) {}

  void add_arc(int from, int to, long long cap) {
    head_[static_cast<size_t>(from)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    head_[static_cast<size_t>(to)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  long long max_flow(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      ptr_.assign(head_.size(), 0);
      while (long long pushed =
                 dfs(s, t, std::numeric_limits<long long>::max()))
        total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    long long cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    q.push(s);
    level_[static_cast<size_t>(s)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : head_[static_cast<size_t>(u)]) {
        const Arc& a = arcs_[static_cast<size_t>(id)];
        if (a.cap > 0 && level_[static_cast<size_t>(a.to)] < 0) {
          level_[static_cast<size_t>(a.to)] =
              level_[static_cast<size_t>(u)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  long long dfs(int u, int t, long long limit) {
    if (u == t || limit == 0) return limit;
    for (size_t& i = ptr_[static_cast<size_t>(u)];
         i < head_[static_cast<size_t>(u)].size(); ++i) {
      int id = head_[static_cast<size_t>(u)][i];
      Arc& a = arcs_[static_cast<size_t>(id)];
      if (a.cap <= 0 ||
          level_[static_cast<size_t>(a.to)] !=
              level_[static_cast<size_t>(u)] + 1)
        continue;
      long long pushed = dfs(a.to, t, std::min(limit, a.cap));
      if (pushed > 0) {
        a.cap -= pushed;
        arcs_[static_cast<size_t>(id ^ 1)].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<size_t> ptr_;
};

}  // namespace

// Goldberg's construction: with threshold g = num/den, capacities scaled by
// den, the min s-t cut equals den*m*n + 2*min_S (num*|S| - den*e(S)). Some
// non-empty S beats the threshold strictly iff the min cut drops below
// den*m*n.
bool exists_denser_subgraph(const Graph& g, long long num, long long den) {
  if (num < 0 || den <= 0)
    throw std::invalid_argument("exists_denser_subgraph: bad threshold");
  long long n = g.vertex_count();
  long long m = g.edge_count();
  if (m == 0) return false;
  if (num >= m * den) return false;  // density never exceeds m
  int s = static_cast<int>(n);
  int t = static_cast<int>(n) + 1;
  Dinic net(static_cast<int>(n) + 2);
  for (int v = 0; v < n; ++v) {
    net.add_arc(s, v, m * den);
    net.add_arc(v, t, m * den + 2 * num - den * g.degree(v));
  }
  for (const Edge& e : g.edges()) {
    net.add_arc(e.first, e.second, den);
    net.add_arc(e.second, e.first, den);
  }
  return net.max_flow(s, t) < m * n * den;
}

Rational mad_bruteforce(const Graph& g) {
  int n = g.vertex_count();
  if (n < 1 || n > 22)
    throw std::invalid_argument("mad_bruteforce: n out of range 1..22");
  if (g.edge_count() == 0) return {0, 1};
  std::vector<uint32_t> mask(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) mask[static_cast<size_t>(v)] |= 1u << u;
  Rational best{0, 1};
  for (uint32_t sub = 1; sub < (1u << n); ++sub) {
    long long inside = 0;
    for (uint32_t rest = sub; rest;) {
      int v = __builtin_ctz(rest);
      rest &= rest - 1;
      inside += __builtin_popcount(mask[static_cast<size_t>(v)] & sub);
    }
    Rational cand{inside, __builtin_popcount(sub)};  // inside = 2 e(S)
    if (best < cand) best = cand;
  }
  return best;
}

// Stern-Brocot mediant descent over subgraph densities. The invariant is
// lo < d* <= hi with lo, hi tree neighbours (hi = 1/0 at the start); every
// rational strictly between them has denominator >= den(lo)+den(hi), so once
// the mediant denominator exceeds n the answer is hi.
Rational mad_exact(const Graph& g) {
  long long n = g.vertex_count();
  if (n < 1) throw std::invalid_argument("mad_exact: empty graph");
  if (g.edge_count() == 0) return {0, 1};
  long long lo_n = 0, lo_d = 1;
  long long hi_n = 1, hi_d = 0;
  while (lo_d + hi_d <= n) {
    long long med_n = lo_n + hi_n;
    long long med_d = lo_d + hi_d;
    if (exists_denser_subgraph(g, med_n, med_d)) {
      lo_n = med_n;
      lo_d = med_d;
    } else {
      hi_n = med_n;
      hi_d = med_d;
    }
  }
  return {2 * hi_n, hi_d};
}

bool mad_less_than(const Graph& g, const Rational& bound) {
  if (bound.num <= 0)
    throw std::invalid_argument("mad_less_than: bound must be positive");
  long long n = g.vertex_count();
  if (n < 1) throw std::invalid_argument("mad_less_than: empty graph");
  if (g.edge_count() == 0) return true;
  // mad >= p/q iff some S has density >= p/(2q); since densities have
  // denominator <= n, that is equivalent to density > (2pn-1)/(4qn).
  long long p = bound.num, q = bound.den;
  return !exists_denser_subgraph(g, 2 * p * n - 1, 4 * q * n);
}

}  // namespace nsd
