#include "nsd/coloring.hpp"

#include <algorithm>
#include <cstdint>

namespace nsd {

bool EdgeColoring::cache_consistent() const {
  std::vector<long long> s(sums_.size(), 0);
  std::vector<int> c(counts_.size(), 0);
  for (const auto& [e, col] : col_) {
    s[static_cast<size_t>(e.first)] += col;
    s[static_cast<size_t>(e.second)] += col;
    ++c[static_cast<size_t>(e.first)];
    ++c[static_cast<size_t>(e.second)];
  }
  return s == sums_ && c == counts_;
}

int EdgeColoring::max_color_used() const {
  int m = 0;
  for (const auto& [e, c] : col_) m = std::max(m, c);
  return m;
}

namespace {

void require_total(const Graph& g, const EdgeColoring& col) {
  auto es = g.edges();
  if (col.assignments().size() != es.size())
    throw PartialColoringError("coloring does not cover the edge set exactly");
  for (const Edge& e : es)
    if (!col.has(e)) throw PartialColoringError("uncolored edge");
}

bool proper_impl(const Graph& g, const EdgeColoring& col) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    uint64_t seen = 0;
    for (int u : g.neighbors(v)) {
      int c = col.color(make_edge(u, v));
      if (c < 64) {
        if (seen & (1ull << c)) return false;
        seen |= 1ull << c;
      } else {
        for (int w : g.neighbors(v))
          if (w < u && col.color(make_edge(w, v)) == c) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_proper(const Graph& g, const EdgeColoring& col) {
  require_total(g, col);
  return proper_impl(g, col);
}

long long vertex_sum(const Graph& g, const EdgeColoring& col, int v) {
  long long s = 0;
  for (int u : g.neighbors(v)) {
    auto c = col.color_opt(make_edge(u, v));
    if (!c) throw PartialColoringError("unassigned incident edge");
    s += *c;
  }
  return s;
}

bool is_nsd(const Graph& g, const EdgeColoring& col) {
  require_total(g, col);
  if (!proper_impl(g, col))
    throw ImproperColoringError("coloring is not proper");
  std::vector<long long> s(static_cast<size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) s[static_cast<size_t>(v)] = vertex_sum(g, col, v);
  for (const Edge& e : g.edges())
    if (s[static_cast<size_t>(e.first)] == s[static_cast<size_t>(e.second)])
      return false;
  return true;
}

int default_max_palette(const Graph& g) { return g.max_degree() + 3; }

namespace {

// Backtracking core shared by the properness relaxation and the nsd search.
// Edges are processed in decreasing endpoint degree sum (fail-first), ties by
// lexicographic edge id.
class Search {
 public:
  Search(const Graph& g, int k, long long* nodes, long long budget)
      : g_(g), k_(k), nodes_(nodes), budget_(budget) {
    order_ = g.edges();
    std::stable_sort(order_.begin(), order_.end(),
                     [&](const Edge& a, const Edge& b) {
                       int da = g.degree(a.first) + g.degree(a.second);
                       int db = g.degree(b.first) + g.degree(b.second);
                       if (da != db) return da > db;
                       return a < b;
                     });
    used_.assign(static_cast<size_t>(g.vertex_count()), 0);
    sum_.assign(static_cast<size_t>(g.vertex_count()), 0);
    left_.assign(static_cast<size_t>(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
      left_[static_cast<size_t>(v)] = g.degree(v);
  }

  // Proper edge coloring existence with k colors. Color classes are
  // canonically ordered (a new color may only follow all smaller ones),
  // which is valid here because properness is colour-permutation invariant.
  bool proper_feasible() {
    return proper_dfs(0, 0);
  }

  // Full nsd search; no symmetry breaking (sums are not permutation
  // invariant).
  bool nsd_search(EdgeColoring& out) {
    if (!nsd_dfs(0)) return false;
    out = EdgeColoring(g_.vertex_count(), k_);
    for (size_t i = 0; i < order_.size(); ++i)
      out.assign(order_[i], chosen_[i]);
    return true;
  }

 private:
  void tick() {
    if (++*nodes_ > budget_)
      throw BudgetExceededError("search budget exhausted");
  }

  bool proper_dfs(size_t idx, int max_used) {
    if (idx == order_.size()) return true;
    auto [u, v] = order_[idx];
    uint64_t blocked =
        used_[static_cast<size_t>(u)] | used_[static_cast<size_t>(v)];
    int limit = std::min(k_, max_used + 1);
    for (int c = 1; c <= limit; ++c) {
      if (blocked & (1ull << c)) continue;
      tick();
      used_[static_cast<size_t>(u)] |= 1ull << c;
      used_[static_cast<size_t>(v)] |= 1ull << c;
      if (proper_dfs(idx + 1, std::max(max_used, c))) return true;
      used_[static_cast<size_t>(u)] &= ~(1ull << c);
      used_[static_cast<size_t>(v)] &= ~(1ull << c);
    }
    return false;
  }

  bool saturated(int v) const { return left_[static_cast<size_t>(v)] == 0; }

  bool conflict_at(int v) const {
    for (int u : g_.neighbors(v))
      if (saturated(u) && sum_[static_cast<size_t>(u)] == sum_[static_cast<size_t>(v)])
        return true;
    return false;
  }

  bool nsd_dfs(size_t idx) {
    if (idx == order_.size()) return true;
    auto [u, v] = order_[idx];
    uint64_t blocked =
        used_[static_cast<size_t>(u)] | used_[static_cast<size_t>(v)];
    for (int c = 1; c <= k_; ++c) {
      if (blocked & (1ull << c)) continue;
      tick();
      place(u, v, c);
      bool ok = true;
      if (saturated(u) && conflict_at(u)) ok = false;
      if (ok && saturated(v) && conflict_at(v)) ok = false;
      if (ok) {
        chosen_.resize(idx + 1);
        chosen_[idx] = c;
        if (nsd_dfs(idx + 1)) return true;
      }
      unplace(u, v, c);
    }
    return false;
  }

  void place(int u, int v, int c) {
    used_[static_cast<size_t>(u)] |= 1ull << c;
    used_[static_cast<size_t>(v)] |= 1ull << c;
    sum_[static_cast<size_t>(u)] += c;
    sum_[static_cast<size_t>(v)] += c;
    --left_[static_cast<size_t>(u)];
    --left_[static_cast<size_t>(v)];
  }

  void unplace(int u, int v, int c) {
    used_[static_cast<size_t>(u)] &= ~(1ull << c);
    used_[static_cast<size_t>(v)] &= ~(1ull << c);
    sum_[static_cast<size_t>(u)] -= c;
    sum_[static_cast<size_t>(v)] -= c;
    ++left_[static_cast<size_t>(u)];
    ++left_[static_cast<size_t>(v)];
  }

  const Graph& g_;
  int k_;
  long long* nodes_;
  long long budget_;
  std::vector<Edge> order_;
  std::vector<uint64_t> used_;
  std::vector<long long> sum_;
  std::vector<int> left_;
  std::vector<int> chosen_;
};

void reject_isolated_edges(const Graph& g) {
  for (const auto& comp : g.components())
    if (comp.size() == 2)
      throw IsolatedEdgeError(
          "neighbour sum distinguishing index undefined: isolated edge");
}

}  // namespace

std::optional<EdgeColoring> find_nsd_coloring(const Graph& g, int k,
                                              long long budget) {
  reject_isolated_edges(g);
  if (k < 0 || k > 62) throw std::invalid_argument("palette out of range");
  if (g.edge_count() == 0) return EdgeColoring(g.vertex_count(), k);
  if (k == 0) return std::nullopt;
  long long nodes = 0;
  Search s(g, k, &nodes, budget);
  EdgeColoring col;
  if (s.nsd_search(col)) return col;
  return std::nullopt;
}

ChiSumResult chi_sum_exact(const Graph& g, int max_palette, long long budget) {
  reject_isolated_edges(g);
  ChiSumResult res;
  long long nodes = 0;
  if (g.edge_count() == 0) {
    res.k = 0;
    res.witness = EdgeColoring(g.vertex_count(), 0);
    return res;
  }
  for (int k = std::max(1, g.max_degree()); k <= std::min(max_palette, 62);
       ++k) {
    Search chroma(g, k, &nodes, budget);
    if (!chroma.proper_feasible()) continue;  // below the chromatic index
    Search full(g, k, &nodes, budget);
    EdgeColoring col;
    if (full.nsd_search(col)) {
      res.k = k;
      res.witness = std::move(col);
      res.nodes_explored = nodes;
      return res;
    }
  }
  res.exceeded_palette = true;
  res.nodes_explored = nodes;
  return res;
}

}  // namespace nsd
