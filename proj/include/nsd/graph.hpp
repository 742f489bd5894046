#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsd {

/// Undirected edge, stored with the smaller endpoint first.
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("loop edge");
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Simple undirected graph with stable vertex indices 0..n-1 and
/// adjacency-set representation. Mutation goes through add/remove calls;
/// vertex deletion compacts indices and returns the old->new map.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<size_t>(n)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return m_; }

  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  const std::set<int>& neighbors(int v) const { return adj_.at(v); }

  bool has_edge(int u, int v) const {
    if (u == v) return false;
    return adj_.at(u).count(v) > 0;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("loop edge");
    if (adj_[u].count(v)) throw std::invalid_argument("parallel edge");
    adj_[u].insert(v);
    adj_[v].insert(u);
    ++m_;
  }

  void remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (!adj_[u].count(v)) throw std::invalid_argument("removing absent edge");
    adj_[u].erase(v);
    adj_[v].erase(u);
    --m_;
  }

  /// Appends an isolated vertex, returns its index.
  int add_vertex() {
    adj_.emplace_back();
    return vertex_count() - 1;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& s : adj_) d = std::max<int>(d, static_cast<int>(s.size()));
    return d;
  }

  /// All edges sorted by (u, v).
  std::vector<Edge> edges() const {
    std::vector<Edge> es;
    es.reserve(static_cast<size_t>(m_));
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adj_[u])
        if (u < v) es.emplace_back(u, v);
    return es;
  }

  /// Deletes the given vertices; remaining vertices are compacted in index
  /// order. Returns the new graph and the old->new map (-1 for deleted).
  std::pair<Graph, std::vector<int>> delete_vertices(
      const std::vector<int>& victims) const;

  /// Connected components as sorted vertex lists, ordered by smallest member.
  std::vector<std::vector<int>> components() const;

  bool is_connected() const;

  /// Induced subgraph; `vertices` must be sorted and duplicate-free. Vertex i
  /// of the result corresponds to vertices[i].
  Graph induced(const std::vector<int>& vertices) const;

  /// Full invariant scan: adjacency symmetric, no loops, edge count matches.
  bool check_simple_symmetric() const;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
      throw std::out_of_range("vertex index out of range");
  }

  std::vector<std::set<int>> adj_;
  int m_ = 0;
};

/// Counts (n_1, ..., n_k) of vertices per degree, for a fixed cap k.
struct DegreeProfile {
  int k = 0;
  std::vector<long long> counts;  // counts[d] for d in 1..k; index 0 unused

  std::string str() const;
};

DegreeProfile degree_profile(const Graph& g, int k);

/// Strict lexicographic order on (n_k, ..., n_1). Throws on mismatched k.
bool precedes(const DegreeProfile& a, const DegreeProfile& b);

/// graph6 decode error with the offending byte offset.
class Graph6Error : public std::runtime_error {
 public:
  Graph6Error(const std::string& msg, size_t offset)
      : std::runtime_error(msg + " (byte offset " + std::to_string(offset) +
                           ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

/// Decodes one line of graph6 (no ">>graph6<<" header, no trailing newline).
Graph parse_graph6(const std::string& text);

/// Encodes in standard graph6: short form for n <= 62, 3-byte length form up
/// to n = 258047.
std::string encode_graph6(const Graph& g);

}  // namespace nsd
