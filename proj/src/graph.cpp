#include "nsd/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace nsd {

std::pair<Graph, std::vector<int>> Graph::delete_vertices(
    const std::vector<int>& victims) const {
  std::vector<bool> gone(static_cast<size_t>(vertex_count()), false);
  for (int v : victims) {
    check_vertex(v);
    gone[static_cast<size_t>(v)] = true;
  }
  std::vector<int> map(static_cast<size_t>(vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < vertex_count(); ++v)
    if (!gone[static_cast<size_t>(v)]) map[static_cast<size_t>(v)] = next++;
  Graph h(next);
  for (int u = 0; u < vertex_count(); ++u) {
    if (gone[static_cast<size_t>(u)]) continue;
    for (int v : adj_[static_cast<size_t>(u)])
      if (u < v && !gone[static_cast<size_t>(v)])
        h.add_edge(map[static_cast<size_t>(u)], map[static_cast<size_t>(v)]);
  }
  return {std::move(h), std::move(map)};
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<size_t>(vertex_count()), false);
  for (int s = 0; s < vertex_count(); ++s) {
    if (seen[static_cast<size_t>(s)]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(s);
    seen[static_cast<size_t>(s)] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int v : adj_[static_cast<size_t>(u)])
        if (!seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = true;
          q.push(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool Graph::is_connected() const {
  if (vertex_count() <= 1) return true;
  return components().size() == 1;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> map(static_cast<size_t>(vertex_count()), -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    check_vertex(vertices[i]);
    map[static_cast<size_t>(vertices[i])] = static_cast<int>(i);
  }
  Graph h(static_cast<int>(vertices.size()));
  for (int u : vertices)
    for (int v : adj_[static_cast<size_t>(u)])
      if (u < v && map[static_cast<size_t>(v)] >= 0)
        h.add_edge(map[static_cast<size_t>(u)], map[static_cast<size_t>(v)]);
  return h;
}

bool Graph::check_simple_symmetric() const {
  long long half_edges = 0;
  for (int u = 0; u < vertex_count(); ++u) {
    if (adj_[static_cast<size_t>(u)].count(u)) return false;
    for (int v : adj_[static_cast<size_t>(u)]) {
      if (v < 0 || v >= vertex_count()) return false;
      if (!adj_[static_cast<size_t>(v)].count(u)) return false;
      ++half_edges;
    }
  }
  return half_edges == 2LL * m_;
}

DegreeProfile degree_profile(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("degree_profile: k < 1");
  if (g.max_degree() > k)
    throw std::invalid_argument("degree_profile: max degree exceeds k");
  DegreeProfile p;
  p.k = k;
  p.counts.assign(static_cast<size_t>(k) + 1, 0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    if (d >= 1) ++p.counts[static_cast<size_t>(d)];
  }
  return p;
}

std::string DegreeProfile::str() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int d = k; d >= 1; --d) {
    if (counts[static_cast<size_t>(d)] == 0) continue;
    if (!first) os << ",";
    os << "n" << d << "=" << counts[static_cast<size_t>(d)];
    first = false;
  }
  os << ")";
  return os.str();
}

bool precedes(const DegreeProfile& a, const DegreeProfile& b) {
  if (a.k != b.k) throw std::invalid_argument("precedes: mismatched k");
  for (int d = a.k; d >= 1; --d) {
    long long x = a.counts[static_cast<size_t>(d)];
    long long y = b.counts[static_cast<size_t>(d)];
    if (x != y) return x < y;
  }
  return false;
}

namespace {

constexpr int kG6Lo = 63;   // '?'
constexpr int kG6Hi = 126;  // '~'

int g6_byte(const std::string& s, size_t i) {
  if (i >= s.size()) throw Graph6Error("graph6: truncated input", i);
  int c = static_cast<unsigned char>(s[i]);
  if (c < kG6Lo || c > kG6Hi)
    throw Graph6Error("graph6: byte out of range 63..126", i);
  return c - kG6Lo;
}

}  // namespace

Graph parse_graph6(const std::string& text) {
  if (text.empty()) throw Graph6Error("graph6: empty input", 0);
  size_t pos = 0;
  long long n;
  if (g6_byte(text, 0) == 63) {  // '~': multi-byte length form
    if (text.size() >= 2 && g6_byte(text, 1) == 63)
      throw Graph6Error("graph6: 8-byte length form not supported", 1);
    n = 0;
    for (size_t i = 1; i <= 3; ++i) n = (n << 6) | g6_byte(text, i);
    pos = 4;
  } else {
    n = g6_byte(text, 0);
    pos = 1;
  }
  if (n > 100000) throw Graph6Error("graph6: vertex count too large", 0);
  Graph g(static_cast<int>(n));
  long long bits = n * (n - 1) / 2;
  long long bit = 0;
  int cur = 0, left = 0;
  for (int col = 1; col < n; ++col) {
    for (int row = 0; row < col; ++row) {
      if (left == 0) {
        cur = g6_byte(text, pos);
        ++pos;
        left = 6;
      }
      if (cur & (1 << (left - 1))) g.add_edge(row, col);
      --left;
      ++bit;
    }
  }
  (void)bits;
  if (left > 0 && (cur & ((1 << left) - 1)) != 0)
    throw Graph6Error("graph6: nonzero padding bits", pos - 1);
  if (pos != text.size())
    throw Graph6Error("graph6: trailing bytes after bit vector", pos);
  return g;
}

std::string encode_graph6(const Graph& g) {
  long long n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kG6Lo));
  } else if (n <= 258047) {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + kG6Lo));
    out.push_back(static_cast<char>(((n >> 6) & 63) + kG6Lo));
    out.push_back(static_cast<char>((n & 63) + kG6Lo));
  } else {
    throw std::invalid_argument("encode_graph6: vertex count too large");
  }
  int cur = 0, used = 0;
  for (int col = 1; col < n; ++col) {
    for (int row = 0; row < col; ++row) {
      cur = (cur << 1) | (g.has_edge(row, col) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(cur + kG6Lo));
        cur = 0;
        used = 0;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<char>((cur << (6 - used)) + kG6Lo));
  return out;
}

}  // namespace nsd
