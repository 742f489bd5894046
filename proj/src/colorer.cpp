#include "nsd/colorer.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "nsd/mad.hpp"
#include "nsd/rainbow.hpp"

namespace nsd {

int choose_k(const Graph& g) { return std::max(6, g.max_degree()); }

namespace {

[[noreturn]] void internal(const Graph& g, const std::string& what) {
  throw ColorerInternalError(what + " [graph6 " + encode_graph6(g) + "]");
}

// ---- derived-role helpers ------------------------------------------------

int other_neighbor(const Graph& g, int v, int excl) {
  for (int u : g.neighbors(v))
    if (u != excl) return u;
  return -1;
}

int degree_two_neighbor(const Graph& g, int v, int excl = -1) {
  for (int u : g.neighbors(v))
    if (u != excl && g.degree(u) == 2) return u;
  return -1;
}

int big_neighbor(const Graph& g, int v, int excl1, int excl2 = -1) {
  for (int u : g.neighbors(v))
    if (u != excl1 && u != excl2 && g.degree(u) >= 3) return u;
  // lenient: fall back to any remaining neighbour
  for (int u : g.neighbors(v))
    if (u != excl1 && u != excl2) return u;
  return -1;
}

// First edge joining a bad 3-vertex x with one of its degree-2 neighbours.
Edge pendant_edge(const Graph& g, int x) {
  int y = degree_two_neighbor(g, x);
  if (y < 0) throw ColorerInternalError("bad 3-vertex without 2-neighbour");
  return make_edge(x, y);
}

// ---- plan assembly --------------------------------------------------------

void finish_plan(const Graph& host, ReductionPlan& p) {
  std::sort(p.free_edges.begin(), p.free_edges.end());
  p.free_edges.erase(std::unique(p.free_edges.begin(), p.free_edges.end()),
                     p.free_edges.end());
  for (const Edge& e : p.free_edges) p.mutable_edges.push_back(e);
  std::sort(p.mutable_edges.begin(), p.mutable_edges.end());
  p.mutable_edges.erase(
      std::unique(p.mutable_edges.begin(), p.mutable_edges.end()),
      p.mutable_edges.end());
  std::set<int> aff;
  for (const Edge& e : p.mutable_edges) {
    aff.insert(e.first);
    aff.insert(e.second);
  }
  p.affected.assign(aff.begin(), aff.end());
  (void)host;
}

// Edits that keep the vertex set: edge deletions and additions.
void plan_edges_only(const Graph& host, ReductionPlan& p,
                     const std::vector<Edge>& del,
                     const std::vector<Edge>& add = {}) {
  p.reduced = host;
  std::set<Edge> gone(del.begin(), del.end());
  for (const Edge& e : del) {
    p.reduced.remove_edge(e.first, e.second);
    p.edits.push_back({GraphEdit::Op::DeleteEdge, e.first, e.second});
  }
  for (const Edge& e : add) {
    p.reduced.add_edge(e.first, e.second);
    p.edits.push_back({GraphEdit::Op::AddEdge, e.first, e.second});
  }
  p.vertex_map.resize(static_cast<size_t>(host.vertex_count()));
  for (int v = 0; v < host.vertex_count(); ++v)
    p.vertex_map[static_cast<size_t>(v)] = v;
  for (const Edge& e : host.edges())
    if (!gone.count(e)) p.edge_map.emplace_back(e, e);
}

void plan_delete_vertices(const Graph& host, ReductionPlan& p,
                          const std::vector<int>& victims) {
  auto [reduced, map] = host.delete_vertices(victims);
  p.reduced = std::move(reduced);
  p.vertex_map = std::move(map);
  for (int v : victims) p.edits.push_back({GraphEdit::Op::DeleteVertex, v});
  for (const Edge& e : host.edges()) {
    int a = p.vertex_map[static_cast<size_t>(e.first)];
    int b = p.vertex_map[static_cast<size_t>(e.second)];
    if (a >= 0 && b >= 0) p.edge_map.emplace_back(e, make_edge(a, b));
  }
}

// Splits w: w keeps the edges not in `moved`, a fresh vertex receives the
// moved ones.
void plan_split(const Graph& host, ReductionPlan& p, int w,
                const std::vector<int>& moved) {
  p.reduced = host;
  int fresh = p.reduced.add_vertex();
  std::set<int> mv(moved.begin(), moved.end());
  for (int x : moved) {
    p.reduced.remove_edge(w, x);
    p.reduced.add_edge(fresh, x);
  }
  p.edits.push_back({GraphEdit::Op::SplitVertex, w, fresh});
  p.vertex_map.resize(static_cast<size_t>(host.vertex_count()));
  for (int v = 0; v < host.vertex_count(); ++v)
    p.vertex_map[static_cast<size_t>(v)] = v;
  for (const Edge& e : host.edges()) {
    if (e.first == w && mv.count(e.second))
      p.edge_map.emplace_back(e, make_edge(fresh, e.second));
    else if (e.second == w && mv.count(e.first))
      p.edge_map.emplace_back(e, make_edge(fresh, e.first));
    else
      p.edge_map.emplace_back(e, e);
  }
  p.derived["split_new"] = fresh;
}

}  // namespace

ReductionPlan reduce(const Graph& g, const ConfigMatch& m, int k) {
  if (!verify_match(g, m)) internal(g, "reduce called with invalid match");
  ReductionPlan p;
  p.kind = m.kind;
  p.match = m;
  std::vector<VertexClass> cls = classify(g);
  auto bad3_pendants_at = [&](int center) {
    std::vector<Edge> out;
    for (int x : g.neighbors(center))
      if (cls[static_cast<size_t>(x)].kind == VertexKind::BadThree)
        for (int y : g.neighbors(x))
          if (g.degree(y) == 2) out.push_back(make_edge(x, y));
    return out;
  };

  switch (m.kind) {
    case ConfigKind::C1: {
      int v = m.role("v"), u = m.role("u");
      plan_delete_vertices(g, p, {v});
      p.free_edges = {make_edge(u, v)};
      break;
    }
    case ConfigKind::C2: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      plan_delete_vertices(g, p, {v});
      p.free_edges = {make_edge(v, u), make_edge(v, w)};
      break;
    }
    case ConfigKind::C3: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      plan_edges_only(g, p, {make_edge(u, v), make_edge(v, w)});
      p.free_edges = {make_edge(u, v), make_edge(v, w)};
      break;
    }
    case ConfigKind::C4: {
      int u = m.role("u"), w = m.role("w");
      plan_edges_only(g, p, {make_edge(u, w)});
      p.free_edges = {make_edge(u, w)};
      break;
    }
    case ConfigKind::C5: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      int wp = degree_two_neighbor(g, w, v);
      if (wp < 0) internal(g, "C5: bad 2-vertex without 2-neighbour != v");
      p.derived["w'"] = wp;
      plan_edges_only(g, p, {make_edge(w, wp)});
      p.free_edges = {make_edge(w, wp)};
      p.mutable_edges = {make_edge(v, u), make_edge(v, w)};
      break;
    }
    case ConfigKind::C6: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      int up = degree_two_neighbor(g, u, v);
      int wp = degree_two_neighbor(g, w, v);
      if (up < 0 || wp < 0) internal(g, "C6: missing 2-neighbour");
      if (up == wp || up == w || wp == u || g.has_edge(up, wp))
        internal(g, "C6: guard violated (earlier configuration present)");
      int upp = other_neighbor(g, up, u);
      int wpp = other_neighbor(g, wp, w);
      p.derived["u'"] = up;
      p.derived["w'"] = wp;
      p.derived["u''"] = upp;
      p.derived["w''"] = wpp;
      plan_edges_only(g, p, {make_edge(u, up), make_edge(w, wp)},
                      {make_edge(up, wp)});
      p.free_edges = {make_edge(u, up), make_edge(w, wp)};
      p.mutable_edges = {make_edge(v, u), make_edge(v, w)};
      break;
    }
    case ConfigKind::C7: {
      int v = m.role("v"), u1 = m.role("u1"), u2 = m.role("u2"),
          w = m.role("w");
      if (g.degree(w) == 2) {
        p.branch = "good2";
        int wp = other_neighbor(g, w, v);
        p.derived["w'"] = wp;
        plan_split(g, p, w, {wp});
        p.mutable_edges = {make_edge(v, w), make_edge(v, u1),
                           make_edge(v, u2)};
      } else {
        p.branch = "bad3";
        int wpp = degree_two_neighbor(g, w, v);
        if (wpp < 0) internal(g, "C7: bad 3-vertex without 2-neighbour");
        int wp = big_neighbor(g, w, v, wpp);
        p.derived["w'"] = wp;
        p.derived["w''"] = wpp;
        plan_split(g, p, w, {wp, wpp});
        p.mutable_edges = {make_edge(v, w), make_edge(v, u1), make_edge(v, u2),
                           make_edge(w, wpp)};
      }
      break;
    }
    case ConfigKind::C8: {
      int v = m.role("v");
      std::vector<int> leaves;
      for (const auto& [name, x] : m.roles)
        if (name[0] == 'u') leaves.push_back(x);
      plan_delete_vertices(g, p, leaves);
      for (int u : leaves) p.free_edges.push_back(make_edge(v, u));
      break;
    }
    case ConfigKind::C9: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      int up = degree_two_neighbor(g, u, v);
      if (up < 0) internal(g, "C9: bad 2-vertex without 2-neighbour != v");
      p.derived["u'"] = up;
      std::vector<Edge> del = {make_edge(v, u), make_edge(u, up),
                               make_edge(v, w)};
      p.free_edges = del;
      if (g.degree(w) == 3) {
        p.branch = "bad3";
        int wpp = degree_two_neighbor(g, w, v);
        if (wpp < 0) internal(g, "C9: bad 3-vertex without 2-neighbour");
        int wp = big_neighbor(g, w, v, wpp);
        p.derived["w'"] = wp;
        p.derived["w''"] = wpp;
        p.free_edges.push_back(make_edge(w, wpp));  // uncoloured, not deleted
      } else {
        p.branch = "good2";
        p.derived["w'"] = other_neighbor(g, w, v);
      }
      plan_edges_only(g, p, del);
      break;
    }
    case ConfigKind::C10: {
      int v = m.role("v"), u = m.role("u");
      int up = degree_two_neighbor(g, u, v);
      if (up < 0) internal(g, "C10: bad 2-vertex without 2-neighbour != v");
      p.derived["u'"] = up;
      plan_edges_only(g, p, {make_edge(v, u), make_edge(u, up)});
      p.free_edges = {make_edge(v, u), make_edge(u, up)};
      p.mutable_edges = bad3_pendants_at(v);
      break;
    }
    case ConfigKind::C11: {
      int v = m.role("v"), u = m.role("u");
      plan_delete_vertices(g, p, {u});
      p.free_edges = {make_edge(v, u)};
      p.mutable_edges = bad3_pendants_at(v);
      break;
    }
    case ConfigKind::C12: {
      int v = m.role("v");
      std::vector<int> us;
      for (const auto& [name, x] : m.roles)
        if (name[0] == 'u') us.push_back(x);
      std::sort(us.begin(), us.end());
      int a = -1, b = -1;
      for (size_t i = 0; i < us.size() && a < 0; ++i)
        for (size_t j = i + 1; j < us.size() && a < 0; ++j)
          if (!g.has_edge(us[i], us[j])) {
            a = us[static_cast<size_t>(i)];
            b = us[static_cast<size_t>(j)];
          }
      if (a < 0)
        internal(g, "C12: five pairwise adjacent half-deficient vertices");
      p.branch = k <= 8 ? "k le8" : "k ge9";
      p.derived["u1"] = a;
      p.derived["u2"] = b;
      int idx = 3;
      for (int x : us)
        if (x != a && x != b) p.derived["u" + std::to_string(idx++)] = x;
      plan_edges_only(g, p, {make_edge(v, a), make_edge(v, b)});
      p.free_edges = {make_edge(v, a), make_edge(v, b)};
      for (int x : us)
        if (cls[static_cast<size_t>(x)].kind == VertexKind::BadThree)
          p.free_edges.push_back(pendant_edge(g, x));
      break;
    }
    case ConfigKind::C13: {
      int v = m.role("v");
      std::vector<int> us = {m.role("u1"), m.role("u2"), m.role("u3")};
      std::sort(us.begin(), us.end());
      int good2 = -1, bad3 = -1;
      for (size_t i = 0; i < 3 && good2 < 0; ++i)
        for (size_t j = i + 1; j < 3 && good2 < 0; ++j)
          if (g.has_edge(us[i], us[j])) {
            int x = us[i], y = us[j];
            if (cls[static_cast<size_t>(x)].kind == VertexKind::GoodTwo &&
                cls[static_cast<size_t>(y)].kind == VertexKind::BadThree) {
              good2 = x;
              bad3 = y;
            } else if (cls[static_cast<size_t>(y)].kind ==
                           VertexKind::GoodTwo &&
                       cls[static_cast<size_t>(x)].kind ==
                           VertexKind::BadThree) {
              good2 = y;
              bad3 = x;
            } else {
              internal(g, "C13: adjacent pair is not good-2 + bad-3");
            }
          }
      if (good2 >= 0) {
        p.branch = "adjacent";
        p.derived["u1"] = good2;
        p.derived["u2"] = bad3;
        plan_edges_only(g, p,
                        {make_edge(good2, v), make_edge(good2, bad3)});
        p.free_edges = {make_edge(good2, v), make_edge(good2, bad3)};
        // extra fallback freedom: the bad-3 vertex's other pendant edge
        int y = degree_two_neighbor(g, bad3, good2);
        if (y >= 0 && y != v) p.mutable_edges.push_back(make_edge(bad3, y));
      } else {
        int w = -1;
        for (int x : g.neighbors(v))
          if (x != us[0] && x != us[1] && x != us[2]) w = x;
        p.derived["w"] = w;
        p.derived["u1"] = us[0];
        p.derived["u2"] = us[1];
        p.derived["u3"] = us[2];
        if (k == 6) {
          p.branch = "k6";
          plan_edges_only(g, p,
                          {make_edge(v, us[0]), make_edge(v, us[1]),
                           make_edge(v, us[2])});
          p.free_edges = {make_edge(v, us[0]), make_edge(v, us[1]),
                          make_edge(v, us[2])};
          for (int x : us)
            if (cls[static_cast<size_t>(x)].kind == VertexKind::BadThree)
              p.free_edges.push_back(pendant_edge(g, x));
        } else {
          p.branch = "k7plus";
          plan_edges_only(g, p, {make_edge(v, us[0]), make_edge(v, us[1])});
          p.free_edges = {make_edge(v, us[0]), make_edge(v, us[1])};
          for (size_t i = 0; i < 2; ++i)
            if (cls[static_cast<size_t>(us[i])].kind == VertexKind::BadThree)
              p.free_edges.push_back(pendant_edge(g, us[i]));
          if (cls[static_cast<size_t>(us[2])].kind == VertexKind::BadThree)
            p.mutable_edges.push_back(pendant_edge(g, us[2]));
        }
      }
      break;
    }
  }
  finish_plan(g, p);
  // structural guards shared by every case
  if (!p.reduced.check_simple_symmetric())
    internal(g, "reduction produced a non-simple graph");
  return p;
}

// ---- extension -------------------------------------------------------------

namespace {

// Mutable view over a partial coloring of the host graph during extension.
class Ext {
 public:
  using Filter = std::function<bool(int endpoint, int nbr)>;

  Ext(const Graph& g, EdgeColoring& col, int k) : g_(g), col_(col), k_(k) {}

  int palette() const { return k_ + 1; }
  bool colored(const Edge& e) const { return col_.has(e); }
  int color(const Edge& e) const { return col_.color(e); }
  long long psum(int v) const { return col_.sum(v); }
  int uncolored_at(int v) const {
    return g_.degree(v) - col_.assigned_count(v);
  }
  bool saturated(int v) const { return uncolored_at(v) == 0; }

  std::vector<int> avail(const Edge& e, const std::vector<long long>& pins,
                         const Filter& filter = nullptr) const {
    std::vector<bool> bad(static_cast<size_t>(palette()) + 1, false);
    for (int z : {e.first, e.second})
      for (int x : g_.neighbors(z)) {
        Edge a = make_edge(z, x);
        if (a == e) continue;
        if (auto c = col_.color_opt(a)) bad[static_cast<size_t>(*c)] = true;
      }
    for (long long v : pins)
      if (v >= 1 && v <= palette()) bad[static_cast<size_t>(v)] = true;
    bool us = uncolored_at(e.first) == 1;
    bool vs = uncolored_at(e.second) == 1;
    if (us && vs && psum(e.first) == psum(e.second)) return {};
    auto saturating_checks = [&](int z, int other) {
      if (uncolored_at(z) != 1) return;
      for (int x : g_.neighbors(z)) {
        if (x == other || !saturated(x)) continue;
        if (filter && !filter(z, x)) continue;
        long long v = psum(x) - psum(z);
        if (v >= 1 && v <= palette()) bad[static_cast<size_t>(v)] = true;
      }
    };
    saturating_checks(e.first, e.second);
    saturating_checks(e.second, e.first);
    std::vector<int> out;
    for (int c = 1; c <= palette(); ++c)
      if (!bad[static_cast<size_t>(c)]) out.push_back(c);
    return out;
  }

  bool greedy(const Edge& e, const std::vector<long long>& pins = {},
              const Filter& filter = nullptr) {
    auto a = avail(e, pins, filter);
    if (a.empty()) return false;
    col_.assign(e, a.front());
    return true;
  }

  void swap_colors(const Edge& a, const Edge& b) {
    int ca = col_.color(a), cb = col_.color(b);
    col_.unassign(a);
    col_.unassign(b);
    col_.assign(a, cb);
    col_.assign(b, ca);
  }

  // Colors (minus pins) not blocked by properness at either endpoint; no sum
  // logic. Used to build the rainbow selection lists.
  std::vector<int> legal_list(const Edge& e,
                              const std::vector<long long>& pins) const {
    std::vector<bool> bad(static_cast<size_t>(palette()) + 1, false);
    for (int z : {e.first, e.second})
      for (int x : g_.neighbors(z)) {
        Edge a = make_edge(z, x);
        if (a == e) continue;
        if (auto c = col_.color_opt(a)) bad[static_cast<size_t>(*c)] = true;
      }
    for (long long v : pins)
      if (v >= 1 && v <= palette()) bad[static_cast<size_t>(v)] = true;
    std::vector<int> out;
    for (int c = 1; c <= palette(); ++c)
      if (!bad[static_cast<size_t>(c)]) out.push_back(c);
    return out;
  }

  // The color for `e` that would equalise s(a) and s(b), when that value does
  // not depend on any other uncolored edge (a shared uncolored edge (a, b)
  // cancels out). nullopt when the comparison is still floating.
  std::optional<long long> forced_equal_value(const Edge& e, int a,
                                              int b) const {
    bool at_a = (e.first == a || e.second == a);
    bool at_b = (e.first == b || e.second == b);
    if (at_a && at_b) return std::nullopt;  // cancels on both sides
    Edge shared = g_.has_edge(a, b) ? make_edge(a, b) : Edge{-1, -1};
    long long sa = 0, sb = 0;
    int open_a = 0, open_b = 0;
    for (int x : g_.neighbors(a)) {
      Edge ea = make_edge(a, x);
      if (ea == e || ea == shared) continue;
      if (auto c = col_.color_opt(ea))
        sa += *c;
      else
        ++open_a;
    }
    for (int x : g_.neighbors(b)) {
      Edge eb = make_edge(b, x);
      if (eb == e || eb == shared) continue;
      if (auto c = col_.color_opt(eb))
        sb += *c;
      else
        ++open_b;
    }
    if (shared.first >= 0 && !col_.has(shared)) {
      // fine: the shared edge contributes equally to both sums
    } else if (shared.first >= 0) {
      long long c = col_.color(shared);
      sa += c;
      sb += c;
    }
    if (open_a || open_b) return std::nullopt;
    if (at_a) return sb - sa;
    if (at_b) return sa - sb;
    return std::nullopt;
  }

  const Graph& g() const { return g_; }
  EdgeColoring& col() { return col_; }

 private:
  const Graph& g_;
  EdgeColoring& col_;
  int k_;
};

bool coloring_ok(const Graph& g, const EdgeColoring& col) {
  try {
    return is_nsd(g, col);
  } catch (const std::exception&) {
    return false;
  }
}

// Colors every remaining uncolored edge with full constraint checks; used for
// the deliberately uncoloured pendant edges of bad 3-vertices.
bool finish_uncolored(Ext& x, const ReductionPlan& p) {
  for (const Edge& e : p.free_edges)
    if (!x.colored(e) && !x.greedy(e)) return false;
  return true;
}

// Re-colours the pendant edge of every bad 3-neighbour of v still in conflict
// with v (the post-pass of the C10/C11 cases).
bool adjust_bad3_conflicts(Ext& x, int v,
                           const std::vector<VertexClass>& cls) {
  const Graph& g = x.g();
  for (int nbr : g.neighbors(v)) {
    if (x.psum(nbr) != x.psum(v)) continue;
    if (cls[static_cast<size_t>(nbr)].kind != VertexKind::BadThree)
      return false;
    Edge e = pendant_edge(g, nbr);
    x.col().unassign(e);
    if (!x.greedy(e)) return false;
  }
  return true;
}

std::vector<long long> maybe_pin(std::optional<long long> v) {
  std::vector<long long> pins;
  if (v) pins.push_back(*v);
  return pins;
}

void append_pin(std::vector<long long>& pins, std::optional<long long> v) {
  if (v) pins.push_back(*v);
}

// Forbidden staircase sums so that v avoids the sums of the given saturated
// neighbours; base is v's current colored sum.
std::set<long long> forbidden_sums_for(Ext& x, int v,
                                       const std::vector<int>& nbrs) {
  std::set<long long> out;
  long long base = x.psum(v);
  for (int n : nbrs)
    if (x.saturated(n)) out.insert(x.psum(n) - base);
  return out;
}

bool assign_pick(Ext& x, const std::vector<Edge>& edges,
                 const std::vector<std::vector<int>>& lists,
                 const std::set<long long>& forbidden) {
  ListFamily fam;
  fam.lists = lists;
  for (const auto& l : fam.lists)
    if (l.size() < fam.lists.size()) return false;
  std::optional<RainbowSelection> sel;
  try {
    sel = pick_avoiding(fam, forbidden);
  } catch (const std::exception&) {
    return false;
  }
  if (!sel) return false;
  for (size_t i = 0; i < edges.size(); ++i)
    x.col().assign(edges[i], sel->values[i]);
  return true;
}

// ---- per-case scripted extensions -----------------------------------------

bool script_c1(Ext& x, const ReductionPlan& p) {
  return x.greedy(make_edge(p.match.role("u"), p.match.role("v")));
}

bool script_c2(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v"), u = p.match.role("u"), w = p.match.role("w");
  Edge vu = make_edge(v, u), vw = make_edge(v, w);
  if (!x.greedy(vu, maybe_pin(x.forced_equal_value(vu, v, w)))) return false;
  return x.greedy(vw);
}

bool script_c3(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v"), u = p.match.role("u"), w = p.match.role("w");
  Edge uv = make_edge(u, v), vw = make_edge(v, w);
  if (!x.greedy(uv, maybe_pin(x.forced_equal_value(uv, v, w)))) return false;
  return x.greedy(vw);
}

bool script_c4(Ext& x, const ReductionPlan& p) {
  return x.greedy(make_edge(p.match.role("u"), p.match.role("w")));
}

bool script_c5(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v"), u = p.match.role("u"), w = p.match.role("w");
  int wp = p.derived.at("w'");
  const Graph& g = x.g();
  int xq = other_neighbor(g, wp, w);
  Edge vw = make_edge(v, w), vu = make_edge(v, u);
  if (xq >= 0 && x.color(vw) == x.color(make_edge(wp, xq)))
    x.swap_colors(vu, vw);
  if (xq >= 0 && x.color(vw) == x.color(make_edge(wp, xq))) return false;
  return x.greedy(make_edge(w, wp));
}

bool script_c6(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v"), u = p.match.role("u"), w = p.match.role("w");
  int up = p.derived.at("u'"), wp = p.derived.at("w'");
  int upp = p.derived.at("u''"), wpp = p.derived.at("w''");
  Edge vu = make_edge(v, u), vw = make_edge(v, w);
  Edge uu = make_edge(u, up), ww = make_edge(w, wp);
  Edge upe = make_edge(up, upp), wpe = make_edge(wp, wpp);
  auto clash = [&] {
    return x.color(vu) == x.color(upe) || x.color(vw) == x.color(wpe);
  };
  if (clash()) x.swap_colors(vu, vw);
  if (clash()) return false;
  return x.greedy(uu) && x.greedy(ww);
}

bool script_c7(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v"), u1 = p.match.role("u1"), u2 = p.match.role("u2"),
      w = p.match.role("w");
  int wp = p.derived.at("w'");
  const Graph& g = x.g();
  Edge vw = make_edge(v, w);
  Edge wwp = make_edge(w, wp);
  // candidate colors live on vw, vu1, vu2; pick one clearing both conditions
  std::vector<Edge> cand = {vw, make_edge(v, u1), make_edge(v, u2)};
  long long block1 = x.color(wwp);
  long long block2;
  if (p.branch == "good2") {
    block2 = x.psum(wp) - x.color(wwp);  // would force s(w) == s(w')
  } else {
    int wpp = p.derived.at("w''");
    int y = other_neighbor(g, wpp, w);
    block2 = (y >= 0 ? x.color(make_edge(wpp, y)) : 0) - x.color(wwp);
  }
  Edge chosen{-1, -1};
  for (const Edge& e : cand) {
    int c = x.color(e);
    if (c != block1 && c != block2) {
      chosen = e;
      break;
    }
  }
  if (chosen.first < 0) return false;
  if (chosen != vw) x.swap_colors(vw, chosen);
  if (p.branch == "bad3") {
    int wpp = p.derived.at("w''");
    Edge wwpp = make_edge(w, wpp);
    bool conflict = x.color(vw) == x.color(wwpp) ||
                    x.psum(w) == x.psum(v) || x.psum(w) == x.psum(wp);
    if (conflict) {
      x.col().unassign(wwpp);
      if (!x.greedy(wwpp)) return false;
    }
  }
  return true;
}

bool script_c8(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v");
  const Graph& g = x.g();
  std::vector<Edge> edges = p.free_edges;  // the leaf edges, sorted
  std::vector<int> others;
  std::set<int> leaf_set;
  for (const Edge& e : edges) leaf_set.insert(e.first == v ? e.second : e.first);
  for (int nb : g.neighbors(v))
    if (!leaf_set.count(nb)) others.push_back(nb);
  std::vector<int> base = x.legal_list(edges.front(), {});
  std::vector<std::vector<int>> lists(edges.size(), base);
  return assign_pick(x, edges, lists, forbidden_sums_for(x, v, others));
}

bool script_c9(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v"), u = p.match.role("u"), w = p.match.role("w");
  int up = p.derived.at("u'");
  const Graph& g = x.g();
  Edge vu = make_edge(v, u), vw = make_edge(v, w), uup = make_edge(u, up);
  std::vector<long long> pins_vw;
  if (p.branch == "bad3")
    append_pin(pins_vw, x.forced_equal_value(vw, w, p.derived.at("w''")));
  else
    append_pin(pins_vw, x.forced_equal_value(vw, w, p.derived.at("w'")));
  std::vector<long long> pins_vu;
  append_pin(pins_vu, x.forced_equal_value(vu, u, up));
  append_pin(pins_vu, x.forced_equal_value(vu, v, w));
  std::vector<int> others;
  for (int nb : g.neighbors(v))
    if (nb != u && nb != w) others.push_back(nb);
  if (!assign_pick(x, {vu, vw},
                   {x.legal_list(vu, pins_vu), x.legal_list(vw, pins_vw)},
                   forbidden_sums_for(x, v, others)))
    return false;
  if (!x.greedy(uup)) return false;
  if (p.branch == "bad3") {
    Edge wwpp = make_edge(w, p.derived.at("w''"));
    if (!x.greedy(wwpp)) return false;
  }
  return true;
}

bool script_c10(Ext& x, const ReductionPlan& p,
                const std::vector<VertexClass>& cls) {
  int v = p.match.role("v"), u = p.match.role("u");
  int up = p.derived.at("u'");
  Edge vu = make_edge(v, u), uup = make_edge(u, up);
  auto neither_filter = [&](int z, int nbr) {
    if (z != v) return true;
    const VertexClass& c = cls[static_cast<size_t>(nbr)];
    return !c.deficient && !c.half_deficient;
  };
  std::vector<long long> pins;
  append_pin(pins, x.forced_equal_value(vu, u, up));
  if (!x.greedy(vu, pins, neither_filter)) return false;
  if (!x.greedy(uup)) return false;
  return adjust_bad3_conflicts(x, v, cls);
}

bool script_c11(Ext& x, const ReductionPlan& p,
                const std::vector<VertexClass>& cls) {
  int v = p.match.role("v"), u = p.match.role("u");
  Edge vu = make_edge(v, u);
  auto neither_filter = [&](int z, int nbr) {
    if (z != v) return true;
    const VertexClass& c = cls[static_cast<size_t>(nbr)];
    return !c.deficient && !c.half_deficient;
  };
  if (!x.greedy(vu, {}, neither_filter)) return false;
  return adjust_bad3_conflicts(x, v, cls);
}

// Pin guarding u_i against its least-degree neighbour other than v.
std::optional<long long> least_degree_pin(Ext& x, int v, int ui) {
  const Graph& g = x.g();
  int best = -1;
  for (int nb : g.neighbors(ui)) {
    if (nb == v) continue;
    if (best < 0 || g.degree(nb) < g.degree(best)) best = nb;
  }
  if (best < 0) return std::nullopt;
  return x.forced_equal_value(make_edge(v, ui), ui, best);
}

bool script_c12(Ext& x, const ReductionPlan& p) {
  int v = p.match.role("v");
  int u1 = p.derived.at("u1"), u2 = p.derived.at("u2");
  Edge e1 = make_edge(v, u1), e2 = make_edge(v, u2);
  if (p.branch == "k le8") {
    if (!x.greedy(e2, maybe_pin(least_degree_pin(x, v, u2)))) return false;
    if (!x.greedy(e1, maybe_pin(least_degree_pin(x, v, u1)))) return false;
  } else {
    std::vector<long long> pins1, pins2;
    append_pin(pins1, x.forced_equal_value(e1, v, u2));
    append_pin(pins1, least_degree_pin(x, v, u1));
    append_pin(pins2, x.forced_equal_value(e2, v, u1));
    append_pin(pins2, least_degree_pin(x, v, u2));
    std::vector<int> rest = {p.derived.at("u3"), p.derived.at("u4"),
                             p.derived.at("u5")};
    if (!assign_pick(x, {e1, e2},
                     {x.legal_list(e1, pins1), x.legal_list(e2, pins2)},
                     forbidden_sums_for(x, v, rest)))
      return false;
  }
  return finish_uncolored(x, p);
}

bool script_c13(Ext& x, const ReductionPlan& p, int k) {
  int v = p.match.role("v");
  if (p.branch == "adjacent") {
    int u1 = p.derived.at("u1"), u2 = p.derived.at("u2");
    Edge vu1 = make_edge(v, u1), u1u2 = make_edge(u1, u2);
    if (!x.greedy(vu1, maybe_pin(x.forced_equal_value(vu1, u1, u2))))
      return false;
    return x.greedy(u1u2);
  }
  int u1 = p.derived.at("u1"), u2 = p.derived.at("u2"), u3 = p.derived.at("u3");
  int w = p.derived.at("w");
  if (p.branch == "k6") {
    Edge e1 = make_edge(v, u1), e2 = make_edge(v, u2), e3 = make_edge(v, u3);
    auto l1 = x.avail(e1, maybe_pin(least_degree_pin(x, v, u1)));
    if (l1.empty()) return false;
    int cvw = x.color(make_edge(v, w));
    int pick = -1;
    if (cvw >= k - 1) {
      pick = l1.front();
    } else {
      for (int c : l1)
        if (c >= k - 1) {
          pick = c;
          break;
        }
    }
    if (pick < 0) return false;
    x.col().assign(e1, pick);
    std::vector<long long> pins2 = maybe_pin(least_degree_pin(x, v, u2));
    std::vector<long long> pins3 = maybe_pin(least_degree_pin(x, v, u3));
    if (!assign_pick(x, {e2, e3},
                     {x.legal_list(e2, pins2), x.legal_list(e3, pins3)},
                     forbidden_sums_for(x, v, {u1, w})))
      return false;
  } else {  // k7plus
    Edge e1 = make_edge(v, u1), e2 = make_edge(v, u2);
    std::vector<long long> pins1, pins2;
    append_pin(pins1, x.forced_equal_value(e1, v, u2));
    append_pin(pins1, least_degree_pin(x, v, u1));
    append_pin(pins2, x.forced_equal_value(e2, v, u1));
    append_pin(pins2, least_degree_pin(x, v, u2));
    if (!assign_pick(x, {e1, e2},
                     {x.legal_list(e1, pins1), x.legal_list(e2, pins2)},
                     forbidden_sums_for(x, v, {w, u3})))
      return false;
  }
  return finish_uncolored(x, p);
}

bool run_script(Ext& x, const ReductionPlan& p, int k,
                const std::vector<VertexClass>& cls) {
  switch (p.kind) {
    case ConfigKind::C1:
      return script_c1(x, p);
    case ConfigKind::C2:
      return script_c2(x, p);
    case ConfigKind::C3:
      return script_c3(x, p);
    case ConfigKind::C4:
      return script_c4(x, p);
    case ConfigKind::C5:
      return script_c5(x, p);
    case ConfigKind::C6:
      return script_c6(x, p);
    case ConfigKind::C7:
      return script_c7(x, p);
    case ConfigKind::C8:
      return script_c8(x, p);
    case ConfigKind::C9:
      return script_c9(x, p);
    case ConfigKind::C10:
      return script_c10(x, p, cls);
    case ConfigKind::C11:
      return script_c11(x, p, cls);
    case ConfigKind::C12:
      return script_c12(x, p);
    case ConfigKind::C13:
      return script_c13(x, p, k);
  }
  return false;
}

// Exhaustive completion over the mutable edge set, properness- and
// sum-pruned. Existence is guaranteed by the case analysis, so running dry
// here (or out of budget) is an implementation defect, not an input defect.
bool fallback_extend(Ext& x, const ReductionPlan& p, long long budget) {
  const Graph& g = x.g();
  std::vector<Edge> edges = p.mutable_edges;
  std::stable_sort(edges.begin(), edges.end(),
                   [&](const Edge& a, const Edge& b) {
                     int da = g.degree(a.first) + g.degree(a.second);
                     int db = g.degree(b.first) + g.degree(b.second);
                     if (da != db) return da > db;
                     return a < b;
                   });
  for (const Edge& e : edges)
    if (x.colored(e)) x.col().unassign(e);
  long long nodes = 0;
  std::function<bool(size_t)> dfs = [&](size_t i) -> bool {
    if (i == edges.size()) return coloring_ok(g, x.col());
    for (int c : x.avail(edges[i], {})) {
      if (++nodes > budget) return false;
      x.col().assign(edges[i], c);
      if (dfs(i + 1)) return true;
      x.col().unassign(edges[i]);
    }
    return false;
  };
  return dfs(0);
}

}  // namespace

void extend(const Graph& g, EdgeColoring& col, const ReductionPlan& plan,
            int k, ColorerStats& stats, const ColorerOptions& opts) {
  Ext x(g, col, k);
  std::vector<VertexClass> cls = classify(g);
  bool ok;
  try {
    ok = run_script(x, plan, k, cls);
  } catch (const std::exception&) {
    ok = false;  // a confused script is a mis-transcription, not a dead end
  }
  if (ok) ok = coloring_ok(g, col);
  if (!ok) {
    ++stats.fallback_activations;
    ok = fallback_extend(x, plan, opts.fallback_budget);
    if (ok) ok = coloring_ok(g, col);
  }
  if (!ok) {
    ++stats.fallback_failures;
    internal(g, "inextensible partial coloring in case " + plan.match.str());
  }
}

namespace {

EdgeColoring color_component(const Graph& h, int k, ColorerStats& stats,
                             const ColorerOptions& opts) {
  auto matches = find_configs(h, k, MatchMode::FirstByIndex);
  if (matches.empty())
    internal(h, "no configuration found in a sparse component (k=" +
                    std::to_string(k) + ")");
  ReductionPlan plan = reduce(h, matches[0], k);
  if (!precedes(degree_profile(plan.reduced, k), degree_profile(h, k)))
    internal(h, "degree profile did not decrease in case " + matches[0].str());
  if (opts.debug_mad_checks && !mad_less_than(plan.reduced, Rational{3, 1}))
    internal(h, "mad(H') >= 3 after case " + matches[0].str());
  ++stats.reductions;
  ++stats.by_kind[static_cast<size_t>(plan.kind)];
  std::string key = "C" + std::to_string(static_cast<int>(plan.kind));
  if (!plan.branch.empty()) key += "/" + plan.branch;
  ++stats.by_branch[key];
  if (opts.trace) {
    std::ostringstream os;
    os << matches[0].str();
    if (!plan.branch.empty()) os << " branch=" << plan.branch;
    os << " profile " << degree_profile(h, k).str() << " -> "
       << degree_profile(plan.reduced, k).str();
    stats.trace.push_back(os.str());
  }
  EdgeColoring down = color_recursive(plan.reduced, k, stats, opts);
  EdgeColoring lifted(h.vertex_count(), k + 1);
  std::set<Edge> skip(plan.free_edges.begin(), plan.free_edges.end());
  for (const auto& [he, re] : plan.edge_map) {
    if (skip.count(he)) continue;
    lifted.assign(he, down.color(re));
  }
  extend(h, lifted, plan, k, stats, opts);
  return lifted;
}

}  // namespace

EdgeColoring color_recursive(const Graph& g, int k, ColorerStats& stats,
                             const ColorerOptions& opts) {
  EdgeColoring col(g.vertex_count(), k + 1);
  for (const auto& comp : g.components()) {
    if (comp.size() == 1) continue;
    if (comp.size() == 2) {
      col.assign(make_edge(comp[0], comp[1]), 1);
      continue;
    }
    Graph sub = g.induced(comp);
    EdgeColoring subcol = color_component(sub, k, stats, opts);
    for (const Edge& e : sub.edges())
      col.assign(make_edge(comp[static_cast<size_t>(e.first)],
                           comp[static_cast<size_t>(e.second)]),
                 subcol.color(e));
  }
  return col;
}

ColorerResult color_graph(const Graph& g, const ColorerOptions& opts) {
  if (g.max_degree() < 6)
    throw std::invalid_argument("color_graph: maximum degree below 6");
  for (const auto& comp : g.components())
    if (comp.size() == 2)
      throw IsolatedEdgeError("color_graph: isolated edge present");
  if (!mad_less_than(g, Rational{3, 1}))
    throw std::invalid_argument("color_graph: mad(g) >= 3");
  ColorerResult res;
  res.k = choose_k(g);
  res.coloring = color_recursive(g, res.k, res.stats, opts);
  if (!coloring_ok(g, res.coloring))
    internal(g, "final coloring failed independent verification");
  return res;
}

}  // namespace nsd
