#include "nsd/configs.hpp"

#include <algorithm>
#include <sstream>

namespace nsd {

std::vector<VertexClass> classify(const Graph& g) {
  std::vector<VertexClass> out(static_cast<size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) {
    VertexClass& c = out[static_cast<size_t>(v)];
    c.degree = g.degree(v);
    bool two_neighbour = false;
    for (int u : g.neighbors(v))
      if (g.degree(u) == 2) two_neighbour = true;
    switch (c.degree) {
      case 0:
        c.kind = VertexKind::Isolated;
        break;
      case 1:
        c.kind = VertexKind::One;
        break;
      case 2:
        c.kind = two_neighbour ? VertexKind::BadTwo : VertexKind::GoodTwo;
        break;
      case 3:
        c.kind = two_neighbour ? VertexKind::BadThree : VertexKind::GoodThree;
        break;
      default:
        c.kind = VertexKind::Big;
        break;
    }
    c.deficient = c.kind == VertexKind::One || c.kind == VertexKind::BadTwo;
    c.half_deficient =
        c.kind == VertexKind::GoodTwo || c.kind == VertexKind::BadThree;
  }
  return out;
}

const char* vertex_kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::Isolated:
      return "isolated";
    case VertexKind::One:
      return "one";
    case VertexKind::BadTwo:
      return "bad-two";
    case VertexKind::GoodTwo:
      return "good-two";
    case VertexKind::BadThree:
      return "bad-three";
    case VertexKind::GoodThree:
      return "good-three";
    case VertexKind::Big:
      return "big";
  }
  return "?";
}

bool distinguishes_two_neighbours(int d, int k) {
  if (d < 1 || k < 6)
    throw std::invalid_argument("distinguishes_two_neighbours: d>=1, k>=6");
  return static_cast<long long>(d) * (d - 1) / 2 > k + 1;
}

int ConfigMatch::role(const std::string& name) const {
  for (const auto& [n, v] : roles)
    if (n == name) return v;
  throw std::out_of_range("missing role " + name);
}

bool ConfigMatch::has_role(const std::string& name) const {
  for (const auto& [n, v] : roles)
    if (n == name) return true;
  return false;
}

std::string ConfigMatch::str() const {
  std::ostringstream os;
  os << "C" << static_cast<int>(kind) << " k=" << k << " roles:";
  for (const auto& [n, v] : roles) os << " " << n << "=" << v;
  return os.str();
}

namespace {

// Threshold predicates, exact over the rationals:
//   (k/2+1)^-  : 2d <= k+2
//   ((k+1)/2)^-: 2d <= k+1
//   (k/2)^-    : 2d <= k
//   (2k/3)^-   : 3d <= 2k
bool le_half_plus_one(int d, int k) { return 2 * d <= k + 2; }
bool le_half_of_kp1(int d, int k) { return 2 * d <= k + 1; }
bool le_half(int d, int k) { return 2 * d <= k; }
bool le_two_thirds(int d, int k) { return 3 * d <= 2 * k; }

using Roles = std::vector<std::pair<std::string, int>>;

class Matcher {
 public:
  Matcher(const Graph& g, int k, MatchMode mode)
      : g_(g), k_(k), mode_(mode), cls_(classify(g)) {}

  std::vector<ConfigMatch> run() {
    using Fn = void (Matcher::*)();
    static constexpr Fn fns[] = {
        &Matcher::c1, &Matcher::c2,  &Matcher::c3,  &Matcher::c4,
        &Matcher::c5, &Matcher::c6,  &Matcher::c7,  &Matcher::c8,
        &Matcher::c9, &Matcher::c10, &Matcher::c11, &Matcher::c12,
        &Matcher::c13};
    int index = 1;
    for (Fn f : fns) {
      kind_ = static_cast<ConfigKind>(index++);
      (this->*f)();
      if (mode_ == MatchMode::FirstByIndex && !out_.empty()) break;
    }
    return std::move(out_);
  }

 private:
  bool done() const {
    return mode_ == MatchMode::FirstByIndex && !out_.empty();
  }

  void emit(Roles roles) {
    ConfigMatch m;
    m.kind = kind_;
    m.k = k_;
    m.roles = std::move(roles);
    out_.push_back(std::move(m));
  }

  int deg(int v) const { return cls_[static_cast<size_t>(v)].degree; }
  const VertexClass& cl(int v) const { return cls_[static_cast<size_t>(v)]; }

  void c1() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      if (deg(v) != 1) continue;
      int u = *g_.neighbors(v).begin();
      if (le_half_plus_one(deg(u), k_)) emit({{"v", v}, {"u", u}});
    }
  }

  void c2() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      if (deg(v) != 2) continue;
      for (int u : g_.neighbors(v)) {
        for (int w : g_.neighbors(v)) {
          if (u == w) continue;
          if (le_half_of_kp1(deg(u), k_) && le_half(deg(w), k_))
            emit({{"v", v}, {"u", u}, {"w", w}});
          if (done()) return;
        }
      }
    }
  }

  void c3() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      if (deg(v) != 3) continue;
      for (int u : g_.neighbors(v)) {
        for (int w : g_.neighbors(v)) {
          if (u == w) continue;
          if (le_half(deg(u), k_) && deg(w) == 2) {
            int v1 = -1;
            for (int x : g_.neighbors(v))
              if (x != u && x != w) v1 = x;
            emit({{"v", v}, {"u", u}, {"w", w}, {"v1", v1}});
          }
          if (done()) return;
        }
      }
    }
  }

  void c4() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      for (int u : g_.neighbors(v)) {
        if (deg(u) != 2) continue;
        for (int w : g_.neighbors(v)) {
          if (w <= u || deg(w) != 2) continue;
          if (g_.has_edge(u, w)) emit({{"v", v}, {"u", u}, {"w", w}});
          if (done()) return;
        }
      }
    }
  }

  void c5() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      for (int u : g_.neighbors(v)) {
        if (deg(u) != 1) continue;
        for (int w : g_.neighbors(v)) {
          if (cl(w).kind == VertexKind::BadTwo)
            emit({{"v", v}, {"u", u}, {"w", w}});
          if (done()) return;
        }
      }
    }
  }

  void c6() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      for (int u : g_.neighbors(v)) {
        if (cl(u).kind != VertexKind::BadTwo) continue;
        for (int w : g_.neighbors(v)) {
          if (w <= u || cl(w).kind != VertexKind::BadTwo) continue;
          emit({{"v", v}, {"u", u}, {"w", w}});
          if (done()) return;
        }
      }
    }
  }

  void c7() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      for (int u1 : g_.neighbors(v)) {
        if (deg(u1) != 1) continue;
        for (int u2 : g_.neighbors(v)) {
          if (u2 <= u1 || deg(u2) != 1) continue;
          for (int w : g_.neighbors(v)) {
            if (!cl(w).half_deficient) continue;
            emit({{"v", v}, {"u1", u1}, {"u2", u2}, {"w", w}});
            if (done()) return;
          }
        }
      }
    }
  }

  void c8() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      int d = deg(v);
      if (d < 3) continue;
      std::vector<int> leaves;
      for (int u : g_.neighbors(v))
        if (deg(u) == 1) leaves.push_back(u);
      int need = d - 2;
      if (static_cast<int>(leaves.size()) < need) continue;
      // every ascending subset of size d-2
      std::vector<int> pick(static_cast<size_t>(need));
      subsets(leaves, 0, 0, pick, v);
      if (done()) return;
    }
  }

  void subsets(const std::vector<int>& pool, size_t from, size_t got,
               std::vector<int>& pick, int v) {
    if (done()) return;
    if (got == pick.size()) {
      Roles r{{"v", v}};
      for (size_t i = 0; i < pick.size(); ++i)
        r.emplace_back("u" + std::to_string(i + 1), pick[i]);
      emit(std::move(r));
      return;
    }
    for (size_t i = from; i + (pick.size() - got) <= pool.size(); ++i) {
      pick[got] = pool[i];
      subsets(pool, i + 1, got + 1, pick, v);
      if (done()) return;
    }
  }

  void c9() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      if (!le_two_thirds(deg(v), k_)) continue;
      for (int u : g_.neighbors(v)) {
        if (cl(u).kind != VertexKind::BadTwo) continue;
        for (int w : g_.neighbors(v)) {
          if (!cl(w).half_deficient) continue;
          emit({{"v", v}, {"u", u}, {"w", w}});
          if (done()) return;
        }
      }
    }
  }

  void c10() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      int bad2 = -1, nbad2 = 0, nhalf = 0, nneither = 0;
      for (int x : g_.neighbors(v)) {
        if (cl(x).kind == VertexKind::BadTwo) {
          ++nbad2;
          bad2 = x;
        }
        if (cl(x).half_deficient) ++nhalf;
        if (!cl(x).deficient && !cl(x).half_deficient) ++nneither;
      }
      if (nbad2 == 1 && nhalf >= 1 && nneither <= k_ - deg(v))
        emit({{"v", v}, {"u", bad2}});
    }
  }

  void c11() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      int one = -1, nones = 0, nneither = 0;
      for (int x : g_.neighbors(v)) {
        if (deg(x) == 1) {
          ++nones;
          one = x;
        }
        if (!cl(x).deficient && !cl(x).half_deficient) ++nneither;
      }
      if (nones == 1 && nneither <= k_ - deg(v) + 1)
        emit({{"v", v}, {"u", one}});
    }
  }

  void c12() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      if (deg(v) != 5) continue;
      bool all = true;
      for (int x : g_.neighbors(v))
        if (!cl(x).half_deficient) all = false;
      if (!all) continue;
      Roles r{{"v", v}};
      int i = 1;
      for (int x : g_.neighbors(v))
        r.emplace_back("u" + std::to_string(i++), x);
      emit(std::move(r));
    }
  }

  void c13() {
    for (int v = 0; v < g_.vertex_count() && !done(); ++v) {
      if (deg(v) != 4) continue;
      std::vector<int> half;
      for (int x : g_.neighbors(v))
        if (cl(x).half_deficient) half.push_back(x);
      if (half.size() < 3) continue;
      for (size_t a = 0; a < half.size() && !done(); ++a)
        for (size_t b = a + 1; b < half.size() && !done(); ++b)
          for (size_t c = b + 1; c < half.size() && !done(); ++c)
            emit({{"v", v},
                  {"u1", half[a]},
                  {"u2", half[b]},
                  {"u3", half[c]}});
    }
  }

  const Graph& g_;
  int k_;
  MatchMode mode_;
  std::vector<VertexClass> cls_;
  ConfigKind kind_{};
  std::vector<ConfigMatch> out_;
};

}  // namespace

std::vector<ConfigMatch> find_configs(const Graph& g, int k, MatchMode mode) {
  if (k < 6) throw std::invalid_argument("find_configs: k < 6");
  if (g.max_degree() > k)
    throw std::invalid_argument("find_configs: max degree exceeds k");
  return Matcher(g, k, mode).run();
}

bool verify_match(const Graph& g, const ConfigMatch& m) {
  int k = m.k;
  auto deg = [&](int v) { return g.degree(v); };
  auto in_range = [&](int v) { return v >= 0 && v < g.vertex_count(); };
  for (const auto& [name, v] : m.roles)
    if (!in_range(v)) return false;
  // Badness and deficiency re-derived from scratch.
  auto is_bad = [&](int v) {
    if (deg(v) != 2 && deg(v) != 3) return false;
    for (int u : g.neighbors(v))
      if (deg(u) == 2) return true;
    return false;
  };
  auto deficient = [&](int v) {
    return deg(v) == 1 || (deg(v) == 2 && is_bad(v));
  };
  auto half_deficient = [&](int v) {
    return (deg(v) == 2 && !is_bad(v)) || (deg(v) == 3 && is_bad(v));
  };
  auto adj = [&](int a, int b) { return g.has_edge(a, b); };

  switch (m.kind) {
    case ConfigKind::C1: {
      int v = m.role("v"), u = m.role("u");
      return deg(v) == 1 && adj(v, u) && 2 * deg(u) <= k + 2;
    }
    case ConfigKind::C2: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      return deg(v) == 2 && u != w && adj(v, u) && adj(v, w) &&
             2 * deg(u) <= k + 1 && 2 * deg(w) <= k;
    }
    case ConfigKind::C3: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      return deg(v) == 3 && u != w && adj(v, u) && adj(v, w) &&
             2 * deg(u) <= k && deg(w) == 2;
    }
    case ConfigKind::C4: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      return u != w && u != v && w != v && adj(u, v) && adj(v, w) &&
             adj(u, w) && deg(u) == 2 && deg(w) == 2;
    }
    case ConfigKind::C5: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      return adj(v, u) && adj(v, w) && deg(u) == 1 && deg(w) == 2 &&
             is_bad(w);
    }
    case ConfigKind::C6: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      return u != w && adj(v, u) && adj(v, w) && deg(u) == 2 && is_bad(u) &&
             deg(w) == 2 && is_bad(w);
    }
    case ConfigKind::C7: {
      int v = m.role("v"), u1 = m.role("u1"), u2 = m.role("u2"),
          w = m.role("w");
      return u1 != u2 && adj(v, u1) && adj(v, u2) && adj(v, w) &&
             deg(u1) == 1 && deg(u2) == 1 && half_deficient(w);
    }
    case ConfigKind::C8: {
      int v = m.role("v");
      int d = deg(v);
      if (d < 3) return false;
      std::vector<int> us;
      for (const auto& [name, x] : m.roles)
        if (name[0] == 'u') us.push_back(x);
      if (static_cast<int>(us.size()) != d - 2) return false;
      std::set<int> distinct(us.begin(), us.end());
      if (distinct.size() != us.size()) return false;
      for (int u : us)
        if (!adj(v, u) || deg(u) != 1) return false;
      return true;
    }
    case ConfigKind::C9: {
      int v = m.role("v"), u = m.role("u"), w = m.role("w");
      return 3 * deg(v) <= 2 * k && u != w && adj(v, u) && adj(v, w) &&
             deg(u) == 2 && is_bad(u) && half_deficient(w);
    }
    case ConfigKind::C10: {
      int v = m.role("v"), u = m.role("u");
      if (!adj(v, u) || deg(u) != 2 || !is_bad(u)) return false;
      int nbad2 = 0, nhalf = 0, nneither = 0;
      for (int x : g.neighbors(v)) {
        if (deg(x) == 2 && is_bad(x)) ++nbad2;
        if (half_deficient(x)) ++nhalf;
        if (!deficient(x) && !half_deficient(x)) ++nneither;
      }
      return nbad2 == 1 && nhalf >= 1 && nneither <= k - deg(v);
    }
    case ConfigKind::C11: {
      int v = m.role("v"), u = m.role("u");
      if (!adj(v, u) || deg(u) != 1) return false;
      int nones = 0, nneither = 0;
      for (int x : g.neighbors(v)) {
        if (deg(x) == 1) ++nones;
        if (!deficient(x) && !half_deficient(x)) ++nneither;
      }
      return nones == 1 && nneither <= k - deg(v) + 1;
    }
    case ConfigKind::C12: {
      int v = m.role("v");
      if (deg(v) != 5) return false;
      std::set<int> us;
      for (const auto& [name, x] : m.roles)
        if (name[0] == 'u') us.insert(x);
      if (us.size() != 5) return false;
      for (int x : us)
        if (!adj(v, x) || !half_deficient(x)) return false;
      return true;
    }
    case ConfigKind::C13: {
      int v = m.role("v");
      if (deg(v) != 4) return false;
      std::set<int> us;
      for (const auto& [name, x] : m.roles)
        if (name[0] == 'u') us.insert(x);
      if (us.size() != 3) return false;
      for (int x : us)
        if (!adj(v, x) || !half_deficient(x)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace nsd
