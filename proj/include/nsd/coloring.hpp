#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nsd/graph.hpp"

namespace nsd {

class PartialColoringError : public std::runtime_error {
 public:
  explicit PartialColoringError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class ImproperColoringError : public std::runtime_error {
 public:
  explicit ImproperColoringError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class IsolatedEdgeError : public std::runtime_error {
 public:
  explicit IsolatedEdgeError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Partial or total assignment edge -> color in 1..palette, with incremental
/// per-vertex sums. Not bound to a host graph; the checkers validate that the
/// keys match a graph's edge set.
class EdgeColoring {
 public:
  EdgeColoring() = default;
  EdgeColoring(int n, int palette)
      : palette_(palette),
        sums_(static_cast<size_t>(n), 0),
        counts_(static_cast<size_t>(n), 0) {}

  int palette() const { return palette_; }
  int vertex_capacity() const { return static_cast<int>(sums_.size()); }
  size_t assigned_edges() const { return col_.size(); }

  bool has(const Edge& e) const { return col_.count(e) > 0; }
  int color(const Edge& e) const {
    auto it = col_.find(e);
    if (it == col_.end())
      throw PartialColoringError("edge has no assigned color");
    return it->second;
  }
  std::optional<int> color_opt(const Edge& e) const {
    auto it = col_.find(e);
    if (it == col_.end()) return std::nullopt;
    return it->second;
  }

  void assign(const Edge& e, int c) {
    if (c < 1 || c > palette_)
      throw std::invalid_argument("color outside palette");
    if (col_.count(e)) throw std::invalid_argument("edge already colored");
    col_[e] = c;
    sums_[static_cast<size_t>(e.first)] += c;
    sums_[static_cast<size_t>(e.second)] += c;
    ++counts_[static_cast<size_t>(e.first)];
    ++counts_[static_cast<size_t>(e.second)];
  }

  void unassign(const Edge& e) {
    auto it = col_.find(e);
    if (it == col_.end()) throw std::invalid_argument("edge not colored");
    sums_[static_cast<size_t>(e.first)] -= it->second;
    sums_[static_cast<size_t>(e.second)] -= it->second;
    --counts_[static_cast<size_t>(e.first)];
    --counts_[static_cast<size_t>(e.second)];
    col_.erase(it);
  }

  /// Cached sum of colors on assigned edges at v.
  long long sum(int v) const { return sums_.at(static_cast<size_t>(v)); }
  int assigned_count(int v) const {
    return counts_.at(static_cast<size_t>(v));
  }

  const std::map<Edge, int>& assignments() const { return col_; }

  /// Recomputes sums from scratch and compares with the cache.
  bool cache_consistent() const;

  /// Highest color actually used (0 when nothing is assigned).
  int max_color_used() const;

 private:
  int palette_ = 0;
  std::map<Edge, int> col_;
  std::vector<long long> sums_;
  std::vector<int> counts_;
};

/// True iff adjacent edges always differ. Requires a total coloring whose
/// keys are exactly E(g); otherwise throws PartialColoringError.
bool is_proper(const Graph& g, const EdgeColoring& col);

/// Sum of colors at v. All edges at v must be assigned.
long long vertex_sum(const Graph& g, const EdgeColoring& col, int v);

/// True iff s(u) != s(v) for every edge uv. Requires total (else
/// PartialColoringError) and proper (else ImproperColoringError).
bool is_nsd(const Graph& g, const EdgeColoring& col);

struct ChiSumResult {
  int k = -1;                // least palette size, -1 if exceeds max_palette
  EdgeColoring witness;      // valid when k >= 0
  bool exceeded_palette = false;
  long long nodes_explored = 0;
};

/// Exact neighbour sum distinguishing index by backtracking, with a witness.
/// Throws IsolatedEdgeError when some component is a single edge, and
/// BudgetExceededError when the search node budget runs out.
ChiSumResult chi_sum_exact(const Graph& g, int max_palette,
                           long long budget = 200'000'000);

/// Existence check: does an nsd coloring with palette {1..k} exist?
/// Same error behaviour as chi_sum_exact.
std::optional<EdgeColoring> find_nsd_coloring(const Graph& g, int k,
                                              long long budget = 200'000'000);

/// Default palette cap: max degree plus three.
int default_max_palette(const Graph& g);

}  // namespace nsd
