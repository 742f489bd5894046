#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "nsd/coloring.hpp"
#include "nsd/configs.hpp"
#include "nsd/graph.hpp"

namespace nsd {

/// Raised when a step contradicts what the underlying argument guarantees
/// (no configuration in a sparse graph, an inextensible partial coloring,
/// a non-shrinking reduction). Always carries the offending graph6 string.
class ColorerInternalError : public std::runtime_error {
 public:
  explicit ColorerInternalError(const std::string& msg)
      : std::runtime_error(msg) {}
};

struct GraphEdit {
  enum class Op { DeleteEdge, AddEdge, SplitVertex, DeleteVertex };
  Op op;
  int a = -1;
  int b = -1;  // SplitVertex: a = vertex being split; DeleteVertex: a only
};

/// One Claim-style reduction H -> H': the edit list, the reduced graph, the
/// edge correspondence for every surviving edge, and the bookkeeping the
/// extension step needs.
struct ReductionPlan {
  ConfigKind kind{};
  std::string branch;  // "", "good2", "bad3", "k6", "k7plus", "k le8", ...
  ConfigMatch match;

  std::vector<GraphEdit> edits;
  Graph reduced;
  std::vector<int> vertex_map;  // host vertex -> reduced vertex, -1 deleted
  std::vector<std::pair<Edge, Edge>> edge_map;  // host edge -> reduced edge

  std::vector<Edge> free_edges;      // host edges with no color after lifting
  std::vector<Edge> mutable_edges;   // free edges plus swap/adjust candidates
  std::vector<int> affected;         // endpoints of mutable edges

  // Case-derived vertices (u', w', w'', relabelled u_i, ...) fixed at
  // reduction time so the extension works with the same choices.
  std::map<std::string, int> derived;
};

struct ColorerStats {
  long long reductions = 0;
  std::array<long long, 14> by_kind{};  // index = configuration number
  std::map<std::string, long long> by_branch;
  long long fallback_activations = 0;
  long long fallback_failures = 0;
  std::vector<std::string> trace;
};

struct ColorerOptions {
  bool debug_mad_checks = true;  // assert mad(H') < 3 at every reduction
  bool trace = false;
  long long fallback_budget = 20'000'000;
};

struct ColorerResult {
  EdgeColoring coloring;
  int k = 0;  // palette is 1..k+1
  ColorerStats stats;
};

/// k = max(6, maximum degree); the palette is {1..k+1}.
int choose_k(const Graph& g);

/// Builds the reduction for a first-by-index match. The caller is responsible
/// for the first-by-index contract; reduce checks the match itself and the
/// structural guards and throws ColorerInternalError on violation.
ReductionPlan reduce(const Graph& g, const ConfigMatch& m, int k);

/// Colors every component of order >= 3 with a proper nsd coloring in
/// {1..k+1}; isolated edges get color 1 (exempt from the sum constraint) and
/// isolated vertices nothing.
EdgeColoring color_recursive(const Graph& g, int k, ColorerStats& stats,
                             const ColorerOptions& opts);

/// Completes a lifted partial coloring of the host graph to a total proper
/// nsd coloring, scripted per case with an exhaustive fallback. Throws
/// ColorerInternalError when even the fallback fails.
void extend(const Graph& g, EdgeColoring& col, const ReductionPlan& plan,
            int k, ColorerStats& stats, const ColorerOptions& opts);

/// End-to-end entry point. Requires max degree >= 6, mad < 3 and no isolated
/// edges; the result is verified proper and nsd before returning.
ColorerResult color_graph(const Graph& g, const ColorerOptions& opts = {});

}  // namespace nsd
