#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsd/graph.hpp"

namespace nsd {

enum class VertexKind {
  Isolated,
  One,
  BadTwo,
  GoodTwo,
  BadThree,
  GoodThree,
  Big
};

/// A 2- or 3-vertex is bad when it has a neighbour of degree 2, good
/// otherwise; deficient = 1-vertex or bad 2-vertex; half-deficient = good
/// 2-vertex or bad 3-vertex.
struct VertexClass {
  int degree = 0;
  VertexKind kind = VertexKind::Isolated;
  bool deficient = false;
  bool half_deficient = false;
};

std::vector<VertexClass> classify(const Graph& g);

const char* vertex_kind_name(VertexKind k);

/// True iff 1 + 2 + ... + (d-1) > k + 1, the integer form of the condition
/// under which a d-vertex is always sum-distinguished from a 2-neighbour.
bool distinguishes_two_neighbours(int d, int k);

enum class ConfigKind : int {
  C1 = 1,
  C2,
  C3,
  C4,
  C5,
  C6,
  C7,
  C8,
  C9,
  C10,
  C11,
  C12,
  C13
};

struct ConfigMatch {
  ConfigKind kind{};
  int k = 0;
  std::vector<std::pair<std::string, int>> roles;  // ordered, v first

  int role(const std::string& name) const;
  bool has_role(const std::string& name) const;
  std::string str() const;  // "C9 k=6 roles: v=0 u=3 w=5"
};

enum class MatchMode { FirstByIndex, All };

/// Detects configurations C1..C13. In FirstByIndex mode returns at most one
/// match: the lowest configuration index, scanning vertices (and within a
/// vertex, role tuples) in ascending order. Requires k >= 6 and max degree
/// <= k.
std::vector<ConfigMatch> find_configs(const Graph& g, int k, MatchMode mode);

/// Re-validates every degree, adjacency, distinctness and threshold condition
/// of the match from scratch, independent of the matcher code paths.
bool verify_match(const Graph& g, const ConfigMatch& m);

}  // namespace nsd
