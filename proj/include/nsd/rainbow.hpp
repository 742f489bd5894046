#pragma once

#include <optional>
#include <set>
#include <vector>

#include "nsd/graph.hpp"

namespace nsd {

/// Family of t finite integer lists with |L_i| >= t; within a list the values
/// are distinct and kept sorted ascending.
struct ListFamily {
  std::vector<std::vector<int>> lists;

  size_t t() const { return lists.size(); }
  /// Validates the size hypothesis and per-list distinctness; sorts lists.
  void normalize();
};

/// Two-pass pruning: forward, the current minimum of each list is removed
/// from all later lists; backward, the current maximum is removed from all
/// earlier lists. Loses at most t-1 values per list.
ListFamily prune_lists(const ListFamily& f);

struct RainbowSelection {
  std::vector<int> values;  // one per list, pairwise distinct
  long long sum = 0;
};

/// The staircase of selections over a pruned family: start at all minima,
/// then advance the last list through its sorted values, then the one before
/// it, and so on. Sums strictly increase and there are sum|L'_i| - t + 1 of
/// them.
std::vector<RainbowSelection> staircase_selections(const ListFamily& pruned);

/// First staircase selection (after pruning f) whose sum avoids
/// forbidden_sums; nullopt when every staircase sum is forbidden, which the
/// size bound rules out whenever |forbidden| < sum|L_i| - t^2 + 1.
std::optional<RainbowSelection> pick_avoiding(
    const ListFamily& f, const std::set<long long>& forbidden_sums);

}  // namespace nsd
