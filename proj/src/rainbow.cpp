#include "nsd/rainbow.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsd {

void ListFamily::normalize() {
  size_t n = lists.size();
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    if (std::adjacent_find(l.begin(), l.end()) != l.end())
      throw std::invalid_argument("ListFamily: repeated value inside a list");
    if (l.size() < n)
      throw std::invalid_argument("ListFamily: |L_i| >= t violated");
  }
}

namespace {

void erase_value(std::vector<int>& l, int x) {
  auto it = std::lower_bound(l.begin(), l.end(), x);
  if (it != l.end() && *it == x) l.erase(it);
}

}  // namespace

ListFamily prune_lists(const ListFamily& f) {
  ListFamily w = f;
  w.normalize();
  size_t t = w.t();
  for (size_t i = 0; i + 1 < t; ++i) {
    int m = w.lists[i].front();
    for (size_t j = i + 1; j < t; ++j) erase_value(w.lists[j], m);
  }
  for (size_t i = t; i-- > 1;) {
    int mx = w.lists[i].back();
    for (size_t j = 0; j < i; ++j) erase_value(w.lists[j], mx);
  }
  return w;
}

std::vector<RainbowSelection> staircase_selections(const ListFamily& pruned) {
  size_t t = pruned.t();
  std::vector<RainbowSelection> out;
  if (t == 0) return out;
  RainbowSelection cur;
  cur.values.resize(t);
  for (size_t i = 0; i < t; ++i) {
    if (pruned.lists[i].empty())
      throw std::invalid_argument("staircase_selections: empty list");
    cur.values[i] = pruned.lists[i].front();
    cur.sum += cur.values[i];
  }
  out.push_back(cur);
  for (size_t i = t; i-- > 0;) {
    const auto& l = pruned.lists[i];
    for (size_t p = 1; p < l.size(); ++p) {
      cur.sum += l[p] - cur.values[i];
      cur.values[i] = l[p];
      out.push_back(cur);
    }
  }
  return out;
}

std::optional<RainbowSelection> pick_avoiding(
    const ListFamily& f, const std::set<long long>& forbidden_sums) {
  for (const RainbowSelection& s : staircase_selections(prune_lists(f)))
    if (!forbidden_sums.count(s.sum)) return s;
  return std::nullopt;
}

}  // namespace nsd
