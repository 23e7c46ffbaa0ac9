#pragma once

#include <cstdint>
#include <vector>

namespace scorevote {

using SubsetMask = std::uint64_t;

inline std::vector<int> subset_from_mask(SubsetMask mask, int num_objects) {
  std::vector<int> out;
  for (int o = 0; o < num_objects; ++o)
    if (mask & (SubsetMask{1} << o)) out.push_back(o);
  return out;
}

inline SubsetMask mask_from_subset(const std::vector<int>& subset) {
  SubsetMask mask = 0;
  for (int o : subset) mask |= SubsetMask{1} << o;
  return mask;
}

// Visits every subset of [0, m) in lexicographic order of the sorted index
// sequence: {}, {0}, {0,1}, {0,1,2}, ..., {0,2}, ..., {1}, {1,2}, ...
// Stops early when fn returns false. prune(s) == false cuts the whole
// superset branch rooted at s (valid when the predicate is downward closed,
// e.g. weight feasibility with positive weights).
template <typename Fn, typename Prune>
void for_each_subset_lex(int num_objects, Fn&& fn, Prune&& prune) {
  std::vector<int> current;
  if (!fn(current)) return;
  bool stop = false;
  auto rec = [&](auto&& self, int start) -> void {
    for (int o = start; o < num_objects && !stop; ++o) {
      current.push_back(o);
      if (prune(current)) {
        if (!fn(current)) {
          stop = true;
        } else {
          self(self, o + 1);
        }
      }
      current.pop_back();
    }
  };
  rec(rec, 0);
}

template <typename Fn>
void for_each_subset_lex(int num_objects, Fn&& fn) {
  for_each_subset_lex(num_objects, std::forward<Fn>(fn),
                      [](const std::vector<int>&) { return true; });
}

// Visits the k-subsets of [0, m) in lexicographic order.
template <typename Fn>
void for_each_subset_of_size(int num_objects, int k, Fn&& fn) {
  std::vector<int> current;
  bool stop = false;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == k) {
      if (!fn(current)) stop = true;
      return;
    }
    const int needed = k - static_cast<int>(current.size());
    for (int o = start; o <= num_objects - needed && !stop; ++o) {
      current.push_back(o);
      self(self, o + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace scorevote
