#pragma once

#include <vector>

namespace quantsel {

/// Calls fn(comb) for every k-subset of {0..m-1} in lexicographic order;
/// fn returning true stops early.
template <typename F>
bool for_each_subset_until(int m, int k, F&& fn) {
  if (k > m || k < 0) return false;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    if (fn(static_cast<const std::vector<int>&>(comb))) return true;
    int i = k - 1;
    while (i >= 0 && comb[i] == m - k + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

template <typename F>
void for_each_subset(int m, int k, F&& fn) {
  for_each_subset_until(m, k, [&](const std::vector<int>& c) {
    fn(c);
    return false;
  });
}

}  // namespace quantsel
