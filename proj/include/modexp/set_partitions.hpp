#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace modexp {

// Visits every set partition of {0, ..., n-1} as a restricted-growth string
// a[0..n-1] (a[0] = 0, a[i] <= 1 + max(a[0..i-1])), in lexicographic order.
// The visitor returns false to stop early.
template <class Visit>
void for_each_set_partition(int n, Visit&& visit) {
  if (n <= 0) {
    std::vector<int> empty;
    visit(empty);
    return;
  }
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);  // max of a[0..i]
  while (true) {
    if (!visit(static_cast<const std::vector<int>&>(a))) return;
    int i = n - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) return;
    ++a[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
    }
  }
}

// Bell numbers B_0..B_n; B_n counts the partitions visited above.
inline std::vector<std::uint64_t> bell_numbers(int n) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = next;
    bell.push_back(row.front());
  }
  return bell;
}

}  // namespace modexp
