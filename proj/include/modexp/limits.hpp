#pragma once

#include <cstdint>

namespace modexp {

// Caps on the exhaustive searches. Exceeding one raises SizeLimitExceeded;
// nothing falls back to a heuristic.
struct Limits {
  int max_subset_vertices = 26;              // cut scans visit 2^(n-1) sets
  int max_component_vertices = 14;           // modularity DP is 3^n per component
  std::uint64_t max_optimal_partitions = 1'000'000;
  std::uint64_t sparse_cut_budget = 50'000'000;  // connected sets visited per search
};

}  // namespace modexp
