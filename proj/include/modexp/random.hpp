#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "modexp/graph.hpp"

namespace modexp {

// SplitMix64: 64-bit state advanced by the golden-ratio increment, output
// mixed by two xor-shift-multiply rounds. Same seed, same stream everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), by rejection so every value is equally likely.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  // True with probability p, for 0 <= p <= 1.
  bool chance(const Ratio& p) { return static_cast<std::int64_t>(below(static_cast<std::uint64_t>(p.den()))) < p.num(); }

 private:
  std::uint64_t state_;
};

// G(n, p) with unit weights.
inline Graph random_graph(SplitMix64& rng, int n, const Ratio& p) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.chance(p)) edges.push_back({u, v, Ratio{1}});
    }
  }
  return Graph(n, std::move(edges));
}

// A random labelled tree (each vertex joins an earlier one) plus G(n, p) extras.
inline Graph random_connected_graph(SplitMix64& rng, int n, const Ratio& p) {
  std::vector<std::vector<bool>> present(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    edges.push_back({u, v, Ratio{1}});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && rng.chance(p)) {
        edges.push_back({u, v, Ratio{1}});
      }
    }
  }
  return Graph(n, std::move(edges));
}

// Labels drawn uniformly from [0, parts), then made canonical.
inline Partition random_partition(SplitMix64& rng, int n, int parts) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int& l : labels) l = static_cast<int>(rng.below(static_cast<std::uint64_t>(parts)));
  return Partition::from_labels(labels);
}

}  // namespace modexp
