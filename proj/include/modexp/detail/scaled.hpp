#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "modexp/graph.hpp"

namespace modexp::detail {

using mask_t = std::uint64_t;

// Least common multiple of all weight denominators; multiplying every weight
// by it yields an integer graph with the same modularity and expansion values.
inline std::int64_t integer_scale(const Graph& g) {
  wide_int scale = 1;
  for (const Edge& e : g.edges()) {
    wide_int d = e.w.den();
    scale = scale / wide_gcd(scale, d) * d;
    if (scale > (wide_int{1} << 40)) throw Error(Errc::overflow, "weight denominators too large to scale");
  }
  return static_cast<std::int64_t>(scale);
}

// e(G) * scale as an integer.
inline std::int64_t scaled_total(const Graph& g, std::int64_t scale) {
  wide_int sum = 0;
  for (const Edge& e : g.edges()) {
    if (scale % e.w.den() != 0) throw Error(Errc::overflow, "scale does not clear a denominator");
    sum += static_cast<wide_int>(e.w.num()) * (scale / e.w.den());
  }
  if (sum > (wide_int{1} << 40)) throw Error(Errc::overflow, "scaled total weight too large");
  return static_cast<std::int64_t>(sum);
}

// Dense integer copy of a small graph (at most 64 vertices).
struct ScaledGraph {
  int n = 0;
  std::int64_t scale = 1;
  std::vector<std::int64_t> adj;          // n*n, summed non-loop weights
  std::vector<std::int64_t> loop;         // summed loop weights
  std::vector<std::int64_t> degree;       // loops twice
  std::vector<std::int64_t> plain_degree; // loops excluded
  std::vector<mask_t> adj_mask;
  std::int64_t total = 0;                 // e(G)
  std::int64_t vol = 0;

  ScaledGraph() = default;
  ScaledGraph(const Graph& g, std::int64_t scale_by) : n(g.n()), scale(scale_by) {
    if (n > 64) throw Error(Errc::size_limit_exceeded, "dense kernels support at most 64 vertices");
    auto un = static_cast<std::size_t>(n);
    adj.assign(un * un, 0);
    loop.assign(un, 0);
    degree.assign(un, 0);
    plain_degree.assign(un, 0);
    adj_mask.assign(un, 0);
    wide_int sum = 0;
    for (const Edge& e : g.edges()) {
      if (scale % e.w.den() != 0) throw Error(Errc::overflow, "scale does not clear a denominator");
      wide_int w = static_cast<wide_int>(e.w.num()) * (scale / e.w.den());
      std::int64_t iw = narrow(w);
      auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
      if (e.is_loop()) {
        loop[u] += iw;
        degree[u] += 2 * iw;
      } else {
        adj[u * un + v] += iw;
        adj[v * un + u] += iw;
        degree[u] += iw;
        degree[v] += iw;
        plain_degree[u] += iw;
        plain_degree[v] += iw;
        adj_mask[u] |= mask_t{1} << v;
        adj_mask[v] |= mask_t{1} << u;
      }
      sum += w;
    }
    // keep products of two volumes comfortably inside 128 bits
    if (sum > (wide_int{1} << 40)) throw Error(Errc::overflow, "scaled total weight too large");
    total = static_cast<std::int64_t>(sum);
    vol = 2 * total;
  }
  explicit ScaledGraph(const Graph& g) : ScaledGraph(g, integer_scale(g)) {}

  std::int64_t weight(int u, int v) const {
    return adj[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)];
  }

  // Sum of weights from v to members of s (v itself excluded).
  std::int64_t weight_to(int v, mask_t s) const {
    std::int64_t sum = 0;
    s &= adj_mask[static_cast<std::size_t>(v)];
    while (s != 0) {
      int u = std::countr_zero(s);
      s &= s - 1;
      sum += weight(v, u);
    }
    return sum;
  }

  std::int64_t volume_of(mask_t s) const {
    std::int64_t sum = 0;
    for (; s != 0; s &= s - 1) sum += degree[static_cast<std::size_t>(std::countr_zero(s))];
    return sum;
  }

  std::int64_t internal_of(mask_t s) const {
    std::int64_t sum = 0;
    for (mask_t rest = s; rest != 0; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      sum += loop[static_cast<std::size_t>(v)];
      mask_t below = s & ((mask_t{1} << v) - 1);
      sum += weight_to(v, below);
    }
    return sum;
  }

  bool connected(mask_t s) const {
    if (s == 0) return false;
    mask_t reach = s & (~s + 1);
    mask_t frontier = reach;
    while (frontier != 0) {
      mask_t next = 0;
      for (mask_t f = frontier; f != 0; f &= f - 1) next |= adj_mask[static_cast<std::size_t>(std::countr_zero(f))];
      next &= s & ~reach;
      reach |= next;
      frontier = next;
    }
    return reach == s;
  }

  mask_t full() const { return n == 64 ? ~mask_t{0} : (mask_t{1} << n) - 1; }
};

// Visits every nonempty proper subset A that excludes the last vertex, in
// Gray-code order, as visit(mask, vol(A), e(A, complement)). Each unordered
// cut {A, complement} is seen exactly once.
template <class Visit>
void scan_cuts(const ScaledGraph& g, Visit&& visit) {
  if (g.n < 2) return;
  const int free_bits = g.n - 1;
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  mask_t mask = 0;
  std::int64_t vol_a = 0;
  std::int64_t cut = 0;
  for (std::uint64_t i = 1; i < count; ++i) {
    int v = std::countr_zero(i);
    mask_t bit = mask_t{1} << v;
    auto uv = static_cast<std::size_t>(v);
    if (mask & bit) {
      mask &= ~bit;
      cut -= g.plain_degree[uv] - 2 * g.weight_to(v, mask);
      vol_a -= g.degree[uv];
    } else {
      cut += g.plain_degree[uv] - 2 * g.weight_to(v, mask);
      mask |= bit;
      vol_a += g.degree[uv];
    }
    visit(mask, vol_a, cut);
  }
}

// For equal-size sets: true when the sorted member list of a precedes that of b.
inline bool lex_less(mask_t a, mask_t b) {
  mask_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

// Smallest connected set (by size, then lexicographic member list) satisfying
// `qualifies`. `hopeless(mask)` must be monotone: when true for a set it is
// true for every connected superset, so the branch is cut. Returns 0 when no
// set qualifies. Throws SizeLimitExceeded after `budget` visited sets.
template <class Qualifies, class Hopeless>
mask_t min_connected_set(const ScaledGraph& g, mask_t universe, Qualifies&& qualifies, Hopeless&& hopeless,
                         std::uint64_t budget) {
  std::uint64_t visited = 0;
  const int max_size = std::popcount(universe);
  for (int limit = 1; limit <= max_size; ++limit) {
    mask_t best = 0;
    bool reached_limit = false;
    // Exclusive-neighbourhood extension: each connected set is generated once,
    // rooted at its smallest vertex.
    auto extend = [&](auto& self, mask_t sub, mask_t ext, mask_t sub_nbhd, int root) -> void {
      if (++visited > budget) {
        throw Error(Errc::size_limit_exceeded, "sparse-cut search budget exhausted");
      }
      int size = std::popcount(sub);
      if (size == limit) {
        reached_limit = true;
        if (qualifies(sub) && (best == 0 || lex_less(sub, best))) best = sub;
        return;
      }
      mask_t above_root = universe & ~((mask_t{2} << root) - 1);
      while (ext != 0) {
        int w = std::countr_zero(ext);
        mask_t wbit = mask_t{1} << w;
        ext &= ~wbit;
        mask_t next_sub = sub | wbit;
        if (hopeless(next_sub)) continue;
        mask_t w_nbhd = g.adj_mask[static_cast<std::size_t>(w)] & universe;
        mask_t exclusive = w_nbhd & above_root & ~sub & ~sub_nbhd;
        self(self, next_sub, ext | exclusive, sub_nbhd | w_nbhd, root);
      }
    };
    for (mask_t roots = universe; roots != 0; roots &= roots - 1) {
      int r = std::countr_zero(roots);
      mask_t rbit = mask_t{1} << r;
      if (hopeless(rbit)) continue;
      mask_t nbhd = g.adj_mask[static_cast<std::size_t>(r)] & universe;
      mask_t above_root = universe & ~((mask_t{2} << r) - 1);
      extend(extend, rbit, nbhd & above_root, nbhd | rbit, r);
    }
    if (best != 0) return best;
    if (!reached_limit) return 0;
  }
  return 0;
}

}  // namespace modexp::detail
