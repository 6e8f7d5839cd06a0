#pragma once

// Slow, obviously-correct reference computations. They share only the graph
// primitives (volume, cut, internal_edges, score) with the library.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "modexp/graph.hpp"
#include "modexp/modularity.hpp"
#include "modexp/set_partitions.hpp"

namespace oracle {

using modexp::Graph;
using modexp::Partition;
using modexp::Ratio;
using modexp::VertexSet;

struct BruteOptimum {
  Ratio q_star{0};
  std::vector<Partition> optimal;  // sorted
};

// Every set partition, scored exactly.
inline BruteOptimum brute_maximize(const Graph& g) {
  BruteOptimum out;
  bool first = true;
  modexp::for_each_set_partition(g.n(), [&](const std::vector<int>& labels) {
    Partition p = Partition::from_labels(labels);
    Ratio q = modexp::score(g, p).q;
    if (first || q > out.q_star) {
      out.q_star = q;
      out.optimal.clear();
      first = false;
    }
    if (q == out.q_star) out.optimal.push_back(p);
    return true;
  });
  std::sort(out.optimal.begin(), out.optimal.end());
  return out;
}

struct BruteCut {
  Ratio value{0};
  bool infinite = true;
  std::uint64_t mask = 0;
};

enum class Kind { h, hh, hprime };

// Minimum over every nonempty proper subset; ties go to the smaller mask.
inline BruteCut brute_expansion(const Graph& g, Kind kind) {
  BruteCut best;
  const std::uint64_t full = (std::uint64_t{1} << g.n()) - 1;
  for (std::uint64_t m = 1; m < full; ++m) {
    VertexSet a = VertexSet::from_mask(g.n(), m);
    VertexSet b = a.complement();
    Ratio c = modexp::cut(g, a);
    std::optional<Ratio> value;
    if (kind == Kind::h) {
      value = c / std::min(modexp::volume(g, a), modexp::volume(g, b));
    } else if (kind == Kind::hh) {
      value = c * g.volume() / (modexp::volume(g, a) * modexp::volume(g, b));
    } else {
      Ratio ea = modexp::internal_edges(g, a), eb = modexp::internal_edges(g, b);
      if (!ea.is_zero() && !eb.is_zero()) value = c / std::min(ea, eb);
    }
    if (!value) continue;
    if (best.infinite || *value < best.value) {
      best.value = *value;
      best.infinite = false;
      best.mask = m;
    }
  }
  return best;
}

// Σ x_i^2 maximised over x_i <= α, Σ x_i = 1: try every count c of pieces of
// size α with the rest in one piece.
inline Ratio brute_f(const Ratio& alpha) {
  Ratio best{0};
  for (std::int64_t c = 0; Ratio{c} * alpha <= Ratio{1}; ++c) {
    Ratio rest = Ratio{1} - alpha * c;
    if (rest > alpha) continue;
    Ratio value = alpha * alpha * c + rest * rest;
    best = std::max(best, value);
  }
  return best;
}

// ⌈log2(1/x)⌉ by doubling.
inline int brute_ceil_log2_inverse(const Ratio& x) {
  int k = 0;
  Ratio p{1};
  while (p * x < Ratio{1}) {
    p *= 2;
    ++k;
  }
  return k;
}

// Sparse-cut oracle: every subset of w, smallest by (size, member list).
inline std::optional<VertexSet> brute_sparse_cut(const Graph& g, const VertexSet& w, const Ratio& delta_prime) {
  std::vector<modexp::Vertex> members = w.members();
  std::optional<VertexSet> best;
  std::vector<modexp::Vertex> best_list;
  const std::uint64_t count = std::uint64_t{1} << members.size();
  for (std::uint64_t m = 1; m + 1 < count; ++m) {
    VertexSet a(g.n());
    std::vector<modexp::Vertex> list;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if ((m >> i) & 1) {
        a.insert(members[i]);
        list.push_back(members[i]);
      }
    }
    VertexSet rest = w - a;
    Ratio ea = modexp::internal_edges(g, a);
    if (ea > modexp::internal_edges(g, rest)) continue;
    if (!(modexp::edges_between(g, a, rest) < delta_prime * ea)) continue;
    if (!best || list.size() < best_list.size() || (list.size() == best_list.size() && list < best_list)) {
      best = a;
      best_list = list;
    }
  }
  return best;
}

// Some U ⊆ V with e(U) > e0 induces a graph of conductance >= δ.
inline bool has_expander_above(const Graph& g, const Ratio& e0, const Ratio& delta) {
  const std::uint64_t count = std::uint64_t{1} << g.n();
  for (std::uint64_t m = 1; m < count; ++m) {
    VertexSet u = VertexSet::from_mask(g.n(), m);
    if (!(modexp::internal_edges(g, u) > e0)) continue;
    Graph sub = modexp::induced(g, u).graph;
    if (sub.has_isolated_vertex()) continue;
    if (sub.n() == 1) return true;
    BruteCut h = brute_expansion(sub, Kind::h);
    if (h.value >= delta) return true;
  }
  return false;
}

}  // namespace oracle
