#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "modexp/error.hpp"
#include "modexp/ratio.hpp"

namespace modexp {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Ratio w{1};

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Subset of {0, ..., n-1}.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : bits_(static_cast<std::size_t>(n), false) {}
  VertexSet(int n, std::initializer_list<Vertex> members) : VertexSet(n) {
    for (Vertex v : members) insert(v);
  }
  VertexSet(int n, std::span<const Vertex> members) : VertexSet(n) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet all(int n) {
    VertexSet s(n);
    std::fill(s.bits_.begin(), s.bits_.end(), true);
    return s;
  }
  // Bit i of mask selects the vertex ids[i]; with empty ids bit i selects vertex i.
  static VertexSet from_mask(int n, std::uint64_t mask, std::span<const Vertex> ids = {}) {
    VertexSet s(n);
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
      if (mask & 1U) s.insert(ids.empty() ? i : ids[static_cast<std::size_t>(i)]);
    }
    return s;
  }

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(Vertex v) const { return v >= 0 && v < universe() && bits_[static_cast<std::size_t>(v)]; }
  void insert(Vertex v) {
    check(v);
    bits_[static_cast<std::size_t>(v)] = true;
  }
  void erase(Vertex v) {
    check(v);
    bits_[static_cast<std::size_t>(v)] = false;
  }
  int size() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), true)); }
  bool empty() const { return std::find(bits_.begin(), bits_.end(), true) == bits_.end(); }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for (int v = 0; v < universe(); ++v) {
      if (bits_[static_cast<std::size_t>(v)]) out.push_back(v);
    }
    return out;
  }
  Vertex front() const {
    for (int v = 0; v < universe(); ++v) {
      if (bits_[static_cast<std::size_t>(v)]) return v;
    }
    return -1;
  }

  VertexSet complement() const {
    VertexSet c(universe());
    for (std::size_t i = 0; i < bits_.size(); ++i) c.bits_[i] = !bits_[i];
    return c;
  }
  VertexSet operator|(const VertexSet& o) const { return combine(o, [](bool a, bool b) { return a || b; }); }
  VertexSet operator&(const VertexSet& o) const { return combine(o, [](bool a, bool b) { return a && b; }); }
  VertexSet operator-(const VertexSet& o) const { return combine(o, [](bool a, bool b) { return a && !b; }); }
  bool is_subset_of(const VertexSet& o) const { return (*this - o).empty(); }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (Vertex v : members()) {
      if (!first) out += ",";
      out += std::to_string(v);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void check(Vertex v) const {
    if (v < 0 || v >= universe()) throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v));
  }
  template <class Op>
  VertexSet combine(const VertexSet& o, Op op) const {
    if (o.universe() != universe()) throw Error(Errc::vertex_out_of_range, "vertex sets over different ranges");
    VertexSet r(universe());
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = op(bits_[i], o.bits_[i]);
    return r;
  }

  std::vector<bool> bits_;
};

// Weighted undirected multigraph with loops. Immutable once built; parallel
// edges are stored as given and every primitive sums their weights.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), degree_(static_cast<std::size_t>(n)) {
    if (n < 0) throw Error(Errc::out_of_range, "negative vertex count");
    for (Edge& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw Error(Errc::vertex_out_of_range,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") with n = " + std::to_string(n));
      }
      if (e.w.sign() <= 0) throw Error(Errc::non_positive_weight, "weight " + e.w.str());
      if (e.u > e.v) std::swap(e.u, e.v);
      total_ += e.w;
      // loops count twice towards the degree
      degree_[static_cast<std::size_t>(e.u)] += e.w;
      degree_[static_cast<std::size_t>(e.v)] += e.w;
    }
  }

  int n() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  // e(G): every edge weight once, loops included once.
  const Ratio& total_weight() const { return total_; }
  Ratio volume() const { return total_ * 2; }
  const Ratio& degree(Vertex v) const { return degree_.at(static_cast<std::size_t>(v)); }
  bool has_isolated_vertex() const {
    return std::any_of(degree_.begin(), degree_.end(), [](const Ratio& d) { return d.is_zero(); });
  }

  std::vector<std::vector<Vertex>> neighbours() const {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
    for (const Edge& e : edges_) {
      if (e.is_loop()) continue;
      adj[static_cast<std::size_t>(e.u)].push_back(e.v);
      adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& list : adj) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Ratio> degree_;
  Ratio total_{0};
};

// Disjoint cover of the vertex range by nonempty parts. Parts are kept in
// canonical order: sorted by their smallest member.
class Partition {
 public:
  Partition() = default;

  // labels[v] is any integer tag; equal tags mean the same part.
  static Partition from_labels(std::span<const int> labels) {
    int n = static_cast<int>(labels.size());
    std::vector<int> relabel;
    std::vector<int> tags;
    Partition p;
    p.part_of_.assign(labels.size(), -1);
    for (int v = 0; v < n; ++v) {
      auto it = std::find(tags.begin(), tags.end(), labels[static_cast<std::size_t>(v)]);
      int id = 0;
      if (it == tags.end()) {
        id = static_cast<int>(tags.size());
        tags.push_back(labels[static_cast<std::size_t>(v)]);
        p.parts_.emplace_back(n);
      } else {
        id = static_cast<int>(it - tags.begin());
      }
      p.part_of_[static_cast<std::size_t>(v)] = id;
      p.parts_[static_cast<std::size_t>(id)].insert(v);
    }
    return p;
  }

  static Partition from_parts(int n, std::span<const VertexSet> parts) {
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    int id = 0;
    for (const VertexSet& part : parts) {
      if (part.universe() != n) throw Error(Errc::partition_mismatch, "part over a different vertex range");
      if (part.empty()) throw Error(Errc::partition_mismatch, "empty part");
      for (Vertex v : part.members()) {
        if (labels[static_cast<std::size_t>(v)] != -1) {
          throw Error(Errc::partition_mismatch, "vertex " + std::to_string(v) + " in two parts");
        }
        labels[static_cast<std::size_t>(v)] = id;
      }
      ++id;
    }
    for (int v = 0; v < n; ++v) {
      if (labels[static_cast<std::size_t>(v)] == -1) {
        throw Error(Errc::partition_mismatch, "vertex " + std::to_string(v) + " not covered");
      }
    }
    return from_labels(labels);
  }

  static Partition trivial(int n) { return from_labels(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  static Partition singletons(int n) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
    return from_labels(labels);
  }

  int n() const { return static_cast<int>(part_of_.size()); }
  int part_count() const { return static_cast<int>(parts_.size()); }
  int part_of(Vertex v) const { return part_of_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexSet>& parts() const { return parts_; }
  // Restricted-growth labelling.
  const std::vector<int>& labels() const { return part_of_; }

  bool contains_part(const VertexSet& s) const {
    return std::find(parts_.begin(), parts_.end(), s) != parts_.end();
  }

  std::string str() const {
    std::string out;
    for (const VertexSet& p : parts_) out += p.str();
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.part_of_ == b.part_of_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.part_of_ < b.part_of_; }

 private:
  std::vector<int> part_of_;
  std::vector<VertexSet> parts_;
};

inline void require_same_range(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.n()) {
    throw Error(Errc::vertex_out_of_range,
                "vertex set over " + std::to_string(s.universe()) + " vertices, graph has " + std::to_string(g.n()));
  }
}

inline Ratio volume(const Graph& g, const VertexSet& s) {
  require_same_range(g, s);
  Ratio vol{0};
  for (Vertex v : s.members()) vol += g.degree(v);
  return vol;
}

// e(S): loops inside S count their weight once.
inline Ratio internal_edges(const Graph& g, const VertexSet& s) {
  require_same_range(g, s);
  Ratio sum{0};
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) sum += e.w;
  }
  return sum;
}

// e(A, B) for disjoint A and B.
inline Ratio edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  require_same_range(g, a);
  require_same_range(g, b);
  Ratio sum{0};
  for (const Edge& e : g.edges()) {
    if ((a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u))) sum += e.w;
  }
  return sum;
}

inline Ratio cut(const Graph& g, const VertexSet& s) {
  require_same_range(g, s);
  Ratio sum{0};
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) != s.contains(e.v)) sum += e.w;
  }
  return sum;
}

// Connected components ordered by smallest vertex; isolated vertices are singletons.
inline std::vector<VertexSet> components(const Graph& g) {
  auto adj = g.neighbours();
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  std::vector<VertexSet> out;
  for (Vertex start = 0; start < g.n(); ++start) {
    if (comp[static_cast<std::size_t>(start)] != -1) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back(g.n());
    std::vector<Vertex> stack{start};
    comp[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out.back().insert(v);
      for (Vertex u : adj[static_cast<std::size_t>(v)]) {
        if (comp[static_cast<std::size_t>(u)] == -1) {
          comp[static_cast<std::size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
  }
  return out;
}

inline bool is_connected(const Graph& g) { return g.n() > 0 && components(g).size() == 1; }

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // original[i] is the host id of subgraph vertex i
};

inline InducedSubgraph induced(const Graph& g, const VertexSet& s) {
  require_same_range(g, s);
  if (s.empty()) throw Error(Errc::empty_set, "induced subgraph on an empty set");
  std::vector<Vertex> original = s.members();
  std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < original.size(); ++i) local[static_cast<std::size_t>(original[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    int a = local[static_cast<std::size_t>(e.u)];
    int b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) edges.push_back({a, b, e.w});
  }
  return {Graph(static_cast<int>(original.size()), std::move(edges)), std::move(original)};
}

// Maps a set over a subgraph's local ids back to host ids.
inline VertexSet lift(const InducedSubgraph& sub, const VertexSet& local, int host_n) {
  VertexSet out(host_n);
  for (Vertex v : local.members()) out.insert(sub.original[static_cast<std::size_t>(v)]);
  return out;
}

inline void require_partition_of(const Graph& g, const Partition& p) {
  if (p.n() != g.n()) {
    throw Error(Errc::partition_mismatch,
                "partition covers " + std::to_string(p.n()) + " vertices, graph has " + std::to_string(g.n()));
  }
}

// Total weight of edges between distinct parts.
inline Ratio boundary(const Graph& g, const Partition& p) {
  require_partition_of(g, p);
  Ratio sum{0};
  for (const Edge& e : g.edges()) {
    if (p.part_of(e.u) != p.part_of(e.v)) sum += e.w;
  }
  return sum;
}

inline Ratio max_internal(const Graph& g, const Partition& p) {
  require_partition_of(g, p);
  Ratio best{0};
  for (const VertexSet& part : p.parts()) best = max(best, internal_edges(g, part));
  return best;
}

inline Ratio max_outgoing(const Graph& g, const Partition& p) {
  require_partition_of(g, p);
  Ratio best{0};
  for (const VertexSet& part : p.parts()) best = max(best, cut(g, part));
  return best;
}

inline Ratio max_part_volume(const Graph& g, const Partition& p) {
  require_partition_of(g, p);
  Ratio best{0};
  for (const VertexSet& part : p.parts()) best = max(best, volume(g, part));
  return best;
}

// Disjoint union; vertices of b are shifted past those of a.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (const Edge& e : b.edges()) edges.push_back({e.u + a.n(), e.v + a.n(), e.w});
  return Graph(a.n() + b.n(), std::move(edges));
}

}  // namespace modexp
