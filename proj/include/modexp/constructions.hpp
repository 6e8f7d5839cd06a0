#pragma once

#include <map>
#include <string>
#include <vector>

#include "modexp/graph.hpp"

namespace modexp {

namespace detail {

inline void require_at_least(std::int64_t value, std::int64_t low, const char* name) {
  if (value < low) {
    throw Error(Errc::out_of_range, std::string(name) + " must be at least " + std::to_string(low) + ", got " +
                                        std::to_string(value));
  }
}

inline void add_clique(std::vector<Edge>& edges, int first, int size, const Ratio& w = Ratio{1}) {
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) edges.push_back({first + i, first + j, w});
  }
}

inline std::int64_t choose2(std::int64_t s) { return s * (s - 1) / 2; }

}  // namespace detail

// Small reference graphs used throughout the tests and the CLI.
inline Graph complete_graph(int n) {
  detail::require_at_least(n, 1, "n");
  std::vector<Edge> edges;
  detail::add_clique(edges, 0, n);
  return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
  detail::require_at_least(n, 1, "n");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, Ratio{1}});
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  detail::require_at_least(n, 3, "n");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, Ratio{1}});
  return Graph(n, std::move(edges));
}

// Star K_{1,t}: centre 0, leaves 1..t.
inline Graph star_graph(int t) {
  detail::require_at_least(t, 1, "t");
  std::vector<Edge> edges;
  for (int i = 1; i <= t; ++i) edges.push_back({0, i, Ratio{1}});
  return Graph(t + 1, std::move(edges));
}

// `count` disjoint triangles on {3i, 3i+1, 3i+2}.
inline Graph disjoint_triangles(int count) {
  detail::require_at_least(count, 1, "count");
  std::vector<Edge> edges;
  for (int i = 0; i < count; ++i) detail::add_clique(edges, 3 * i, 3);
  return Graph(3 * count, std::move(edges));
}

// Appends `count` disjoint unit edges on fresh vertex pairs.
inline Graph add_disjoint_edges(const Graph& h, std::int64_t count) {
  std::vector<Edge> edges(h.edges().begin(), h.edges().end());
  int n = h.n();
  for (std::int64_t i = 0; i < count; ++i, n += 2) edges.push_back({n, n + 1, Ratio{1}});
  return Graph(n, std::move(edges));
}

// G_H: h padded with m - e(h) disjoint unit edges, so that e = m.
inline Graph g_h_padding(const Graph& h, std::int64_t m) {
  for (const Edge& e : h.edges()) {
    if (!e.w.is_integer()) throw Error(Errc::out_of_range, "padding needs integer edge weights");
  }
  if (h.total_weight() > Ratio{m}) {
    throw Error(Errc::too_many_edges_in_h, "H has " + h.total_weight().str() + " edges, more than m = " + std::to_string(m));
  }
  return add_disjoint_edges(h, (Ratio{m} - h.total_weight()).floor());
}

// G_α: cliques on s = ⌊sqrt(2αm)⌋ vertices while a whole one fits in the
// remaining budget, then the largest clique that still fits, then disjoint
// unit edges for what is left. Vertices are numbered clique by clique.
inline Graph g_alpha(const Ratio& alpha, std::int64_t m) {
  if (alpha.sign() <= 0 || alpha >= Ratio{1}) throw Error(Errc::out_of_range, "alpha must lie in (0, 1)");
  detail::require_at_least(m, 2, "m");
  std::int64_t s = floor_sqrt(alpha * m * 2);
  if (s < 2) throw Error(Errc::degenerate_parameters, "clique size floor(sqrt(2 alpha m)) = " + std::to_string(s) + " < 2");
  std::vector<Edge> edges;
  int n = 0;
  std::int64_t rest = m;
  while (rest >= detail::choose2(s)) {
    detail::add_clique(edges, n, static_cast<int>(s));
    n += static_cast<int>(s);
    rest -= detail::choose2(s);
  }
  std::int64_t t = 1;
  while (detail::choose2(t + 1) <= rest) ++t;
  if (t >= 2) {
    detail::add_clique(edges, n, static_cast<int>(t));
    n += static_cast<int>(t);
    rest -= detail::choose2(t);
  }
  return add_disjoint_edges(Graph(n, std::move(edges)), rest);
}

// Windmill W_l: centre 0, leaves 1..2l, spokes (0, i) and matching (2i-1, 2i).
inline Graph windmill(int l) {
  detail::require_at_least(l, 2, "l");
  std::vector<Edge> edges;
  for (int i = 1; i <= 2 * l; ++i) edges.push_back({0, i, Ratio{1}});
  for (int i = 1; i <= l; ++i) edges.push_back({2 * i - 1, 2 * i, Ratio{1}});
  return Graph(2 * l + 1, std::move(edges));
}

// H(k, l): clique on 0..k-1; leaf k + i*l + j hangs off clique vertex i.
inline Graph clique_with_leaves(int k, int l) {
  detail::require_at_least(k, 2, "k");
  detail::require_at_least(l, 1, "l");
  std::vector<Edge> edges;
  detail::add_clique(edges, 0, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) edges.push_back({i, k + i * l + j, Ratio{1}});
  }
  return Graph(k + k * l, std::move(edges));
}

// G(H, α): h plus ⌊e(H)(1-α)/α⌋ disjoint unit edges.
inline Graph with_disjoint_edges(const Graph& h, const Ratio& alpha) {
  if (alpha.sign() <= 0 || alpha > Ratio{1}) throw Error(Errc::out_of_range, "alpha must lie in (0, 1]");
  return add_disjoint_edges(h, (h.total_weight() * (Ratio{1} - alpha) / alpha).floor());
}

// H_w(a, b, k): complete graph on k vertices with edge weight b/(k-1) and a
// loop of weight a/2 at every vertex, so every degree is a + b.
inline Graph weighted_clique_loops(const Ratio& a, const Ratio& b, int k) {
  if (a.sign() <= 0 || b.sign() <= 0) throw Error(Errc::out_of_range, "a and b must be positive");
  detail::require_at_least(k, 2, "k");
  std::vector<Edge> edges;
  detail::add_clique(edges, 0, k, b / (k - 1));
  for (int i = 0; i < k; ++i) edges.push_back({i, i, a / 2});
  return Graph(k, std::move(edges));
}

inline Graph g_w(const Graph& hw, const Ratio& alpha) { return with_disjoint_edges(hw, alpha); }

// Root 0, inner vertices 1..k, leaves k+1+(i-1)k+j under inner vertex i.
inline Graph kary_depth2(int k) {
  detail::require_at_least(k, 2, "k");
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i) {
    edges.push_back({0, i, Ratio{1}});
    for (int j = 0; j < k; ++j) edges.push_back({i, k + 1 + (i - 1) * k + j, Ratio{1}});
  }
  return Graph(k * k + k + 1, std::move(edges));
}

struct CollapsedGraph {
  Graph graph;
  std::vector<Vertex> image;  // old vertex -> new vertex
};

// Replaces the leaves at each vertex v by one loop at v carrying their total
// edge weight, and every isolated edge uv by a loop at min(u, v) of the same
// weight. A leaf has no loop and all of its edges go to a single neighbour.
inline CollapsedGraph collapse_pendants(const Graph& j) {
  const int n = j.n();
  std::vector<std::vector<Vertex>> nbrs = j.neighbours();
  std::vector<bool> has_loop(static_cast<std::size_t>(n), false);
  for (const Edge& e : j.edges()) {
    if (e.is_loop()) has_loop[static_cast<std::size_t>(e.u)] = true;
  }
  auto single_neighbour = [&](Vertex v) -> Vertex {
    const auto& nb = nbrs[static_cast<std::size_t>(v)];
    if (has_loop[static_cast<std::size_t>(v)] || nb.size() != 1) return -1;
    return nb.front();
  };
  // target[v] is where v's weight goes; v is removed when target[v] != v
  std::vector<Vertex> target(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    target[static_cast<std::size_t>(v)] = v;
    Vertex u = single_neighbour(v);
    if (u < 0) continue;
    bool isolated_edge = single_neighbour(u) == v;
    if (!isolated_edge || u < v) target[static_cast<std::size_t>(v)] = u;
  }
  CollapsedGraph out{Graph(0, {}), std::vector<Vertex>(static_cast<std::size_t>(n))};
  int next = 0;
  std::vector<Vertex> fresh(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (target[static_cast<std::size_t>(v)] == v) fresh[static_cast<std::size_t>(v)] = next++;
  }
  for (Vertex v = 0; v < n; ++v) {
    out.image[static_cast<std::size_t>(v)] = fresh[static_cast<std::size_t>(target[static_cast<std::size_t>(v)])];
  }
  std::vector<Edge> edges;
  for (const Edge& e : j.edges()) {
    Vertex a = out.image[static_cast<std::size_t>(e.u)];
    Vertex b = out.image[static_cast<std::size_t>(e.v)];
    edges.push_back({a, b, e.w});
  }
  out.graph = Graph(next, std::move(edges));
  return out;
}

struct FamilySpec {
  std::string family;
  std::map<std::string, std::string> params;
};

namespace detail {

inline const std::string& param(const FamilySpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw Error(Errc::out_of_range, "family " + spec.family + " needs --" + key);
  }
  return it->second;
}

inline int int_param(const FamilySpec& spec, const std::string& key) {
  Ratio r = Ratio::parse(param(spec, key));
  if (!r.is_integer() || r.num() > 1'000'000 || r.num() < -1'000'000) {
    throw Error(Errc::out_of_range, "--" + key + " must be a small integer");
  }
  return static_cast<int>(r.num());
}

inline Ratio ratio_param(const FamilySpec& spec, const std::string& key) { return Ratio::parse(param(spec, key)); }

}  // namespace detail

inline std::vector<std::string> family_names() {
  return {"g-h-padding", "g-alpha",  "windmill", "clique-leaves", "weighted-clique-loops",
          "g-w",         "kary2",    "complete", "path",          "cycle",
          "star",        "triangles"};
}

// Builds a family from named parameters. Optional `alpha` on clique-leaves
// adds the disjoint edges of G(H, α); g-h-padding pads K_k to m edges.
inline Graph generate(const FamilySpec& spec) {
  using detail::int_param;
  using detail::ratio_param;
  const std::string& f = spec.family;
  if (f == "g-h-padding") return g_h_padding(complete_graph(int_param(spec, "k")), int_param(spec, "m"));
  if (f == "g-alpha") return g_alpha(ratio_param(spec, "alpha"), int_param(spec, "m"));
  if (f == "windmill") return windmill(int_param(spec, "l"));
  if (f == "clique-leaves") {
    Graph h = clique_with_leaves(int_param(spec, "k"), int_param(spec, "l"));
    return spec.params.count("alpha") ? with_disjoint_edges(h, ratio_param(spec, "alpha")) : h;
  }
  if (f == "weighted-clique-loops") {
    return weighted_clique_loops(ratio_param(spec, "a"), ratio_param(spec, "b"), int_param(spec, "k"));
  }
  if (f == "g-w") {
    Graph hw = weighted_clique_loops(ratio_param(spec, "a"), ratio_param(spec, "b"), int_param(spec, "k"));
    return g_w(hw, ratio_param(spec, "alpha"));
  }
  if (f == "kary2") return kary_depth2(int_param(spec, "k"));
  if (f == "complete") return complete_graph(int_param(spec, "n"));
  if (f == "path") return path_graph(int_param(spec, "n"));
  if (f == "cycle") return cycle_graph(int_param(spec, "n"));
  if (f == "star") return star_graph(int_param(spec, "t"));
  if (f == "triangles") return disjoint_triangles(int_param(spec, "count"));
  throw Error(Errc::out_of_range, "unknown family " + f);
}

}  // namespace modexp
