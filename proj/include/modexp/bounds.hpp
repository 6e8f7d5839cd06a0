#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modexp/expansion.hpp"
#include "modexp/graph.hpp"
#include "modexp/limits.hpp"
#include "modexp/modularity.hpp"
#include "modexp/spectral.hpp"

namespace modexp {

struct BoundReport {
  Ratio bound{0};
  std::vector<std::pair<std::string, std::string>> ingredients;  // label -> exact value
};

namespace detail {

// The subgraph H = G[h] with its isolated vertices dropped; they carry no
// volume and so do not change α, ĥ_H or any x_B.
struct SubgraphFacts {
  InducedSubgraph sub;
  Ratio alpha{0};
  ExtendedRatio hh;  // +inf when H is a single vertex carrying only loops
  VertexSet witness;  // in host ids, empty when hh is infinite
};

inline SubgraphFacts subgraph_facts(const Graph& g, const VertexSet& h, const Limits& limits) {
  require_same_range(g, h);
  if (g.total_weight().is_zero() || h.empty() || internal_edges(g, h).is_zero()) {
    throw Error(Errc::edgeless_subgraph, "subgraph on " + h.str() + " has no edges");
  }
  InducedSubgraph full = induced(g, h);
  VertexSet kept(g.n());
  for (Vertex v = 0; v < full.graph.n(); ++v) {
    if (!full.graph.degree(v).is_zero()) kept.insert(full.original[static_cast<std::size_t>(v)]);
  }
  SubgraphFacts facts{induced(g, kept), internal_edges(g, kept) / g.total_weight(), ExtendedRatio::inf(),
                      VertexSet(g.n())};
  if (facts.sub.graph.n() >= 2) {
    ExpansionReport r = expansion_by_products(facts.sub.graph, limits);
    facts.hh = r.value;
    facts.witness = lift(facts.sub, r.witness, g.n());
  }
  return facts;
}

inline void require_unit_interval(const Ratio& x, const char* name, bool allow_zero) {
  bool low_ok = allow_zero ? x.sign() >= 0 : x.sign() > 0;
  if (!low_ok || x > Ratio{1}) {
    throw Error(Errc::out_of_range, std::string(name) + " must lie in " + (allow_zero ? "[0, 1]" : "(0, 1]") +
                                        ", got " + x.str());
  }
}

}  // namespace detail

// q*(G) <= 1 - α min{ĥ_H, α} with α = e(H)/e(G).
inline BoundReport upper_bound_subgraph(const Graph& g, const VertexSet& h_vertices, const Limits& limits = {}) {
  detail::SubgraphFacts f = detail::subgraph_facts(g, h_vertices, limits);
  Ratio m = f.hh.infinite ? f.alpha : min(f.hh.finite, f.alpha);
  BoundReport r;
  r.bound = Ratio{1} - f.alpha * m;
  r.ingredients = {{"alpha", f.alpha.str()}, {"hh", f.hh.str()}};
  return r;
}

// 1 - αĥ + α(ĥ - α) Σ x_B^2, where B runs over the parts of p restricted to H
// and x_B = vol_H(B) / vol(H). Never below score(g, p).q.
inline Ratio detailed_upper_bound(const Graph& g, const VertexSet& h_vertices, const Partition& p,
                                  const Limits& limits = {}) {
  require_partition_of(g, p);
  detail::SubgraphFacts f = detail::subgraph_facts(g, h_vertices, limits);
  const Graph& hg = f.sub.graph;
  std::vector<Ratio> vol(static_cast<std::size_t>(p.part_count()), Ratio{0});
  for (Vertex v = 0; v < hg.n(); ++v) {
    vol[static_cast<std::size_t>(p.part_of(f.sub.original[static_cast<std::size_t>(v)]))] += hg.degree(v);
  }
  Ratio squares{0};
  for (const Ratio& x : vol) {
    Ratio share = x / hg.volume();
    squares += share * share;
  }
  // a one-vertex H forces Σ x_B^2 = 1, where the expression reduces to 1 - α^2
  if (f.hh.infinite) return Ratio{1} - f.alpha * f.alpha;
  const Ratio& hh = f.hh.finite;
  return Ratio{1} - f.alpha * hh + f.alpha * (hh - f.alpha) * squares;
}

// 1 - f(min{1, α + 3δ/2}) - (3/2) δ ⌈log2(1/α)⌉
inline Ratio lower_bound_no_expanders(const Ratio& alpha, const Ratio& delta) {
  detail::require_unit_interval(alpha, "alpha", false);
  detail::require_unit_interval(delta, "delta", true);
  Ratio three_halves{3, 2};
  return Ratio{1} - f_of_alpha(min(Ratio{1}, alpha + three_halves * delta)) -
         three_halves * delta * ceil_log2_inverse(alpha);
}

// 1 - f(β) - 2δ ⌈log2(1/β)⌉
inline Ratio lower_bound_volume(const Ratio& beta, const Ratio& delta) {
  detail::require_unit_interval(beta, "beta", false);
  detail::require_unit_interval(delta, "delta", true);
  return Ratio{1} - f_of_alpha(beta) - delta * 2 * ceil_log2_inverse(beta);
}

// 1 - α min{α, 1 - λ̄_H}, in floating point since λ̄ comes from the eigensolver.
inline double spectral_upper_bound(const Graph& g, const VertexSet& h_vertices) {
  require_same_range(g, h_vertices);
  if (h_vertices.empty() || internal_edges(g, h_vertices).is_zero()) {
    throw Error(Errc::edgeless_subgraph, "subgraph on " + h_vertices.str() + " has no edges");
  }
  InducedSubgraph sub = induced(g, h_vertices);
  if (!is_connected(sub.graph)) throw Error(Errc::disconnected, "subgraph on " + h_vertices.str() + " is disconnected");
  double alpha = (sub.graph.total_weight() / g.total_weight()).to_double();
  double gap = spectral_gap(sub.graph).gap;
  return 1.0 - alpha * std::min(alpha, 1.0 - gap);
}

namespace detail {

inline void require_component_union(const Graph& g, const VertexSet& region) {
  require_same_range(g, region);
  for (const VertexSet& comp : components(g)) {
    VertexSet overlap = comp & region;
    if (!overlap.empty() && overlap != comp) {
      throw Error(Errc::not_a_component_union, region.str() + " splits component " + comp.str());
    }
  }
}

}  // namespace detail

// Contribution of the parts b (which partition h_component) to the modularity
// score: Σ e(B)/e(G) - vol(B)^2/vol(G)^2.
inline Ratio partial_score(const Graph& g, const VertexSet& h_component, const std::vector<VertexSet>& b) {
  detail::require_component_union(g, h_component);
  VertexSet covered(g.n());
  for (const VertexSet& part : b) {
    require_same_range(g, part);
    if (part.empty() || !(covered & part).empty() || !part.is_subset_of(h_component)) {
      throw Error(Errc::partition_mismatch, "parts do not partition " + h_component.str());
    }
    covered = covered | part;
  }
  if (covered != h_component) throw Error(Errc::partition_mismatch, "parts do not cover " + h_component.str());
  if (g.total_weight().is_zero()) return Ratio{0};
  Ratio sum{0};
  for (const VertexSet& part : b) {
    Ratio v = volume(g, part) / g.volume();
    sum += internal_edges(g, part) / g.total_weight() - v * v;
  }
  return sum;
}

enum class SplitDecision { split, not_split, boundary };

inline std::string to_string(SplitDecision d) {
  switch (d) {
    case SplitDecision::split: return "Split";
    case SplitDecision::not_split: return "NotSplit";
    case SplitDecision::boundary: return "Boundary";
  }
  return "?";
}

struct SplitVerdict {
  SplitDecision decision = SplitDecision::not_split;
  Ratio alpha{0};
  ExtendedRatio hh_component;  // +inf for a one-vertex component
  VertexSet hh_witness;
  std::optional<Partition> witness_unsplit;
  std::optional<Partition> witness_split;
};

namespace detail {

inline void require_verdict_domain(const Graph& g, const VertexSet& component) {
  require_same_range(g, component);
  if (g.has_isolated_vertex()) {
    throw Error(Errc::isolated_vertices_present, "resolution verdicts need a graph without isolated vertices");
  }
  for (const VertexSet& comp : components(g)) {
    if (comp == component) return;
  }
  throw Error(Errc::not_a_component, component.str() + " is not a connected component");
}

}  // namespace detail

// Compares α = e(H)/e(G) with ĥ_H exactly. At the boundary both an unsplit and
// a split optimal partition are built: the rest of G is optimised separately,
// and H is either one part or the ĥ-witness bipartition.
inline SplitVerdict resolution_verdict(const Graph& g, const VertexSet& component, const Limits& limits = {}) {
  detail::require_verdict_domain(g, component);
  InducedSubgraph sub = induced(g, component);
  SplitVerdict v;
  v.alpha = sub.graph.total_weight() / g.total_weight();
  v.hh_witness = VertexSet(g.n());
  if (sub.graph.n() < 2) {
    v.hh_component = ExtendedRatio::inf();
    v.decision = SplitDecision::not_split;
    return v;
  }
  ExpansionReport r = expansion_by_products(sub.graph, limits);
  v.hh_component = r.value;
  v.hh_witness = lift(sub, r.witness, g.n());
  const Ratio& hh = r.value.finite;
  if (v.alpha < hh) {
    v.decision = SplitDecision::not_split;
  } else if (hh < v.alpha) {
    v.decision = SplitDecision::split;
  } else {
    v.decision = SplitDecision::boundary;
    VertexSet rest = component.complement();
    std::vector<VertexSet> others;
    if (!rest.empty()) others = optimal_parts_within(g, rest, limits).parts;
    std::vector<VertexSet> unsplit = others;
    unsplit.push_back(component);
    std::vector<VertexSet> split = others;
    split.push_back(v.hh_witness);
    split.push_back(component - v.hh_witness);
    Ratio conn = partial_score(g, component, {component});
    Ratio witn = partial_score(g, component, {v.hh_witness, component - v.hh_witness});
    if (conn != witn) {
      throw Error(Errc::postcondition_failed,
                  "boundary witnesses score differently: " + conn.str() + " vs " + witn.str());
    }
    v.witness_unsplit = Partition::from_parts(g.n(), unsplit);
    v.witness_split = Partition::from_parts(g.n(), split);
  }
  return v;
}

// e(H) < sqrt(2 e(G)), tested as e(H)^2 < 2 e(G).
inline bool classic_resolution_bound(const Graph& g, const VertexSet& component) {
  detail::require_verdict_domain(g, component);
  Ratio eh = internal_edges(g, component);
  return eh * eh < g.total_weight() * 2;
}

// True iff q*(H) = 0. With check_optimal set, every optimal partition of g is
// also confirmed to keep V(H) as one part.
inline bool zero_component_unsplit(const Graph& g, const VertexSet& component, bool check_optimal = false,
                                   const Limits& limits = {}) {
  detail::require_verdict_domain(g, component);
  if (internal_edges(g, component) >= g.total_weight()) {
    throw Error(Errc::out_of_range, "component must carry fewer edges than the whole graph");
  }
  InducedSubgraph sub = induced(g, component);
  bool zero = maximize(sub.graph, limits).q_star.is_zero();
  if (zero && check_optimal) {
    ModularityReport all = all_optimal(g, limits);
    for (const Partition& p : *all.all_optimal) {
      if (!p.contains_part(component)) {
        throw Error(Errc::postcondition_failed, "optimal partition " + p.str() + " splits " + component.str());
      }
    }
  }
  return zero;
}

}  // namespace modexp
