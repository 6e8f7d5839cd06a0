#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modexp/bounds.hpp"
#include "modexp/detail/scaled.hpp"
#include "modexp/graph.hpp"
#include "modexp/limits.hpp"
#include "modexp/modularity.hpp"

namespace modexp {

// Raised when a splitting step finds no qualifying sparse cut; `offending` is
// the vertex set (host ids) that resisted splitting.
class HypothesisViolated : public Error {
 public:
  HypothesisViolated(VertexSet offending, const std::string& what)
      : Error(Errc::hypothesis_violated, what + " on " + offending.str()), offending_(std::move(offending)) {}

  const VertexSet& offending() const { return offending_; }

 private:
  VertexSet offending_;
};

struct TraceRound {
  VertexSet extracted;
  Ratio boundary_added{0};
  Ratio running{0};
};

struct DecompositionTrace {
  std::vector<TraceRound> rounds;
  Partition final;
  Ratio threshold{0};  // e0 for the edge process, β for the volume process
  Ratio delta{0};
  Ratio delta_prime{0};
  Ratio rho{0};
};

// ρ = (δ/(1+δ)) (3+δ)/2 and δ' = 2δ/(1-δ).
inline Ratio rho_of(const Ratio& delta) { return delta / (delta + 1) * (delta + 3) / 2; }
inline Ratio delta_prime_of(const Ratio& delta) { return delta * 2 / (Ratio{1} - delta); }

namespace detail {

inline void require_edge_params(const Ratio& e0, const Ratio& delta) {
  if (delta.sign() <= 0 || delta >= Ratio{1}) {
    throw Error(Errc::out_of_range, "delta must satisfy 0 < delta < 1, got " + delta.str());
  }
  if (e0.sign() <= 0) throw Error(Errc::out_of_range, "e0 must be positive, got " + e0.str());
}

inline mask_t to_mask(const VertexSet& s) {
  mask_t m = 0;
  for (Vertex v : s.members()) m |= mask_t{1} << v;
  return m;
}

inline std::int64_t cut_within(const ScaledGraph& sg, mask_t a, mask_t rest) {
  std::int64_t sum = 0;
  for (mask_t t = a; t != 0; t &= t - 1) sum += sg.weight_to(std::countr_zero(t), rest);
  return sum;
}

// A ⊂ W with e(A) <= e(W \ A) and e(A, W \ A) < δ' e(A), smallest first by
// size and then by member list. Such a minimal set is always connected, so
// only connected candidates are generated.
inline mask_t sparse_cut_mask(const ScaledGraph& sg, mask_t w, const Ratio& delta_prime, const Limits& limits) {
  auto qualifies = [&](mask_t a) {
    mask_t rest = w & ~a;
    if (rest == 0) return false;
    wide_int inside = sg.internal_of(a);
    if (inside > sg.internal_of(rest)) return false;
    return static_cast<wide_int>(cut_within(sg, a, rest)) * delta_prime.den() < inside * delta_prime.num();
  };
  // e(A) only grows and e(W \ A) only shrinks as A grows
  auto hopeless = [&](mask_t a) { return sg.internal_of(a) > sg.internal_of(w & ~a); };
  return min_connected_set(sg, w, qualifies, hopeless, limits.sparse_cut_budget);
}

inline void require_dense(const Graph& g) {
  if (g.n() > 64) throw Error(Errc::size_limit_exceeded, "decomposition supports at most 64 vertices (--max-n)");
}

}  // namespace detail

// Smallest qualifying A ⊂ w (by size, then member list), or nothing.
inline std::optional<VertexSet> find_sparse_cut(const Graph& g, const VertexSet& w, const Ratio& delta_prime,
                                                const Limits& limits = {}) {
  require_same_range(g, w);
  detail::require_dense(g);
  if (internal_edges(g, w).is_zero()) throw Error(Errc::edgeless_subgraph, w.str() + " induces no edges");
  detail::ScaledGraph sg(g);
  detail::mask_t a = detail::sparse_cut_mask(sg, detail::to_mask(w), delta_prime, limits);
  if (a == 0) return std::nullopt;
  return VertexSet::from_mask(g.n(), a);
}

// Peels sparse pieces off W = V while e(W) > max{e(G)/2, e0}.
inline DecompositionTrace split_non_expander(const Graph& g, const Ratio& e0, const Ratio& delta,
                                             const Limits& limits = {}) {
  detail::require_edge_params(e0, delta);
  detail::require_dense(g);
  DecompositionTrace trace;
  trace.threshold = e0;
  trace.delta = delta;
  trace.delta_prime = delta_prime_of(delta);
  trace.rho = rho_of(delta);
  const Ratio limit = max(g.total_weight() / 2, e0);
  detail::ScaledGraph sg(g);
  VertexSet w = VertexSet::all(g.n());
  std::vector<VertexSet> parts;
  Ratio running{0};
  while (internal_edges(g, w) > limit) {
    detail::mask_t a = detail::sparse_cut_mask(sg, detail::to_mask(w), trace.delta_prime, limits);
    if (a == 0) throw HypothesisViolated(w, "no sparse cut with e(W) = " + internal_edges(g, w).str());
    VertexSet extracted = VertexSet::from_mask(g.n(), a);
    VertexSet rest = w - extracted;
    Ratio added = edges_between(g, extracted, rest);
    Ratio inside = internal_edges(g, extracted);
    if (inside > internal_edges(g, rest) || !(added < trace.delta_prime * inside)) {
      throw Error(Errc::postcondition_failed, "extracted set " + extracted.str() + " does not qualify");
    }
    running += added;
    trace.rounds.push_back({extracted, added, running});
    parts.push_back(extracted);
    w = rest;
  }
  parts.push_back(w);
  trace.final = Partition::from_parts(g.n(), parts);
  if (max_internal(g, trace.final) > limit) {
    throw Error(Errc::postcondition_failed, "a part keeps more than max{e(G)/2, e0} edges");
  }
  if (boundary(g, trace.final) > trace.rho * g.total_weight()) {
    throw Error(Errc::postcondition_failed, "boundary exceeds rho e(G)");
  }
  return trace;
}

struct RefineResult {
  Partition partition;
  std::vector<DecompositionTrace> traces;  // one per input part, in local ids
  Ratio boundary_before{0}, boundary_after{0};
  Ratio max_in_before{0}, max_in_after{0};
  Ratio max_out_before{0}, max_out_after{0};
};

// Splits every part of a with split_non_expander on its induced subgraph.
inline RefineResult refine(const Graph& g, const Partition& a, const Ratio& e0, const Ratio& delta,
                           const Limits& limits = {}) {
  require_partition_of(g, a);
  detail::require_edge_params(e0, delta);
  RefineResult r;
  r.boundary_before = boundary(g, a);
  r.max_in_before = max_internal(g, a);
  r.max_out_before = max_outgoing(g, a);
  std::vector<VertexSet> parts;
  for (const VertexSet& part : a.parts()) {
    InducedSubgraph sub = induced(g, part);
    try {
      r.traces.push_back(split_non_expander(sub.graph, e0, delta, limits));
    } catch (const HypothesisViolated& e) {
      throw HypothesisViolated(lift(sub, e.offending(), g.n()), "no sparse cut inside part " + part.str());
    }
    for (const VertexSet& local : r.traces.back().final.parts()) parts.push_back(lift(sub, local, g.n()));
  }
  r.partition = Partition::from_parts(g.n(), parts);
  r.boundary_after = boundary(g, r.partition);
  r.max_in_after = max_internal(g, r.partition);
  r.max_out_after = max_outgoing(g, r.partition);
  Ratio rho = rho_of(delta);
  if (r.boundary_after > (Ratio{1} - rho) * r.boundary_before + rho * g.total_weight()) {
    throw Error(Errc::postcondition_failed, "refined boundary exceeds (1-rho) d(A) + rho e(G)");
  }
  if (r.max_in_after > max(r.max_in_before / 2, e0)) {
    throw Error(Errc::postcondition_failed, "refined max_in exceeds max{max_in/2, e0}");
  }
  if (r.max_out_after > r.max_out_before + rho * r.max_in_before) {
    throw Error(Errc::postcondition_failed, "refined max_out exceeds max_out + rho max_in");
  }
  return r;
}

struct BuildResult {
  Partition partition;
  ScoreBreakdown score;
  Ratio bound{0};
  int rounds = 0;  // k = ⌈log2(1/α)⌉
  std::vector<RefineResult> steps;
};

// k rounds of refine from the trivial partition with e0 = α e(G); checks the
// tracked inequalities and q > 1 - f(min{1, α + 3δ/2}) - (3/2) δ k.
inline BuildResult build_partition(const Graph& g, const Ratio& alpha, const Ratio& delta, const Limits& limits = {}) {
  detail::require_unit_interval(alpha, "alpha", false);
  detail::require_edge_params(Ratio{1}, delta);
  if (g.total_weight().is_zero()) throw Error(Errc::empty_graph, "partition builder needs at least one edge");
  BuildResult r;
  r.rounds = ceil_log2_inverse(alpha);
  const Ratio& e = g.total_weight();
  const Ratio e0 = alpha * e;
  const Ratio rho = rho_of(delta);
  Partition current = Partition::trivial(g.n());
  Ratio halving{1};
  for (int j = 1; j <= r.rounds; ++j) {
    r.steps.push_back(refine(g, current, e0, delta, limits));
    current = r.steps.back().partition;
    halving /= 2;
    if (max_internal(g, current) > max(halving, alpha) * e) {
      throw Error(Errc::postcondition_failed, "round " + std::to_string(j) + " leaves max_in above max{2^-j, alpha} e");
    }
  }
  r.partition = current;
  r.score = score(g, current);
  r.bound = lower_bound_no_expanders(alpha, delta);
  const Ratio cap = min(Ratio{1}, alpha + rho);
  auto fail = [](const std::string& what) { throw Error(Errc::postcondition_failed, what); };
  if (max_internal(g, current) > e0) fail("max_in exceeds alpha e(G)");
  if (r.rounds == 0) {
    if (r.score.q < r.bound) fail("score below the lower bound");
    return r;
  }
  // every inequality below is strict once at least one round has run
  if (!(max_outgoing(g, current) < rho * e * 2)) fail("max_out not below 2 rho e(G)");
  if (!(max_part_volume(g, current) < cap * e * 2)) fail("a part volume is not below 2 min{1, alpha+rho} e(G)");
  if (!(r.score.coverage > Ratio{1} - rho * r.rounds)) fail("coverage not above 1 - k rho");
  if (!(r.score.degree_tax < f_of_alpha(cap))) fail("degree tax not below f(min{1, alpha+rho})");
  if (!(r.score.q > r.bound)) fail("score not above the lower bound");
  return r;
}

struct VolumeResult {
  Partition partition;
  ScoreBreakdown score;
  Ratio bound{0};
  Ratio deleted{0};                 // |X|, total weight of deleted edges
  std::vector<Ratio> vertex_weight;  // w(v)
  DecompositionTrace trace;
};

// Deletes sparse volume cuts until every component has vol_G <= β vol(G).
// Volumes and degrees always refer to g itself.
inline VolumeResult volume_decompose(const Graph& g, const Ratio& beta, const Ratio& delta, const Limits& limits = {}) {
  detail::require_unit_interval(beta, "beta", false);
  if (delta.sign() <= 0 || delta > Ratio{1}) {
    throw Error(Errc::out_of_range, "delta must satisfy 0 < delta <= 1, got " + delta.str());
  }
  if (g.total_weight().is_zero()) throw Error(Errc::empty_graph, "volume decomposition needs at least one edge");
  if (g.has_isolated_vertex()) throw Error(Errc::isolated_vertices_present, "volume decomposition needs positive degrees");
  detail::require_dense(g);
  detail::ScaledGraph sg(g);
  VolumeResult r;
  r.trace.threshold = beta;
  r.trace.delta = delta;
  r.trace.rho = rho_of(delta);
  if (delta < Ratio{1}) r.trace.delta_prime = delta_prime_of(delta);
  r.vertex_weight.assign(static_cast<std::size_t>(g.n()), Ratio{0});
  const Ratio limit = beta * g.volume();

  // components of the working graph, kept as masks in order of smallest vertex
  std::vector<detail::mask_t> parts;
  for (const VertexSet& c : components(g)) parts.push_back(detail::to_mask(c));
  auto split_into_components = [&](detail::mask_t s, std::vector<detail::mask_t>& out) {
    while (s != 0) {
      detail::mask_t reach = s & (~s + 1), frontier = reach;
      while (frontier != 0) {
        detail::mask_t next = 0;
        for (detail::mask_t f = frontier; f != 0; f &= f - 1) next |= sg.adj_mask[static_cast<std::size_t>(std::countr_zero(f))];
        next &= s & ~reach;
        reach |= next;
        frontier = next;
      }
      out.push_back(reach);
      s &= ~reach;
    }
  };

  while (true) {
    auto oversized = std::find_if(parts.begin(), parts.end(), [&](detail::mask_t a) {
      return volume(g, VertexSet::from_mask(g.n(), a)) > limit;
    });
    if (oversized == parts.end()) break;
    detail::mask_t a = *oversized;
    auto qualifies = [&](detail::mask_t s) {
      detail::mask_t rest = a & ~s;
      if (rest == 0) return false;
      wide_int vol_s = sg.volume_of(s);
      if (vol_s > sg.volume_of(rest)) return false;
      return static_cast<wide_int>(detail::cut_within(sg, s, rest)) * delta.den() < vol_s * delta.num();
    };
    auto hopeless = [&](detail::mask_t s) { return sg.volume_of(s) > sg.volume_of(a & ~s); };
    detail::mask_t s = detail::min_connected_set(sg, a, qualifies, hopeless, limits.sparse_cut_budget);
    VertexSet whole = VertexSet::from_mask(g.n(), a);
    if (s == 0) throw HypothesisViolated(whole, "no sparse volume cut in component of volume " + volume(g, whole).str());
    VertexSet chosen = VertexSet::from_mask(g.n(), s);
    VertexSet rest = whole - chosen;
    Ratio crossing = edges_between(g, chosen, rest);
    if (volume(g, chosen) > volume(g, rest) || !(crossing < delta * volume(g, chosen))) {
      throw Error(Errc::postcondition_failed, "chosen set " + chosen.str() + " does not qualify");
    }
    r.deleted += crossing;
    r.trace.rounds.push_back({chosen, crossing, r.deleted});
    for (Vertex v : chosen.members()) r.vertex_weight[static_cast<std::size_t>(v)] += delta * g.degree(v);

    std::vector<detail::mask_t> pieces;
    split_into_components(s, pieces);
    split_into_components(a & ~s, pieces);
    parts.erase(oversized);
    parts.insert(parts.end(), pieces.begin(), pieces.end());
    std::sort(parts.begin(), parts.end(), [](detail::mask_t x, detail::mask_t y) {
      return std::countr_zero(x) < std::countr_zero(y);
    });
  }

  std::vector<VertexSet> sets;
  for (detail::mask_t p : parts) sets.push_back(VertexSet::from_mask(g.n(), p));
  r.partition = Partition::from_parts(g.n(), sets);
  r.trace.final = r.partition;
  r.score = score(g, r.partition);
  r.bound = lower_bound_volume(beta, delta);

  const int k = ceil_log2_inverse(beta);
  auto fail = [](const std::string& what) { throw Error(Errc::postcondition_failed, what); };
  Ratio weight_sum{0};
  for (Vertex v = 0; v < g.n(); ++v) {
    const Ratio& w = r.vertex_weight[static_cast<std::size_t>(v)];
    weight_sum += w;
    if (w > delta * g.degree(v) * k) fail("w(" + std::to_string(v) + ") exceeds ceil(log2(1/beta)) delta deg(v)");
  }
  if (boundary(g, r.partition) != r.deleted) fail("deleted weight differs from the final boundary");
  if (r.deleted > weight_sum) fail("deleted weight exceeds the vertex weights");
  if (weight_sum > delta * k * g.volume()) fail("vertex weights exceed delta ceil(log2(1/beta)) vol(G)");
  if (r.score.degree_tax > f_of_alpha(beta)) fail("degree tax exceeds f(beta)");
  if (r.score.q < r.bound) fail("score below the volume lower bound");
  return r;
}

// One line per round, then the final partition and the parameters.
inline std::string format_trace(const DecompositionTrace& t, const std::string& threshold_name = "e0") {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const TraceRound& r = t.rounds[i];
    out << "round " << (i + 1) << " extracted " << r.extracted.str() << " boundary_added " << r.boundary_added
        << " running " << r.running << '\n';
  }
  out << "final " << t.final.str() << '\n';
  out << "params " << threshold_name << ' ' << t.threshold << " delta " << t.delta << " delta_prime " << t.delta_prime
      << " rho " << t.rho << '\n';
  return out.str();
}

}  // namespace modexp
