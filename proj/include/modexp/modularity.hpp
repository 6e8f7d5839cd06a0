#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modexp/detail/scaled.hpp"
#include "modexp/graph.hpp"
#include "modexp/limits.hpp"

namespace modexp {

struct ScoreBreakdown {
  Ratio q{0};
  Ratio coverage{0};    // Σ e(A) / m
  Ratio degree_tax{0};  // Σ vol(A)^2 / (4 m^2)
};

inline ScoreBreakdown score(const Graph& g, const Partition& p) {
  require_partition_of(g, p);
  ScoreBreakdown out;
  const Ratio& m = g.total_weight();
  if (m.is_zero()) return out;
  std::vector<Ratio> inside(static_cast<std::size_t>(p.part_count()), Ratio{0});
  std::vector<Ratio> vol(static_cast<std::size_t>(p.part_count()), Ratio{0});
  for (const Edge& e : g.edges()) {
    if (p.part_of(e.u) == p.part_of(e.v)) inside[static_cast<std::size_t>(p.part_of(e.u))] += e.w;
  }
  for (Vertex v = 0; v < g.n(); ++v) vol[static_cast<std::size_t>(p.part_of(v))] += g.degree(v);
  Ratio inside_sum{0}, square_sum{0};
  for (std::size_t i = 0; i < inside.size(); ++i) {
    inside_sum += inside[i];
    square_sum += vol[i] * vol[i];
  }
  out.coverage = inside_sum / m;
  out.degree_tax = square_sum / (m * m * 4);
  out.q = out.coverage - out.degree_tax;
  return out;
}

struct ModularityReport {
  Ratio q_star{0};
  Partition optimal;
  std::optional<std::vector<Partition>> all_optimal;
};

namespace detail {

// Exact optimum over partitions of one connected component into connected
// parts. A part T is worth 4M e(T) - vol(T)^2 in integer units, M being the
// scaled edge total of the whole host graph; dividing the sum by 4M^2 gives
// the component's contribution to q.
class ComponentOptimizer {
 public:
  ComponentOptimizer(const Graph& host, const VertexSet& component, std::int64_t scale, std::int64_t host_total)
      : sub_(induced(host, component)), sg_(sub_.graph, scale) {
    const int n = sg_.n;
    const std::size_t states = std::size_t{1} << n;
    value_.assign(states, 0);
    best_.assign(states, 0);
    connected_.assign(states, false);
    std::vector<std::int64_t> inside(states, 0), vol(states, 0);
    for (mask_t t = 1; t < states; ++t) {
      int v = std::countr_zero(t);
      mask_t rest = t & (t - 1);
      inside[t] = inside[rest] + sg_.loop[static_cast<std::size_t>(v)] + sg_.weight_to(v, rest);
      vol[t] = vol[rest] + sg_.degree[static_cast<std::size_t>(v)];
      value_[t] = static_cast<wide_int>(4) * host_total * inside[t] - static_cast<wide_int>(vol[t]) * vol[t];
      connected_[t] = sg_.connected(t);
    }
    for (mask_t s = 1; s < states; ++s) {
      mask_t low = s & (~s + 1);
      mask_t rest = s ^ low;
      bool first = true;
      // every subset of rest, including rest itself and the empty set
      for (mask_t sub = rest;; sub = (sub - 1) & rest) {
        mask_t part = sub | low;
        if (connected_[part]) {
          wide_int cand = value_[part] + best_[s ^ part];
          if (first || cand > best_[s]) best_[s] = cand;
          first = false;
        }
        if (sub == 0) break;
      }
    }
  }

  wide_int best_value() const { return best_.back(); }

  // Optimal parts choosing, at each step, the smallest-mask part that keeps
  // the optimum; this is the first partition visited by for_each_optimal.
  std::vector<VertexSet> canonical_parts(int host_n) const {
    std::vector<VertexSet> out;
    for_each_optimal([&](const std::vector<mask_t>& parts) {
      for (mask_t p : parts) out.push_back(lift_mask(p, host_n));
      return false;
    });
    return out;
  }

  // Visits every optimal partition (as local part masks) in increasing
  // part-mask order. Visitor returns false to stop.
  void for_each_optimal(const std::function<bool(const std::vector<mask_t>&)>& visit) const {
    std::vector<mask_t> chosen;
    bool keep_going = true;
    std::function<void(mask_t)> walk = [&](mask_t s) {
      if (!keep_going) return;
      if (s == 0) {
        keep_going = visit(chosen);
        return;
      }
      mask_t low = s & (~s + 1);
      mask_t rest = s ^ low;
      std::vector<mask_t> subs;
      for (mask_t sub = rest;; sub = (sub - 1) & rest) {
        subs.push_back(sub | low);
        if (sub == 0) break;
      }
      for (auto it = subs.rbegin(); it != subs.rend() && keep_going; ++it) {
        mask_t part = *it;
        if (!connected_[part] || value_[part] + best_[s ^ part] != best_[s]) continue;
        chosen.push_back(part);
        walk(s ^ part);
        chosen.pop_back();
      }
    };
    walk(sg_.full());
  }

  VertexSet lift_mask(mask_t m, int host_n) const {
    return VertexSet::from_mask(host_n, m, sub_.original);
  }

 private:
  InducedSubgraph sub_;
  ScaledGraph sg_;
  std::vector<wide_int> value_;
  std::vector<wide_int> best_;
  std::vector<bool> connected_;
};

struct RegionPlan {
  std::vector<ComponentOptimizer> optimizers;
  std::vector<VertexSet> fixed_singletons;  // isolated vertices
  wide_int total = 0;
  std::int64_t host_total = 0;
};

inline RegionPlan plan_region(const Graph& g, const VertexSet& region, const Limits& limits) {
  RegionPlan plan;
  std::int64_t scale = integer_scale(g);
  plan.host_total = scaled_total(g, scale);
  for (const VertexSet& comp : components(g)) {
    VertexSet overlap = comp & region;
    if (overlap.empty()) continue;
    if (overlap != comp) throw Error(Errc::not_a_component_union, "region splits component " + comp.str());
    if (comp.size() == 1 && g.degree(comp.front()).is_zero()) {
      plan.fixed_singletons.push_back(comp);
      continue;
    }
    if (comp.size() > limits.max_component_vertices || comp.size() > 30) {
      throw Error(Errc::size_limit_exceeded,
                  "component of " + std::to_string(comp.size()) + " vertices exceeds the modularity cap of " +
                      std::to_string(limits.max_component_vertices) + " (--max-n)");
    }
    plan.optimizers.emplace_back(g, comp, scale, plan.host_total);
    plan.total += plan.optimizers.back().best_value();
  }
  return plan;
}

inline Ratio plan_value(const RegionPlan& plan) {
  wide_int m = plan.host_total;
  return Ratio::from_wide(plan.total, 4 * m * m);
}

}  // namespace detail

struct RegionOptimum {
  std::vector<VertexSet> parts;
  Ratio contribution{0};  // Σ e(B)/e(G) - vol(B)^2/vol(G)^2 over the parts
};

// Best partition of a union of components, scored with the host graph's
// normalisation (parts never cross components in an optimum).
inline RegionOptimum optimal_parts_within(const Graph& g, const VertexSet& region, const Limits& limits = {}) {
  require_same_range(g, region);
  RegionOptimum out;
  if (g.total_weight().is_zero()) {
    for (Vertex v : region.members()) out.parts.push_back(VertexSet(g.n(), {v}));
    return out;
  }
  detail::RegionPlan plan = detail::plan_region(g, region, limits);
  for (const auto& opt : plan.optimizers) {
    auto parts = opt.canonical_parts(g.n());
    out.parts.insert(out.parts.end(), parts.begin(), parts.end());
  }
  out.parts.insert(out.parts.end(), plan.fixed_singletons.begin(), plan.fixed_singletons.end());
  out.contribution = detail::plan_value(plan);
  return out;
}

// q*(G) over all partitions. Parts are searched among connected vertex sets,
// one component at a time; each isolated vertex is its own part.
inline ModularityReport maximize(const Graph& g, const Limits& limits = {}) {
  ModularityReport report;
  if (g.total_weight().is_zero()) {
    report.optimal = Partition::trivial(g.n());
    return report;
  }
  RegionOptimum opt = optimal_parts_within(g, VertexSet::all(g.n()), limits);
  report.q_star = opt.contribution;
  report.optimal = Partition::from_parts(g.n(), opt.parts);
  return report;
}

// Every optimal partition up to isolated-vertex placement, canonical first.
inline ModularityReport all_optimal(const Graph& g, const Limits& limits = {}) {
  ModularityReport report;
  if (g.total_weight().is_zero()) {
    report.optimal = Partition::trivial(g.n());
    report.all_optimal = std::vector<Partition>{report.optimal};
    return report;
  }
  detail::RegionPlan plan = detail::plan_region(g, VertexSet::all(g.n()), limits);
  std::vector<std::vector<std::vector<VertexSet>>> per_component;
  std::uint64_t product = 1;
  for (const auto& opt : plan.optimizers) {
    std::vector<std::vector<VertexSet>> options;
    opt.for_each_optimal([&](const std::vector<detail::mask_t>& parts) {
      std::vector<VertexSet> lifted;
      for (detail::mask_t p : parts) lifted.push_back(opt.lift_mask(p, g.n()));
      options.push_back(std::move(lifted));
      if (options.size() > limits.max_optimal_partitions) {
        throw Error(Errc::size_limit_exceeded, "more than " + std::to_string(limits.max_optimal_partitions) +
                                                   " optimal partitions");
      }
      return true;
    });
    product *= options.size();
    if (product > limits.max_optimal_partitions) {
      throw Error(Errc::size_limit_exceeded,
                  "more than " + std::to_string(limits.max_optimal_partitions) + " optimal partitions");
    }
    per_component.push_back(std::move(options));
  }
  std::vector<Partition> out;
  std::vector<std::size_t> choice(per_component.size(), 0);
  while (true) {
    std::vector<VertexSet> parts = plan.fixed_singletons;
    for (std::size_t c = 0; c < per_component.size(); ++c) {
      const auto& chosen = per_component[c][choice[c]];
      parts.insert(parts.end(), chosen.begin(), chosen.end());
    }
    out.push_back(Partition::from_parts(g.n(), parts));
    // odometer over the per-component choices, last component fastest
    bool advanced = false;
    for (std::size_t c = per_component.size(); c-- > 0;) {
      if (++choice[c] < per_component[c].size()) {
        advanced = true;
        break;
      }
      choice[c] = 0;
    }
    if (!advanced) break;
  }
  report.q_star = detail::plan_value(plan);
  report.optimal = out.front();
  report.all_optimal = std::move(out);
  return report;
}

enum class ZeroModularityMethod { direct, geometric_mean, products };

// The three equivalent tests for q*(G) = 0. The cut-based forms range over
// every vertex subset, so isolated vertices (zero-volume sides) satisfy them
// trivially.
inline bool is_zero_modularity(const Graph& g, ZeroModularityMethod method, const Limits& limits = {}) {
  if (g.total_weight().is_zero()) throw Error(Errc::empty_graph, "zero-modularity test needs at least one edge");
  if (method == ZeroModularityMethod::direct) return maximize(g, limits).q_star.is_zero();
  if (g.n() > limits.max_subset_vertices || g.n() > 64) {
    throw Error(Errc::size_limit_exceeded, std::to_string(g.n()) + " vertices exceed the enumeration cap of " +
                                               std::to_string(limits.max_subset_vertices) + " (--max-n)");
  }
  detail::ScaledGraph sg(g);
  bool holds = true;
  detail::scan_cuts(sg, [&](detail::mask_t, std::int64_t vol_a, std::int64_t cut) {
    if (!holds) return;
    if (method == ZeroModularityMethod::geometric_mean) {
      // e(A, Ā) >= 2 sqrt(e(A) e(Ā)), squared
      wide_int e_a = (vol_a - cut) / 2;
      wide_int e_b = (sg.vol - vol_a - cut) / 2;
      holds = static_cast<wide_int>(cut) * cut >= 4 * e_a * e_b;
    } else {
      // e(A, Ā) vol(G) >= vol(A) vol(Ā)
      holds = static_cast<wide_int>(cut) * sg.vol >= static_cast<wide_int>(vol_a) * (sg.vol - vol_a);
    }
  });
  return holds;
}

// f(α) = α^2 ⌊1/α⌋ + (1 - α ⌊1/α⌋)^2: the largest Σ x_i^2 with Σ x_i = 1, 0 <= x_i <= α.
inline Ratio f_of_alpha(const Ratio& alpha) {
  if (alpha.sign() <= 0 || alpha > Ratio{1}) throw Error(Errc::out_of_range, "f needs 0 < alpha <= 1, got " + alpha.str());
  std::int64_t whole = (Ratio{1} / alpha).floor();
  Ratio rest = Ratio{1} - alpha * whole;
  return alpha * alpha * whole + rest * rest;
}

}  // namespace modexp
