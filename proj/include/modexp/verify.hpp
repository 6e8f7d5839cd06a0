#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "modexp/bounds.hpp"
#include "modexp/constructions.hpp"
#include "modexp/decomposition.hpp"
#include "modexp/expansion.hpp"
#include "modexp/io.hpp"
#include "modexp/modularity.hpp"
#include "modexp/random.hpp"
#include "modexp/spectral.hpp"

namespace modexp {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = true;
  int cases = 0;
  std::string detail;          // first failure
  std::string counterexample;  // serialized graph of the first failure
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  int samples = 50;
  Limits limits;
};

namespace detail {

class Property {
 public:
  Property(std::string suite, std::string name) { result_.suite = std::move(suite), result_.name = std::move(name); }

  // Runs one case; a library error counts as a failure of the case.
  void check(const Graph& g, const std::function<void(Property&)>& body) {
    ++result_.cases;
    current_ = &g;
    try {
      body(*this);
    } catch (const Error& e) {
      fail(e.what());
    }
    current_ = nullptr;
  }

  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }

  void fail(const std::string& why) {
    if (!result_.passed) return;
    result_.passed = false;
    result_.detail = why;
    if (current_ != nullptr) result_.counterexample = serialize_graph(*current_);
  }

  PropertyResult done() const { return result_; }

 private:
  PropertyResult result_;
  const Graph* current_ = nullptr;
};

inline Ratio pick_density(SplitMix64& rng) {
  static const Ratio choices[] = {Ratio{1, 4}, Ratio{1, 3}, Ratio{1, 2}, Ratio{2, 3}};
  return choices[rng.below(4)];
}

inline bool split_in(const Partition& p, const VertexSet& component) { return !p.contains_part(component); }

inline Ratio sum_square_shares(const Graph& g, const VertexSet& h, const std::vector<VertexSet>& parts) {
  Ratio total = volume(g, h);
  Ratio sum{0};
  for (const VertexSet& b : parts) {
    Ratio x = volume(g, b) / total;
    sum += x * x;
  }
  return sum;
}

}  // namespace detail

inline std::vector<PropertyResult> verify_bounds(const VerifyConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  detail::Property upper("bounds", "upper_bound_soundness");
  detail::Property detailed("bounds", "detailed_bound_dominance");
  detail::Property gap("bounds", "partial_score_gap");
  detail::Property floor_hh("bounds", "hh_at_least_two_over_edges");
  detail::Property sandwich("bounds", "expansion_sandwich");
  detail::Property mixing("bounds", "expander_mixing");
  for (int sample = 0; sample < cfg.samples; ++sample) {
    Graph g = random_graph(rng, rng.between(4, 9), detail::pick_density(rng));
    if (g.total_weight().is_zero()) continue;
    detail::ScaledGraph sg(g);
    upper.check(g, [&](detail::Property& p) {
      Ratio q_star = maximize(g, cfg.limits).q_star;
      for (detail::mask_t s = 1; s <= sg.full(); ++s) {
        if (std::popcount(s) > 7 || !sg.connected(s) || sg.internal_of(s) == 0) continue;
        VertexSet h = VertexSet::from_mask(g.n(), s);
        Ratio bound = upper_bound_subgraph(g, h, cfg.limits).bound;
        p.expect(q_star <= bound, "q* = " + q_star.str() + " above bound " + bound.str() + " for H = " + h.str());
      }
    });
    detailed.check(g, [&](detail::Property& p) {
      for (int trial = 0; trial < 20; ++trial) {
        detail::mask_t s = 0;
        while (s == 0 || !sg.connected(s) || sg.internal_of(s) == 0) s = rng.below(sg.full()) + 1;
        VertexSet h = VertexSet::from_mask(g.n(), s);
        Partition part = random_partition(rng, g.n(), rng.between(1, g.n()));
        Ratio rhs = detailed_upper_bound(g, h, part, cfg.limits);
        Ratio q = score(g, part).q;
        p.expect(q <= rhs, "score " + q.str() + " above " + rhs.str() + " for " + part.str() + ", H = " + h.str());
      }
    });
    gap.check(g, [&](detail::Property& p) {
      if (g.has_isolated_vertex()) return;
      for (const VertexSet& h : components(g)) {
        if (h.size() < 2) continue;
        InducedSubgraph sub = induced(g, h);
        Ratio hh = expansion_by_products(sub.graph, cfg.limits).value.finite;
        Ratio alpha = sub.graph.total_weight() / g.total_weight();
        std::vector<Vertex> members = h.members();
        std::vector<VertexSet> parts;
        while (parts.size() < 2) {
          Partition local = random_partition(rng, h.size(), rng.between(2, h.size()));
          parts.clear();
          for (const VertexSet& b : local.parts()) parts.push_back(lift(sub, b, g.n()));
        }
        Ratio lhs = partial_score(g, h, {h}) - partial_score(g, h, parts);
        Ratio rhs = alpha * (hh - alpha) * (Ratio{1} - detail::sum_square_shares(g, h, parts));
        p.expect(lhs >= rhs, "gap " + lhs.str() + " below " + rhs.str() + " on component " + h.str());
      }
    });
    floor_hh.check(g, [&](detail::Property& p) {
      for (const VertexSet& h : components(g)) {
        if (h.size() < 2) continue;
        InducedSubgraph sub = induced(g, h);
        Ratio hh = expansion_by_products(sub.graph, cfg.limits).value.finite;
        p.expect(hh >= Ratio{2} / sub.graph.total_weight(), "hh " + hh.str() + " below 2/e(H) on " + h.str());
      }
    });
    sandwich.check(g, [&](detail::Property& p) {
      if (g.has_isolated_vertex()) return;
      Ratio h = conductance(g, cfg.limits).value.finite;
      Ratio hh = expansion_by_products(g, cfg.limits).value.finite;
      ExtendedRatio hp = expansion_by_edges(g, cfg.limits).value;
      p.expect(hh / 2 <= h && h <= hh, "sandwich fails: h = " + h.str() + ", hh = " + hh.str());
      if (is_connected(g)) p.expect(h < hh, "h = hh on a connected graph");
      p.expect(h <= Ratio{1} && hh <= Ratio{2}, "range violated");
      if (h < Ratio{1} && !hp.infinite) {
        p.expect(hp == hprime_from_conductance(h), "h' = " + hp.str() + " but 2h/(1-h) = " + hprime_from_conductance(h).str());
      }
    });
  }
  for (int sample = 0; sample < cfg.samples; ++sample) {
    Graph g = random_connected_graph(rng, rng.between(2, 10), detail::pick_density(rng));
    mixing.check(g, [&](detail::Property& p) {
      double hh = expansion_by_products(g, cfg.limits).value.finite.to_double();
      double lambda = spectral_gap(g).gap;
      p.expect(hh >= 1.0 - lambda - 1e-8, "hh = " + std::to_string(hh) + " below 1 - gap = " + std::to_string(1.0 - lambda));
    });
  }
  return {upper.done(), detailed.done(), gap.done(), floor_hh.done(), sandwich.done(), mixing.done()};
}

inline std::vector<PropertyResult> verify_zero_modularity(const VerifyConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  detail::Property agree("zero-mod", "three_conditions_agree");
  detail::Property half("zero-mod", "zero_modularity_implies_h_half");
  detail::Property f_range("zero-mod", "f_range_and_monotone");
  for (int sample = 0; sample < cfg.samples; ++sample) {
    Graph g = random_graph(rng, rng.between(2, 7), detail::pick_density(rng));
    if (g.total_weight().is_zero()) continue;
    agree.check(g, [&](detail::Property& p) {
      bool direct = is_zero_modularity(g, ZeroModularityMethod::direct, cfg.limits);
      bool geo = is_zero_modularity(g, ZeroModularityMethod::geometric_mean, cfg.limits);
      bool prod = is_zero_modularity(g, ZeroModularityMethod::products, cfg.limits);
      p.expect(direct == geo && geo == prod, "methods disagree: direct " + std::to_string(direct) + ", geometric " +
                                                 std::to_string(geo) + ", products " + std::to_string(prod));
      if (!g.has_isolated_vertex()) {
        bool hh_at_least_one = expansion_by_products(g, cfg.limits).value >= Ratio{1};
        p.expect(hh_at_least_one == direct, "q* = 0 disagrees with hh >= 1");
      }
    });
    if (g.has_isolated_vertex()) continue;
    half.check(g, [&](detail::Property& p) {
      if (!is_zero_modularity(g, ZeroModularityMethod::direct, cfg.limits)) return;
      Ratio h = conductance(g, cfg.limits).value.finite;
      p.expect(h >= Ratio{1, 2}, "q* = 0 but h = " + h.str());
    });
  }
  Graph none(0, {});
  f_range.check(none, [&](detail::Property& p) {
    Ratio previous{0};
    for (int i = 1; i <= 1000; ++i) {
      Ratio a{i, 1000};
      Ratio f = f_of_alpha(a);
      p.expect(a - a * a / 4 <= f && f <= a, "f(" + a.str() + ") = " + f.str() + " out of range");
      p.expect(previous <= f, "f decreases at " + a.str());
      previous = f;
    }
  });
  return {agree.done(), half.done(), f_range.done()};
}

inline std::vector<PropertyResult> verify_constructions(const VerifyConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  detail::Property pendant("constructions", "simple_weighted_equivalence");
  detail::Property closed("constructions", "hw_closed_form");
  detail::Property mill("constructions", "windmill_values");
  detail::Property galpha("constructions", "g_alpha_shape");
  detail::Property collapse("constructions", "collapse_preserves_scores");
  detail::Property determinism("constructions", "generators_deterministic");
  for (int k : {2, 3}) {
    for (int l : {1, 2}) {
      Graph h = clique_with_leaves(k, l);
      Graph hw = weighted_clique_loops(Ratio{2 * l}, Ratio{k - 1}, k);
      pendant.check(h, [&](detail::Property& p) {
        p.expect(expansion_by_products(h, cfg.limits).value == expansion_by_products(hw, cfg.limits).value,
                 "hh differs between H and H_w");
        for (Ratio alpha : {Ratio{1, 2}, Ratio{1}}) {
          Ratio simple = maximize(with_disjoint_edges(h, alpha), cfg.limits).q_star;
          Ratio weighted = maximize(g_w(hw, alpha), cfg.limits).q_star;
          p.expect(simple == weighted, "q* " + simple.str() + " vs " + weighted.str() + " at alpha " + alpha.str());
        }
      });
    }
  }
  for (int k = 2; k <= 6; ++k) {
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        Graph hw = weighted_clique_loops(Ratio{a}, Ratio{b}, k);
        closed.check(hw, [&](detail::Property& p) {
          Ratio expected = Ratio{b, a + b} * (Ratio{1} + Ratio{1, k - 1});
          p.expect(expansion_by_products(hw, cfg.limits).value == expected, "hh differs from b/(a+b)(1+1/(k-1))");
          for (detail::mask_t s = 1; s + 1 < (detail::mask_t{1} << k); ++s) {
            p.expect(hh_set(hw, VertexSet::from_mask(k, s)) == expected, "a proper subset misses the closed form");
          }
        });
      }
    }
  }
  for (int l : {2, 3, 4}) {
    Graph w = windmill(l);
    mill.check(w, [&](detail::Property& p) {
      p.expect(conductance(w, cfg.limits).value == Ratio{1, 2}, "h(W_l) != 1/2");
      VertexSet pair(w.n(), {1, 2});
      Partition two = Partition::from_parts(w.n(), std::vector<VertexSet>{pair, pair.complement()});
      p.expect(score(w, two).q == Ratio{6 * l - 8, 9 * l * l}, "bipartition score differs from (6l-8)/(9l^2)");
      if (l == 2) p.expect(maximize(w, cfg.limits).q_star >= Ratio{1, 9}, "q*(W_2) below 1/9");
    });
  }
  for (Ratio alpha : {Ratio{1, 4}, Ratio{1, 2}, Ratio{3, 4}}) {
    for (int m : {20, 50, 100, 200}) {
      Graph g = g_alpha(alpha, m);
      galpha.check(g, [&](detail::Property& p) {
        p.expect(g.total_weight() == Ratio{m}, "edge total differs from m");
        for (const VertexSet& c : components(g)) {
          std::int64_t s = c.size();
          p.expect(internal_edges(g, c) == Ratio{s * (s - 1) / 2}, "component " + c.str() + " is not a clique");
          p.expect(internal_edges(g, c) <= alpha * m || s == 2, "component above alpha m edges");
        }
      });
    }
  }
  for (int sample = 0; sample < cfg.samples; ++sample) {
    // random core with pendant leaves and isolated edges attached
    Graph core = random_connected_graph(rng, rng.between(2, 5), detail::pick_density(rng));
    std::vector<Edge> edges(core.edges().begin(), core.edges().end());
    int n = core.n();
    int leaves = rng.between(0, 4);
    for (int i = 0; i < leaves; ++i, ++n) edges.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(core.n()))), n, Ratio{1}});
    int pairs = rng.between(0, 2);
    for (int i = 0; i < pairs; ++i, n += 2) edges.push_back({n, n + 1, Ratio{1}});
    Graph j(n, std::move(edges));
    collapse.check(j, [&](detail::Property& p) {
      CollapsedGraph c = collapse_pendants(j);
      p.expect(c.graph.total_weight() == j.total_weight(), "collapse changes e(G)");
      for (int trial = 0; trial < 10; ++trial) {
        Partition small = random_partition(rng, c.graph.n(), rng.between(1, c.graph.n()));
        std::vector<int> labels;
        for (Vertex v = 0; v < j.n(); ++v) labels.push_back(small.part_of(c.image[static_cast<std::size_t>(v)]));
        Partition big = Partition::from_labels(labels);
        p.expect(score(j, big).q == score(c.graph, small).q, "pendant-consistent score changes under collapse");
      }
    });
  }
  Graph none(0, {});
  determinism.check(none, [&](detail::Property& p) {
    for (const FamilySpec& spec : {FamilySpec{"g-alpha", {{"alpha", "1/2"}, {"m", "200"}}},
                                   FamilySpec{"windmill", {{"l", "3"}}}, FamilySpec{"kary2", {{"k", "4"}}},
                                   FamilySpec{"g-w", {{"a", "1"}, {"b", "1"}, {"k", "3"}, {"alpha", "1/2"}}}}) {
      p.expect(serialize_graph(generate(spec)) == serialize_graph(generate(spec)), spec.family + " is not deterministic");
    }
  });
  return {pendant.done(), closed.done(), mill.done(), galpha.done(), collapse.done(), determinism.done()};
}

namespace detail {

// Some U ⊆ w with e(U) > e0 induces a δ-expander (positive degrees, h >= δ).
inline bool has_large_expander(const Graph& g, const VertexSet& w, const Ratio& e0, const Ratio& delta,
                               const Limits& limits) {
  std::vector<Vertex> members = w.members();
  const auto count = static_cast<mask_t>(1) << members.size();
  for (mask_t s = 1; s < count; ++s) {
    VertexSet u(g.n());
    for (std::size_t i = 0; i < members.size(); ++i) {
      if ((s >> i) & 1) u.insert(members[i]);
    }
    if (!(internal_edges(g, u) > e0)) continue;
    InducedSubgraph sub = induced(g, u);
    if (sub.graph.has_isolated_vertex()) continue;
    if (sub.graph.n() == 1) return true;  // a loop-only vertex has no cut at all
    if (conductance(sub.graph, limits).value >= delta) return true;
  }
  return false;
}

}  // namespace detail

inline std::vector<Graph> decomposition_corpus() {
  std::vector<Graph> corpus{disjoint_triangles(4)};
  for (int n = 5; n <= 12; ++n) corpus.push_back(path_graph(n));
  corpus.push_back(g_alpha(Ratio{1, 2}, 20));
  corpus.push_back(g_alpha(Ratio{1, 4}, 40));
  corpus.push_back(g_alpha(Ratio{1, 2}, 200));
  corpus.push_back(kary_depth2(4));
  corpus.push_back(kary_depth2(6));
  return corpus;
}

inline std::vector<PropertyResult> verify_decomposition(const VerifyConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  detail::Property edges("decomposition", "edge_process_guarantees");
  detail::Property volumes("decomposition", "volume_process_certificate");
  detail::Property honest("decomposition", "hypothesis_violations_are_genuine");
  detail::Property determinism("decomposition", "traces_deterministic");
  int successes = 0;
  for (const Graph& g : decomposition_corpus()) {
    edges.check(g, [&](detail::Property&) {
      for (Ratio alpha : {Ratio{1, 2}, Ratio{1, 4}, Ratio{1, 8}}) {
        for (Ratio delta : {Ratio{1, 4}, Ratio{1, 2}, Ratio{3, 4}}) {
          try {
            build_partition(g, alpha, delta, cfg.limits);  // throws PostconditionFailed on any broken inequality
            ++successes;
          } catch (const HypothesisViolated&) {
          }
        }
      }
    });
    volumes.check(g, [&](detail::Property&) {
      for (Ratio beta : {Ratio{1, 2}, Ratio{1, 4}}) {
        for (Ratio delta : {Ratio{1, 4}, Ratio{1, 2}}) {
          try {
            volume_decompose(g, beta, delta, cfg.limits);
            ++successes;
          } catch (const HypothesisViolated&) {
          }
        }
      }
    });
  }
  edges.expect(successes > 0, "no run in the corpus succeeded");
  for (int sample = 0; sample < cfg.samples; ++sample) {
    Graph g = random_graph(rng, rng.between(3, 10), detail::pick_density(rng));
    if (g.total_weight().is_zero()) continue;
    Ratio e0 = g.total_weight() * Ratio{rng.between(1, 4), 8};
    Ratio delta{rng.between(1, 3), 4};
    honest.check(g, [&](detail::Property& p) {
      try {
        split_non_expander(g, e0, delta, cfg.limits);
      } catch (const HypothesisViolated& e) {
        p.expect(detail::has_large_expander(g, e.offending(), e0, delta, cfg.limits),
                 "no delta-expander with more than e0 edges inside " + e.offending().str());
      }
      if (g.has_isolated_vertex()) return;
      try {
        volume_decompose(g, Ratio{1, 2}, delta, cfg.limits);
      } catch (const HypothesisViolated& e) {
        InducedSubgraph sub = induced(g, e.offending());
        p.expect(sub.graph.n() == 1 || conductance(sub.graph, cfg.limits).value >= delta,
                 "component " + e.offending().str() + " is not a delta-expander");
      }
    });
  }
  Graph p9 = path_graph(9);
  determinism.check(p9, [&](detail::Property& p) {
    std::string a = format_trace(split_non_expander(p9, Ratio{2}, Ratio{1, 2}, cfg.limits));
    std::string b = format_trace(split_non_expander(p9, Ratio{2}, Ratio{1, 2}, cfg.limits));
    p.expect(a == b, "identical inputs gave different traces");
  });
  return {edges.done(), volumes.done(), honest.done(), determinism.done()};
}

inline std::vector<PropertyResult> verify_resolution(const VerifyConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  detail::Property trichotomy("resolution", "h32_trichotomy");
  detail::Property random_cases("resolution", "verdict_matches_optima");
  detail::Property classic("resolution", "classic_bound_implies_not_split");
  detail::Property zero("resolution", "zero_component_implies_not_split");
  auto confirm = [&](detail::Property& p, const Graph& g, const VertexSet& h, const SplitVerdict& v) {
    ModularityReport all = all_optimal(g, cfg.limits);
    int split = 0, unsplit = 0;
    for (const Partition& part : *all.all_optimal) (detail::split_in(part, h) ? split : unsplit)++;
    switch (v.decision) {
      case SplitDecision::not_split: p.expect(split == 0, "an optimal partition splits " + h.str()); break;
      case SplitDecision::split: p.expect(unsplit == 0, "an optimal partition keeps " + h.str()); break;
      case SplitDecision::boundary:
        p.expect(split > 0 && unsplit > 0, "boundary case lacks a split or an unsplit optimum");
        p.expect(score(g, *v.witness_split).q == all.q_star && score(g, *v.witness_unsplit).q == all.q_star,
                 "boundary witnesses are not optimal");
        break;
    }
  };
  const std::pair<Ratio, SplitDecision> cases[] = {{Ratio{1, 4}, SplitDecision::not_split},
                                                   {Ratio{1, 2}, SplitDecision::boundary},
                                                   {Ratio{3, 4}, SplitDecision::split}};
  for (const auto& [alpha, expected] : cases) {
    Graph g = with_disjoint_edges(clique_with_leaves(3, 2), alpha);
    trichotomy.check(g, [&](detail::Property& p) {
      VertexSet h = components(g).front();
      SplitVerdict v = resolution_verdict(g, h, cfg.limits);
      p.expect(v.decision == expected, "alpha " + alpha.str() + " gave " + to_string(v.decision));
      confirm(p, g, h, v);
    });
  }
  for (int sample = 0; sample < cfg.samples; ++sample) {
    // a planted connected piece next to a random remainder without isolated vertices
    Graph h = random_connected_graph(rng, rng.between(2, 6), detail::pick_density(rng));
    Graph rest = random_graph(rng, rng.between(2, 7), detail::pick_density(rng));
    std::vector<Edge> extra(rest.edges().begin(), rest.edges().end());
    for (Vertex v = 0; v < rest.n(); ++v) {
      if (rest.degree(v).is_zero()) extra.push_back({v, v == 0 ? 1 : 0, Ratio{1}});
    }
    Graph g = disjoint_union(h, Graph(rest.n(), std::move(extra)));
    VertexSet comp = components(g).front();
    random_cases.check(g, [&](detail::Property& p) { confirm(p, g, comp, resolution_verdict(g, comp, cfg.limits)); });
    classic.check(g, [&](detail::Property& p) {
      if (classic_resolution_bound(g, comp)) {
        p.expect(resolution_verdict(g, comp, cfg.limits).decision == SplitDecision::not_split,
                 "e(H)^2 < 2e(G) but the verdict is not NotSplit");
      }
    });
    zero.check(g, [&](detail::Property& p) {
      if (internal_edges(g, comp) >= g.total_weight()) return;
      if (zero_component_unsplit(g, comp, true, cfg.limits)) {
        p.expect(resolution_verdict(g, comp, cfg.limits).decision == SplitDecision::not_split,
                 "q*(H) = 0 but the verdict is not NotSplit");
      }
    });
  }
  return {trichotomy.done(), random_cases.done(), classic.done(), zero.done()};
}

inline std::vector<std::string> suite_names() {
  return {"bounds", "zero-mod", "constructions", "decomposition", "resolution", "all"};
}

inline std::vector<PropertyResult> run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "bounds") return verify_bounds(cfg);
  if (name == "zero-mod") return verify_zero_modularity(cfg);
  if (name == "constructions") return verify_constructions(cfg);
  if (name == "decomposition") return verify_decomposition(cfg);
  if (name == "resolution") return verify_resolution(cfg);
  if (name == "all") {
    std::vector<PropertyResult> out;
    for (const char* s : {"bounds", "zero-mod", "constructions", "decomposition", "resolution"}) {
      auto part = run_suite(s, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw Error(Errc::out_of_range, "unknown suite " + name);
}

}  // namespace modexp
