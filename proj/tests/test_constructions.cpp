#include <gtest/gtest.h>

#include "modexp/constructions.hpp"
#include "modexp/expansion.hpp"
#include "modexp/io.hpp"
#include "modexp/modularity.hpp"
#include "modexp/random.hpp"
#include "oracles.hpp"

using namespace modexp;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::overflow;
}

std::vector<int> component_sizes(const Graph& g) {
  std::vector<int> out;
  for (const VertexSet& c : components(g)) out.push_back(c.size());
  return out;
}

}  // namespace

TEST(GHPadding, Examples) {
  Graph same = g_h_padding(complete_graph(3), 3);
  EXPECT_EQ(serialize_graph(same), serialize_graph(complete_graph(3)));
  Graph padded = g_h_padding(complete_graph(3), 10);
  EXPECT_EQ(padded.n(), 17);
  EXPECT_EQ(padded.total_weight(), Ratio{10});
  EXPECT_EQ(components(padded).size(), 8u);
  EXPECT_EQ(code_of([] { g_h_padding(complete_graph(5), 9); }), Errc::too_many_edges_in_h);
  EXPECT_EQ(code_of([] { g_h_padding(Graph(2, {{0, 1, Ratio(1, 2)}}), 4); }), Errc::out_of_range);
}

TEST(GAlpha, Examples) {
  Graph small = g_alpha(Ratio(1, 2), 20);
  EXPECT_EQ(small.total_weight(), Ratio{20});
  EXPECT_EQ(component_sizes(small), (std::vector<int>{4, 4, 4, 2, 2}));

  Graph large = g_alpha(Ratio(1, 2), 200);
  EXPECT_EQ(large.total_weight(), Ratio{200});
  EXPECT_EQ(component_sizes(large), (std::vector<int>{14, 14, 6, 2, 2, 2}));

  EXPECT_EQ(code_of([] { g_alpha(Ratio(1, 100), 20); }), Errc::degenerate_parameters);
  EXPECT_EQ(code_of([] { g_alpha(Ratio{1}, 20); }), Errc::out_of_range);
}

TEST(GAlpha, CliquesCarryAtMostAlphaShare) {
  for (Ratio alpha : {Ratio(1, 4), Ratio(1, 3), Ratio(1, 2), Ratio(3, 4)}) {
    for (std::int64_t m : {20, 50, 100, 200}) {
      Graph g = g_alpha(alpha, m);
      EXPECT_EQ(g.total_weight(), Ratio{m});
      for (const VertexSet& c : components(g)) EXPECT_LE(internal_edges(g, c), alpha * m) << alpha << " " << m;
    }
  }
}

TEST(Windmill, Shape) {
  Graph w = windmill(2);
  EXPECT_EQ(w.n(), 5);
  EXPECT_EQ(w.total_weight(), Ratio{6});
  EXPECT_EQ(w.degree(0), Ratio{4});
  EXPECT_EQ(code_of([] { windmill(1); }), Errc::out_of_range);
}

TEST(Windmill, ConductanceAndModularity) {
  for (int l : {2, 3, 4}) EXPECT_EQ(conductance(windmill(l)).value, Ratio(1, 2));
  Ratio q = oracle::brute_maximize(windmill(2)).q_star;
  EXPECT_GE(q, Ratio(1, 9));
  EXPECT_GT(q, Ratio{0});
}

TEST(KaryDepth2, Shape) {
  Graph g = kary_depth2(4);
  EXPECT_EQ(g.n(), 21);
  EXPECT_EQ(g.total_weight(), Ratio{20});
  EXPECT_EQ(g.degree(0), Ratio{4});
  EXPECT_EQ(g.degree(1), Ratio{5});
  EXPECT_EQ(g.degree(20), Ratio{1});
  EXPECT_TRUE(is_connected(g));
}

TEST(CliqueWithLeaves, Shape) {
  Graph h = clique_with_leaves(3, 2);
  EXPECT_EQ(h.n(), 9);
  EXPECT_EQ(h.total_weight(), Ratio{9});
  Graph g = with_disjoint_edges(h, Ratio(1, 2));
  EXPECT_EQ(g.total_weight(), Ratio{18});
  EXPECT_EQ(with_disjoint_edges(h, Ratio(1, 4)).total_weight(), Ratio{36});
  EXPECT_EQ(with_disjoint_edges(h, Ratio(3, 4)).total_weight(), Ratio{12});
}

TEST(WeightedCliqueLoops, RegularDegrees) {
  Graph hw = weighted_clique_loops(4, 2, 3);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(hw.degree(v), Ratio{6});
  EXPECT_EQ(hw.total_weight(), Ratio{9});
}

TEST(WeightedCliqueLoops, ClosedFormByProducts) {
  for (int k = 2; k <= 6; ++k) {
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        Graph hw = weighted_clique_loops(a, b, k);
        Ratio want = Ratio(b, a + b) * (Ratio{1} + Ratio(1, k - 1));
        EXPECT_EQ(oracle::brute_expansion(hw, oracle::Kind::hh).value, want) << a << b << k;
        EXPECT_EQ(expansion_by_products(hw).value, want);
      }
    }
  }
}

TEST(Collapse, Examples) {
  CollapsedGraph k2 = collapse_pendants(complete_graph(2));
  EXPECT_EQ(k2.graph.n(), 1);
  ASSERT_EQ(k2.graph.edges().size(), 1u);
  EXPECT_TRUE(k2.graph.edges()[0].is_loop());
  EXPECT_EQ(k2.graph.total_weight(), Ratio{1});

  CollapsedGraph h = collapse_pendants(clique_with_leaves(3, 2));
  EXPECT_EQ(h.graph.n(), 3);
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_EQ(internal_edges(h.graph, VertexSet(3, {v})), Ratio{2});
    EXPECT_EQ(h.graph.degree(v), Ratio{6});
  }
  EXPECT_EQ(expansion_by_products(h.graph).value, expansion_by_products(weighted_clique_loops(4, 2, 3)).value);

  Graph c5 = cycle_graph(5);
  EXPECT_EQ(serialize_graph(collapse_pendants(c5).graph), serialize_graph(c5));
}

TEST(Collapse, PreservesPendantConsistentScores) {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    Graph core = random_connected_graph(rng, rng.between(2, 5), Ratio(1, 2));
    std::vector<Edge> edges(core.edges().begin(), core.edges().end());
    int n = core.n();
    int leaves = rng.between(0, 4);
    for (int i = 0; i < leaves; ++i, ++n) edges.push_back({rng.between(0, core.n() - 1), n, Ratio{1}});
    int isolated = rng.between(0, 2);
    for (int i = 0; i < isolated; ++i, n += 2) edges.push_back({n, n + 1, Ratio{1}});
    Graph j(n, std::move(edges));
    CollapsedGraph c = collapse_pendants(j);
    EXPECT_EQ(c.graph.total_weight(), j.total_weight());
    for (int sample = 0; sample < 10; ++sample) {
      Partition small = random_partition(rng, c.graph.n(), rng.between(1, c.graph.n()));
      std::vector<int> labels;
      for (Vertex v = 0; v < j.n(); ++v) labels.push_back(small.part_of(c.image[static_cast<std::size_t>(v)]));
      Partition big = Partition::from_labels(labels);
      EXPECT_EQ(score(j, big).q, score(c.graph, small).q) << serialize_graph(j);
    }
  }
}

TEST(SimpleWeighted, Equivalence) {
  for (int k : {2, 3}) {
    for (int l : {1, 2}) {
      Graph h = clique_with_leaves(k, l);
      Graph hw = weighted_clique_loops(2 * l, k - 1, k);
      EXPECT_EQ(expansion_by_products(h).value, expansion_by_products(hw).value) << k << l;
      for (Ratio alpha : {Ratio(1, 2), Ratio{1}}) {
        Graph g = with_disjoint_edges(h, alpha);
        Graph gw = g_w(hw, alpha);
        EXPECT_EQ(maximize(g).q_star, maximize(gw).q_star) << k << l << alpha;
      }
    }
  }
}

TEST(Generate, Families) {
  auto make = [](std::string family, std::map<std::string, std::string> params) {
    return generate(FamilySpec{std::move(family), std::move(params)});
  };
  EXPECT_EQ(make("windmill", {{"l", "2"}}).n(), 5);
  EXPECT_EQ(make("g-alpha", {{"alpha", "1/2"}, {"m", "20"}}).total_weight(), Ratio{20});
  EXPECT_EQ(make("kary2", {{"k", "4"}}).n(), 21);
  EXPECT_EQ(make("g-h-padding", {{"k", "5"}, {"m", "50"}}).total_weight(), Ratio{50});
  EXPECT_EQ(make("clique-leaves", {{"k", "3"}, {"l", "2"}, {"alpha", "1/2"}}).total_weight(), Ratio{18});
  EXPECT_EQ(make("weighted-clique-loops", {{"a", "4"}, {"b", "2"}, {"k", "3"}}).total_weight(), Ratio{9});
  EXPECT_EQ(make("g-w", {{"a", "4"}, {"b", "2"}, {"k", "3"}, {"alpha", "1/2"}}).total_weight(), Ratio{18});
  EXPECT_EQ(make("triangles", {{"count", "4"}}).n(), 12);
  EXPECT_EQ(make("star", {{"t", "5"}}).n(), 6);
  EXPECT_EQ(code_of([&] { make("nope", {}); }), Errc::out_of_range);
  EXPECT_EQ(code_of([&] { make("windmill", {}); }), Errc::out_of_range);
  EXPECT_EQ(code_of([&] { make("windmill", {{"l", "x"}}); }), Errc::syntax_error);
}

TEST(Generate, Deterministic) {
  for (const std::string& name : family_names()) {
    std::map<std::string, std::string> params{{"k", "3"}, {"l", "2"}, {"m", "20"}, {"n", "5"},
                                              {"t", "4"}, {"a", "2"}, {"b", "3"}, {"alpha", "1/2"},
                                              {"count", "2"}};
    std::string first = serialize_graph(generate({name, params}));
    EXPECT_EQ(first, serialize_graph(generate({name, params}))) << name;
  }
}
