#include <gtest/gtest.h>

#include "eigen_oracle.hpp"
#include "modexp/constructions.hpp"
#include "modexp/expansion.hpp"
#include "modexp/io.hpp"
#include "modexp/random.hpp"
#include "modexp/spectral.hpp"
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

// Random connected graph with some fractional weights and loops.
Graph random_weighted(SplitMix64& rng, int n) {
  Graph base = random_connected_graph(rng, n, Ratio(1, 3));
  std::vector<Edge> edges(base.edges().begin(), base.edges().end());
  for (Edge& e : edges) e.w = Ratio(rng.between(1, 4), rng.between(1, 3));
  for (int v = 0; v < n; ++v) {
    if (rng.chance(Ratio(1, 5))) edges.push_back({v, v, Ratio(rng.between(1, 3), 2)});
  }
  return Graph(n, std::move(edges));
}

}  // namespace

TEST(SetExpansion, Examples) {
  EXPECT_EQ(h_set(windmill(2), VertexSet(5, {1, 2})), Ratio(1, 2));
  EXPECT_EQ(h_set(complete_graph(2), VertexSet(2, {0})), Ratio{1});
  EXPECT_EQ(h_set(cycle_graph(4), VertexSet(4, {0, 1})), Ratio(1, 2));
  EXPECT_EQ(hh_set(complete_graph(2), VertexSet(2, {0})), Ratio{2});
  EXPECT_EQ(hprime_set(cycle_graph(4), VertexSet(4, {0, 1})), Ratio{2});
  EXPECT_TRUE(hprime_set(star_graph(3), VertexSet(4, {0})).infinite);
  EXPECT_EQ(code_of([] { h_set(complete_graph(3), VertexSet(3)); }), Errc::zero_volume_side);
  EXPECT_EQ(code_of([] { hh_set(complete_graph(3), VertexSet::all(3)); }), Errc::zero_volume_side);
}

TEST(Conductance, Windmills) {
  for (int l : {2, 3, 4}) {
    ExpansionReport r = conductance(windmill(l));
    EXPECT_EQ(r.value, Ratio(1, 2)) << l;
  }
}

TEST(Conductance, StarIsOne) { EXPECT_EQ(conductance(star_graph(5)).value, Ratio{1}); }

TEST(Conductance, DisconnectedIsZeroWithComponentWitness) {
  ExpansionReport r = conductance(disjoint_triangles(2));
  EXPECT_EQ(r.value, Ratio{0});
  EXPECT_EQ(r.witness, VertexSet(6, {0, 1, 2}));
}

TEST(ByProducts, Examples) {
  EXPECT_EQ(expansion_by_products(complete_graph(2)).value, Ratio{2});
  EXPECT_EQ(expansion_by_products(weighted_clique_loops(1, 1, 3)).value, Ratio(3, 4));
  EXPECT_EQ(expansion_by_products(clique_with_leaves(3, 2)).value, Ratio(1, 2));
  EXPECT_EQ(expansion_by_products(windmill(2)).value, Ratio(3, 4));
}

TEST(ByEdges, Examples) {
  ExpansionReport c4 = expansion_by_edges(cycle_graph(4));
  EXPECT_EQ(c4.value, Ratio{2});
  EXPECT_EQ(c4.witness, VertexSet(4, {0, 1}));
  EXPECT_TRUE(expansion_by_edges(star_graph(3)).value.infinite);
}

TEST(DeltaExpander, Examples) {
  EXPECT_TRUE(is_delta_expander(windmill(2), Ratio(1, 2)));
  EXPECT_FALSE(is_delta_expander(windmill(2), Ratio::parse("051/100")));
  EXPECT_FALSE(is_delta_expander(disjoint_triangles(3), Ratio(1, 100)));
  EXPECT_EQ(code_of([] { is_delta_expander(windmill(2), Ratio{0}); }), Errc::out_of_range);
}

TEST(Expansion, DomainErrors) {
  Graph one(1, {{0, 0, 1}});
  EXPECT_EQ(code_of([&] { conductance(one); }), Errc::too_few_vertices);
  Graph isolated(3, {{0, 1, 1}});
  EXPECT_EQ(code_of([&] { conductance(isolated); }), Errc::zero_volume_side);
  Limits tight;
  tight.max_subset_vertices = 5;
  EXPECT_EQ(code_of([&] { conductance(path_graph(6), tight); }), Errc::size_limit_exceeded);
}

TEST(Expansion, MatchesBruteForceOnRandomGraphs) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_weighted(rng, rng.between(2, 9));
    struct Case {
      ExpansionReport got;
      oracle::Kind kind;
    };
    for (const Case& c : {Case{conductance(g), oracle::Kind::h}, Case{expansion_by_products(g), oracle::Kind::hh},
                          Case{expansion_by_edges(g), oracle::Kind::hprime}}) {
      oracle::BruteCut want = oracle::brute_expansion(g, c.kind);
      ASSERT_EQ(c.got.value.infinite, want.infinite) << serialize_graph(g);
      if (want.infinite) continue;
      EXPECT_EQ(c.got.value.finite, want.value) << serialize_graph(g);
      EXPECT_EQ(c.got.witness, VertexSet::from_mask(g.n(), want.mask)) << serialize_graph(g);
    }
  }
}

TEST(Expansion, ExtremalRanges) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_weighted(rng, rng.between(2, 8));
    Ratio h = conductance(g).value.finite;
    Ratio hh = expansion_by_products(g).value.finite;
    EXPECT_GE(h, Ratio{0});
    EXPECT_LE(h, Ratio{1});
    EXPECT_LE(hh, Ratio{2});
    // vol(G) / max{vol(A), vol(Ā)} lies in (1, 2], so h <= ĥ <= 2h
    EXPECT_LE(h, hh);
    EXPECT_LE(hh, h * 2);
  }
}

TEST(Expansion, HprimeFromConductance) {
  EXPECT_EQ(hprime_from_conductance(Ratio(1, 2)), Ratio{2});
  EXPECT_EQ(hprime_from_conductance(Ratio(1, 3)), Ratio{1});
  EXPECT_TRUE(hprime_from_conductance(Ratio{1}).infinite);
  // per set: if vol(A) <= vol(Ā) then h'(A) computed on A alone equals 2h(A)/(1-h(A))
  Graph g = windmill(3);
  VertexSet a(7, {1, 2});
  Ratio c = cut(g, a), e = internal_edges(g, a);
  EXPECT_EQ(c / e, hprime_from_conductance(h_set(g, a)).finite);
}

TEST(Spectral, SmallExamples) {
  SpectralReport k2 = spectral_gap(complete_graph(2));
  ASSERT_EQ(k2.eigenvalues.size(), 2u);
  EXPECT_NEAR(k2.eigenvalues[0], 0.0, 1e-9);
  EXPECT_NEAR(k2.eigenvalues[1], 2.0, 1e-9);
  EXPECT_NEAR(k2.gap, 1.0, 1e-9);
  SpectralReport k4 = spectral_gap(complete_graph(4));
  EXPECT_NEAR(k4.gap, 1.0 / 3.0, 1e-9);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(k4.eigenvalues[i], 4.0 / 3.0, 1e-9);
  SpectralReport c4 = spectral_gap(cycle_graph(4));
  EXPECT_NEAR(c4.gap, 1.0, 1e-9);
  std::vector<double> want{0, 1, 1, 2};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(c4.eigenvalues[i], want[i], 1e-9);
}

TEST(Spectral, MatchesEigen) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_weighted(rng, rng.between(2, 10));
    SpectralReport got = spectral_gap(g);
    std::vector<double> want = oracle::eigen_spectrum(g);
    ASSERT_EQ(got.eigenvalues.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got.eigenvalues[i], want[i], 1e-8);
    EXPECT_NEAR(got.gap, oracle::eigen_gap(g), 1e-8);
  }
}

TEST(Spectral, ExpanderMixing) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_weighted(rng, rng.between(2, 9));
    double hh = expansion_by_products(g).value.finite.to_double();
    EXPECT_GE(hh, 1.0 - spectral_gap(g).gap - 1e-8) << serialize_graph(g);
  }
}

TEST(Spectral, DomainErrors) {
  EXPECT_EQ(code_of([] { spectral_gap(Graph(0, {})); }), Errc::empty_graph);
  EXPECT_EQ(code_of([] { spectral_gap(Graph(3, {{0, 1, 1}})); }), Errc::zero_degree_vertex);
  EXPECT_EQ(code_of([] { spectral_gap(disjoint_triangles(2)); }), Errc::disconnected);
}
