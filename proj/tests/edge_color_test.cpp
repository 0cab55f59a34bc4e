#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "onefac/cayley.hpp"
#include "onefac/edge_color.hpp"
#include "onefac/sampling.hpp"
#include "onefac/spec_parser.hpp"
#include "test_util.hpp"

namespace onefac {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::petersen;

// Independent properness check plus the count of distinct colors.
std::size_t proper_color_count(const SimpleGraph& g, const EdgeColoring& c) {
  std::vector<std::vector<int>> seen(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const int col = c.color_of.at(i);
    if (col < 0) return SIZE_MAX;
    for (Vertex v : {g.edges[i].u, g.edges[i].v}) {
      if (std::find(seen[v].begin(), seen[v].end(), col) != seen[v].end()) return SIZE_MAX;
      seen[v].push_back(col);
    }
  }
  std::vector<int> all(c.color_of.begin(), c.color_of.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

TEST(VizingColor, Examples) {
  const auto path = SimpleGraph::from_edges(3, {Edge{0, 1}, Edge{1, 2}});
  EXPECT_EQ(proper_color_count(path, vizing_color(path)), 2u);

  const auto c5 = cycle_graph(5);
  EXPECT_EQ(proper_color_count(c5, vizing_color(c5)), 3u);

  const auto k4 = complete_graph(4);
  const auto c = vizing_color(k4);
  EXPECT_LE(proper_color_count(k4, c), 4u);
  EXPECT_LE(c.palette_size, 4);
  EXPECT_TRUE(verify_coloring(k4, c, 4).ok());
}

TEST(VizingColor, EmptyAndEdgelessGraphs) {
  EXPECT_TRUE(vizing_color(SimpleGraph{}).color_of.empty());
  const auto isolated = SimpleGraph::from_edges(5, {});
  EXPECT_TRUE(verify_coloring(isolated, vizing_color(isolated)).ok());
}

TEST(VizingColor, RandomGraphsStayWithinDeltaPlusOne) {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<std::size_t> size(1, 30);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_graph(rng, size(rng), 0.3);
    const auto c = vizing_color(g);
    const auto used = proper_color_count(g, c);
    ASSERT_NE(used, SIZE_MAX) << "trial " << trial;
    EXPECT_LE(used, g.max_degree() + 1) << "trial " << trial;
    EXPECT_LE(c.palette_size, static_cast<int>(g.max_degree()) + 1);
    EXPECT_TRUE(verify_coloring(g, c).ok());
  }
}

TEST(VizingColor, DenseGraphs) {
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto k = complete_graph(n);
    const auto c = vizing_color(k);
    EXPECT_NE(proper_color_count(k, c), SIZE_MAX);
    EXPECT_LE(c.palette_size, static_cast<int>(n));
  }
}

TEST(VizingColor, RegularGraphsMissOneColorPerVertexWithFullPalette) {
  for (const auto& spec : {"Z12", "Q8*Z3", "Z2*Z3*Z3"}) {
    const Group g = parse_group_spec(spec).group;
    for (std::uint64_t t = 0; t < 10; ++t) {
      auto rng = case_rng(5, 0, t);
      const auto gamma = build_cayley(g, sample_generating_set(g, rng));
      const auto c = vizing_color(gamma.graph);
      if (c.palette_size != static_cast<int>(gamma.valence) + 1) continue;
      std::vector<std::vector<char>> has(gamma.order(), std::vector<char>(c.palette_size));
      for (std::size_t i = 0; i < gamma.edges().size(); ++i) {
        has[gamma.edges()[i].u][c.color_of[i]] = 1;
        has[gamma.edges()[i].v][c.color_of[i]] = 1;
      }
      for (const auto& row : has) EXPECT_EQ(std::count(row.begin(), row.end(), 0), 1);
    }
  }
}

TEST(VerifyColoring, Reports) {
  const auto path = SimpleGraph::from_edges(3, {Edge{0, 1}, Edge{1, 2}});
  EXPECT_TRUE(verify_coloring(path, EdgeColoring{{0, 1}, 2}).ok());

  const auto clash = verify_coloring(path, EdgeColoring{{0, 0}, 2});
  ASSERT_EQ(clash.violations.size(), 1u);
  EXPECT_EQ(clash.violations[0].kind, ViolationKind::kImproper);
  EXPECT_EQ(clash.violations[0].vertex, Vertex{1});

  const auto partial = verify_coloring(path, EdgeColoring{{0, EdgeColoring::kUncolored}, 2});
  ASSERT_EQ(partial.violations.size(), 1u);
  EXPECT_EQ(partial.violations[0].kind, ViolationKind::kUncolored);

  EXPECT_EQ(verify_coloring(path, EdgeColoring{{0, 1}, 2}, 1).count(ViolationKind::kPaletteOverflow),
            1u);
}

TEST(IsIsomorphism, DetectsNonIsomorphisms) {
  const auto c4 = cycle_graph(4);
  const std::vector<Vertex> rot = {1, 2, 3, 0};
  const std::vector<Vertex> swap = {1, 0, 2, 3};
  const std::vector<Vertex> squash = {0, 0, 2, 3};
  EXPECT_TRUE(is_isomorphism(c4, rot, c4));
  EXPECT_FALSE(is_isomorphism(c4, swap, c4));
  EXPECT_FALSE(is_isomorphism(c4, squash, c4));
}

TEST(MirrorColor, Examples) {
  const auto edge = SimpleGraph::from_edges(2, {Edge{0, 1}});
  const std::vector<Vertex> id2 = {0, 1};
  const auto m = mirror_color(edge, id2, edge);
  EXPECT_EQ(m.first.color_of, m.second.color_of);
  EXPECT_LE(m.first.palette_size, 2);

  const auto empty = mirror_color(SimpleGraph{}, {}, SimpleGraph{});
  EXPECT_TRUE(empty.first.color_of.empty());
  EXPECT_TRUE(empty.second.color_of.empty());
}

TEST(MirrorColor, TrianglesUnderCentralInvolution) {
  // Z2 x Z3 with S = {(0,1)}: two triangles, x -> zx swaps them.
  const Group g = direct_product(build_cyclic(2), build_cyclic(3));
  const auto gamma = build_cayley(g, GeneratingSet::of(g, {Element{1}}));
  const auto t1 = SimpleGraph::from_edges(3, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}});
  const std::vector<Vertex> id = {0, 1, 2};
  const auto m = mirror_color(t1, id, t1);
  EXPECT_EQ(proper_color_count(t1, m.first), 3u);
  EXPECT_EQ(m.first.color_of, m.second.color_of);
  EXPECT_EQ(gamma.edges().size(), 6u);
}

TEST(MirrorColor, TransportsAlongNonTrivialMaps) {
  const auto c6 = cycle_graph(6);
  const std::vector<Vertex> rot = {2, 3, 4, 5, 0, 1};
  const auto m = mirror_color(c6, rot, c6);
  EXPECT_TRUE(verify_coloring(c6, m.second).ok());
  for (std::size_t i = 0; i < c6.edges.size(); ++i) {
    const Edge e = c6.edges[i];
    const auto j = *c6.edge_index(make_edge(rot[e.u], rot[e.v]));
    EXPECT_EQ(m.first.color_of[i], m.second.color_of[j]);
  }
  // Same class sizes.
  auto sizes = [](const EdgeColoring& c) {
    std::vector<int> n(static_cast<std::size_t>(c.palette_size));
    for (int col : c.color_of) ++n[static_cast<std::size_t>(col)];
    return n;
  };
  EXPECT_EQ(sizes(m.first), sizes(m.second));
}

TEST(MirrorColor, RejectsNonIsomorphism) {
  const auto c4 = cycle_graph(4);
  const std::vector<Vertex> swap = {1, 0, 2, 3};
  EXPECT_THROW(mirror_color(c4, swap, c4), PreconditionError);
}

TEST(CompleteCrossEdges, InvolutionMatchingIsForced) {
  // Z2 x Z3, S = {z, (0,1)}: two triangles joined by {x, zx}.
  const auto tri = SimpleGraph::from_edges(3, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}});
  const std::vector<Vertex> id = {0, 1, 2};
  const auto m = mirror_color(tri, id, tri);
  const HalfColoring halves[] = {{tri, m.first, {0, 1, 2}}, {tri, m.second, {3, 4, 5}}};
  const std::vector<std::vector<Edge>> cross = {{Edge{0, 3}, Edge{1, 4}, Edge{2, 5}}};
  const auto done = complete_cross_edges(6, halves, cross, 3);
  EXPECT_EQ(done.path, CompletionPath::kGreedy);
  EXPECT_TRUE(testing::is_one_factorization(done.graph, to_factorization(done.graph, done.coloring)));
}

TEST(CompleteCrossEdges, Octahedron) {
  // Halves {0,1,2} and {3,4,5} are triangles; cross factors x -> x+1 and x -> x-1
  // across the halves give the octahedron.
  const auto tri = SimpleGraph::from_edges(3, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}});
  const std::vector<Vertex> id = {0, 1, 2};
  const auto m = mirror_color(tri, id, tri);
  const HalfColoring halves[] = {{tri, m.first, {0, 1, 2}}, {tri, m.second, {3, 4, 5}}};
  const std::vector<std::vector<Edge>> cross = {
      {Edge{0, 4}, Edge{1, 5}, Edge{2, 3}},
      {Edge{0, 5}, Edge{1, 3}, Edge{2, 4}},
  };
  const auto done = complete_cross_edges(6, halves, cross, 4);
  EXPECT_EQ(done.graph.regular_degree(), 4u);
  const auto f = to_factorization(done.graph, done.coloring);
  EXPECT_EQ(f.classes.size(), 4u);
  EXPECT_TRUE(testing::is_one_factorization(done.graph, f));
}

TEST(CompleteCrossEdges, PetersenFailsLoudly) {
  // Outer 5-cycle and inner pentagram as halves, spokes as the cross factor.
  const auto c5 = cycle_graph(5);
  const std::vector<Vertex> id = {0, 1, 2, 3, 4};
  const auto m = mirror_color(c5, id, c5);
  const HalfColoring halves[] = {{c5, m.first, {0, 1, 2, 3, 4}}, {c5, m.second, {5, 7, 9, 6, 8}}};
  const std::vector<std::vector<Edge>> cross = {
      {Edge{0, 5}, Edge{1, 6}, Edge{2, 7}, Edge{3, 8}, Edge{4, 9}}};
  CompletionOptions options;
  options.search_steps = 2000;
  EXPECT_THROW(complete_cross_edges(10, halves, cross, 3, options), CompletionFailedError);
}

TEST(CompleteCrossEdges, RejectsIrregularUnion) {
  const auto edge = SimpleGraph::from_edges(2, {Edge{0, 1}});
  const HalfColoring halves[] = {{edge, EdgeColoring{{0}, 1}, {0, 1}}};
  const std::vector<std::vector<Edge>> cross = {{Edge{1, 2}}};
  EXPECT_THROW(complete_cross_edges(3, halves, cross, 2), PreconditionError);
}

TEST(ExactOneFactorize, Examples) {
  const auto c4 = exact_one_factorize(cycle_graph(4));
  ASSERT_EQ(c4.status, ExactStatus::kFactorized);
  EXPECT_EQ(c4.factorization->canonical().classes,
            (std::vector<std::vector<Edge>>{{Edge{0, 1}, Edge{2, 3}}, {Edge{0, 3}, Edge{1, 2}}}));

  const auto k4 = exact_one_factorize(complete_graph(4));
  ASSERT_EQ(k4.status, ExactStatus::kFactorized);
  EXPECT_EQ(k4.factorization->canonical().classes,
            (std::vector<std::vector<Edge>>{{Edge{0, 1}, Edge{2, 3}},
                                            {Edge{0, 2}, Edge{1, 3}},
                                            {Edge{0, 3}, Edge{1, 2}}}));

  const auto p = exact_one_factorize(petersen());
  EXPECT_EQ(p.status, ExactStatus::kNotFactorizable);
  EXPECT_LT(p.nodes, kDefaultExactBudget);
}

TEST(ExactOneFactorize, ImmediateNegatives) {
  EXPECT_EQ(exact_one_factorize(cycle_graph(5)).status, ExactStatus::kNotFactorizable);
  const auto path = SimpleGraph::from_edges(4, {Edge{0, 1}, Edge{1, 2}, Edge{2, 3}});
  EXPECT_EQ(exact_one_factorize(path).status, ExactStatus::kNotFactorizable);
  const auto r = exact_one_factorize(SimpleGraph::from_edges(4, {}));
  EXPECT_EQ(r.status, ExactStatus::kFactorized);
  EXPECT_TRUE(r.factorization->classes.empty());
}

TEST(ExactOneFactorize, BudgetIsDistinctFromNegative) {
  const auto r = exact_one_factorize(petersen(), 3);
  EXPECT_EQ(r.status, ExactStatus::kBudgetExceeded);
  EXPECT_FALSE(r.factorization.has_value());
}

TEST(ExactOneFactorize, CompleteGraphsOfEvenOrder) {
  for (std::size_t n = 2; n <= 10; n += 2) {
    const auto k = complete_graph(n);
    const auto r = exact_one_factorize(k);
    ASSERT_EQ(r.status, ExactStatus::kFactorized) << n;
    EXPECT_EQ(r.factorization->classes.size(), n - 1);
    EXPECT_TRUE(testing::is_one_factorization(k, *r.factorization));
  }
}

TEST(ExactOneFactorize, VerdictIsInvariantUnderRelabeling) {
  std::mt19937_64 rng(99);
  std::vector<SimpleGraph> inputs = {petersen(), complete_graph(6), cycle_graph(8)};
  for (const auto& spec : {"Z4*Z3", "Q8", "D4*Z3"}) {
    const Group g = parse_group_spec(spec).group;
    auto r = case_rng(1, 1, 1);
    inputs.push_back(build_cayley(g, sample_generating_set(g, r)).graph);
  }
  for (const auto& g : inputs) {
    const auto base = exact_one_factorize(g);
    ASSERT_NE(base.status, ExactStatus::kBudgetExceeded);
    for (int k = 0; k < 5; ++k) {
      std::vector<Vertex> perm(g.vertex_count);
      std::iota(perm.begin(), perm.end(), 0U);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto h = testing::relabel(g, perm);
      const auto again = exact_one_factorize(h);
      EXPECT_EQ(again.status, base.status);
      if (again.factorization) EXPECT_TRUE(testing::is_one_factorization(h, *again.factorization));
    }
  }
}

TEST(Factorization, CanonicalOrder) {
  Factorization f{{{Edge{1, 2}, Edge{0, 3}}, {}, {Edge{2, 3}, Edge{0, 1}}}};
  f.canonicalize();
  EXPECT_EQ(f.classes, (std::vector<std::vector<Edge>>{{Edge{0, 1}, Edge{2, 3}},
                                                       {Edge{0, 3}, Edge{1, 2}}}));
}

TEST(SimpleGraph, RejectsLoopsAndDuplicates) {
  EXPECT_THROW(SimpleGraph::from_edges(2, {Edge{1, 1}}), InvalidArgumentError);
  EXPECT_THROW(SimpleGraph::from_edges(2, {Edge{0, 1}, Edge{1, 0}}), InvalidArgumentError);
  EXPECT_THROW(SimpleGraph::from_edges(2, {Edge{0, 2}}), InvalidArgumentError);
}

}  // namespace
}  // namespace onefac
