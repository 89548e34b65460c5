#include <gtest/gtest.h>

#include "generators.hpp"
#include "palette/adversaries.hpp"
#include "palette/algorithms.hpp"
#include "palette/errors.hpp"
#include "palette/graph_io.hpp"
#include "palette/nf_tree.hpp"
#include "palette/opt.hpp"

namespace palette {
namespace {

// Largest degree-capped edge subset, by trying every subset. Forests only:
// there a subset with maximum degree k is always k-colorable.
std::size_t capped_subset_oracle(const Graph& g, int k) {
  const std::size_t m = g.num_edges();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> load(g.num_vertices(), 0);
    bool ok = true;
    for (EdgeId e = 0; e < m && ok; ++e) {
      if (!((mask >> e) & 1u)) continue;
      const auto ends = g.endpoints(e);
      ok = ++load[ends.u] <= k && ++load[ends.v] <= k;
    }
    if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

Graph path(std::size_t m) {
  Graph g;
  for (std::size_t i = 1; i <= m; ++i) {
    const auto e = adversary::path_edge(i);
    g.add_edge(e.u, e.v);
  }
  return g;
}

TEST(OptPath, Values) {
  EXPECT_EQ(opt_path(727, 2), 727u);
  EXPECT_EQ(opt_path(0, 1), 0u);
  EXPECT_EQ(opt_path(0, 5), 0u);
  EXPECT_EQ(opt_path(5, 1), 3u);
  EXPECT_THROW(opt_path(3, 0), ParameterError);
}

TEST(OptPath, MatchesTheSubsetOracle) {
  for (std::size_t m = 0; m <= 12; ++m) {
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(opt_path(m, k), capped_subset_oracle(path(m), k)) << m << ' ' << k;
  }
}

TEST(OptTree, StarIsDegreeCapped) {
  Graph star;
  for (VertexId v = 1; v <= 3; ++v) star.add_edge(0, v);
  const auto w = opt_tree(star, 2);
  EXPECT_EQ(w.opt_count, 2u);
  EXPECT_TRUE(audit_witness(star, w));
}

TEST(OptTree, StarChainInstance) {
  FirstFit ff;
  auto script = adversary::star_chain(5, 200, ff);
  const Trace t = run(ff, *script, 5);
  EXPECT_EQ(opt_tree(t.graph, 5).opt_count, 1000u);
}

TEST(OptTree, BunchInstance) {
  const auto seq = adversary::nf_tree_worstcase(4, 10);
  const Graph g = build_graph(seq.edges);
  const auto w = opt_tree(g, 4);
  EXPECT_EQ(w.opt_count, 239u);
  EXPECT_TRUE(audit_witness(g, w));
}

TEST(OptTree, RefusesCycles) {
  Graph triangle;
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(0, 2);
  EXPECT_THROW(opt_tree(triangle, 2), StructuralError);
}

TEST(OptBruteForce, Triangle) {
  Graph triangle;
  triangle.add_edge(0, 1);
  triangle.add_edge(1, 2);
  triangle.add_edge(0, 2);
  EXPECT_EQ(opt_bruteforce(triangle, 1).opt_count, 1u);
  EXPECT_EQ(opt_bruteforce(triangle, 2).opt_count, 2u);
  EXPECT_EQ(opt_bruteforce(triangle, 3).opt_count, 3u);
  EXPECT_EQ(opt_exact(triangle, 2).opt_count, 2u);
}

TEST(OptBruteForce, OddCycleNeedsThreeColors) {
  Graph c5;
  for (VertexId v = 0; v < 5; ++v) c5.add_edge(v, (v + 1) % 5);
  const auto w = opt_bruteforce(c5, 2);
  EXPECT_EQ(w.opt_count, 4u);
  EXPECT_TRUE(audit_witness(c5, w));
}

TEST(OptBruteForce, SizeGuard) {
  EXPECT_THROW(opt_bruteforce(path(kBruteForceEdgeLimit + 1), 2), ParameterError);
}

// The tree optimum, brute force and the subset oracle agree on random trees.
TEST(OptProperty, TreeAgreesWithBruteForce) {
  RngStream rng(2024);
  for (int k = 1; k <= 4; ++k) {
    for (int i = 0; i < 200; ++i) {
      const Graph g = build_graph(testing::random_tree_edges(1 + rng.below(12), rng));
      const auto tree = opt_tree(g, k);
      const auto brute = opt_bruteforce(g, k);
      ASSERT_EQ(tree.opt_count, brute.opt_count);
      ASSERT_EQ(tree.opt_count, capped_subset_oracle(g, k));
      ASSERT_TRUE(audit_witness(g, tree));
      ASSERT_TRUE(audit_witness(g, brute));
    }
  }
}

TEST(OptProperty, AddingAnEdgeNeverLowersTheOptimum) {
  RngStream rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto edges = testing::random_tree_edges(1 + rng.below(14), rng);
    const int k = 1 + static_cast<int>(rng.below(3));
    Graph g;
    std::size_t before = 0;
    for (const auto& e : edges) {
      g.add_edge(e.u, e.v);
      const std::size_t now = opt_tree(g, k).opt_count;
      ASSERT_GE(now, before);
      before = now;
    }
  }
}

TEST(AuditWitness, CatchesBrokenWitnesses) {
  const Graph g = path(3);
  auto w = opt_tree(g, 2);
  ASSERT_TRUE(audit_witness(g, w));
  w.assignment[1] = w.assignment[0];
  EXPECT_FALSE(audit_witness(g, w));
  auto short_count = opt_tree(g, 2);
  short_count.opt_count = 2;
  EXPECT_FALSE(audit_witness(g, short_count));
}

}  // namespace
}  // namespace palette
