#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "palette/adversaries.hpp"
#include "palette/algorithms.hpp"
#include "palette/charging.hpp"
#include "palette/engine.hpp"
#include "palette/errors.hpp"
#include "palette/opt.hpp"

namespace palette {
namespace {

using adversary::path_edge;
using adversary::path_order;

std::vector<std::optional<int>> colors(const Trace& t) {
  std::vector<std::optional<int>> out;
  for (const auto& s : t.steps) {
    out.push_back(s.decision.is_colored() ? std::optional<int>(s.decision.color().value()) : std::nullopt);
  }
  return out;
}

TEST(FirstFit, IsolatedEdgeGetsColorOne) {
  Graph g;
  const EdgeId e = g.add_edge(0, 1);
  EXPECT_EQ(first_fit_decide(PartialColoring(2), g, e), Decision::colored(Color(1)));
}

TEST(FirstFit, RejectsWhenBothColorsMeet) {
  FirstFit ff;
  const Trace t = run(ff, path_order(4, {1, 2, 4, 3}));
  EXPECT_EQ(colors(t), (std::vector<std::optional<int>>{1, 2, 1, std::nullopt}));
}

TEST(FirstFit, TakesTheLowestGap) {
  Graph g;
  PartialColoring s(3);
  s.assign(g, g.add_edge(0, 1), Color(1));
  s.assign(g, g.add_edge(0, 2), Color(3));
  const EdgeId e = g.add_edge(0, 3);
  EXPECT_EQ(first_fit_decide(s, g, e), Decision::colored(Color(2)));
}

TEST(NextFit, FirstEdgeGetsColorOne) {
  Graph g;
  const EdgeId e = g.add_edge(0, 1);
  const auto [d, last] = next_fit_decide(PartialColoring(3), std::nullopt, g, e);
  EXPECT_EQ(d, Decision::colored(Color(1)));
  EXPECT_EQ(last, Color(1));
}

TEST(NextFit, AlternatesOnIsolatedEdges) {
  std::vector<Endpoints> edges;
  for (VertexId i = 0; i < 6; ++i) edges.push_back({2 * i, 2 * i + 1});
  NextFit nf;
  EXPECT_EQ(colors(run(nf, edges, 2)), (std::vector<std::optional<int>>{1, 2, 1, 2, 1, 2}));
}

TEST(NextFit, WrapsAroundAfterTheLastColor) {
  Graph g;
  PartialColoring s(2);
  s.assign(g, g.add_edge(0, 1), Color(2));
  const EdgeId e = g.add_edge(1, 2);
  const auto [d, last] = next_fit_decide(s, Color(2), g, e);
  EXPECT_EQ(d, Decision::colored(Color(1)));
  EXPECT_EQ(last, Color(1));
}

TEST(NextFit, RejectionKeepsLastColor) {
  Graph g;
  PartialColoring s(2);
  s.assign(g, g.add_edge(0, 1), Color(1));
  s.assign(g, g.add_edge(1, 2), Color(2));
  const EdgeId e = g.add_edge(1, 3);
  const auto [d, last] = next_fit_decide(s, Color(2), g, e);
  EXPECT_TRUE(d.is_rejected());
  EXPECT_EQ(last, Color(2));
}

TEST(RandomParity, IsolatedEdgeFollowsTheDraw) {
  Graph g;
  const EdgeId e = g.add_edge(0, 1);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RngStream rng(seed);
    RngStream peek = rng;
    const bool one = peek.uniform() < 0.7;
    EXPECT_EQ(rp_decide(PartialColoring(2), g, e, 0.7, rng), Decision::colored(Color(one ? 1 : 2)));
  }
}

TEST(RandomParity, ForcedAndBlockedEdges) {
  Graph g;
  PartialColoring s(2);
  s.assign(g, g.add_edge(0, 1), Color(1));
  const EdgeId e = g.add_edge(1, 2);
  RngStream rng(3);
  RngStream untouched = rng;
  EXPECT_EQ(rp_decide(s, g, e, 0.6, rng), Decision::colored(Color(2)));
  EXPECT_EQ(rng(), untouched());
  s.assign(g, e, Color(2));
  s.assign(g, g.add_edge(3, 4), Color(1));
  const EdgeId blocked = g.add_edge(2, 3);
  EXPECT_TRUE(rp_decide(s, g, blocked, 0.6, rng).is_rejected());
}

TEST(RandomParity, ParameterDomain) {
  EXPECT_THROW(RandomParity(0.4), ParameterError);
  EXPECT_THROW(RandomParity(1.01), ParameterError);
  RandomParity rp(0.5);
  EXPECT_THROW(rp.reset(3, RngStream(1)), ParameterError);
  EXPECT_THROW(make_algorithm(AlgorithmId::parse("bogus")), ParameterError);
}

TEST(Run, FirstFitOnOneThreeTwo) {
  FirstFit ff;
  const Trace t = run(ff, path_order(3, {1, 3, 2}));
  EXPECT_EQ(colors(t), (std::vector<std::optional<int>>{1, 1, 2}));
  EXPECT_EQ(t.colored_count(), 3u);
}

TEST(Run, NextFitRejectsTheMiddleEdge) {
  NextFit nf;
  const Trace t = run(nf, adversary::nf_path_killer(1));
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.steps[2].ends, path_edge(2));
  EXPECT_TRUE(t.steps[2].decision.is_rejected());
  EXPECT_EQ(t.colored_count(), 2u);
}

TEST(Run, EmptyScript) {
  for (auto id : {AlgorithmId::first_fit(), AlgorithmId::next_fit(), AlgorithmId::random_parity(0.7)}) {
    auto alg = make_algorithm(id);
    const Trace t = run(*alg, std::span<const Endpoints>{}, 2);
    EXPECT_EQ(t.size(), 0u);
    EXPECT_EQ(t.colored_count(), 0u);
  }
}

TEST(Run, StructuralErrorsPropagate) {
  FirstFit ff;
  const std::vector<Endpoints> twice{{0, 1}, {0, 1}};
  EXPECT_THROW(run(ff, twice, 2), StructuralError);
}

TEST(Run, ImproperAlgorithmIsCaught) {
  struct AlwaysOne final : OnlineAlgorithm {
    std::string name() const override { return "one"; }
    bool is_deterministic() const override { return true; }
    bool is_fair() const override { return false; }
    void reset(int, RngStream) override {}
    Decision decide(const Graph&, const PartialColoring&, EdgeId) override { return Decision::colored(Color(1)); }
    std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<AlwaysOne>(*this); }
  } bad;
  EXPECT_THROW(run(bad, path_order(2, {1, 2})), StructuralError);
}

TEST(Determinism, FirstFitAndNextFitIgnoreTheSeed) {
  RngStream rng(5);
  for (int round = 0; round < 50; ++round) {
    const auto edges = testing::random_tree_edges(1 + rng.below(30), rng);
    const int k = 1 + static_cast<int>(rng.below(4));
    for (auto id : {AlgorithmId::first_fit(), AlgorithmId::next_fit()}) {
      auto a = make_algorithm(id);
      auto b = make_algorithm(id);
      EXPECT_EQ(colors(run(*a, edges, k, 1)), colors(run(*b, edges, k, 999)));
    }
  }
}

TEST(Determinism, RandomParitySameSeedSameTrace) {
  RandomParity a(0.6), b(0.6);
  const auto seq = adversary::rp_strategy_oddeven(41);
  EXPECT_EQ(colors(run(a, seq, 12)), colors(run(b, seq, 12)));
}

TEST(RandomParity, PEqualOneIsFirstFit) {
  RngStream rng(8);
  for (int round = 0; round < 100; ++round) {
    const auto edges = testing::random_tree_edges(1 + rng.below(25), rng);
    FirstFit ff;
    RandomParity rp(1.0);
    EXPECT_EQ(colors(run(ff, edges, 2)), colors(run(rp, edges, 2, rng())));
  }
}

TEST(AuditFair, BuiltInAlgorithmsAreFair) {
  RngStream rng(9);
  for (int round = 0; round < 100; ++round) {
    const auto edges = testing::random_tree_edges(1 + rng.below(25), rng);
    const int k = 1 + static_cast<int>(rng.below(4));
    FirstFit ff;
    NextFit nf;
    EXPECT_TRUE(audit_fair(run(ff, edges, k)));
    EXPECT_TRUE(audit_fair(run(nf, edges, k)));
    RandomParity rp(0.5 + 0.5 * rng.uniform());
    EXPECT_TRUE(audit_fair(run(rp, edges, 2, rng())));
  }
}

TEST(AuditFair, RejectingAnIsolatedEdgeIsUnfair) {
  Trace t(2);
  const EdgeId e = t.graph.add_edge(0, 1);
  t.coloring.reject(t.graph, e);
  t.steps.push_back({e, {0, 1}, Decision::rejected()});
  EXPECT_FALSE(audit_fair(t));
}

TEST(MonotoneCount, PrefixesNeverExceedOpt) {
  RngStream rng(10);
  for (int round = 0; round < 60; ++round) {
    const auto edges = testing::random_tree_edges(1 + rng.below(15), rng);
    const int k = 1 + static_cast<int>(rng.below(3));
    FirstFit ff;
    Game game(ff, k, 1);
    std::size_t before = 0;
    for (const auto& e : edges) {
      game.reveal(e);
      const std::size_t now = game.trace().colored_count();
      EXPECT_GE(now, before);
      EXPECT_LE(now, opt_tree(game.trace().graph, k).opt_count);
      before = now;
    }
  }
}

// Non-critical edges take color 1 with probability p when l(e) is odd and
// 1 - p when it is even.
TEST(RandomParity, ColorFrequencyFollowsTheParityOfL) {
  const auto seq = path_order(9, {2, 5, 4, 8, 1, 3, 9, 7, 6});
  const auto analysis = charging::analyze_path_order(seq);
  const double p = 0.7;
  const int trials = 10000;
  std::vector<int> ones(seq.edges.size(), 0);
  RandomParity rp(p);
  for (int t = 0; t < trials; ++t) {
    const Trace trace = run(rp, seq, RngStream::derive(77, t)());
    for (const auto& s : trace.steps) {
      if (s.decision.is_colored() && s.decision.color() == Color(1)) ++ones[s.edge];
    }
  }
  int checked = 0;
  for (EdgeId e = 0; e < seq.edges.size(); ++e) {
    if (analysis.critical[e]) continue;
    const double q = analysis.level[e] % 2 == 1 ? p : 1 - p;
    const double sigma = std::sqrt(q * (1 - q) / trials);
    EXPECT_NEAR(static_cast<double>(ones[e]) / trials, q, 3 * sigma) << "edge " << e << " l=" << analysis.level[e];
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(TraceCsv, RoundTrip) {
  NextFit nf;
  const Trace t = run(nf, adversary::nf_path_killer(3));
  std::ostringstream out;
  write_trace_csv(out, t);
  std::istringstream in(out.str());
  const Trace back = read_trace_csv(in, 2);
  EXPECT_EQ(colors(back), colors(t));
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(back.steps[i].ends, t.steps[i].ends);
  const auto header = out.str().substr(0, out.str().find('\n'));
  EXPECT_EQ(header, "step,u,v,decision,color");
}

TEST(TraceCsv, ImproperDecisionIsRefused) {
  std::istringstream in("step,u,v,decision,color\n1,0,1,C,1\n2,1,2,C,1\n");
  EXPECT_THROW(read_trace_csv(in, 2), StructuralError);
  std::istringstream junk("step,u,v,decision,color\n1,0,1,X,\n");
  EXPECT_THROW(read_trace_csv(junk, 2), StructuralError);
}

TEST(Replay, ReproducesTheColoring) {
  FirstFit ff;
  const Trace t = run(ff, path_order(6, {1, 3, 2, 6, 5, 4}));
  const PartialColoring again = replay(t);
  for (EdgeId e = 0; e < t.graph.num_edges(); ++e) EXPECT_EQ(again.color_of(e), t.coloring.color_of(e));
}

TEST(ExternalAlgorithm, RegistryRoundTrip) {
  register_external_algorithm("test-ff", [] { return std::make_unique<FirstFit>(); });
  EXPECT_TRUE(has_external_algorithm("test-ff"));
  const auto id = AlgorithmId::parse("test-ff");
  EXPECT_EQ(id.kind, AlgorithmId::Kind::External);
  auto alg = make_algorithm(id);
  EXPECT_EQ(run(*alg, path_order(3, {1, 3, 2})).colored_count(), 3u);
  EXPECT_THROW(make_algorithm(AlgorithmId::external("nobody")), ParameterError);
}

}  // namespace
}  // namespace palette
