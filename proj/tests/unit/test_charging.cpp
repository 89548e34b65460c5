#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "palette/adversaries.hpp"
#include "palette/algorithms.hpp"
#include "palette/charging.hpp"
#include "palette/enumerate.hpp"
#include "palette/errors.hpp"
#include "palette/graph_io.hpp"
#include "palette/harness.hpp"
#include "palette/nf_tree.hpp"
#include "palette/opt.hpp"

namespace palette {
namespace {

using adversary::path_order;
using charging::Rational;

Rational frac(long a, long b) { return Rational{charging::Integer(a), charging::Integer(b)}; }

const double kGoldenP = (1 + std::sqrt(5.0)) / 2 / std::sqrt(5.0);

// Fair: a uniformly random free color, rejection only when none is free.
class RandomFair final : public OnlineAlgorithm {
 public:
  std::string name() const override { return "random-fair"; }
  bool is_deterministic() const override { return false; }
  bool is_fair() const override { return true; }
  void reset(int, RngStream rng) override { rng_ = rng; }
  Decision decide(const Graph& g, const PartialColoring& state, EdgeId e) override {
    const auto free = state.available(g, e).to_vector();
    if (free.empty()) return Decision::rejected();
    return Decision::colored(free[rng_.below(free.size())]);
  }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<RandomFair>(*this); }

 private:
  RngStream rng_;
};

Trace ff_run(const std::vector<Endpoints>& edges, int k) {
  FirstFit ff;
  return run(ff, edges, k);
}

TEST(BuildLedger, EverythingColoredAndOptimal) {
  const Trace t = ff_run(path_order(4, {1, 2, 3, 4}).edges, 2);
  const auto w = opt_tree(t.graph, 2);
  const auto ledger = charging::build_ledger(t, w, frac(2, 3));
  Rational surplus(0);
  for (EdgeId e = 0; e < 4; ++e) {
    EXPECT_FALSE(ledger.in_negative(e));
    surplus += ledger.surplus(e);
  }
  EXPECT_EQ(surplus, 4 * frac(1, 3));
}

TEST(BuildLedger, RejectedOptEdgeStartsAtZero) {
  const Trace t = ff_run(path_order(5, {1, 2, 4, 3, 5}).edges, 2);
  ASSERT_TRUE(t.coloring.is_rejected(3));
  const auto w = opt_tree(t.graph, 2);
  ASSERT_EQ(w.opt_count, 5u);
  const auto ledger = charging::build_ledger(t, w, frac(2, 3));
  EXPECT_EQ(ledger.initial(3), Rational(0));
  EXPECT_EQ(ledger.surplus(3), -frac(2, 3));
  EXPECT_TRUE(ledger.in_negative(3));
  EXPECT_EQ(ledger.surplus(0), frac(1, 3));
}

TEST(BuildLedger, ZeroTargetAndDomain) {
  const Trace t = ff_run(path_order(4, {1, 2, 4, 3}).edges, 2);
  const auto w = opt_tree(t.graph, 2);
  const auto ledger = charging::build_ledger(t, w, Rational(0));
  for (EdgeId e = 0; e < 4; ++e) EXPECT_GE(ledger.margin(e), Rational(0));
  EXPECT_THROW(charging::build_ledger(t, w, frac(3, 2)), ParameterError);
  EXPECT_THROW(charging::build_ledger(t, w, Rational(-1)), ParameterError);
}

TEST(Ledger, OverdraftIsCaught) {
  charging::ChargeLedger<Rational> ledger(frac(1, 2), {Rational(1), Rational(0)}, {true, true}, 2);
  EXPECT_THROW(ledger.edge_to_edge(0, 1, frac(3, 4), "test"), charging::LedgerOverdraft);
  ledger.edge_to_vertex(0, 0, frac(1, 2), "test");
  EXPECT_THROW(ledger.vertex_to_edge(0, 1, frac(3, 4), "test"), charging::LedgerOverdraft);
  ledger.vertex_to_edge(0, 1, frac(1, 2), "test");
  EXPECT_EQ(ledger.value(1), frac(1, 2));
  EXPECT_TRUE(ledger.conserved());
}

TEST(Classify, VertexTalliesMatchEdgeClasses) {
  RngStream rng(6);
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const Trace t = ff_run(testing::random_bushy_tree_edges(1 + rng.below(14), 3, rng), k);
    const auto w = opt_tree(t.graph, k);
    const auto cls = charging::classify_edges(t.graph, t.coloring, w);
    for (VertexId v = 0; v < t.graph.num_vertices(); ++v) {
      charging::VertexTally expect;
      for (EdgeId e : t.graph.incident(v)) {
        expect.colored += t.coloring.is_colored(e) ? 1 : 0;
        expect.doubled += cls.edge[e] == charging::EdgeClass::Double ? 1 : 0;
        expect.single += cls.edge[e] == charging::EdgeClass::Single ? 1 : 0;
        expect.opt_only += cls.edge[e] == charging::EdgeClass::OptOnly ? 1 : 0;
      }
      EXPECT_EQ(cls.vertex[v].colored, expect.colored);
      EXPECT_EQ(cls.vertex[v].colored, cls.vertex[v].doubled + cls.vertex[v].single);
      EXPECT_EQ(cls.vertex[v].opt_only, expect.opt_only);
    }
  }
}

TEST(RootedView, ParentsSpanTheTree) {
  const Trace t = ff_run(path_order(4, {2, 4, 1, 3}).edges, 2);
  const auto view = charging::RootedView::build(t.graph, t.coloring, 2);
  EXPECT_FALSE(view.parent_edge[2].has_value());
  for (VertexId v : {0u, 1u, 3u, 4u}) EXPECT_TRUE(view.parent_edge[v].has_value());
  for (EdgeId e = 0; e < 4; ++e) EXPECT_EQ(view.parent_edge[view.lower(t.graph, e)], e);
  for (VertexId v = 0; v < t.graph.num_vertices(); ++v) {
    const auto top = t.coloring.colors_at(v).complement(2).highest();
    EXPECT_EQ(view.highest_free[v], top ? top->value() : 0);
  }
}

TEST(FfTreeCharge, PathWithOneRejection) {
  const Trace t = ff_run(path_order(4, {1, 2, 4, 3}).edges, 2);
  ASSERT_TRUE(t.coloring.is_rejected(3));
  const auto w = opt_tree(t.graph, 2);
  for (VertexId root = 0; root < t.graph.num_vertices(); ++root) {
    const auto report = charging::ff_tree_charge(t, w, {root, true});
    EXPECT_TRUE(report.passed()) << (report.violations.empty() ? "" : report.violations.front());
    EXPECT_EQ(report.target_exact, "1/2");
    ASSERT_TRUE(report.exact_min_rejected_margin.has_value());
    EXPECT_GE(*report.exact_min_rejected_margin, Rational(0));
    for (const auto& row : report.rows) {
      if (row.edge == 3) EXPECT_GE(row.final_value, 0.5);
    }
  }
}

TEST(FfTreeCharge, NoRejectionsPassVacuously) {
  const Trace t = ff_run(path_order(5, {1, 2, 3, 4, 5}).edges, 2);
  const auto report = charging::ff_tree_charge(t, opt_tree(t.graph, 2));
  EXPECT_TRUE(report.passed());
  EXPECT_FALSE(report.exact_min_rejected_margin.has_value());
}

TEST(FfTreeCharge, RefusesOtherAlgorithms) {
  NextFit nf;
  const std::vector<Endpoints> edges{{0, 1}, {2, 3}, {1, 2}};
  const Trace t = run(nf, edges, 2);
  EXPECT_THROW(charging::ff_tree_charge(t, opt_tree(t.graph, 2)), PreconditionError);
}

TEST(FfTreeCharge, RefusesCycles) {
  const std::vector<Endpoints> triangle{{0, 1}, {1, 2}, {0, 2}};
  const Trace t = ff_run(triangle, 2);
  EXPECT_THROW(charging::ff_tree_charge(t, opt_exact(t.graph, 2)), StructuralError);
}

TEST(FairTree, TargetValues) {
  EXPECT_EQ(charging::fair_tree_target(4), frac(2, 3));
  EXPECT_EQ(charging::fair_tree_target(9), frac(4, 5));
  EXPECT_EQ(charging::fair_tree_target(1), Rational(0));
  const double five = charging::to_double(charging::fair_tree_target(5));
  const double exact = (2 * std::sqrt(5.0) - 2) / (2 * std::sqrt(5.0) - 1);
  EXPECT_LE(five, exact);
  EXPECT_NEAR(five, exact, 1e-4);
}

TEST(FairTree, QuadraticMinimumIsCk) {
  for (int s = 2; s <= 6; ++s) {
    const int k = s * s;
    const Rational C = charging::fair_tree_target(k);
    for (int z = 0; z <= k; ++z) {
      const Rational f = charging::fair_tree_quadratic(k, C, Rational(z));
      EXPECT_GE(f, C * k) << "k=" << k << " z=" << z;
      if (z == k - s) EXPECT_EQ(f, C * k);
    }
  }
}

TEST(FairTree, BunchInstanceIsTight) {
  NextFit nf;
  const Trace t = run(nf, adversary::nf_tree_worstcase(4, 10));
  const auto report = charging::fair_tree_charge(t, opt_tree(t.graph, 4));
  EXPECT_TRUE(report.passed()) << (report.violations.empty() ? "" : report.violations.front());
  EXPECT_TRUE(report.conserved);
  ASSERT_TRUE(report.exact_min_rejected_margin.has_value());
  EXPECT_EQ(*report.exact_min_rejected_margin, Rational(0));
}

TEST(FairTree, RefusesUnfairTraces) {
  Trace t(4);
  const EdgeId e = t.graph.add_edge(0, 1);
  t.coloring.reject(t.graph, e);
  t.steps.push_back({e, {0, 1}, Decision::rejected()});
  EXPECT_THROW(charging::fair_tree_charge(t, opt_tree(t.graph, 4)), PreconditionError);
}

TEST(ComputeL, Examples) {
  EXPECT_EQ(charging::compute_l(path_order(3, {2, 1, 3}), 0), 1u);
  EXPECT_EQ(charging::compute_l(path_order(2, {1, 2}), 1), 2u);
  const auto chain = path_order(4, {1, 2, 3, 4});
  for (EdgeId e = 0; e < 4; ++e) EXPECT_EQ(charging::compute_l(chain, e), e + 1);
  const auto backwards = path_order(4, {4, 3, 2, 1});
  for (EdgeId e = 0; e < 4; ++e) EXPECT_EQ(charging::compute_l(backwards, e), e + 1);
  EXPECT_THROW(charging::compute_l(path_order(3, {1, 3, 2}), 2), PreconditionError);
  EXPECT_THROW(charging::compute_l(chain, 9), PreconditionError);
}

TEST(AnalyzePathOrder, RefusesNonPaths) {
  RevealSequence star;
  star.edges = {{0, 1}, {0, 2}, {0, 3}};
  EXPECT_THROW(charging::analyze_path_order(star), PreconditionError);
}

TEST(RpTarget, Formula) {
  EXPECT_NEAR(charging::rp_target(kGoldenP), 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(charging::rp_target(1.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(charging::rp_target(0.5), 0.75);
}

TEST(RpPathCharge, SameParityEqualityAtTheOptimum) {
  const auto report = charging::rp_path_charge(path_order(3, {1, 3, 2}), kGoldenP);
  EXPECT_TRUE(report.passed());
  ASSERT_EQ(report.rows.size(), 3u);
  const auto crit = *std::find_if(report.rows.begin(), report.rows.end(), [](const auto& r) { return r.edge == 2; });
  EXPECT_EQ(crit.cls, "critical");
  EXPECT_NEAR(crit.initial, 0.6, 1e-12);
  EXPECT_NEAR(crit.final_value, 0.8, 1e-12);
  EXPECT_EQ(crit.case_id, 2);
  EXPECT_NEAR(*report.min_margin, 0.0, 1e-9);
}

TEST(RpPathCharge, FirstFitLimitPasses) {
  RngStream rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto seq = harness::random_path_order(1 + rng.below(40), rng);
    EXPECT_TRUE(charging::rp_path_charge(seq, 1.0).passed());
  }
}

TEST(RpPathCharge, FailsAboveTheTarget) {
  const auto report = charging::rp_path_charge(path_order(3, {1, 3, 2}), kGoldenP, 0.85);
  EXPECT_FALSE(report.passed());
  EXPECT_THROW(charging::rp_path_charge(path_order(3, {1, 3, 2}), 0.3), ParameterError);
}

// Empirical coloring frequency of each edge against the analytic v_i.
TEST(RpPathCharge, MonteCarloMatchesInitialValues) {
  const auto seq = path_order(8, {1, 3, 2, 6, 5, 4, 8, 7});
  const double p = 0.65;
  const auto report = charging::rp_path_charge(seq, p);
  const int trials = 10000;
  std::vector<int> colored(seq.edges.size(), 0);
  RandomParity rp(p);
  for (int t = 0; t < trials; ++t) {
    const Trace trace = run(rp, seq, RngStream::derive(5, t)());
    for (EdgeId e = 0; e < trace.graph.num_edges(); ++e) colored[e] += trace.coloring.is_colored(e) ? 1 : 0;
  }
  for (const auto& row : report.rows) {
    const double q = row.initial;
    const double sigma = std::max(std::sqrt(q * (1 - q) / trials), 1e-9);
    EXPECT_NEAR(static_cast<double>(colored[row.edge]) / trials, q, 3 * sigma) << "edge " << row.edge;
  }
}

TEST(RpPathCharge, TightInstanceMaxTarget) {
  const auto seq = path_order(6, {1, 3, 2, 6, 5, 4});
  for (double p : {0.5, 0.6, 0.7236, 0.9, 1.0}) {
    EXPECT_NEAR(charging::rp_max_passing_target(seq, p), charging::rp_target(p), 1e-6) << p;
  }
}

TEST(Conservation, EveryStrategyConserves) {
  RngStream rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto edges = testing::random_bushy_tree_edges(1 + rng.below(14), 3, rng);
    const Trace t = ff_run(edges, 2);
    const auto w = opt_tree(t.graph, 2);
    EXPECT_TRUE(charging::ff_tree_charge(t, w).conserved);
    EXPECT_TRUE(charging::fair_tree_charge(t, w).conserved);
    EXPECT_TRUE(charging::rp_path_charge(harness::random_path_order(1 + rng.below(30), rng), 0.7).conserved);
  }
}

// Any optimal solution works as the witness, not just the oracle's.
TEST(WitnessSweep, FirstFitPassesForEveryOptimalSolution) {
  RngStream rng(44);
  int swept = 0;
  for (int i = 0; i < 150; ++i) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const Trace t = ff_run(testing::random_bushy_tree_edges(2 + rng.below(9), 2, rng), k);
    if (t.coloring.rejected_count() == 0) continue;
    for (const auto& w : enumerate::optimal_witnesses(t.graph, k)) {
      ASSERT_TRUE(audit_witness(t.graph, w));
      const auto ff = charging::ff_tree_charge(t, w);
      ASSERT_TRUE(ff.passed()) << ff.violations.front();
      const auto fair = charging::fair_tree_charge(t, w);
      ASSERT_TRUE(fair.passed()) << fair.violations.front();
      ++swept;
    }
  }
  EXPECT_GT(swept, 50);
}

TEST(RandomSuite, FirstFitOnRandomTrees) {
  RngStream rng(500);
  for (int i = 0; i < 500; ++i) {
    const int k = 2 + static_cast<int>(rng.below(3));
    const auto edges = rng.coin() ? testing::random_tree_edges(1 + rng.below(14), rng)
                                  : testing::random_bushy_tree_edges(1 + rng.below(14), 3, rng);
    const Trace t = ff_run(edges, k);
    const auto w = opt_tree(t.graph, k);
    const auto report = charging::ff_tree_charge(t, w, {static_cast<VertexId>(rng.below(t.graph.num_vertices())), true});
    ASSERT_TRUE(report.passed()) << report.violations.front();
    EXPECT_GE(Rational(static_cast<long>(t.colored_count())) * k,
              Rational(static_cast<long>(w.opt_count)) * (k - 1));
  }
}

TEST(RandomSuite, FairAlgorithmsOnRandomTrees) {
  RngStream rng(501);
  for (int k : {4, 9}) {
    int with_rejections = 0;
    for (int i = 0; i < 250; ++i) {
      const auto edges = testing::random_bushy_tree_edges(4 + rng.below(30), 1 + rng.below(4), rng);
      RandomFair fair;
      const Trace t = run(fair, edges, k, rng());
      const auto w = opt_tree(t.graph, k);
      const auto report = charging::fair_tree_charge(t, w);
      ASSERT_TRUE(report.passed()) << report.violations.front();
      EXPECT_GE(Rational(static_cast<long>(t.colored_count())),
                charging::fair_tree_target(k) * Rational(static_cast<long>(w.opt_count)));
      with_rejections += t.coloring.rejected_count() > 0 ? 1 : 0;
    }
    EXPECT_GT(with_rejections, 20) << k;
  }
}

TEST(VerdictCsv, Columns) {
  const auto report = charging::rp_path_charge(path_order(3, {1, 3, 2}), kGoldenP);
  std::ostringstream out;
  charging::write_verdict_csv(out, report);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "edge,class,v_i,v_f,margin,case");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

}  // namespace
}  // namespace palette
