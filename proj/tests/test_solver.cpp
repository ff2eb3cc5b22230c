#include <gtest/gtest.h>

#include <random>

#include "lpq/solver.hpp"
#include "oracle.hpp"

using namespace lpq;

TEST(LabelSet, Basics) {
  LabelSet s = LabelSet::range(3, 70);
  EXPECT_EQ(s.size(), 68);
  EXPECT_EQ(s.min(), 3);
  EXPECT_EQ(s.max(), 70);
  EXPECT_EQ(s.next(63), 64);
  EXPECT_TRUE(s.remove_range(10, 65));
  EXPECT_EQ(s.next(9), 66);
  EXPECT_FALSE(s.remove_range(10, 65));
  EXPECT_EQ((LabelSet::of({1, 2}) & LabelSet::of({2, 3})), LabelSet::single(2));
  EXPECT_TRUE(LabelSet().empty());
  EXPECT_EQ(LabelSet().min(), -1);
}

TEST(Decide, SmallExamples) {
  // a triangle needs three pairwise distinct labels under (0,1)
  EXPECT_EQ(decide(graphs::triangle(), Params(0, 1, 3)).outcome, Outcome::kYes);
  EXPECT_EQ(decide(graphs::triangle(), Params(0, 1, 2)).outcome, Outcome::kNo);
  // K4 under (1,1): all six edges are pairwise within distance two
  EXPECT_EQ(decide(graphs::complete(4), Params(1, 1, 6)).outcome, Outcome::kYes);
  EXPECT_EQ(decide(graphs::complete(4), Params(1, 1, 5)).outcome, Outcome::kNo);
}

TEST(Decide, WitnessPassesCheckAndHonoursFixed) {
  const Graph g = graphs::path(4);
  EdgeLabelling fixed(g.edge_count());
  fixed.set(1, 3);
  const Decision d = decide(g, Params(2, 1, 6), fixed);
  ASSERT_EQ(d.outcome, Outcome::kYes);
  EXPECT_TRUE(is_valid(g, Params(2, 1, 6), *d.labelling));
  EXPECT_EQ((*d.labelling)[1], 3);
}

TEST(Decide, InconsistentPrefixIsRejected) {
  EdgeLabelling fixed(2);
  fixed.set(0, 1);
  fixed.set(1, 1);
  EXPECT_THROW(decide(graphs::path(2), Params(1, 0, 3), fixed), InfeasiblePrefix);
}

TEST(Decide, BudgetGivesUnknown) {
  const Decision d = decide(graphs::complete(5), Params(1, 1, 9), {}, SearchBudget{5, std::nullopt});
  EXPECT_EQ(d.outcome, Outcome::kUnknown);
  EXPECT_FALSE(d.labelling);
}

TEST(Decide, RestrictionLimitsLabels) {
  const Graph g = graphs::path(1);
  const Decision d = decide(g, Params(0, 0, 5), {}, {}, {{0, LabelSet::of({3})}});
  ASSERT_EQ(d.outcome, Outcome::kYes);
  EXPECT_EQ((*d.labelling)[0], 3);
  EXPECT_EQ(decide(g, Params(0, 0, 3), {}, {}, {{0, LabelSet::of({4})}}).outcome, Outcome::kNo);
}

TEST(Decide, RejectsOversizedK) { EXPECT_THROW(decide(graphs::path(1), Params(1, 1, 300)), Error); }

TEST(Enumerate, MatchesOracleExactly) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    const Graph g = oracle::random_graph(rng, 6, 6);
    const int p = rng() % 3, q = rng() % 3, k = 1 + rng() % 5;
    const auto want = oracle::all_labellings(g, p, q, k);
    const auto got = enumerate(g, Params(p, q, k));
    ASSERT_EQ(got.outcome, Outcome::kYes);
    ASSERT_EQ(got.labellings.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(got.labellings[i].labels(), want[i]);
    EXPECT_EQ(count(g, Params(p, q, k)).count, want.size());
    EXPECT_EQ(decide(g, Params(p, q, k)).outcome, want.empty() ? Outcome::kNo : Outcome::kYes);
  }
}

TEST(Enumerate, LimitTruncates) {
  const auto e = enumerate(graphs::path(2), Params(1, 0, 4), {}, 3);
  EXPECT_EQ(e.labellings.size(), 3u);
  EXPECT_TRUE(e.truncated);
}

TEST(Count, PathExample) {
  // P4 under (1,2) with 5 labels: counted by hand-rolled oracle
  EXPECT_EQ(count(graphs::path(3), Params(1, 2, 5)).count, oracle::all_labellings(graphs::path(3), 1, 2, 5).size());
}

TEST(Project, MatchesOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 80; ++trial) {
    const Graph g = oracle::random_graph(rng, 6, 5);
    if (g.edge_count() == 0) continue;
    const int p = rng() % 3, q = rng() % 3, k = 1 + rng() % 5;
    std::vector<EdgeIndex> targets(g.edge_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) targets[e] = e;
    const auto table = project(g, Params(p, q, k), EdgeLabelling(g.edge_count()), targets);
    ASSERT_EQ(table.outcome, Outcome::kYes);
    std::vector<std::set<int>> want(g.edge_count());
    for (const auto& c : oracle::all_labellings(g, p, q, k))
      for (int e = 0; e < g.edge_count(); ++e) want[e].insert(c[e]);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const auto& got = table.labels.at(e);
      EXPECT_EQ(std::set<int>(got.begin(), got.end()), want[e]);
      for (Label l : got) {
        const auto& w = table.witnesses.at(table.witness_of.at({e, l}));
        EXPECT_EQ(w[e], l);
        EXPECT_TRUE(is_valid(g, Params(p, q, k), w));
      }
    }
  }
}

TEST(MinK, Examples) {
  // K_{1,3} under (3,2): three labels pairwise 3 apart need 0,3,6
  EXPECT_EQ(min_k(graphs::star(3), 3, 2, 20).k, std::optional<int>(7));
  // P4 under (1,1): labels 0,1,2 suffice and two do not
  EXPECT_EQ(min_k(graphs::path(3), 1, 1, 10).k, std::optional<int>(3));
  EXPECT_EQ(min_k(graphs::triangle(), 2, 2, 3).outcome, Outcome::kNo);
  EXPECT_EQ(min_k(Graph(2, {}), 5, 5, 3).k, std::optional<int>(1));
}

TEST(Determinism, RepeatedRunsAgree) {
  const Graph g = graphs::complete(5);
  const auto a = decide(g, Params(1, 1, 10));
  const auto b = decide(g, Params(1, 1, 10));
  EXPECT_EQ(a.labelling, b.labelling);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
}

TEST(Decide, BranchingHintsKeepTheOutcome) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_graph(rng, 7, 6);
    const int p = rng() % 3, q = rng() % 3, k = 1 + rng() % 5;
    std::vector<EdgeIndex> hint;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
      if (rng() % 2) hint.push_back(e);
    const Decision d = decide(g, Params(p, q, k), {}, {}, {}, hint);
    EXPECT_EQ(d.outcome, oracle::all_labellings(g, p, q, k).empty() ? Outcome::kNo : Outcome::kYes);
    if (d.labelling) {
      EXPECT_TRUE(is_valid(g, Params(p, q, k), *d.labelling));
    }
  }
  EXPECT_THROW(decide(graphs::path(2), Params(1, 0, 3), {}, {}, {}, {5}), Error);
}
