#include <gtest/gtest.h>

#include <sstream>

#include "corpus.hpp"
#include "lpq/reductions.hpp"

using namespace lpq;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_cnf(text);
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "no error";
}

CnfKind kind_for(const RegimeSpec& s) {
  switch (s.source()) {
    case SourceKind::kOneInThree: return CnfKind::kOneInThree;
    case SourceKind::kTwoInFour: return CnfKind::kTwoInFour;
    default: return CnfKind::kNae3;
  }
}

std::vector<corpus::Named> corpus_for(const RegimeSpec& s) {
  if (s.source() == SourceKind::kThreeCol) return corpus::graphs();
  return corpus::formulas(kind_for(s));
}

}  // namespace

TEST(CnfFormat, Parses) {
  const CnfInstance f = parse_cnf("c comment\np nae3 3 1\n1 2 3\n");
  EXPECT_EQ(f.kind, CnfKind::kNae3);
  EXPECT_EQ(f.variable_count, 3);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{0, 1, 2}}));
  EXPECT_EQ(parse_cnf("p 1in3 3 1\n1 2 3 0\n").clauses.size(), 1u);
}

TEST(CnfFormat, Errors) {
  EXPECT_EQ(parse_error("p 2in4 4 1\n1 1 2 3\n"), "line 2: repeated variable 1 in clause");
  EXPECT_EQ(parse_error("p nae3 3 1\n1 2 4\n"), "line 2: variable index 4 out of range");
  EXPECT_EQ(parse_error("p nae3 3 1\n1 2\n"), "line 2: expected 3 variables per clause");
  EXPECT_EQ(parse_error("p xor 3 1\n"), "line 1: unknown formula kind 'xor'");
  EXPECT_EQ(parse_error("1 2 3\n"), "line 1: clause before header");
  EXPECT_EQ(parse_error("p nae3 3 2\n1 2 3\n"), "line 2: header declares 2 clauses, found 1");
  EXPECT_EQ(parse_error("p nae3 3 1\n-1 2 3\n"), "line 2: literals must be positive variable indices");
}

TEST(CnfFormat, RoundTrip) {
  for (auto kind : {CnfKind::kNae3, CnfKind::kOneInThree, CnfKind::kTwoInFour})
    for (const auto& item : corpus::formulas(kind)) {
      const auto& f = std::get<CnfInstance>(item.source);
      std::ostringstream out;
      write_cnf(out, f);
      const CnfInstance back = parse_cnf(out.str());
      EXPECT_EQ(back.kind, f.kind);
      EXPECT_EQ(back.variable_count, f.variable_count);
      EXPECT_EQ(back.clauses, f.clauses);
    }
}

TEST(BruteSource, Examples) {
  EXPECT_EQ(brute_source(ColInstance{graphs::triangle()}), std::optional<Certificate>(Certificate{0, 1, 2}));
  EXPECT_FALSE(brute_source(ColInstance{graphs::complete(4)}));
  EXPECT_EQ(brute_source(CnfInstance{CnfKind::kNae3, 3, {{0, 1, 2}}}), std::optional<Certificate>(Certificate{0, 0, 1}));
  EXPECT_EQ(brute_source(CnfInstance{CnfKind::kOneInThree, 3, {{0, 1, 2}}}),
            std::optional<Certificate>(Certificate{0, 0, 1}));
  EXPECT_TRUE(brute_source(CnfInstance{CnfKind::kTwoInFour, 5, {{0, 1, 2, 3}, {0, 1, 2, 4}}}));
  // the star K_{1,4} has no proper edge 3-colouring
  EXPECT_FALSE(brute_source(EdgeColInstance{graphs::star(4)}));
  EXPECT_TRUE(brute_source(EdgeColInstance{graphs::complete(4)}));
  EXPECT_THROW(brute_source(ColInstance{Graph(21, {})}), Error);
}

TEST(BruteSource, SmallUnsatisfiableFormula) {
  // NAE over all four triples of four variables: a 2+2 split works
  EXPECT_TRUE(brute_source(CnfInstance{CnfKind::kNae3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}}));
  // 1-in-3 over all four triples of four variables: each variable sits in three clauses, so 4 = 3t
  EXPECT_FALSE(brute_source(CnfInstance{CnfKind::kOneInThree, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}}));
}

TEST(Reduce, ThreeColouringOfTriangle) {
  const auto red = reduce(ColInstance{graphs::triangle()}, dispatch(0, 1));
  EXPECT_EQ(red.graph.edge_count(), 33);
  EXPECT_EQ(red.params, Params(0, 1, 3));
}

TEST(Reduce, SingleNaeClauseAddsNoEdges) {
  const auto spec = dispatch(1, 3);
  const auto red = reduce(CnfInstance{CnfKind::kNae3, 3, {{0, 1, 2}}}, spec);
  EXPECT_EQ(red.graph.edge_count(), 3 * variable_gadget(spec, 1).graph.edge_count());
  EXPECT_EQ(red.clause_hubs.at(0).size(), 3u);
  EXPECT_EQ(red.clause_hubs.at(0)[0], red.clause_hubs.at(0)[2]);
}

TEST(Reduce, EdgeColouringIsIdentity) {
  // the cube is cubic
  const Graph cube(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
  const auto red = reduce(EdgeColInstance{cube}, dispatch(2, 0));
  EXPECT_EQ(red.graph, cube);
  EXPECT_EQ(red.params, Params(2, 0, 6));
}

TEST(Reduce, SourceMismatchAndBadRegimes) {
  EXPECT_THROW(reduce(ColInstance{graphs::triangle()}, dispatch(1, 3)), Error);
  EXPECT_THROW(reduce(CnfInstance{CnfKind::kNae3, 3, {{0, 1, 2}}}, dispatch(3, 2)), Error);
  EXPECT_THROW(reduce(ColInstance{graphs::triangle()}, dispatch(1, 1)), Error);
  EXPECT_THROW(reduce(CnfInstance{CnfKind::kNae3, 3, {{0, 0, 2}}}, dispatch(1, 3)), Error);
}

TEST(Reduce, SizeIsLinear) {
  // worst case is every variable occurring once
  const std::map<std::pair<int, int>, int> bound{{{0, 1}, 5},  {{1, 3}, 9},  {{2, 3}, 10},
                                                 {{4, 3}, 6},  {{3, 2}, 6},  {{5, 3}, 44}};
  for (const auto& [pq, c] : bound) {
    const auto spec = dispatch(pq.first, pq.second);
    for (const auto& item : corpus_for(spec)) {
      const auto red = reduce(item.source, spec);
      std::size_t units = 0;
      if (const auto* f = std::get_if<CnfInstance>(&item.source))
        units = f->clauses.size() * (clause_width(f->kind) + 1);
      else
        units = 3 * std::get<ColInstance>(item.source).graph.edge_count();
      SCOPED_TRACE(item.name);
      EXPECT_LE(static_cast<std::size_t>(red.graph.edge_count()), c * units);
    }
  }
}

TEST(Reduce, EndToEndOnCorpus) {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {2, 3}, {3, 2}}) {
    const auto spec = dispatch(p, q);
    for (const auto& item : corpus_for(spec)) {
      // the largest instances live in the acceptance run
      if (item.name == "three" || item.name == "dense") continue;
      SCOPED_TRACE(std::to_string(p) + "," + std::to_string(q) + " " + item.name);
      const auto red = reduce(item.source, spec);
      const auto want = brute_source(item.source);
      const Decision d =
          decide(red.graph, red.params, {}, SearchBudget{20'000'000, std::nullopt}, {}, red.interface_edges());
      ASSERT_NE(d.outcome, Outcome::kUnknown);
      EXPECT_EQ(d.outcome == Outcome::kYes, want.has_value());
      if (d.labelling) {
        EXPECT_TRUE(satisfies(item.source, back_map(red, *d.labelling)));
      }
    }
  }
}

TEST(Reduce, ForwardAndBackRoundTrip) {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {2, 3}, {4, 3}, {3, 2}, {5, 3}, {2, 0}}) {
    const auto spec = dispatch(p, q);
    std::vector<corpus::Named> items;
    if (spec.source() == SourceKind::kEdgeThreeCol)
      items = {{"k4", EdgeColInstance{graphs::complete(4)}}, {"p4", EdgeColInstance{graphs::path(3)}}};
    else
      items = corpus_for(spec);
    for (const auto& item : items) {
      const auto cert = brute_source(item.source);
      if (!cert) continue;
      SCOPED_TRACE(std::to_string(p) + "," + std::to_string(q) + " " + item.name);
      const auto red = reduce(item.source, spec);
      const EdgeLabelling c = forward_label(red, *cert);
      ASSERT_TRUE(is_valid(red.graph, red.params, c));
      EXPECT_TRUE(satisfies(item.source, back_map(red, c)));
    }
  }
}

TEST(Reduce, ScaledParamsRoundTrip) {
  const CnfInstance f{CnfKind::kNae3, 4, {{0, 1, 2}, {1, 2, 3}}};
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 6}, {4, 6}}) {
    const auto spec = dispatch(p, q);
    const auto red = reduce(f, spec);
    const EdgeLabelling c = forward_label(red, *brute_source(f));
    EXPECT_TRUE(is_valid(red.graph, Params(p, q, spec.k), c));
    EXPECT_TRUE(satisfies(f, back_map(red, c)));
  }
}

TEST(Reduce, ForwardRejectsNonCertificate) {
  const CnfInstance f{CnfKind::kNae3, 3, {{0, 1, 2}}};
  const auto red = reduce(f, dispatch(1, 3));
  EXPECT_THROW(forward_label(red, {1, 1, 1}), Error);
}

TEST(Reduce, BackMapRejectsBadLabellings) {
  const CnfInstance f{CnfKind::kNae3, 3, {{0, 1, 2}}};
  const auto red = reduce(f, dispatch(1, 3));
  EXPECT_THROW(back_map(red, EdgeLabelling(red.graph.edge_count())), Error);
  EdgeLabelling zeros(std::vector<Label>(red.graph.edge_count(), 0));
  EXPECT_THROW(back_map(red, zeros), Error);
}
