// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "lpq/verify.hpp"
#include "oracle.hpp"

using namespace lpq;
using Clock = std::chrono::steady_clock;

namespace {

struct Result {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (!ok) note << "; ";
    else note.str("");
    ok = false;
    note << why;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
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

void criterion1(Result& r) {
  const auto t = Clock::now();
  const LemmaReport rep = verify("s7_dictionary");
  if (!rep.passed()) r.fail(rep.detail);
  const double s = seconds_since(t);
  if (s >= 60) r.fail("took " + fmt(s));
  if (r.ok) r.note << rep.lines.size() << " rows, " << fmt(s);
}

void criterion2(Result& r) {
  const auto t = Clock::now();
  const Gadget star = extended_star(4);
  const MinKResult m = min_k(star.graph, 5, 3, 40);
  if (!m.k || *m.k != 18) {
    r.fail("min_k = " + (m.k ? std::to_string(*m.k) : std::string(to_string(m.outcome))));
    return;
  }
  std::vector<EdgeIndex> inner, pendant;
  for (int i = 0; i < 4; ++i) {
    inner.push_back(star.port("inner[" + std::to_string(i) + "]"));
    pendant.push_back(star.port("pendant[" + std::to_string(i) + "]"));
  }
  std::size_t n = 0;
  for_each_labelling(star.graph, Params(5, 3, 18), EdgeLabelling(star.graph.edge_count()),
                     [&](const EdgeLabelling& c) {
                       ++n;
                       std::multiset<Label> in, pe;
                       for (int i = 0; i < 4; ++i) {
                         in.insert(c[inner[i]]);
                         pe.insert(c[pendant[i]]);
                       }
                       if (in != std::multiset<Label>{0, 6, 11, 17} || pe != std::multiset<Label>{3, 3, 14, 14}) {
                         r.fail("labelling " + std::to_string(n) + " breaks the shape");
                         return false;
                       }
                       return true;
                     });
  if (n == 0) r.fail("no labelling at k = 18");
  const double s = seconds_since(t);
  if (s >= 60) r.fail("took " + fmt(s));
  if (r.ok) r.note << "min_k 18, " << n << " labellings at k=18 all rigid, " << fmt(s);
}

void criterion3(Result& r) {
  const auto t = Clock::now();
  int pass = 0;
  for (const auto& rep : verify_all()) {
    std::cout << "  " << rep.summary() << '\n';
    if (rep.passed()) ++pass;
    else r.fail(rep.id + " " + to_string(rep.verdict) + ": " + rep.detail);
  }
  const double s = seconds_since(t);
  if (s >= 1800) r.fail("took " + fmt(s));
  if (r.ok) r.note << pass << " checks passed, " << fmt(s);
}

void criterion4(Result& r) {
  const auto t = Clock::now();
  // three-colouring at (0,1,3)
  {
    const auto spec = dispatch(0, 1);
    const auto k3 = reduce(ColInstance{graphs::triangle()}, spec);
    if (decide(k3.graph, k3.params).outcome != Outcome::kYes) r.fail("K3 not a yes-instance");
    const auto t4 = Clock::now();
    const auto k4 = reduce(ColInstance{graphs::complete(4)}, spec);
    const auto d = decide(k4.graph, k4.params, {}, SearchBudget{std::nullopt, std::chrono::minutes(10)}, {},
                          k4.interface_edges());
    if (d.outcome != Outcome::kNo) r.fail(std::string("K4 decided ") + to_string(d.outcome));
    std::cout << "  (0,1) K3 yes, K4 " << to_string(d.outcome) << " in " << fmt(seconds_since(t4)) << '\n';
  }
  // full equivalence on the corpus
  int agreed = 0;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 2}}) {
    const auto spec = dispatch(p, q);
    int yes = 0, no = 0;
    for (const auto& item : corpus_for(spec)) {
      const auto red = reduce(item.source, spec);
      const bool want = brute_source(item.source).has_value();
      const Decision d =
          decide(red.graph, red.params, {}, SearchBudget{100'000'000, std::nullopt}, {}, red.interface_edges());
      if (d.outcome == Outcome::kUnknown) {
        r.fail("(" + std::to_string(p) + "," + std::to_string(q) + ") " + item.name + " unknown");
        continue;
      }
      const bool got = d.outcome == Outcome::kYes;
      if (got != want) r.fail("(" + std::to_string(p) + "," + std::to_string(q) + ") " + item.name + " disagrees");
      else ++agreed;
      if (d.labelling && !satisfies(item.source, back_map(red, *d.labelling)))
        r.fail(item.name + " back-map fails");
      (got ? yes : no)++;
    }
    std::cout << "  (" << p << "," << q << ") corpus: " << yes << " yes, " << no << " no\n";
  }
  // forward direction, then a budgeted attempt at no-instances
  for (auto [p, q] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}}) {
    const auto spec = dispatch(p, q);
    int built = 0;
    for (const auto& item : corpus_for(spec)) {
      const auto cert = brute_source(item.source);
      if (!cert) continue;
      const auto red = reduce(item.source, spec);
      try {
        const EdgeLabelling c = forward_label(red, *cert);
        if (!is_valid(red.graph, red.params, c)) r.fail(item.name + " forward labelling invalid");
        else ++built;
      } catch (const Error& e) {
        r.fail(item.name + ": " + e.what());
      }
    }
    SourceInstance hard;
    std::string hard_name;
    if (spec.source() == SourceKind::kThreeCol) {
      hard = ColInstance{graphs::complete(4)};
      hard_name = "K4";
    } else {
      // every 4-subset of 5 variables: 10 = 4t has no solution
      hard = CnfInstance{CnfKind::kTwoInFour, 5, {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}}};
      hard_name = "2-in-4 over all quadruples of 5 variables";
    }
    const auto red = reduce(hard, spec);
    const auto d = decide(red.graph, red.params, {}, SearchBudget{20'000'000, std::chrono::minutes(2)}, {},
                          red.interface_edges());
    std::cout << "  (" << p << "," << q << ") forward labelling valid on " << built
              << " satisfiable corpus instances; backward attempt on " << hard_name << " ("
              << red.graph.edge_count() << " edges): " << to_string(d.outcome) << " after " << d.stats.nodes
              << " nodes\n";
    if (d.outcome == Outcome::kYes) r.fail(hard_name + " reduced to a yes-instance");
  }
  for (const char* id : {"s6_three_regimes", "s6_variable_consistent", "s6_clause", "s8_rigid",
                         "s8_variable_two_classes", "s8_impossible_path"}) {
    const LemmaReport rep = verify(id);
    if (!rep.passed()) r.fail(std::string(id) + " " + to_string(rep.verdict));
  }
  if (r.ok) r.note << agreed << " corpus instances agree, backward gadget lemmas pass, " << fmt(seconds_since(t));
}

void criterion5(Result& r) {
  std::mt19937_64 rng(515);
  std::size_t total = 0;
  for (int i = 0; i < 200; ++i) {
    const Graph g = oracle::random_graph(rng, 7, 7);
    const int p = rng() % 4, q = rng() % 4, k = 1 + rng() % 6;
    const auto want = oracle::all_labellings(g, p, q, k);
    const auto got = enumerate(g, Params(p, q, k));
    bool same = got.outcome == Outcome::kYes && got.labellings.size() == want.size();
    for (std::size_t j = 0; same && j < want.size(); ++j) same = got.labellings[j].labels() == want[j];
    if (!same) r.fail("graph " + std::to_string(i) + " differs");
    total += want.size();
  }
  if (r.ok) r.note << "200 graphs, " << total << " labellings matched in order";
}

void criterion6(Result& r) {
  std::mt19937_64 rng(616);
  int yes = 0;
  for (int i = 0; i < 200; ++i) {
    const Graph g = oracle::random_graph(rng, 8, 8);
    const int p = rng() % 4, q = rng() % 4, k = 1 + rng() % 8;
    const Decision base = decide(g, Params(p, q, k));
    if (base.outcome == Outcome::kYes) ++yes;
    for (int d : {2, 3}) {
      const Params big(d * p, d * q, d * k);
      if (decide(g, big).outcome != base.outcome) r.fail("graph " + std::to_string(i) + " d=" + std::to_string(d));
      if (base.labelling && !is_valid(g, big, scaled(*base.labelling, d)))
        r.fail("scaled witness of graph " + std::to_string(i));
    }
  }
  if (r.ok) r.note << "200 graphs (" << yes << " yes), d in {2,3}";
}

void criterion7(Result& r) {
  const auto t = Clock::now();
  int count = 0;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {2, 0}, {1, 3}, {2, 3}, {4, 3}, {3, 2}, {5, 3}}) {
    const auto spec = dispatch(p, q);
    std::vector<Gadget> gadgets{clause_gadget(spec)};
    for (int m = 1; m <= 3; ++m) gadgets.push_back(variable_gadget(spec, m));
    if (spec.regime != Regime::kPZeroQ && spec.regime != Regime::kQZeroP) {
      gadgets.push_back(extended_star(spec.star_degree.value_or(4), spec));
      if (spec.regime != Regime::kHalfToTwoThirds) gadgets.push_back(clause_interface(spec));
    }
    for (const auto& g : gadgets)
      for (const auto& [name, c] : g.templates) {
        ++count;
        if (!c.is_total() || !is_valid(g.graph, spec.params(), c))
          r.fail("(" + std::to_string(p) + "," + std::to_string(q) + ") template " + name);
      }
  }
  const double s = seconds_since(t);
  if (s >= 5) r.fail("took " + fmt(s));
  if (r.ok) r.note << count << " templates valid, " << fmt(s);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Result&)>>> criteria{
      {"eq23 pendant dictionary", criterion1},
      {"rigid 4-star at (5,3)", criterion2},
      {"lemma registry", criterion3},
      {"end-to-end reductions", criterion4},
      {"solver matches brute force", criterion5},
      {"gcd invariance", criterion6},
      {"stored templates", criterion7},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << " " << (r.ok ? "PASS" : "FAIL") << ": " << criteria[i].first << " ("
              << r.note.str() << ")" << std::endl;
    if (!r.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
