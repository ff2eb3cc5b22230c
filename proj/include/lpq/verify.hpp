#pragma once

// Registry of machine-checked gadget lemmas. Every check is exhaustive
// search at fixed parameters; a check that runs out of budget reports
// "unknown", which callers must treat as a failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lpq/core.hpp"
#include "lpq/gadgets.hpp"
#include "lpq/reductions.hpp"
#include "lpq/solver.hpp"

namespace lpq {

enum class Verdict { kPass, kFail, kUnknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kUnknown: return "unknown";
  }
  return "?";
}

struct Counterexample {
  Graph graph;
  Params params;
  EdgeLabelling labelling;
};

struct LemmaReport {
  std::string id;
  Verdict verdict = Verdict::kUnknown;
  std::string detail;
  std::vector<std::string> lines;  // tables the check reproduces
  std::optional<Counterexample> counterexample;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};

  bool passed() const { return verdict == Verdict::kPass; }
  /// `<id> <verdict> <nodes> <millis>`, or without the time when it must be
  /// reproducible.
  std::string summary(bool with_time = true) const {
    std::string s = id + " " + to_string(verdict) + " " + std::to_string(nodes);
    if (with_time) s += " " + std::to_string(elapsed.count());
    return s;
  }
};

enum class CheckMethod { kEnumerate, kProjection, kMinK, kInfeasibility, kRandomized };

inline const char* to_string(CheckMethod m) {
  switch (m) {
    case CheckMethod::kEnumerate: return "enumerate-and-classify";
    case CheckMethod::kProjection: return "projection";
    case CheckMethod::kMinK: return "min_k";
    case CheckMethod::kInfeasibility: return "infeasibility";
    case CheckMethod::kRandomized: return "randomized-property";
  }
  return "?";
}

namespace detail {

struct Unknown {};

struct Failure {
  std::string what;
  std::optional<Counterexample> counterexample;
};

/// Shared node budget and accounting for one check.
class CheckContext {
 public:
  explicit CheckContext(std::uint64_t node_budget) : budget_(node_budget) {}

  std::uint64_t nodes() const { return nodes_; }
  SearchBudget budget() const { return SearchBudget{budget_ > nodes_ ? budget_ - nodes_ : 0, std::nullopt}; }

  void account(const SearchStats& s) {
    nodes_ += s.nodes;
    if (nodes_ > budget_) throw Unknown{};
  }

  Decision decide(const Graph& g, const Params& params, const EdgeLabelling& fixed = {},
                  const DomainRestriction& restriction = {}) {
    Decision d = lpq::decide(g, params, fixed, budget(), restriction);
    account(d.stats);
    if (d.outcome == Outcome::kUnknown) throw Unknown{};
    return d;
  }

  ProjectionTable project(const Graph& g, const Params& params, const EdgeLabelling& fixed,
                          const std::vector<EdgeIndex>& targets, const DomainRestriction& restriction = {}) {
    ProjectionTable t = lpq::project(g, params, fixed, targets, budget(), restriction);
    account(t.stats);
    if (t.outcome == Outcome::kUnknown) throw Unknown{};
    return t;
  }

  void for_each(const Graph& g, const Params& params, const std::function<bool(const EdgeLabelling&)>& visit) {
    SearchStats stats;
    Outcome o = for_each_labelling(g, params, EdgeLabelling(g.edge_count()), visit, budget(), &stats);
    account(stats);
    if (o == Outcome::kUnknown) throw Unknown{};
  }

  std::vector<std::string> lines;
  std::string detail;

 private:
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

inline std::string show(const std::vector<Label>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

inline std::string show(const LabelSet& s) { return show(s.to_vector()); }

inline void expect(bool ok, const std::string& what, const Graph& g = {}, const Params& params = {},
                   const std::optional<EdgeLabelling>& witness = std::nullopt) {
  if (ok) return;
  Failure f{what, std::nullopt};
  if (witness) f.counterexample = Counterexample{g, params, *witness};
  throw f;
}

inline std::vector<Label> labels_of(const EdgeLabelling& c, const std::vector<EdgeIndex>& edges) {
  std::vector<Label> out;
  for (EdgeIndex e : edges) out.push_back(c[e]);
  return out;
}

inline std::vector<EdgeIndex> ports(const Gadget& g, const std::string& base, int count) {
  std::vector<EdgeIndex> out;
  for (int i = 0; i < count; ++i) out.push_back(g.port(indexed(base, i)));
  return out;
}

// Fixed literal classes on the ports of a single-clause reduction: for every
// pattern of classes, the reduced instance must be feasible exactly when
// `accept` holds.
inline void clause_patterns(CheckContext& ctx, const SourceInstance& clause, const RegimeSpec& spec,
                            const std::vector<LabelSet>& classes, const std::vector<std::string>& class_names,
                            const std::function<bool(const std::vector<int>&)>& accept) {
  const ReducedInstance red = reduce(clause, spec);
  const Params params = spec.base_params();
  const int width = static_cast<int>(red.var_ports.size());
  std::vector<int> pattern(width, 0);
  int total = 1;
  for (int i = 0; i < width; ++i) total *= static_cast<int>(classes.size());
  for (int code = 0; code < total; ++code) {
    int rest = code;
    for (int i = width - 1; i >= 0; --i) {
      pattern[i] = rest % static_cast<int>(classes.size());
      rest /= static_cast<int>(classes.size());
    }
    DomainRestriction r;
    std::string name;
    int i = 0;
    for (const auto& [key, e] : red.var_ports) {
      r[e] = classes[pattern[i]];
      name += (i ? "," : "") + class_names[pattern[i]];
      ++i;
    }
    Decision d = ctx.decide(red.graph, params, {}, r);
    const bool want = accept(pattern);
    ctx.lines.push_back("(" + name + ") " + (d.outcome == Outcome::kYes ? "feasible" : "infeasible"));
    expect((d.outcome == Outcome::kYes) == want,
           "pattern (" + name + ") is " + (want ? "infeasible" : "feasible") + " on the clause", red.graph, params,
           d.labelling);
  }
}

// Variable consistency: with the first port restricted to one class, every
// other port projects into that same class.
inline void variable_consistent(CheckContext& ctx, const RegimeSpec& spec, int occurrences,
                                const std::vector<LabelSet>& classes) {
  const Gadget g = variable_gadget(spec, occurrences);
  const Params params = spec.base_params();
  const auto var = ports(g, "var", occurrences);
  LabelSet all;
  for (const auto& c : classes) all = all | c;
  // without restriction the ports only take labels from the classes
  auto free = ctx.project(g.graph, params, EdgeLabelling(g.graph.edge_count()), var);
  for (EdgeIndex e : var)
    for (Label l : free.labels[e])
      expect(all.contains(l), "port takes label " + std::to_string(l) + " outside every class", g.graph, params,
             free.witnesses[free.witness_of[{e, l}]]);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto t = ctx.project(g.graph, params, EdgeLabelling(g.graph.edge_count()), var, {{var[0], classes[c]}});
    for (EdgeIndex e : var) {
      expect(!t.labels[e].empty(), "class " + show(classes[c]) + " is not realisable");
      for (Label l : t.labels[e])
        expect(classes[c].contains(l),
               "first port in " + show(classes[c]) + " lets another port take " + std::to_string(l), g.graph,
               params, t.witnesses[t.witness_of[{e, l}]]);
    }
  }
}

inline Graph random_graph(std::mt19937_64& rng, int max_edges, int max_vertices) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  const int n = nv(rng);
  std::vector<std::pair<Vertex, Vertex>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<int> ne(0, std::min<int>(max_edges, static_cast<int>(all.size())));
  all.resize(ne(rng));
  return Graph(n, all);
}

}  // namespace detail

struct LemmaCheck {
  std::string id;
  std::optional<Regime> regime;  // none for regime-independent checks
  Params params;
  CheckMethod method = CheckMethod::kEnumerate;
  std::string expectation;
  std::function<void(detail::CheckContext&)> body;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

inline const std::vector<LemmaCheck>& registry() {
  using detail::CheckContext;
  using detail::expect;
  using detail::ports;
  using detail::show;
  static const std::vector<LemmaCheck> checks = [] {
    std::vector<LemmaCheck> r;

    // -- 3-colouring, p = 0 ------------------------------------------------
    r.push_back({"s3_variable_equal_pendants", Regime::kPZeroQ, Params(0, 1, 3), CheckMethod::kEnumerate,
                 "every labelling gives the three pendants one label; all three labels occur",
                 [](CheckContext& ctx) {
                   const auto spec = dispatch(0, 1);
                   const Gadget g = variable_gadget(spec, 3);
                   const auto var = ports(g, "var", 3);
                   std::set<Label> seen;
                   ctx.for_each(g.graph, g.params, [&](const EdgeLabelling& c) {
                     auto l = detail::labels_of(c, var);
                     expect(l[0] == l[1] && l[1] == l[2], "pendants differ: " + show(l), g.graph, g.params, c);
                     seen.insert(l[0]);
                     return true;
                   });
                   expect(seen.size() == 3, "only " + std::to_string(seen.size()) + " pendant labels occur");
                 }});
    r.push_back({"s3_clause_distinct", Regime::kPZeroQ, Params(0, 1, 3), CheckMethod::kEnumerate,
                 "every labelling gives the two attachment pendants distinct labels; all six pairs occur",
                 [](CheckContext& ctx) {
                   const Gadget g = clause_gadget(dispatch(0, 1));
                   const auto lit = ports(g, "lit", 2);
                   std::set<std::pair<Label, Label>> seen;
                   ctx.for_each(g.graph, g.params, [&](const EdgeLabelling& c) {
                     expect(c[lit[0]] != c[lit[1]], "attachment pendants equal", g.graph, g.params, c);
                     seen.emplace(c[lit[0]], c[lit[1]]);
                     return true;
                   });
                   expect(seen.size() == 6, "only " + std::to_string(seen.size()) + " pendant pairs occur");
                 }});

    // -- NAE-3-SAT, q > 2p -----------------------------------------------------
    r.push_back({"s4_star_regimes", Regime::kBeyond2, Params(1, 3, 9), CheckMethod::kEnumerate,
                 "pendants all in {0..a} or all in {(n-2)a+b..(n-1)a+b}", [](CheckContext& ctx) {
                   const auto spec = dispatch(1, 3);
                   const int n = *spec.star_degree, a = spec.a, b = spec.b;
                   const Gadget g = extended_star(n, spec);
                   const auto pend = ports(g, "pendant", n);
                   const LabelSet low = LabelSet::range(0, a), high = LabelSet::range((n - 2) * a + b, (n - 1) * a + b);
                   std::uint64_t count = 0, lows = 0;
                   ctx.for_each(g.graph, g.params, [&](const EdgeLabelling& c) {
                     auto l = detail::labels_of(c, pend);
                     const bool all_low = std::all_of(l.begin(), l.end(), [&](Label x) { return low.contains(x); });
                     const bool all_high = std::all_of(l.begin(), l.end(), [&](Label x) { return high.contains(x); });
                     expect(all_low || all_high, "pendants " + show(l) + " straddle the regimes", g.graph, g.params, c);
                     ++count;
                     lows += all_low;
                     return true;
                   });
                   expect(lows > 0 && lows < count, "one of the two regimes is never realised");
                   ctx.detail = std::to_string(count) + " labellings, n = " + std::to_string(n);
                 }});
    r.push_back({"s4_variable_consistent", Regime::kBeyond2, Params(1, 3, 9), CheckMethod::kProjection,
                 "a 3-port variable gadget keeps all ports in the regime of the first", [](CheckContext& ctx) {
                   const auto spec = dispatch(1, 3);
                   const int n = *spec.star_degree, a = spec.a, b = spec.b;
                   detail::variable_consistent(
                       ctx, spec, 3, {LabelSet::range(0, a), LabelSet::range((n - 2) * a + b, (n - 1) * a + b)});
                 }});
    r.push_back({"s4_clause", Regime::kBeyond2, Params(1, 3, 9), CheckMethod::kInfeasibility,
                 "a hub-joined clause is feasible iff its ports are not all in one regime", [](CheckContext& ctx) {
                   const auto spec = dispatch(1, 3);
                   const int n = *spec.star_degree, a = spec.a, b = spec.b;
                   detail::clause_patterns(ctx, CnfInstance{CnfKind::kNae3, 3, {{0, 1, 2}}}, spec,
                                           {LabelSet::range(0, a), LabelSet::range((n - 2) * a + b, (n - 1) * a + b)},
                                           {"T", "F"}, [](const std::vector<int>& p) {
                                             return !(p[0] == p[1] && p[1] == p[2]);
                                           });
                 }});

    // -- NAE-3-SAT, p < q <= 2p ---------------------------------------------------
    r.push_back({"s5_pendant_force", Regime::kOneTo2, Params(2, 3, 11), CheckMethod::kProjection,
                 "pendant 0 forces the others into {0..a}; pendant 5a into {4a..5a}", [](CheckContext& ctx) {
                   const auto spec = dispatch(2, 3);
                   const int a = spec.a;
                   const Gadget g = extended_star(4, spec);
                   const auto pend = ports(g, "pendant", 4);
                   for (auto [fixed, range] : {std::pair{0, LabelSet::range(0, a)},
                                               std::pair{5 * a, LabelSet::range(4 * a, 5 * a)}}) {
                     EdgeLabelling f(g.graph.edge_count());
                     f.set(pend[0], fixed);
                     auto t = ctx.project(g.graph, g.params, f, {pend[1], pend[2], pend[3]});
                     for (int i = 1; i < 4; ++i) {
                       expect(!t.labels[pend[i]].empty(), "pendant " + std::to_string(fixed) + " admits no completion");
                       for (Label l : t.labels[pend[i]])
                         expect(range.contains(l),
                                "pendant " + std::to_string(fixed) + " lets another pendant take " + std::to_string(l),
                                g.graph, g.params, t.witnesses[t.witness_of[{pend[i], l}]]);
                     }
                     ctx.lines.push_back(std::to_string(fixed) + " -> " + show(t.labels[pend[1]]));
                   }
                 }});
    r.push_back({"s5_forcer", Regime::kOneTo2, Params(2, 3, 11), CheckMethod::kProjection,
                 "the added edge of the 5-star forcer takes exactly {0, 5a}", [](CheckContext& ctx) {
                   const auto spec = dispatch(2, 3);
                   Graph g = graphs::star(5);
                   const EdgeIndex extra = g.add_edge(1, g.add_vertex());
                   const Params params = spec.base_params();
                   auto t = ctx.project(g, params, EdgeLabelling(g.edge_count()), {extra});
                   ctx.lines.push_back("extra edge -> " + show(t.labels[extra]));
                   expect(t.labels[extra] == std::vector<Label>{0, 5 * spec.a},
                          "extra edge projects to " + show(t.labels[extra]));
                 }});
    r.push_back({"s5_variable_consistent", Regime::kOneTo2, Params(2, 3, 11), CheckMethod::kProjection,
                 "a 3-port variable gadget keeps all ports in the regime of the first", [](CheckContext& ctx) {
                   const auto spec = dispatch(2, 3);
                   const int a = spec.a;
                   detail::variable_consistent(ctx, spec, 3, {LabelSet::range(0, a), LabelSet::range(4 * a, 5 * a)});
                 }});
    r.push_back({"s5_clause", Regime::kOneTo2, Params(2, 3, 11), CheckMethod::kInfeasibility,
                 "a hub-joined clause is feasible iff its ports are not all in one regime", [](CheckContext& ctx) {
                   const auto spec = dispatch(2, 3);
                   const int a = spec.a;
                   detail::clause_patterns(ctx, CnfInstance{CnfKind::kNae3, 3, {{0, 1, 2}}}, spec,
                                           {LabelSet::range(0, a), LabelSet::range(4 * a, 5 * a)}, {"T", "F"},
                                           [](const std::vector<int>& p) { return !(p[0] == p[1] && p[1] == p[2]); });
                 }});

    // -- 3-colouring, 2/3 < q/p < 1 ---------------------------------------------
    r.push_back({"s6_three_regimes", Regime::kTwoThirdsTo1, Params(4, 3, 16), CheckMethod::kEnumerate,
                 "pendants within one of {b..a}, {a+b..2a}, {2a+b..3a}; inner sets {0,a+b,2a+b,3a+b}, "
                 "{0,a,2a+b,3a+b}, {0,a,2a,3a+b} respectively",
                 [](CheckContext& ctx) {
                   const auto spec = dispatch(4, 3);
                   const int a = spec.a, b = spec.b;
                   const Gadget g = extended_star(4, spec);
                   const auto pend = ports(g, "pendant", 4), inner = ports(g, "inner", 4);
                   const std::array<LabelSet, 3> ranges{LabelSet::range(b, a), LabelSet::range(a + b, 2 * a),
                                                        LabelSet::range(2 * a + b, 3 * a)};
                   const std::array<std::vector<Label>, 3> inner_sets{{{0, a + b, 2 * a + b, 3 * a + b},
                                                                       {0, a, 2 * a + b, 3 * a + b},
                                                                       {0, a, 2 * a, 3 * a + b}}};
                   std::array<std::uint64_t, 3> hits{};
                   ctx.for_each(g.graph, g.params, [&](const EdgeLabelling& c) {
                     auto p = detail::labels_of(c, pend), in = detail::labels_of(c, inner);
                     std::sort(in.begin(), in.end());
                     int regime = -1;
                     for (int i = 0; i < 3; ++i)
                       if (std::all_of(p.begin(), p.end(), [&](Label x) { return ranges[i].contains(x); })) regime = i;
                     expect(regime >= 0, "pendants " + show(p) + " straddle the regimes", g.graph, g.params, c);
                     expect(in == inner_sets[regime], "inner set " + show(in) + " with pendants " + show(p), g.graph,
                            g.params, c);
                     ++hits[regime];
                     return true;
                   });
                   for (int i = 0; i < 3; ++i) {
                     expect(hits[i] > 0, "regime " + std::to_string(i + 1) + " never realised");
                     ctx.lines.push_back("regime " + std::to_string(i + 1) + ": pendants " + show(ranges[i]) +
                                         ", inner " + show(inner_sets[i]) + ", " + std::to_string(hits[i]) +
                                         " labellings");
                   }
                 }});
    r.push_back({"s6_variable_consistent", Regime::kTwoThirdsTo1, Params(4, 3, 16), CheckMethod::kProjection,
                 "a 3-port variable gadget keeps all ports in the regime of the first", [](CheckContext& ctx) {
                   const auto spec = dispatch(4, 3);
                   const int a = spec.a, b = spec.b;
                   detail::variable_consistent(
                       ctx, spec, 3,
                       {LabelSet::range(b, a), LabelSet::range(a + b, 2 * a), LabelSet::range(2 * a + b, 3 * a)});
                 }});
    r.push_back({"s6_clause", Regime::kTwoThirdsTo1, Params(4, 3, 16), CheckMethod::kInfeasibility,
                 "a 2-claw joining two ports is feasible iff their regimes differ", [](CheckContext& ctx) {
                   const auto spec = dispatch(4, 3);
                   const int a = spec.a, b = spec.b;
                   detail::clause_patterns(
                       ctx, ColInstance{graphs::path(1)}, spec,
                       {LabelSet::range(b, a), LabelSet::range(a + b, 2 * a), LabelSet::range(2 * a + b, 3 * a)},
                       {"1", "2", "3"}, [](const std::vector<int>& p) { return p[0] != p[1]; });
                 }});

    // -- 1-in-3-SAT, q/p = 2/3 ---------------------------------------------------
    r.push_back({"s7_dictionary", Regime::kEqTwoThirds, Params(3, 2, 12), CheckMethod::kProjection,
                 "2:{2,3,9} 3:{2,3} 5:{5,6} 6:{5,6} 8:{8,9} 9:{2,8,9}; no other pendant label completes",
                 [](CheckContext& ctx) {
                   const auto spec = dispatch(3, 2);
                   const Gadget g = extended_star(4, spec);
                   const auto pend = ports(g, "pendant", 4);
                   const std::map<Label, std::vector<Label>> expected{
                       {2, {2, 3, 9}}, {3, {2, 3}}, {5, {5, 6}}, {6, {5, 6}}, {8, {8, 9}}, {9, {2, 8, 9}}};
                   for (Label l = 0; l < g.params.k; ++l) {
                     EdgeLabelling f(g.graph.edge_count());
                     f.set(pend[0], l);
                     auto t = ctx.project(g.graph, g.params, f, {pend[1], pend[2], pend[3]});
                     std::set<Label> u;
                     for (int i = 1; i < 4; ++i) u.insert(t.labels[pend[i]].begin(), t.labels[pend[i]].end());
                     const std::vector<Label> got(u.begin(), u.end());
                     auto it = expected.find(l);
                     const std::vector<Label> want = it == expected.end() ? std::vector<Label>{} : it->second;
                     if (!got.empty()) ctx.lines.push_back(std::to_string(l) + " -> " + show(got));
                     std::optional<EdgeLabelling> w;
                     if (!t.witnesses.empty()) w = t.witnesses.front();
                     expect(got == want, "pendant " + std::to_string(l) + " yields " + show(got) + ", expected " +
                                             show(want), g.graph, g.params, w);
                   }
                 }});
    r.push_back({"s7_variable_two_classes", Regime::kEqTwoThirds, Params(3, 2, 12), CheckMethod::kProjection,
                 "chains of 1..3 units: top pendants all in {5,6} or all in {2,3,8,9}; a top assignment from "
                 "one set extends iff no two consecutive units carry 3 and 8",
                 [](CheckContext& ctx) {
                   const auto spec = dispatch(3, 2);
                   const LabelSet t = LabelSet::of({5, 6}), f = LabelSet::of({2, 3, 8, 9});
                   for (int m = 1; m <= 3; ++m) {
                     detail::variable_consistent(ctx, spec, m, {t, f});
                     const Gadget g = variable_gadget(spec, m);
                     const auto var = ports(g, "var", m);
                     std::uint64_t extend = 0, blocked = 0;
                     for (const LabelSet& cls : {t, f}) {
                       const auto labels = cls.to_vector();
                       std::vector<std::size_t> idx(m, 0);
                       while (true) {
                         EdgeLabelling fixed(g.graph.edge_count());
                         bool clash = false;
                         for (int i = 0; i < m; ++i) {
                           fixed.set(var[i], labels[idx[i]]);
                           const Label x = fixed[var[i]];
                           if (i > 0 && std::min(x, fixed[var[i - 1]]) == 3 && std::max(x, fixed[var[i - 1]]) == 8)
                             clash = true;
                         }
                         Decision d = ctx.decide(g.graph, g.params, fixed);
                         const auto tops = show(detail::labels_of(fixed, var));
                         expect((d.outcome == Outcome::kYes) != clash,
                                "top pendants " + tops + (clash ? " extend" : " do not extend"), g.graph, g.params,
                                d.labelling ? *d.labelling : fixed);
                         ++(clash ? blocked : extend);
                         int i = m - 1;
                         while (i >= 0 && ++idx[i] == labels.size()) idx[i--] = 0;
                         if (i < 0) break;
                       }
                     }
                     ctx.lines.push_back("chain of " + std::to_string(m) + ": " + std::to_string(extend) +
                                         " top assignments extend, " + std::to_string(blocked) +
                                         " with adjacent 3/8 do not");
                   }
                   ctx.detail = "longer chains are not checked";
                 }});
    r.push_back({"s7_clause", Regime::kEqTwoThirds, Params(3, 2, 12), CheckMethod::kInfeasibility,
                 "a hub-joined clause is feasible iff exactly one port is in {5,6}", [](CheckContext& ctx) {
                   detail::clause_patterns(ctx, CnfInstance{CnfKind::kOneInThree, 3, {{0, 1, 2}}}, dispatch(3, 2),
                                           {LabelSet::of({5, 6}), LabelSet::of({2, 3, 8, 9})}, {"T", "F"},
                                           [](const std::vector<int>& p) {
                                             return std::count(p.begin(), p.end(), 0) == 1;
                                           });
                 }});

    // -- 2-in-4-SAT, 1/2 < q/p < 2/3 --------------------------------------------
    auto rigid_star = [](CheckContext& ctx, bool gaps_only) {
      const auto spec = dispatch(5, 3);
      const int a = spec.a, b = spec.b;
      const Gadget g = extended_star(4, spec);
      const auto pend = ports(g, "pendant", 4), inner = ports(g, "inner", 4);
      // largest label stays below 3a + b
      const Params params(a, b, 3 * a + b);
      std::uint64_t count = 0;
      ctx.for_each(g.graph, params, [&](const EdgeLabelling& c) {
        auto in = detail::labels_of(c, inner), p = detail::labels_of(c, pend);
        std::sort(in.begin(), in.end());
        std::sort(p.begin(), p.end());
        if (gaps_only) {
          expect(in[1] - in[0] >= 2 * b && in[3] - in[2] >= 2 * b, "inner gaps of " + show(in) + " below 2b",
                 g.graph, params, c);
        } else {
          expect(in == std::vector<Label>{0, 2 * b, 2 * b + a, 4 * b + a}, "inner set " + show(in), g.graph, params,
                 c);
          expect(p == std::vector<Label>{b, b, 3 * b + a, 3 * b + a}, "pendant multiset " + show(p), g.graph,
                 params, c);
        }
        ++count;
        return true;
      });
      expect(count > 0, "no labelling exists");
      ctx.detail = std::to_string(count) + " labellings at k = " + std::to_string(params.k);
    };
    r.push_back({"s8_inner_gaps", Regime::kHalfToTwoThirds, Params(5, 3, 18), CheckMethod::kEnumerate,
                 "sorted inner labels have first and last gaps >= 2b",
                 [rigid_star](CheckContext& ctx) { rigid_star(ctx, true); }});
    r.push_back({"s8_rigid", Regime::kHalfToTwoThirds, Params(5, 3, 18), CheckMethod::kEnumerate,
                 "inner set {0,2b,2b+a,4b+a}, pendant multiset {b,b,3b+a,3b+a}",
                 [rigid_star](CheckContext& ctx) { rigid_star(ctx, false); }});
    r.push_back({"s8_minimal_k", Regime::kHalfToTwoThirds, Params(5, 3, 18), CheckMethod::kMinK,
                 "min_k of the extended 4-star is 4b+a+1", [](CheckContext& ctx) {
                   const auto spec = dispatch(5, 3);
                   const Gadget g = extended_star(4);
                   MinKResult m = min_k(g.graph, spec.a, spec.b, 8 * (spec.a + spec.b), ctx.budget());
                   ctx.account(m.stats);
                   if (m.outcome == Outcome::kUnknown) throw detail::Unknown{};
                   expect(m.k && *m.k == 4 * spec.b + spec.a + 1,
                          "min_k = " + (m.k ? std::to_string(*m.k) : std::string("none")));
                   ctx.lines.push_back("min_k = " + std::to_string(*m.k));
                 }});
    r.push_back({"s8_variable_two_classes", Regime::kHalfToTwoThirds, Params(5, 3, 18), CheckMethod::kProjection,
                 "two protrusions: verticals all 0 or all 4b+a", [](CheckContext& ctx) {
                   const auto spec = dispatch(5, 3);
                   const int top = 4 * spec.b + spec.a;
                   const Gadget g = variable_gadget(spec, 2);
                   const auto vert = ports(g, "vertical", 4);
                   const EdgeLabelling none(g.graph.edge_count());
                   auto t = ctx.project(g.graph, g.params, none, {vert[0]});
                   expect(t.labels[vert[0]] == std::vector<Label>{0, top}, "vertical takes " + show(t.labels[vert[0]]));
                   for (Label l : {0, top}) {
                     EdgeLabelling f = none;
                     f.set(vert[0], l);
                     auto rest = ctx.project(g.graph, g.params, f, {vert[1], vert[2], vert[3]});
                     for (int i = 1; i < 4; ++i) {
                       const auto& got = rest.labels[vert[i]];
                       std::optional<EdgeLabelling> w;
                       if (!rest.witnesses.empty()) w = rest.witnesses.front();
                       expect(got == std::vector<Label>{l}, "vertical 0 = " + std::to_string(l) + " lets vertical " +
                                                                std::to_string(i) + " take " + show(got),
                              g.graph, g.params, w);
                     }
                     ctx.lines.push_back("vertical[0] = " + std::to_string(l) + " forces all verticals to " +
                                         std::to_string(l));
                   }
                 }});
    r.push_back({"s8_impossible_path", Regime::kHalfToTwoThirds, Params(5, 3, 18), CheckMethod::kInfeasibility,
                 "the drawn path prefix has no completion; 4b - 2a < b", [](CheckContext& ctx) {
                   const auto spec = dispatch(5, 3);
                   const int a = spec.a, b = spec.b;
                   expect(4 * b - 2 * a < b, "4b - 2a = " + std::to_string(4 * b - 2 * a) + " is not below b");
                   // z0 - n1 - n2 - n3 - x, x forks to v1 and v2, each v_i - r_i
                   // and r_i carries two more edges
                   Graph g(13, {});
                   g.add_edge(0, 1);
                   const EdgeIndex second = g.add_edge(1, 2);
                   g.add_edge(2, 3);
                   g.add_edge(3, 4);
                   g.add_edge(4, 5);
                   g.add_edge(4, 6);
                   const EdgeIndex r1 = g.add_edge(5, 7), r2 = g.add_edge(6, 8);
                   const EdgeIndex s1 = g.add_edge(7, 9), t1 = g.add_edge(7, 10);
                   const EdgeIndex s2 = g.add_edge(8, 11), t2 = g.add_edge(8, 12);
                   const Params params = spec.base_params();
                   EdgeLabelling lower(g.edge_count());
                   lower.set(r1, 0);
                   lower.set(r2, 0);
                   lower.set(s1, 3 * b + a);
                   lower.set(s2, 3 * b + a);
                   lower.set(t1, 3 * b);
                   lower.set(t2, 3 * b);
                   // the lower six edges alone are completable
                   expect(ctx.decide(g, params, lower).outcome == Outcome::kYes, "lower part alone is infeasible");
                   EdgeLabelling prefix = lower;
                   prefix.set(second, b);
                   Decision d = ctx.decide(g, params, prefix);
                   expect(d.outcome == Outcome::kNo, "prefix has a completion", g, params, d.labelling);
                 }});

    // -- scaling ---------------------------------------------------------------
    r.push_back({"gcd_invariance", std::nullopt, Params(0, 0, 1), CheckMethod::kRandomized,
                 "decide(g,(p,q,k)) == decide(g,(dp,dq,dk)) for d in {2,3}; scaled witnesses pass check",
                 [](CheckContext& ctx) {
                   std::mt19937_64 rng(20240601);
                   std::uniform_int_distribution<int> pq(0, 3), kk(1, 7), dd(2, 3);
                   int trials = 0;
                   while (trials < 50) {
                     const Graph g = detail::random_graph(rng, 8, 7);
                     const int p = pq(rng), q = pq(rng), k = kk(rng), d = dd(rng);
                     if (p == 0 && q == 0) continue;
                     ++trials;
                     Decision small = ctx.decide(g, Params(p, q, k));
                     Decision big = ctx.decide(g, Params(d * p, d * q, d * k));
                     expect(small.outcome == big.outcome, "outcomes differ at (" + std::to_string(p) + "," +
                                                              std::to_string(q) + "," + std::to_string(k) +
                                                              ") scaled by " + std::to_string(d));
                     if (small.labelling) {
                       const EdgeLabelling s = scaled(*small.labelling, d);
                       expect(is_valid(g, Params(d * p, d * q, d * k), s), "scaled witness fails check", g,
                              Params(d * p, d * q, d * k), s);
                     }
                   }
                   ctx.detail = std::to_string(trials) + " random instances";
                 }});
    return r;
  }();
  return checks;
}

inline const LemmaCheck* find_check(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return &c;
  return nullptr;
}

inline LemmaReport run_check(const LemmaCheck& check, std::uint64_t node_budget = kDefaultNodeBudget) {
  LemmaReport report;
  report.id = check.id;
  detail::CheckContext ctx(node_budget);
  const auto start = std::chrono::steady_clock::now();
  try {
    check.body(ctx);
    report.verdict = Verdict::kPass;
  } catch (const detail::Failure& f) {
    report.verdict = Verdict::kFail;
    ctx.detail = f.what;
    report.counterexample = f.counterexample;
  } catch (const detail::Unknown&) {
    report.verdict = Verdict::kUnknown;
    ctx.detail = "node budget exhausted";
  }
  report.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  report.nodes = ctx.nodes();
  report.detail = ctx.detail;
  report.lines = ctx.lines;
  return report;
}

inline LemmaReport verify(const std::string& id, std::uint64_t node_budget = kDefaultNodeBudget) {
  const LemmaCheck* c = find_check(id);
  if (!c) throw Error("unknown lemma check '" + id + "'");
  return run_check(*c, node_budget);
}

/// Runs every check (or those of one regime) in registry order.
inline std::vector<LemmaReport> verify_all(std::optional<Regime> filter = std::nullopt,
                                           std::uint64_t node_budget = kDefaultNodeBudget) {
  std::vector<LemmaReport> out;
  for (const auto& c : registry()) {
    if (filter && c.regime != filter) continue;
    out.push_back(run_check(c, node_budget));
  }
  return out;
}

}  // namespace lpq
