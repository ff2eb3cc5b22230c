// Command-line front end.
//
// Exit codes: 0 yes / valid / pass, 1 no / invalid / fail, 2 usage or input
// error, 3 budget exhausted.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpq/core.hpp"
#include "lpq/gadgets.hpp"
#include "lpq/io.hpp"
#include "lpq/reductions.hpp"
#include "lpq/solver.hpp"
#include "lpq/verify.hpp"

namespace {

enum Exit { kYes = 0, kNo = 1, kInputError = 2, kBudget = 3 };

struct UsageError : lpq::Error {
  using lpq::Error::Error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Options {
  std::string graph, labelling, source, out = "-", regime, id, kind = "graph", counterexamples;
  std::optional<int> p, q, k;
  int k_max = 64;
  std::vector<std::string> fix, targets;
  std::optional<std::uint64_t> budget_nodes, budget_ms, limit;
  std::uint64_t seed = 1;
  int vertices = 6, variables = 6, clauses = 3;
  double edge_prob = 0.5;
};

lpq::SearchBudget budget_of(const Options& o) {
  lpq::SearchBudget b;
  b.node_limit = o.budget_nodes;
  if (o.budget_ms) b.time_limit = std::chrono::milliseconds(*o.budget_ms);
  return b;
}

lpq::io::GraphDocument load_graph(const Options& o) {
  if (o.graph.empty()) throw UsageError("--graph is required");
  std::istringstream in(slurp(o.graph));
  return lpq::io::read_graph_document(in);
}

// Flags win over an `l p q k` line in the graph file.
lpq::Params params_of(const Options& o, const lpq::io::GraphDocument& doc, bool need_k = true) {
  std::optional<lpq::Params> file = doc.params;
  auto pick = [&](const std::optional<int>& flag, int lpq::Params::*field, const char* name) {
    if (flag) return *flag;
    if (file) return (*file).*field;
    throw UsageError(std::string("-") + name + " is required");
  };
  const int p = pick(o.p, &lpq::Params::p, "p"), q = pick(o.q, &lpq::Params::q, "q");
  const int k = need_k ? pick(o.k, &lpq::Params::k, "k") : 1;
  return lpq::Params(p, q, k);
}

std::pair<lpq::Vertex, lpq::Vertex> parse_pair(const std::string& s, const lpq::Graph& g) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected u,v but got '" + s + "'");
  int u = 0, v = 0;
  try {
    u = std::stoi(s.substr(0, comma));
    v = std::stoi(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("expected u,v but got '" + s + "'");
  }
  if (u < 1 || v < 1 || u > g.vertex_count() || v > g.vertex_count())
    throw UsageError("vertex out of range in '" + s + "'");
  return {u - 1, v - 1};
}

lpq::EdgeIndex edge_of(const std::string& s, const lpq::Graph& g) {
  auto [u, v] = parse_pair(s, g);
  auto e = g.find_edge(u, v);
  if (!e) throw UsageError("no edge " + s + " in graph");
  return *e;
}

lpq::EdgeLabelling fixed_of(const Options& o, const lpq::Graph& g) {
  lpq::EdgeLabelling fixed(g.edge_count());
  for (const auto& f : o.fix) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw UsageError("expected u,v=label but got '" + f + "'");
    const lpq::EdgeIndex e = edge_of(f.substr(0, eq), g);
    int label = 0;
    try {
      label = std::stoi(f.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad label in '" + f + "'");
    }
    if (fixed.assigned(e) && fixed[e] != label) throw UsageError("edge fixed twice: '" + f + "'");
    fixed.set(e, label);
  }
  return fixed;
}

void write_out(const Options& o, const std::string& text) {
  if (o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw UsageError("cannot write '" + o.out + "'");
  out << text;
}

// Graph sources are 3-colouring instances, or edge-3-colouring instances when
// the regime asks for one.
lpq::SourceInstance load_source(const Options& o, const lpq::RegimeSpec& spec) {
  if (o.source.empty()) throw UsageError("--source is required");
  const std::string text = slurp(o.source);
  std::istringstream probe(text);
  for (std::string line; std::getline(probe, line);) {
    auto t = lpq::io::detail::tokens(line);
    if (t.empty() || t[0] == "c") continue;
    if (t.size() >= 2 && t[0] == "p" && t[1] == "edge") {
      lpq::Graph g = lpq::io::parse_graph(text);
      if (spec.source() == lpq::SourceKind::kEdgeThreeCol) return lpq::EdgeColInstance{g};
      return lpq::ColInstance{g};
    }
    break;
  }
  return lpq::parse_cnf(text);
}

lpq::RegimeSpec spec_of(const Options& o) {
  if (!o.p || !o.q) throw UsageError("-p and -q are required");
  lpq::RegimeSpec spec = lpq::dispatch(*o.p, *o.q);
  if (o.k && *o.k != spec.k)
    throw UsageError("the reduction for (" + std::to_string(*o.p) + "," + std::to_string(*o.q) + ") uses k = " +
                     std::to_string(spec.k));
  return spec;
}

int cmd_check(const Options& o) {
  auto doc = load_graph(o);
  const lpq::Params params = params_of(o, doc);
  if (o.labelling.empty()) throw UsageError("--labelling is required");
  auto lab = lpq::io::parse_labelling(slurp(o.labelling), doc.graph);
  const auto report = lpq::check(doc.graph, params, lab.labelling);
  if (report.ok()) {
    std::cout << "valid\n";
    return kYes;
  }
  for (const auto& v : report.violations) {
    const auto& a = doc.graph.edge(v.first);
    const auto& b = doc.graph.edge(v.second);
    std::cout << (v.kind == lpq::ViolationKind::kAdjacent ? "adjacent" : "mid-linked") << " {" << a.u + 1 << ","
              << a.v + 1 << "} {" << b.u + 1 << "," << b.v + 1 << "} need " << v.required << " have " << v.actual
              << '\n';
  }
  std::cout << "invalid\n";
  return kNo;
}

int cmd_solve(const Options& o) {
  auto doc = load_graph(o);
  const lpq::Params params = params_of(o, doc);
  // ports listed in the file (reduce output) are branched on first
  std::vector<lpq::EdgeIndex> hint;
  for (const auto& [name, e] : doc.ports) hint.push_back(e);
  const lpq::Decision d = lpq::decide(doc.graph, params, fixed_of(o, doc.graph), budget_of(o), {}, hint);
  std::cerr << "nodes " << d.stats.nodes << '\n';
  if (d.outcome == lpq::Outcome::kYes) {
    std::ostringstream s;
    lpq::io::write_labelling(s, doc.graph, params, *d.labelling);
    write_out(o, s.str());
    return kYes;
  }
  std::cout << lpq::to_string(d.outcome) << '\n';
  return d.outcome == lpq::Outcome::kNo ? kNo : kBudget;
}

int cmd_enumerate(const Options& o) {
  auto doc = load_graph(o);
  const lpq::Params params = params_of(o, doc);
  std::optional<std::size_t> limit;
  if (o.limit) limit = static_cast<std::size_t>(*o.limit);
  const auto result = lpq::enumerate(doc.graph, params, fixed_of(o, doc.graph), limit, budget_of(o));
  std::ostringstream s;
  for (const auto& c : result.labellings) s << lpq::io::labelling_to_json(doc.graph, params, c).dump() << '\n';
  write_out(o, s.str());
  std::cerr << result.labellings.size() << " labellings" << (result.truncated ? " (limit reached)" : "") << '\n';
  if (result.outcome == lpq::Outcome::kUnknown) return kBudget;
  return result.labellings.empty() ? kNo : kYes;
}

int cmd_project(const Options& o) {
  auto doc = load_graph(o);
  const lpq::Params params = params_of(o, doc);
  std::vector<lpq::EdgeIndex> targets;
  for (const auto& t : o.targets) targets.push_back(edge_of(t, doc.graph));
  if (targets.empty()) throw UsageError("at least one --target u,v is required");
  const auto table = lpq::project(doc.graph, params, fixed_of(o, doc.graph), targets, budget_of(o));
  if (table.outcome == lpq::Outcome::kUnknown) {
    std::cout << "unknown\n";
    return kBudget;
  }
  bool any = false;
  for (lpq::EdgeIndex t : targets) {
    const auto& e = doc.graph.edge(t);
    std::cout << e.u + 1 << "," << e.v + 1 << ":";
    for (lpq::Label l : table.labels.at(t)) std::cout << ' ' << l;
    std::cout << '\n';
    any = any || !table.labels.at(t).empty();
  }
  return any ? kYes : kNo;
}

int cmd_min_k(const Options& o) {
  auto doc = load_graph(o);
  const lpq::Params params = params_of(o, doc, false);
  const auto r = lpq::min_k(doc.graph, params.p, params.q, o.k_max, budget_of(o));
  if (r.outcome == lpq::Outcome::kYes) {
    std::ostringstream s;
    lpq::io::write_labelling(s, doc.graph, lpq::Params(params.p, params.q, *r.k), *r.labelling);
    std::cout << "k " << *r.k << '\n';
    if (o.out != "-") write_out(o, s.str());
    return kYes;
  }
  std::cout << lpq::to_string(r.outcome) << '\n';
  return r.outcome == lpq::Outcome::kNo ? kNo : kBudget;
}

int cmd_reduce(const Options& o) {
  const lpq::RegimeSpec spec = spec_of(o);
  const auto source = load_source(o, spec);
  const auto red = lpq::reduce(source, spec);
  lpq::io::GraphDocument doc{red.graph, red.params, red.port_manifest()};
  std::ostringstream s;
  s << "c regime " << lpq::regime_name(spec.regime) << " from " << lpq::source_name(spec.source()) << '\n';
  lpq::io::write_graph_document(s, doc);
  write_out(o, s.str());
  return kYes;
}

int cmd_back_map(const Options& o) {
  const lpq::RegimeSpec spec = spec_of(o);
  const auto source = load_source(o, spec);
  const auto red = lpq::reduce(source, spec);
  if (o.labelling.empty()) throw UsageError("--labelling is required");
  auto lab = lpq::io::parse_labelling(slurp(o.labelling), red.graph);
  if (!(lab.params == red.params)) throw UsageError("labelling parameters do not match the reduction");
  lpq::Certificate cert;
  try {
    cert = lpq::back_map(red, lab.labelling);
  } catch (const lpq::Error& err) {
    std::cerr << "lpq: " << err.what() << '\n';
    return kNo;
  }
  std::cout << (std::holds_alternative<lpq::CnfInstance>(source) ? "v" : "colours");
  for (int x : cert) std::cout << ' ' << x;
  std::cout << '\n';
  return kYes;
}

int cmd_gen(const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::ostringstream s;
  if (o.kind == "graph") {
    if (o.vertices < 1) throw UsageError("--vertices must be positive");
    std::bernoulli_distribution coin(o.edge_prob);
    lpq::Graph g(o.vertices, {});
    for (int u = 0; u < o.vertices; ++u)
      for (int v = u + 1; v < o.vertices; ++v)
        if (coin(rng)) g.add_edge(u, v);
    lpq::io::write_graph(s, g);
  } else {
    lpq::CnfInstance f;
    if (o.kind == "nae3") f.kind = lpq::CnfKind::kNae3;
    else if (o.kind == "1in3") f.kind = lpq::CnfKind::kOneInThree;
    else if (o.kind == "2in4") f.kind = lpq::CnfKind::kTwoInFour;
    else throw UsageError("unknown --kind '" + o.kind + "'");
    const int width = lpq::clause_width(f.kind);
    if (o.variables < width) throw UsageError("--variables must be at least the clause width");
    f.variable_count = o.variables;
    std::vector<int> vars(o.variables);
    std::iota(vars.begin(), vars.end(), 0);
    for (int j = 0; j < o.clauses; ++j) {
      std::shuffle(vars.begin(), vars.end(), rng);
      std::vector<int> c(vars.begin(), vars.begin() + width);
      std::sort(c.begin(), c.end());
      f.clauses.push_back(c);
    }
    lpq::write_cnf(s, f);
  }
  write_out(o, s.str());
  return kYes;
}

int cmd_verify(const Options& o) {
  const std::uint64_t budget = o.budget_nodes.value_or(lpq::kDefaultNodeBudget);
  std::vector<lpq::LemmaReport> reports;
  if (!o.id.empty()) {
    reports.push_back(lpq::verify(o.id, budget));
  } else {
    std::optional<lpq::Regime> filter;
    if (!o.regime.empty()) filter = lpq::parse_regime(o.regime);
    reports = lpq::verify_all(filter, budget);
  }
  bool failed = false, unknown = false;
  for (const auto& r : reports) {
    // timings go to stderr so stdout stays the same between runs
    std::cout << r.summary(false) << '\n';
    std::cerr << r.id << ": " << r.elapsed.count() << " ms\n";
    for (const auto& line : r.lines) std::cout << "  " << line << '\n';
    if (!r.detail.empty()) std::cout << "  " << r.detail << '\n';
    failed = failed || r.verdict == lpq::Verdict::kFail;
    unknown = unknown || r.verdict == lpq::Verdict::kUnknown;
    if (r.counterexample && !o.counterexamples.empty()) {
      std::filesystem::create_directories(o.counterexamples);
      const auto base = std::filesystem::path(o.counterexamples) / r.id;
      std::ofstream g(base.string() + ".col"), l(base.string() + ".json");
      lpq::io::write_graph(g, r.counterexample->graph);
      lpq::io::write_labelling(l, r.counterexample->graph, r.counterexample->params, r.counterexample->labelling);
    }
  }
  return failed ? kNo : unknown ? kBudget : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L(p,q)-edge-labelling toolkit"};
  app.require_subcommand(1);
  Options o;

  auto params = [&](CLI::App* c, bool with_k = true) {
    c->add_option("-p", o.p, "adjacent separation");
    c->add_option("-q", o.q, "mid-link separation");
    if (with_k) c->add_option("-k", o.k, "number of labels");
  };
  auto budget = [&](CLI::App* c) {
    c->add_option("--budget-nodes", o.budget_nodes, "search node limit");
    c->add_option("--budget-ms", o.budget_ms, "wall-clock limit in milliseconds");
  };
  auto graph = [&](CLI::App* c) { c->add_option("--graph", o.graph, "graph file, - for stdin")->required(); };
  auto fix = [&](CLI::App* c) { c->add_option("--fix", o.fix, "fix an edge: u,v=label (repeatable)"); };
  auto out = [&](CLI::App* c) { c->add_option("-o,--out", o.out, "output file (default stdout)"); };

  auto* check = app.add_subcommand("check", "validate a labelling");
  graph(check);
  params(check);
  check->add_option("--labelling", o.labelling, "labelling file, - for stdin")->required();

  auto* solve = app.add_subcommand("solve", "find a labelling");
  graph(solve);
  params(solve);
  fix(solve);
  budget(solve);
  out(solve);

  auto* enumerate = app.add_subcommand("enumerate", "list labellings in lexicographic order");
  graph(enumerate);
  params(enumerate);
  fix(enumerate);
  budget(enumerate);
  out(enumerate);
  enumerate->add_option("--limit", o.limit, "stop after this many");

  auto* project = app.add_subcommand("project", "labels each target edge takes over all completions");
  graph(project);
  params(project);
  fix(project);
  budget(project);
  project->add_option("--target", o.targets, "target edge u,v (repeatable)")->required();

  auto* mink = app.add_subcommand("min-k", "smallest k admitting a labelling");
  graph(mink);
  params(mink, false);
  budget(mink);
  out(mink);
  mink->add_option("--k-max", o.k_max, "largest k to try");

  auto* reduce = app.add_subcommand("reduce", "build the labelling instance for a source instance");
  params(reduce);
  out(reduce);
  reduce->add_option("--source", o.source, "graph or formula file, - for stdin")->required();

  auto* back = app.add_subcommand("back-map", "read a source certificate off a labelling");
  params(back);
  back->add_option("--source", o.source, "graph or formula file")->required();
  back->add_option("--labelling", o.labelling, "labelling of the reduced instance")->required();

  auto* gen = app.add_subcommand("gen", "random source instance");
  gen->add_option("--kind", o.kind, "graph | nae3 | 1in3 | 2in4");
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--vertices", o.vertices, "vertex count (graph)");
  gen->add_option("--edge-prob", o.edge_prob, "edge probability (graph)");
  gen->add_option("--variables", o.variables, "variable count (formula)");
  gen->add_option("--clauses", o.clauses, "clause count (formula)");
  out(gen);

  auto* verify = app.add_subcommand("verify-lemmas", "run the lemma registry");
  verify->add_option("--regime", o.regime, "only checks of this regime (name or short name)");
  verify->add_option("--id", o.id, "a single check");
  verify->add_option("--budget-nodes", o.budget_nodes, "node budget per check");
  verify->add_option("--counterexamples", o.counterexamples, "directory for counterexample files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(o);
    if (*solve) return cmd_solve(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*project) return cmd_project(o);
    if (*mink) return cmd_min_k(o);
    if (*reduce) return cmd_reduce(o);
    if (*back) return cmd_back_map(o);
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
  } catch (const lpq::InfeasiblePrefix& e) {
    std::cerr << "lpq: " << e.what() << '\n';
    std::cout << "no\n";
    return kNo;
  } catch (const lpq::Error& e) {
    std::cerr << "lpq: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
