#pragma once

// Source problems, their brute-force oracles, and the compilers that turn a
// source instance into an L(p,q)-edge-k-labelling instance with certificate
// translation in both directions.
//
// CNF-variant format:
//   c <comment>
//   p <nae3|1in3|2in4> <variables> <clauses>
//   <v1> <v2> <v3> [<v4>] [0]      one clause per line, 1-based, positive

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lpq/core.hpp"
#include "lpq/gadgets.hpp"
#include "lpq/io.hpp"
#include "lpq/solver.hpp"

namespace lpq {

struct ColInstance {
  Graph graph;
};

/// Edge-3-colouring source: the graph whose edges are to be 3-coloured.
struct EdgeColInstance {
  Graph graph;
};

enum class CnfKind { kNae3, kOneInThree, kTwoInFour };

inline const char* cnf_kind_name(CnfKind k) {
  switch (k) {
    case CnfKind::kNae3: return "nae3";
    case CnfKind::kOneInThree: return "1in3";
    case CnfKind::kTwoInFour: return "2in4";
  }
  return "?";
}

inline int clause_width(CnfKind k) { return k == CnfKind::kTwoInFour ? 4 : 3; }

struct CnfInstance {
  CnfKind kind = CnfKind::kNae3;
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;  // 0-based variable indices
};

using SourceInstance = std::variant<ColInstance, EdgeColInstance, CnfInstance>;

/// Truth values (0/1) per variable, colours (0..2) per vertex, or colours
/// per edge, depending on the source.
using Certificate = std::vector<int>;

inline SourceKind source_kind(const SourceInstance& s) {
  if (std::holds_alternative<ColInstance>(s)) return SourceKind::kThreeCol;
  if (std::holds_alternative<EdgeColInstance>(s)) return SourceKind::kEdgeThreeCol;
  switch (std::get<CnfInstance>(s).kind) {
    case CnfKind::kNae3: return SourceKind::kNae3;
    case CnfKind::kOneInThree: return SourceKind::kOneInThree;
    case CnfKind::kTwoInFour: return SourceKind::kTwoInFour;
  }
  return SourceKind::kNae3;
}

inline void validate(const CnfInstance& f) {
  if (f.variable_count < 1) throw Error("formula needs at least one variable");
  const std::size_t width = clause_width(f.kind);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& c = f.clauses[j];
    const std::string where = "clause " + std::to_string(j + 1) + ": ";
    if (c.size() != width) throw Error(where + "expected " + std::to_string(width) + " variables");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= f.variable_count) throw Error(where + "variable index out of range");
      for (std::size_t t = 0; t < i; ++t)
        if (c[t] == c[i]) throw Error(where + "repeated variable " + std::to_string(c[i] + 1));
    }
  }
}

inline CnfInstance read_cnf(std::istream& in) {
  CnfInstance f;
  bool header = false;
  long long declared = 0;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto t = io::detail::tokens(line);
    if (t.empty() || t[0] == "c") continue;
    if (t[0] == "p") {
      if (header) throw io::ParseError(line_no, "duplicate header");
      if (t.size() != 4) throw io::ParseError(line_no, "expected 'p <nae3|1in3|2in4> <variables> <clauses>'");
      if (t[1] == "nae3") f.kind = CnfKind::kNae3;
      else if (t[1] == "1in3") f.kind = CnfKind::kOneInThree;
      else if (t[1] == "2in4") f.kind = CnfKind::kTwoInFour;
      else throw io::ParseError(line_no, "unknown formula kind '" + t[1] + "'");
      const long long n = io::detail::to_int(t[2], line_no);
      declared = io::detail::to_int(t[3], line_no);
      if (n < 1 || declared < 0) throw io::ParseError(line_no, "bad counts in header");
      f.variable_count = static_cast<int>(n);
      header = true;
      continue;
    }
    if (!header) throw io::ParseError(line_no, "clause before header");
    std::vector<int> clause;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const long long v = io::detail::to_int(t[i], line_no);
      if (v == 0 && i + 1 == t.size()) break;  // optional terminator
      if (v < 1) throw io::ParseError(line_no, "literals must be positive variable indices");
      if (v > f.variable_count) throw io::ParseError(line_no, "variable index " + t[i] + " out of range");
      clause.push_back(static_cast<int>(v - 1));
    }
    if (static_cast<int>(clause.size()) != clause_width(f.kind))
      throw io::ParseError(line_no, "expected " + std::to_string(clause_width(f.kind)) + " variables per clause");
    for (std::size_t i = 0; i < clause.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (clause[i] == clause[j])
          throw io::ParseError(line_no, "repeated variable " + std::to_string(clause[i] + 1) + " in clause");
    f.clauses.push_back(clause);
  }
  if (!header) throw io::ParseError(0, "missing 'p' header");
  if (declared != static_cast<long long>(f.clauses.size()))
    throw io::ParseError(line_no, "header declares " + std::to_string(declared) + " clauses, found " +
                                      std::to_string(f.clauses.size()));
  return f;
}

inline CnfInstance parse_cnf(const std::string& text) {
  std::istringstream in(text);
  return read_cnf(in);
}

inline ColInstance parse_col(const std::string& text) { return ColInstance{io::parse_graph(text)}; }

inline void write_cnf(std::ostream& out, const CnfInstance& f) {
  out << "p " << cnf_kind_name(f.kind) << ' ' << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i] + 1;
    out << '\n';
  }
}

inline bool clause_satisfied(CnfKind kind, const std::vector<int>& clause, const Certificate& values) {
  int trues = 0;
  for (int v : clause) trues += values[v] ? 1 : 0;
  const int n = static_cast<int>(clause.size());
  switch (kind) {
    case CnfKind::kNae3: return trues > 0 && trues < n;
    case CnfKind::kOneInThree: return trues == 1;
    case CnfKind::kTwoInFour: return trues == 2;
  }
  return false;
}

inline bool satisfies(const SourceInstance& source, const Certificate& cert) {
  if (const auto* col = std::get_if<ColInstance>(&source)) {
    if (static_cast<int>(cert.size()) != col->graph.vertex_count()) return false;
    for (int c : cert)
      if (c < 0 || c > 2) return false;
    for (const Edge& e : col->graph.edges())
      if (cert[e.u] == cert[e.v]) return false;
    return true;
  }
  if (const auto* ec = std::get_if<EdgeColInstance>(&source)) {
    const Graph& g = ec->graph;
    if (static_cast<int>(cert.size()) != g.edge_count()) return false;
    for (int c : cert)
      if (c < 0 || c > 2) return false;
    for (auto [e, f] : adjacent_pairs(g))
      if (cert[e] == cert[f]) return false;
    return true;
  }
  const auto& f = std::get<CnfInstance>(source);
  if (static_cast<int>(cert.size()) != f.variable_count) return false;
  for (int v : cert)
    if (v != 0 && v != 1) return false;
  for (const auto& c : f.clauses)
    if (!clause_satisfied(f.kind, c, cert)) return false;
  return true;
}

namespace detail {

inline constexpr int kOracleLimit = 20;

// First proper 3-colouring of the units 0..n-1 in lexicographic order, where
// conflicts[i] lists earlier units that must differ from unit i.
inline std::optional<Certificate> three_colour(int n, const std::vector<std::vector<int>>& conflicts) {
  Certificate c(n, -1);
  int i = 0;
  while (i >= 0) {
    if (i == n) return c;
    ++c[i];
    if (c[i] > 2) {
      c[i] = -1;
      --i;
      continue;
    }
    bool ok = true;
    for (int j : conflicts[i])
      if (c[j] == c[i]) ok = false;
    if (ok) ++i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Exhaustive oracle; returns the lexicographically first certificate.
inline std::optional<Certificate> brute_source(const SourceInstance& source) {
  if (const auto* col = std::get_if<ColInstance>(&source)) {
    const Graph& g = col->graph;
    if (g.vertex_count() > detail::kOracleLimit) throw Error("too large for oracle");
    std::vector<std::vector<int>> conflicts(g.vertex_count());
    for (const Edge& e : g.edges()) conflicts[e.v].push_back(e.u);
    return detail::three_colour(g.vertex_count(), conflicts);
  }
  if (const auto* ec = std::get_if<EdgeColInstance>(&source)) {
    const Graph& g = ec->graph;
    if (g.vertex_count() > detail::kOracleLimit) throw Error("too large for oracle");
    std::vector<std::vector<int>> conflicts(g.edge_count());
    for (auto [e, f] : adjacent_pairs(g)) conflicts[f].push_back(e);
    return detail::three_colour(g.edge_count(), conflicts);
  }
  const auto& f = std::get<CnfInstance>(source);
  if (f.variable_count > detail::kOracleLimit) throw Error("too large for oracle");
  Certificate values(f.variable_count);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << f.variable_count); ++mask) {
    // variable 0 is the most significant bit so the scan is lexicographic
    for (int v = 0; v < f.variable_count; ++v) values[v] = (mask >> (f.variable_count - 1 - v)) & 1u;
    if (satisfies(source, values)) return values;
  }
  return std::nullopt;
}

struct ReducedInstance {
  Graph graph;
  Params params;
  RegimeSpec regime;
  SourceInstance source;
  // (variable, occurrence) -> port edge consumed by that occurrence
  std::map<std::pair<int, int>, EdgeIndex> var_ports;
  // (variable, occurrence) -> edge whose label encodes the variable's value
  std::map<std::pair<int, int>, EdgeIndex> decode_edges;
  // clause -> the vertices where its literals meet the variable gadgets
  std::map<int, std::vector<Vertex>> clause_hubs;
  // clause -> edges the clause gadget contributes, literal by literal
  std::map<int, std::vector<EdgeIndex>> clause_edges;

  /// Edges where gadgets meet; a good place for the search to start.
  std::vector<EdgeIndex> interface_edges() const {
    std::set<EdgeIndex> out;
    for (const auto& [key, e] : var_ports) out.insert(e);
    for (const auto& [key, e] : decode_edges) out.insert(e);
    for (const auto& [j, edges] : clause_edges) out.insert(edges.begin(), edges.end());
    return {out.begin(), out.end()};
  }

  std::map<std::string, EdgeIndex> port_manifest() const {
    std::map<std::string, EdgeIndex> out;
    for (const auto& [key, e] : var_ports)
      out["x" + std::to_string(key.first + 1) + "." + std::to_string(key.second)] = e;
    return out;
  }
};

namespace detail {

// Variables (or vertices) and the clauses (or edges) over them.
inline std::pair<int, std::vector<std::vector<int>>> clause_view(const SourceInstance& source) {
  if (const auto* col = std::get_if<ColInstance>(&source)) {
    std::vector<std::vector<int>> clauses;
    for (const Edge& e : col->graph.edges()) clauses.push_back({e.u, e.v});
    return {col->graph.vertex_count(), clauses};
  }
  const auto& f = std::get<CnfInstance>(source);
  return {f.variable_count, f.clauses};
}

inline std::string var_name(int v) { return "x" + std::to_string(v) + "."; }
inline std::string clause_name(int j) { return "c" + std::to_string(j) + "."; }

}  // namespace detail

/// Builds the reduced instance. Each variable gets one gadget sized to its
/// occurrence count; ports are handed to literals in clause order.
inline ReducedInstance reduce(const SourceInstance& source, const RegimeSpec& spec) {
  require_constructible(spec);
  if (source_kind(source) != spec.source())
    throw Error(std::string("regime ") + regime_name(spec.regime) + " reduces from " + source_name(spec.source()) +
                ", not from " + source_name(source_kind(source)));
  if (const auto* f = std::get_if<CnfInstance>(&source)) validate(*f);

  ReducedInstance red;
  red.params = spec.params();
  red.regime = spec;
  red.source = source;

  if (const auto* ec = std::get_if<EdgeColInstance>(&source)) {
    red.graph = ec->graph;
    for (EdgeIndex e = 0; e < red.graph.edge_count(); ++e) {
      red.var_ports[{e, 0}] = e;
      red.decode_edges[{e, 0}] = e;
    }
    return red;
  }

  auto [n, clauses] = detail::clause_view(source);
  std::vector<int> occurrences(n, 0);
  std::vector<std::vector<int>> slot(clauses.size());
  for (std::size_t j = 0; j < clauses.size(); ++j)
    for (int v : clauses[j]) slot[j].push_back(occurrences[v]++);

  // templates are not needed here and would only slow the joins down
  auto bare = [](Gadget g) {
    g.templates.clear();
    return g;
  };
  Gadget all;
  all.params = spec.params();
  for (int v = 0; v < n; ++v)
    if (occurrences[v] > 0)
      all = disjoint_union(all, bare(variable_gadget(spec, occurrences[v])), "", detail::var_name(v));
  const Gadget clause = bare(clause_gadget(spec));
  for (std::size_t j = 0; j < clauses.size(); ++j)
    all = disjoint_union(all, clause, "", detail::clause_name(static_cast<int>(j)));

  const AttachMode mode = spec.regime == Regime::kPZeroQ ? AttachMode::kIdentifyLeaf : AttachMode::kHubUnion;
  for (std::size_t j = 0; j < clauses.size(); ++j)
    for (std::size_t t = 0; t < clauses[j].size(); ++t) {
      const int v = clauses[j][t];
      all = join(all, detail::var_name(v) + detail::indexed("var", slot[j][t]),
                 detail::clause_name(static_cast<int>(j)) + detail::indexed("lit", static_cast<int>(t)), mode);
    }

  red.graph = all.graph;
  for (int v = 0; v < n; ++v)
    for (int o = 0; o < occurrences[v]; ++o) {
      const std::string prefix = detail::var_name(v);
      red.var_ports[{v, o}] = all.port(prefix + detail::indexed("var", o));
      red.decode_edges[{v, o}] = spec.regime == Regime::kHalfToTwoThirds
                                     ? all.port(prefix + detail::indexed("vertical", 2 * o))
                                     : red.var_ports[{v, o}];
    }
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    const int cj = static_cast<int>(j);
    const std::string prefix = detail::clause_name(cj);
    for (std::size_t t = 0; t < clauses[j].size(); ++t) {
      const std::string lit = prefix + detail::indexed("lit", static_cast<int>(t));
      if (all.hubs.count(lit)) red.clause_hubs[cj].push_back(all.hubs.at(lit));
      else red.clause_hubs[cj].push_back(all.leaves.at(lit));
      if (spec.regime == Regime::kHalfToTwoThirds)
        for (int s = 0; s < 4; ++s)
          red.clause_edges[cj].push_back(
              all.port(prefix + detail::indexed("path", static_cast<int>(t)) + detail::indexed("", s)));
    }
  }
  return red;
}

namespace detail {

// Labels (in gcd-reduced units) that the forward direction puts on each
// literal's port, plus any further fixed edges.
inline EdgeLabelling forward_prefix(const ReducedInstance& red, const Certificate& cert) {
  const RegimeSpec& s = red.regime;
  const int a = s.a, b = s.b;
  EdgeLabelling fixed(red.graph.edge_count());
  auto [n, clauses] = clause_view(red.source);
  std::vector<int> seen(n, 0);
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    const auto& c = clauses[j];
    int trues = 0, falses = 0;
    for (std::size_t t = 0; t < c.size(); ++t) {
      const int v = c[t];
      const int value = cert[v];
      const EdgeIndex port = red.var_ports.at({v, seen[v]++});
      Label l = 0;
      switch (s.regime) {
        case Regime::kPZeroQ: l = value; break;
        case Regime::kTwoThirdsTo1: l = value * a + b; break;
        case Regime::kBeyond2:
        case Regime::kOneTo2: {
          const int top = s.k / s.scale - 1;
          const bool two_true = std::count_if(c.begin(), c.end(), [&](int x) { return cert[x] != 0; }) == 2;
          if (value) l = two_true ? (trues == 0 ? 0 : a) : 0;
          else l = two_true ? top : (falses == 0 ? top - a : top);
          break;
        }
        case Regime::kEqTwoThirds: l = value ? 5 : (falses == 0 ? 2 : 9); break;
        case Regime::kHalfToTwoThirds: {
          const std::array<std::array<Label, 4>, 4> rows{{
              {0, 3 * b + a, b, 2 * b + a},
              {2 * b, 3 * b + a, b, 2 * b + a},
              {2 * b + a, b, 3 * b + a, 2 * b},
              {4 * b + a, b, 3 * b + a, 2 * b},
          }};
          const int row = value ? trues : 2 + falses;
          const auto& path = red.clause_edges.at(static_cast<int>(j));
          for (int e = 0; e < 4; ++e) fixed.set(path[4 * t + e], rows[row][e]);
          break;
        }
        default: break;
      }
      if (value) ++trues;
      else ++falses;
      if (s.regime != Regime::kHalfToTwoThirds) fixed.set(port, l);
    }
  }
  if (s.regime == Regime::kHalfToTwoThirds)
    for (const auto& [key, e] : red.decode_edges) fixed.set(e, cert[key.first] ? 0 : 4 * b + a);
  return fixed;
}

}  // namespace detail

/// Constructive direction: a labelling of the reduced instance built from a
/// source certificate. Ports (and for 2-in-4 the verticals and clause paths)
/// are fixed as the forward proofs prescribe; the rest of each gadget is
/// completed by the solver, gadget by gadget.
inline EdgeLabelling forward_label(const ReducedInstance& red, const Certificate& cert,
                                   const SearchBudget& budget = {}) {
  if (!satisfies(red.source, cert)) throw Error("not a certificate");
  const RegimeSpec& s = red.regime;
  if (s.regime == Regime::kQZeroP) {
    EdgeLabelling c(red.graph.edge_count());
    for (EdgeIndex e = 0; e < red.graph.edge_count(); ++e) c.set(e, cert[e] * s.p);
    return c;
  }
  const EdgeLabelling fixed = detail::forward_prefix(red, cert);
  Decision d = decide(red.graph, s.base_params(), fixed, budget);
  if (d.outcome == Outcome::kUnknown) throw Error("forward labelling: budget exhausted");
  if (d.outcome == Outcome::kNo) throw Error("forward labelling: gadgets cannot be completed (construction bug)");
  return scaled(*d.labelling, s.scale);
}

/// Reads the source certificate off a valid labelling of the reduced
/// instance.
inline Certificate back_map(const ReducedInstance& red, const EdgeLabelling& labelling) {
  if (labelling.size() != red.graph.edge_count() || !labelling.is_total()) throw Error("not a labelling: incomplete");
  for (EdgeIndex e = 0; e < labelling.size(); ++e)
    if (labelling[e] < 0 || labelling[e] >= red.params.k) throw Error("not a labelling: label out of range");
  if (!is_valid(red.graph, red.params, labelling)) throw Error("not a labelling: constraints violated");
  const RegimeSpec& s = red.regime;
  const int a = s.a, b = s.b, top = s.k / s.scale - 1;
  auto base = [&](EdgeIndex e) { return labelling[e] / s.scale; };

  if (const auto* ec = std::get_if<EdgeColInstance>(&red.source)) {
    Certificate c(ec->graph.edge_count());
    for (EdgeIndex e = 0; e < ec->graph.edge_count(); ++e) c[e] = base(e);
    return c;
  }

  auto decode = [&](Label l) -> int {
    switch (s.regime) {
      case Regime::kPZeroQ: return l;
      case Regime::kBeyond2:
      case Regime::kOneTo2: {
        if (l <= a) return 1;
        if (l >= top - a) return 0;
        return -1;
      }
      case Regime::kTwoThirdsTo1:
        for (int c = 0; c < 3; ++c)
          if (l >= c * a + b && l <= (c + 1) * a) return c;
        return -1;
      case Regime::kEqTwoThirds:
        if (l == 5 || l == 6) return 1;
        if (l == 2 || l == 3 || l == 8 || l == 9) return 0;
        return -1;
      case Regime::kHalfToTwoThirds:
        if (l == 0) return 1;
        if (l == 4 * b + a) return 0;
        return -1;
      default: return -1;
    }
  };

  auto [n, clauses] = detail::clause_view(red.source);
  Certificate cert(n, 0);
  std::vector<bool> known(n, false);
  for (const auto& [key, e] : red.decode_edges) {
    const int value = decode(base(e));
    if (value < 0)
      throw Error("decoding failure: variable " + std::to_string(key.first + 1) + " reads label " +
                  std::to_string(labelling[e]) + " outside every regime");
    if (known[key.first] && cert[key.first] != value)
      throw Error("decoding failure: variable " + std::to_string(key.first + 1) + " reads two different values");
    cert[key.first] = value;
    known[key.first] = true;
  }
  if (!satisfies(red.source, cert)) throw Error("decoding failure: decoded certificate does not satisfy the source");
  return cert;
}

}  // namespace lpq
