#pragma once

// Regime table and the gadget graphs used by the hardness reductions.
//
// A Gadget is a graph with named port edges (whose free endpoint is recorded
// as the port's leaf), named hub vertices, and template labellings that are
// valid for the gadget's params. Gadgets are built at the gcd-reduced
// separations (a, b) and then scaled.
//
// Extended 4-stars in chains use slot order left, right, top, bottom. Chains
// are formed by letting the right pendant of one star be the left pendant of
// the next.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpq/core.hpp"
#include "lpq/solver.hpp"

namespace lpq {

enum class Regime {
  kQZeroP,
  kPZeroQ,
  kBeyond2,
  kOneTo2,
  kEq1,
  kTwoThirdsTo1,
  kEqTwoThirds,
  kHalfToTwoThirds,
  kUpToHalf,
};

struct RegimeName {
  Regime regime;
  const char* name;
  const char* short_name;
};

inline constexpr std::array<RegimeName, 9> kRegimeNames = {{
    {Regime::kQZeroP, "Q_ZERO_P", "q0"},
    {Regime::kPZeroQ, "P_ZERO_Q", "p0"},
    {Regime::kBeyond2, "BEYOND_2", "gt2"},
    {Regime::kOneTo2, "ONE_TO_2", "1to2"},
    {Regime::kEq1, "EQ_1", "eq1"},
    {Regime::kTwoThirdsTo1, "TWO_THIRDS_TO_1", "23to1"},
    {Regime::kEqTwoThirds, "EQ_TWO_THIRDS", "eq23"},
    {Regime::kHalfToTwoThirds, "HALF_TO_TWO_THIRDS", "half23"},
    {Regime::kUpToHalf, "UP_TO_HALF", "lehalf"},
}};

inline const char* regime_name(Regime r) {
  for (const auto& n : kRegimeNames)
    if (n.regime == r) return n.name;
  return "?";
}

inline const char* regime_short_name(Regime r) {
  for (const auto& n : kRegimeNames)
    if (n.regime == r) return n.short_name;
  return "?";
}

/// Accepts either the long or the short regime name, case-sensitively.
inline Regime parse_regime(const std::string& s) {
  for (const auto& n : kRegimeNames)
    if (s == n.name || s == n.short_name) return n.regime;
  throw Error("unknown regime '" + s + "'");
}

enum class SourceKind { kThreeCol, kEdgeThreeCol, kNae3, kOneInThree, kTwoInFour };

inline const char* source_name(SourceKind s) {
  switch (s) {
    case SourceKind::kThreeCol: return "3-COL";
    case SourceKind::kEdgeThreeCol: return "edge-3-colouring";
    case SourceKind::kNae3: return "monotone NAE-3-SAT";
    case SourceKind::kOneInThree: return "monotone 1-in-3-SAT";
    case SourceKind::kTwoInFour: return "monotone 2-in-4-SAT";
  }
  return "?";
}

struct RegimeSpec {
  int p = 0;
  int q = 0;
  Regime regime = Regime::kPZeroQ;
  int k = 1;
  std::optional<int> star_degree;
  int a = 0;      // p / gcd(p, q)
  int b = 0;      // q / gcd(p, q)
  int scale = 1;  // gcd(p, q)

  Params params() const { return Params(p, q, k); }
  Params base_params() const { return Params(a, b, k / scale); }

  bool constructible() const { return regime != Regime::kEq1 && regime != Regime::kUpToHalf; }

  SourceKind source() const {
    switch (regime) {
      case Regime::kQZeroP: return SourceKind::kEdgeThreeCol;
      case Regime::kPZeroQ:
      case Regime::kEq1:
      case Regime::kTwoThirdsTo1: return SourceKind::kThreeCol;
      case Regime::kBeyond2:
      case Regime::kOneTo2:
      case Regime::kUpToHalf: return SourceKind::kNae3;
      case Regime::kEqTwoThirds: return SourceKind::kOneInThree;
      case Regime::kHalfToTwoThirds: return SourceKind::kTwoInFour;
    }
    return SourceKind::kThreeCol;
  }
};

/// Classifies (p, q) after dividing by gcd(p, q). The label count is the
/// table value for the reduced pair, multiplied back by the gcd.
inline RegimeSpec dispatch(int p, int q) {
  if (p < 0 || q < 0) throw Error("separations must be non-negative");
  if (p == 0 && q == 0) throw Error("trivial instance family: p = q = 0");
  RegimeSpec s;
  s.p = p;
  s.q = q;
  s.scale = std::gcd(p, q);
  s.a = p / s.scale;
  s.b = q / s.scale;
  const int a = s.a, b = s.b;
  int base_k = 0;
  if (a == 0) {
    s.regime = Regime::kPZeroQ;
    base_k = 3;
  } else if (b == 0) {
    s.regime = Regime::kQZeroP;
    base_k = 3;
  } else if (b > 2 * a) {
    s.regime = Regime::kBeyond2;
    int n = 4;
    while ((n - 3) * a < b) ++n;
    s.star_degree = n;
    base_k = (n - 1) * a + b + 1;
  } else if (b > a) {
    s.regime = Regime::kOneTo2;
    base_k = 5 * a + 1;
  } else if (b == a) {
    s.regime = Regime::kEq1;
    base_k = 4 * a;
  } else if (3 * b > 2 * a) {
    s.regime = Regime::kTwoThirdsTo1;
    base_k = 3 * a + b + 1;
  } else if (3 * b == 2 * a) {
    s.regime = Regime::kEqTwoThirds;
    base_k = 4 * a;
  } else if (2 * b > a) {
    s.regime = Regime::kHalfToTwoThirds;
    base_k = a + 4 * b + 1;
  } else {
    s.regime = Regime::kUpToHalf;
    base_k = 3 * a + 1;
  }
  s.k = base_k * s.scale;
  return s;
}

inline void require_constructible(const RegimeSpec& spec) {
  if (spec.regime == Regime::kEq1)
    throw Error("regime not constructible: no gadget family is available for q/p = 1");
  if (spec.regime == Regime::kUpToHalf)
    throw Error("regime not constructible: no gadget family is available for 0 < q/p <= 1/2");
}

struct Gadget {
  Graph graph;
  Params params;
  std::map<std::string, EdgeIndex> ports;
  std::map<std::string, Vertex> leaves;  // free endpoint of each port edge
  std::map<std::string, Vertex> hubs;
  std::map<std::string, EdgeLabelling> templates;
  std::set<std::string> consumed;

  EdgeIndex port(const std::string& name) const {
    auto it = ports.find(name);
    if (it == ports.end()) throw Error("unknown port '" + name + "'");
    return it->second;
  }
  Vertex hub(const std::string& name) const {
    auto it = hubs.find(name);
    if (it == hubs.end()) throw Error("unknown hub '" + name + "'");
    return it->second;
  }
};

enum class AttachMode { kIdentifyLeaf, kHubUnion };

namespace detail {

inline std::string indexed(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

class Builder {
 public:
  explicit Builder(Params params) { g_.params = params; }

  Vertex vertex() { return g_.graph.add_vertex(); }
  EdgeIndex edge(Vertex u, Vertex v) { return g_.graph.add_edge(u, v); }
  void port(const std::string& name, EdgeIndex e, Vertex leaf) {
    g_.ports[name] = e;
    g_.leaves[name] = leaf;
  }
  void hub(const std::string& name, Vertex v) { g_.hubs[name] = v; }
  Gadget& gadget() { return g_; }
  Gadget take() { return std::move(g_); }

 private:
  Gadget g_;
};

/// Extended star built slot by slot. A slot may reuse an existing pendant
/// edge: its mid vertex and leaf are then given and no pendant is created.
struct Star {
  Vertex centre = 0;
  std::vector<Vertex> mid, leaf;
  std::vector<EdgeIndex> inner, pendant;
};

struct SharedPendant {
  Vertex mid;
  Vertex leaf;
  EdgeIndex pendant;
};

inline Star add_star(Builder& bld, int n, const std::map<int, SharedPendant>& shared = {}) {
  Star s;
  s.centre = bld.vertex();
  s.mid.resize(n);
  s.leaf.resize(n);
  s.inner.resize(n);
  s.pendant.resize(n);
  for (int i = 0; i < n; ++i) {
    auto it = shared.find(i);
    s.mid[i] = it != shared.end() ? it->second.mid : bld.vertex();
    s.inner[i] = bld.edge(s.centre, s.mid[i]);
  }
  for (int i = 0; i < n; ++i) {
    auto it = shared.find(i);
    if (it != shared.end()) {
      s.leaf[i] = it->second.leaf;
      s.pendant[i] = it->second.pendant;
    } else {
      s.leaf[i] = bld.vertex();
      s.pendant[i] = bld.edge(s.mid[i], s.leaf[i]);
    }
  }
  return s;
}

/// Chain of extended stars: slot 1 of star i is slot 0 of star i+1 (shared
/// pendant edge).
inline std::vector<Star> add_chain(Builder& bld, int n, int count) {
  std::vector<Star> chain;
  for (int i = 0; i < count; ++i) {
    std::map<int, SharedPendant> shared;
    if (i > 0) {
      const Star& prev = chain.back();
      shared[0] = {prev.leaf[1], prev.mid[1], prev.pendant[1]};
    }
    chain.push_back(add_star(bld, n, shared));
  }
  return chain;
}

struct StarLabels {
  std::vector<Label> inner, pendant;
};

inline void put(EdgeLabelling& c, const Star& s, const StarLabels& l) {
  for (std::size_t i = 0; i < s.inner.size(); ++i) {
    c.set(s.inner[i], l.inner[i]);
    c.set(s.pendant[i], l.pendant[i]);
  }
}

inline Gadget scaled_gadget(Gadget g, int d) {
  if (d == 1) return g;
  g.params = Params(g.params.p * d, g.params.q * d, g.params.k * d);
  for (auto& [name, c] : g.templates) c = scaled(c, d);
  return g;
}

/// Completes `partial` with the solver (deterministic).
inline std::optional<EdgeLabelling> complete(const Gadget& g, const EdgeLabelling& partial) {
  Decision d = decide(g.graph, g.params, partial, SearchBudget{std::uint64_t{10'000'000}, std::nullopt});
  return d.labelling;
}

inline void require_occurrences(int occurrences) {
  if (occurrences < 1) throw Error("a variable gadget needs at least one occurrence");
}

// Vertex identification with renumbering; merged parallel edges collapse to
// the first one. Templates that disagree on a merged edge are dropped.
inline Gadget merge_vertices(const Gadget& g, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  const int n = g.graph.vertex_count();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [x, y] : pairs) {
    Vertex rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (rx < ry) parent[ry] = rx;
    else parent[rx] = ry;
  }
  std::vector<Vertex> renum(n, -1);
  int next = 0;
  for (Vertex v = 0; v < n; ++v)
    if (find(v) == v) renum[v] = next++;
  auto map_v = [&](Vertex v) { return renum[find(v)]; };

  Gadget out;
  out.params = g.params;
  out.graph = Graph(next, {});
  std::vector<EdgeIndex> emap(g.graph.edge_count());
  for (EdgeIndex e = 0; e < g.graph.edge_count(); ++e) {
    Vertex u = map_v(g.graph.edge(e).u), v = map_v(g.graph.edge(e).v);
    if (u == v) throw Error("vertex identification would create a self-loop");
    auto existing = out.graph.find_edge(u, v);
    emap[e] = existing ? *existing : out.graph.add_edge(u, v);
  }
  for (const auto& [name, e] : g.ports) out.ports[name] = emap[e];
  for (const auto& [name, v] : g.leaves) out.leaves[name] = map_v(v);
  for (const auto& [name, v] : g.hubs) out.hubs[name] = map_v(v);
  out.consumed = g.consumed;
  for (const auto& [name, c] : g.templates) {
    EdgeLabelling m(out.graph.edge_count());
    bool ok = true;
    for (EdgeIndex e = 0; e < c.size() && ok; ++e) {
      if (!c.assigned(e)) continue;
      if (m.assigned(emap[e]) && m[emap[e]] != c[e]) ok = false;
      else m.set(emap[e], c[e]);
    }
    if (ok) out.templates[name] = m;
  }
  return out;
}

}  // namespace detail

/// K_{1,n} with every edge subdivided. Vertex 0 is the centre, 1..n the mid
/// vertices and n+1..2n the leaves; inner edges come first.
inline Gadget extended_star(int n, std::optional<RegimeSpec> spec = std::nullopt) {
  if (n < 2) throw Error("degenerate star: n must be at least 2");
  Params params = spec ? spec->base_params() : Params(0, 0, 1);
  detail::Builder bld(params);
  detail::Star s = detail::add_star(bld, n);
  for (int i = 0; i < n; ++i) {
    bld.port(detail::indexed("inner", i), s.inner[i], s.mid[i]);
    bld.port(detail::indexed("pendant", i), s.pendant[i], s.leaf[i]);
  }
  Gadget g = bld.take();
  if (!spec) return g;
  const int a = spec->a, b = spec->b, top = spec->k / spec->scale - 1;
  auto add = [&](const std::string& name, std::vector<Label> inner, std::vector<Label> pendant) {
    if (static_cast<int>(inner.size()) != n) return;
    EdgeLabelling c(g.graph.edge_count());
    detail::put(c, s, {inner, pendant});
    g.templates[name] = c;
  };
  switch (spec->regime) {
    case Regime::kBeyond2: {
      // high regime: inner labels 0..(n-1)a, every pendant (n-1)a+b
      std::vector<Label> inner(n), pendant(n, top);
      for (int i = 0; i < n; ++i) inner[i] = i * a;
      add("high", inner, pendant);
      add("low", [&] { auto v = inner; for (auto& x : v) x = top - x; return v; }(), std::vector<Label>(n, 0));
      break;
    }
    case Regime::kOneTo2:
      if (n == 4) {
        add("high", {2 * a, 0, 3 * a, a}, {5 * a, 5 * a, 5 * a, 5 * a});
        add("low", {3 * a, 5 * a, 2 * a, 4 * a}, {0, 0, 0, 0});
      }
      break;
    case Regime::kTwoThirdsTo1:
      if (n == 4) add("colour0", {0, 2 * a + b, a + b, 3 * a + b}, {a, a, b, b});
      break;
    case Regime::kEqTwoThirds:
      if (n == 4) {
        add("false_a", {0, 11, 4, 7}, {9, 2, 9, 2});
        add("false_b", {7, 4, 11, 0}, {2, 9, 2, 9});
        add("true_a", {0, 3, 11, 8}, {5, 6, 6, 5});
        add("true_b", {0, 11, 3, 8}, {6, 5, 6, 5});
      }
      break;
    case Regime::kHalfToTwoThirds:
      if (n == 4) add("rigid", {0, 2 * b, 2 * b + a, 4 * b + a}, {3 * b + a, 3 * b + a, b, b});
      break;
    default:
      break;
  }
  return detail::scaled_gadget(std::move(g), spec->scale);
}

/// Variable gadget for the regime, with ports var[0..occurrences).
inline Gadget variable_gadget(const RegimeSpec& spec, int occurrences) {
  require_constructible(spec);
  detail::require_occurrences(occurrences);
  using detail::indexed;
  const int a = spec.a, b = spec.b;
  detail::Builder bld(spec.base_params());
  Gadget* g = &bld.gadget();
  auto fresh = [&] { return EdgeLabelling(g->graph.edge_count()); };

  switch (spec.regime) {
    case Regime::kQZeroP: {
      // the source graph itself is the instance; a single edge stands in
      Vertex u = bld.vertex(), v = bld.vertex();
      EdgeIndex e = bld.edge(u, v);
      for (int j = 0; j < occurrences; ++j) bld.port(indexed("var", j), e, v);
      for (int i = 0; i < 3; ++i) {
        EdgeLabelling c = fresh();
        c.set(e, i * a);
        g->templates["colour" + std::to_string(i)] = c;
      }
      break;
    }
    case Regime::kPZeroQ: {
      // star centre s, connector s-t0, triangle t0, l, r
      Vertex s = bld.vertex(), t0 = bld.vertex(), l = bld.vertex(), r = bld.vertex();
      EdgeIndex connector = bld.edge(s, t0);
      EdgeIndex tl = bld.edge(t0, l), tr = bld.edge(t0, r), lr = bld.edge(l, r);
      std::vector<EdgeIndex> pend;
      for (int j = 0; j < occurrences; ++j) {
        Vertex leaf = bld.vertex();
        pend.push_back(bld.edge(s, leaf));
        bld.port(indexed("var", j), pend.back(), leaf);
      }
      for (int i = 0; i < 3; ++i) {
        EdgeLabelling c = fresh();
        for (EdgeIndex e : pend) c.set(e, i);
        c.set(lr, i);
        c.set(connector, (i + 2) % 3);
        c.set(tl, (i + 1) % 3);
        c.set(tr, (i + 2) % 3);
        g->templates["colour" + std::to_string(i)] = c;
      }
      break;
    }
    case Regime::kBeyond2: {
      // slots: 0 chain-left, 1 chain-right, 2 top, 3.. spare
      const int n = *spec.star_degree;
      const int top = (n - 1) * a + b;
      auto chain = detail::add_chain(bld, n, occurrences);
      for (int j = 0; j < occurrences; ++j) bld.port(indexed("var", j), chain[j].pendant[2], chain[j].leaf[2]);
      std::vector<Label> inner(n);
      inner[0] = (n - 2) * a;
      inner[1] = 0;
      inner[2] = (n - 1) * a;
      for (int i = 3; i < n; ++i) inner[i] = (i - 2) * a;
      EdgeLabelling high = fresh();
      for (const auto& s : chain) detail::put(high, s, {inner, std::vector<Label>(n, top)});
      g->templates["high"] = high;
      g->templates["low"] = inverted(high, top + 1);
      break;
    }
    case Regime::kOneTo2: {
      // each star's bottom pendant is the extra edge of a 5-star forcer
      auto chain = detail::add_chain(bld, 4, occurrences);
      EdgeLabelling high(0);
      std::vector<std::vector<EdgeIndex>> forcers;
      for (int j = 0; j < occurrences; ++j) {
        const auto& s = chain[j];
        Vertex f = bld.vertex();
        std::vector<EdgeIndex> fe;
        fe.push_back(bld.edge(f, s.leaf[3]));
        for (int t = 0; t < 4; ++t) fe.push_back(bld.edge(f, bld.vertex()));
        forcers.push_back(fe);
        bld.port(indexed("var", j), s.pendant[2], s.leaf[2]);
        bld.port(indexed("force", j), s.pendant[3], s.leaf[3]);
      }
      high = fresh();
      for (int j = 0; j < occurrences; ++j) {
        detail::put(high, chain[j], {{2 * a, 0, 3 * a, a}, {5 * a, 5 * a, 5 * a, 5 * a}});
        const std::array<Label, 5> fl{4 * a, 0, a, 2 * a, 3 * a};
        for (int t = 0; t < 5; ++t) high.set(forcers[j][t], fl[t]);
      }
      g->templates["high"] = high;
      g->templates["low"] = inverted(high, 5 * a + 1);
      break;
    }
    case Regime::kTwoThirdsTo1: {
      auto chain = detail::add_chain(bld, 4, occurrences);
      for (int j = 0; j < occurrences; ++j) bld.port(indexed("var", j), chain[j].pendant[2], chain[j].leaf[2]);
      EdgeLabelling c0 = fresh();
      for (const auto& s : chain) detail::put(c0, s, {{0, 2 * a + b, a + b, 3 * a + b}, {a, a, b, b}});
      g->templates["colour0"] = c0;
      // the other two colour classes come from completing fixed ports
      for (int colour = 1; colour < 3; ++colour) {
        EdgeLabelling partial = fresh();
        for (const auto& s : chain) partial.set(s.pendant[2], colour * a + b);
        if (auto c = detail::complete(*g, partial)) g->templates["colour" + std::to_string(colour)] = *c;
      }
      break;
    }
    case Regime::kEqTwoThirds: {
      auto chain = detail::add_chain(bld, 4, occurrences);
      for (int j = 0; j < occurrences; ++j) bld.port(indexed("var", j), chain[j].pendant[2], chain[j].leaf[2]);
      EdgeLabelling f = fresh(), t = fresh();
      for (int j = 0; j < occurrences; ++j) {
        if (j % 2 == 0) {
          detail::put(f, chain[j], {{0, 11, 4, 7}, {9, 2, 9, 2}});
          detail::put(t, chain[j], {{0, 3, 11, 8}, {5, 6, 6, 5}});
        } else {
          detail::put(f, chain[j], {{7, 4, 11, 0}, {2, 9, 2, 9}});
          detail::put(t, chain[j], {{0, 11, 3, 8}, {6, 5, 6, 5}});
        }
      }
      g->templates["false"] = f;
      g->templates["true"] = t;
      break;
    }
    case Regime::kHalfToTwoThirds: {
      // end gadget: stars h0, h1 (slots up, left, right, down) sharing a
      // pendant, each closing a 5-cycle through an extra edge
      const int m = occurrences;
      auto end = [&] {
        std::vector<detail::Star> hs;
        hs.push_back(detail::add_star(bld, 4));
        hs.push_back(detail::add_star(bld, 4, {{1, {hs[0].leaf[2], hs[0].mid[2], hs[0].pendant[2]}}}));
        return hs;
      }();
      bld.edge(end[0].leaf[0], end[0].leaf[1]);
      bld.edge(end[1].leaf[0], end[1].leaf[2]);
      // basic part: 2m+1 rigid stars (slots ul, ur, ll, lr) joined by two
      // edges each, closing 10-cycles; a vertical edge hangs at every upper
      // left leaf after the first
      const int count = 2 * m + 1;
      std::vector<detail::Star> basic;
      std::vector<EdgeIndex> top_join, bottom_join, vertical;
      std::vector<Vertex> vertical_top;
      for (int s = 0; s < count; ++s) {
        basic.push_back(detail::add_star(bld, 4));
        if (s > 0) {
          top_join.push_back(bld.edge(basic[s - 1].leaf[1], basic[s].leaf[0]));
          bottom_join.push_back(bld.edge(basic[s - 1].leaf[3], basic[s].leaf[2]));
          Vertex v = bld.vertex();
          vertical.push_back(bld.edge(basic[s].leaf[0], v));
          vertical_top.push_back(v);
        }
      }
      // join the end gadget's bottom pendants to the basic part's left side
      bld.edge(end[0].leaf[3], basic[0].leaf[2]);
      bld.edge(end[1].leaf[3], basic[0].leaf[0]);
      for (int j = 0; j < m; ++j) {
        Vertex x = bld.vertex();
        EdgeIndex e0 = bld.edge(vertical_top[2 * j], x);
        bld.edge(vertical_top[2 * j + 1], x);
        bld.port(indexed("var", j), e0, x);
        bld.port(indexed("vertical", 2 * j), vertical[2 * j], vertical_top[2 * j]);
        bld.port(indexed("vertical", 2 * j + 1), vertical[2 * j + 1], vertical_top[2 * j + 1]);
      }
      const int top = a + 4 * b;
      EdgeLabelling t_partial = fresh();
      for (const auto& s : basic)
        detail::put(t_partial, s, {{2 * b, top, 0, 2 * b + a}, {3 * b + a, b, 3 * b + a, b}});
      for (EdgeIndex e : top_join) t_partial.set(e, 3 * b);
      for (EdgeIndex e : bottom_join) t_partial.set(e, b + a);
      for (EdgeIndex e : vertical) t_partial.set(e, 0);
      EdgeLabelling f_partial = inverted(t_partial, top + 1);
      if (auto c = detail::complete(*g, t_partial)) g->templates["true"] = *c;
      if (auto c = detail::complete(*g, f_partial)) g->templates["false"] = *c;
      break;
    }
    default:
      break;
  }
  return detail::scaled_gadget(bld.take(), spec.scale);
}

/// Clause gadget with hubs or ports lit[j].
inline Gadget clause_gadget(const RegimeSpec& spec) {
  require_constructible(spec);
  using detail::indexed;
  const int a = spec.a, b = spec.b;
  detail::Builder bld(spec.base_params());
  Gadget* g = &bld.gadget();
  switch (spec.regime) {
    case Regime::kQZeroP: {
      // edges of the source graph meet at shared vertices
      Vertex v = bld.vertex();
      bld.hub(indexed("lit", 0), v);
      bld.hub(indexed("lit", 1), v);
      break;
    }
    case Regime::kPZeroQ: {
      // triangle x, y, w with paths x-x1-x2 and y-y1-y2
      Vertex x = bld.vertex(), y = bld.vertex(), w = bld.vertex();
      Vertex x1 = bld.vertex(), x2 = bld.vertex(), y1 = bld.vertex(), y2 = bld.vertex();
      EdgeIndex xy = bld.edge(x, y), xw = bld.edge(x, w), yw = bld.edge(y, w);
      EdgeIndex xx1 = bld.edge(x, x1), yy1 = bld.edge(y, y1);
      EdgeIndex px = bld.edge(x1, x2), py = bld.edge(y1, y2);
      bld.port(indexed("lit", 0), px, x2);
      bld.port(indexed("lit", 1), py, y2);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          EdgeLabelling c(g->graph.edge_count());
          c.set(px, i);
          c.set(py, j);
          c.set(yw, i);
          c.set(xw, j);
          c.set(xy, 3 - i - j);
          c.set(xx1, (i + 1) % 3);
          c.set(yy1, (j + 1) % 3);
          g->templates["colours" + std::to_string(i) + std::to_string(j)] = c;
        }
      break;
    }
    case Regime::kBeyond2:
    case Regime::kOneTo2:
    case Regime::kEqTwoThirds: {
      Vertex h = bld.vertex();
      for (int j = 0; j < 3; ++j) bld.hub(indexed("lit", j), h);
      break;
    }
    case Regime::kTwoThirdsTo1: {
      Vertex h = bld.vertex();
      for (int j = 0; j < 2; ++j) bld.hub(indexed("lit", j), h);
      break;
    }
    case Regime::kHalfToTwoThirds: {
      // hub with four paths of length four; path ends meet protrusion tops
      Vertex h = bld.vertex();
      std::array<std::vector<EdgeIndex>, 4> paths;
      for (int j = 0; j < 4; ++j) {
        Vertex prev = h;
        for (int t = 0; t < 4; ++t) {
          Vertex v = bld.vertex();
          paths[j].push_back(bld.edge(prev, v));
          prev = v;
        }
        bld.hub(indexed("lit", j), prev);
        for (int t = 0; t < 4; ++t)
          bld.port(indexed("path", j) + indexed("", t), paths[j][t], bld.gadget().graph.edge(paths[j][t]).v);
      }
      EdgeLabelling c(g->graph.edge_count());
      const std::array<std::array<Label, 4>, 4> rows{{
          {0, 3 * b + a, b, 2 * b + a},
          {2 * b, 3 * b + a, b, 2 * b + a},
          {2 * b + a, b, 3 * b + a, 2 * b},
          {4 * b + a, b, 3 * b + a, 2 * b},
      }};
      for (int j = 0; j < 4; ++j)
        for (int t = 0; t < 4; ++t) c.set(paths[j][t], rows[j][t]);
      g->templates["true_true_false_false"] = c;
      break;
    }
    default:
      break;
  }
  return detail::scaled_gadget(bld.take(), spec.scale);
}

/// A clause together with the variable-side edge next to each port, as the
/// interface drawings show it: a hub with paths of length two. Templates hold
/// the drawn interface labellings.
inline Gadget clause_interface(const RegimeSpec& spec) {
  require_constructible(spec);
  const int a = spec.a, b = spec.b;
  const int width = spec.regime == Regime::kTwoThirdsTo1 ? 2 : 3;
  detail::Builder bld(spec.base_params());
  detail::Star s = detail::add_star(bld, width);
  for (int j = 0; j < width; ++j) {
    bld.port(detail::indexed("lit", j), s.inner[j], s.mid[j]);
    bld.port(detail::indexed("side", j), s.pendant[j], s.leaf[j]);
  }
  Gadget g = bld.take();
  auto add = [&](const std::string& name, std::vector<Label> ports, std::vector<Label> side) {
    EdgeLabelling c(g.graph.edge_count());
    detail::put(c, s, {ports, side});
    g.templates[name] = c;
  };
  switch (spec.regime) {
    case Regime::kBeyond2: {
      const int n = *spec.star_degree;
      add("true_true_false", {0, a, (n - 1) * a + b}, {b + a, b, (n - 1) * a});
      add("true_false_false", {0, (n - 2) * a + b, (n - 1) * a + b}, {a, (n - 1) * a, (n - 2) * a});
      break;
    }
    case Regime::kOneTo2:
      add("true_true_false", {0, a, 5 * a}, {3 * a, 2 * a, 3 * a});
      add("true_false_false", {0, 4 * a, 5 * a}, {2 * a, 3 * a, 2 * a});
      break;
    case Regime::kTwoThirdsTo1:
      add("colours01", {b, a + b}, {3 * a + b, 0});
      break;
    case Regime::kEqTwoThirds:
      add("false_true_false", {2, 5, 9}, {7, 0, 0});
      break;
    default:
      break;
  }
  return detail::scaled_gadget(std::move(g), spec.scale);
}

/// Disjoint union; names of each side get the given prefix.
inline Gadget disjoint_union(const Gadget& x, const Gadget& y, const std::string& prefix_x,
                             const std::string& prefix_y) {
  if (!(x.params == y.params)) throw Error("cannot combine gadgets built for different params");
  Gadget out;
  out.params = x.params;
  const int nx = x.graph.vertex_count();
  out.graph = Graph(nx + y.graph.vertex_count(), {});
  for (const Edge& e : x.graph.edges()) out.graph.add_edge(e.u, e.v);
  for (const Edge& e : y.graph.edges()) out.graph.add_edge(e.u + nx, e.v + nx);
  const int mx = x.graph.edge_count();
  for (const auto& [n, e] : x.ports) out.ports[prefix_x + n] = e;
  for (const auto& [n, e] : y.ports) out.ports[prefix_y + n] = e + mx;
  for (const auto& [n, v] : x.leaves) out.leaves[prefix_x + n] = v;
  for (const auto& [n, v] : y.leaves) out.leaves[prefix_y + n] = v + nx;
  for (const auto& [n, v] : x.hubs) out.hubs[prefix_x + n] = v;
  for (const auto& [n, v] : y.hubs) out.hubs[prefix_y + n] = v + nx;
  for (const auto& n : x.consumed) out.consumed.insert(prefix_x + n);
  for (const auto& n : y.consumed) out.consumed.insert(prefix_y + n);
  for (const auto& [n, c] : x.templates) {
    std::vector<Label> l = c.labels();
    l.resize(out.graph.edge_count(), kUnassigned);
    out.templates[prefix_x + n] = EdgeLabelling(l);
  }
  for (const auto& [n, c] : y.templates) {
    std::vector<Label> l(mx, kUnassigned);
    l.insert(l.end(), c.labels().begin(), c.labels().end());
    out.templates[prefix_y + n] = EdgeLabelling(l);
  }
  return out;
}

/// Joins two named attachment points of one gadget.
///   kIdentifyLeaf: both names are ports; the two port edges become one edge,
///     the leaf of each landing on the inner end of the other, so that the
///     neighbours on both sides form a path through the shared edge.
///   kHubUnion: `host_port` is a port, `guest_point` a hub; the port's leaf is
///     identified with the hub vertex.
inline Gadget join(const Gadget& g, const std::string& host_port, const std::string& guest_point, AttachMode mode) {
  if (host_port == guest_point) throw Error("cannot attach port '" + host_port + "' to itself");
  for (const auto& name : {host_port, guest_point})
    if (g.consumed.count(name)) throw Error("port reuse: '" + name + "' is already attached");
  const EdgeIndex he = g.port(host_port);
  const Vertex hleaf = g.leaves.at(host_port);
  const Edge& h = g.graph.edge(he);
  const Vertex hinner = h.u == hleaf ? h.v : h.u;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (mode == AttachMode::kIdentifyLeaf) {
    const EdgeIndex ge = g.port(guest_point);
    if (ge == he) throw Error("cannot attach a port edge to itself");
    const Vertex gleaf = g.leaves.at(guest_point);
    const Edge& x = g.graph.edge(ge);
    const Vertex ginner = x.u == gleaf ? x.v : x.u;
    pairs = {{gleaf, hinner}, {ginner, hleaf}};
  } else {
    pairs = {{hleaf, g.hub(guest_point)}};
  }
  Gadget out = detail::merge_vertices(g, pairs);
  out.consumed.insert(host_port);
  out.consumed.insert(guest_point);
  return out;
}

/// Attaches `guest` to `host`; guest names are prefixed with `guest_prefix`.
inline Gadget attach(const Gadget& host, const std::string& host_port, const Gadget& guest,
                     const std::string& guest_port, AttachMode mode, const std::string& guest_prefix = "guest.") {
  if (&host == &guest) throw Error("cannot attach a gadget to itself");
  Gadget u = disjoint_union(host, guest, "", guest_prefix);
  return join(u, host_port, guest_prefix + guest_port, mode);
}

}  // namespace lpq
