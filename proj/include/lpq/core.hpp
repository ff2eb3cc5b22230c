#pragma once

// Graphs, parameters and the exact constraint semantics of
// L(p,q)-edge-labelling.
//
// Two distinct edges are *adjacent* when they share an end-vertex and
// *mid-linked* when some third edge joins an endpoint of one to an endpoint
// of the other (a walk e1, f, e2 of three pairwise distinct edges). Every
// pair of triangle edges is both. Adjacent pairs must differ by at least p,
// mid-linked pairs by at least q, and pairs that are both by max(p, q).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpq {

using Label = int;
using EdgeIndex = int;
using Vertex = int;

inline constexpr Label kUnassigned = -1;

/// Base class of every error the library raises on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the solver when the fixed part of a labelling already violates
/// a constraint.
class InfeasiblePrefix : public Error {
 public:
  InfeasiblePrefix() : Error("infeasible prefix") {}
};

struct Edge {
  Vertex u = 0;  // smaller endpoint
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgePair = std::pair<EdgeIndex, EdgeIndex>;  // first < second

/// Simple undirected graph with a stable edge order.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges)
      : vertex_count_(vertex_count), incident_(vertex_count < 0 ? 0 : vertex_count) {
    if (vertex_count < 0) throw Error("negative vertex count");
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) add_edge(a, b);
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<EdgeIndex>& incident(Vertex v) const { return incident_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(incident_.at(v).size()); }

  std::optional<EdgeIndex> find_edge(Vertex a, Vertex b) const {
    auto it = index_.find(canonical(a, b));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool shares_vertex(EdgeIndex e, EdgeIndex f) const {
    const Edge& x = edges_[e];
    const Edge& y = edges_[f];
    return x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v;
  }

  /// Appends an edge and returns its index.
  EdgeIndex add_edge(Vertex a, Vertex b) {
    if (a == b) throw Error("self-loop at vertex " + std::to_string(a));
    if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_)
      throw Error("edge endpoint out of range: (" + std::to_string(a) + "," + std::to_string(b) + ")");
    Edge e = canonical(a, b);
    if (index_.count(e))
      throw Error("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    const EdgeIndex id = edge_count();
    edges_.push_back(e);
    index_.emplace(e, id);
    incident_[e.u].push_back(id);
    incident_[e.v].push_back(id);
    return id;
  }

  Vertex add_vertex() {
    incident_.emplace_back();
    return vertex_count_++;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  static Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::map<Edge, EdgeIndex> index_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

/// The triple (p, q, k): adjacent separation, mid-link separation, label count.
struct Params {
  int p = 0;
  int q = 0;
  int k = 1;

  Params() = default;
  Params(int p_, int q_, int k_) : p(p_), q(q_), k(k_) {
    if (p < 0 || q < 0) throw Error("separations must be non-negative");
    if (k < 1) throw Error("label count k must be positive");
  }

  friend bool operator==(const Params&, const Params&) = default;
};

/// Partial or total assignment of labels to edge indices.
class EdgeLabelling {
 public:
  EdgeLabelling() = default;
  explicit EdgeLabelling(int edge_count) : labels_(edge_count, kUnassigned) {}
  explicit EdgeLabelling(std::vector<Label> labels) : labels_(std::move(labels)) {}

  int size() const { return static_cast<int>(labels_.size()); }
  bool assigned(EdgeIndex e) const { return labels_.at(e) != kUnassigned; }
  Label operator[](EdgeIndex e) const { return labels_.at(e); }
  Label get(EdgeIndex e) const { return labels_.at(e); }
  void set(EdgeIndex e, Label l) { labels_.at(e) = l; }
  void clear(EdgeIndex e) { labels_.at(e) = kUnassigned; }

  int assigned_count() const {
    return static_cast<int>(std::count_if(labels_.begin(), labels_.end(), [](Label l) { return l != kUnassigned; }));
  }
  bool is_total() const { return assigned_count() == size(); }
  const std::vector<Label>& labels() const { return labels_; }

  friend bool operator==(const EdgeLabelling&, const EdgeLabelling&) = default;
  friend auto operator<=>(const EdgeLabelling&, const EdgeLabelling&) = default;

 private:
  std::vector<Label> labels_;
};

enum class ViolationKind { kAdjacent, kMidLinked };

struct Violation {
  EdgeIndex first = 0;
  EdgeIndex second = 0;
  ViolationKind kind = ViolationKind::kAdjacent;
  int required = 0;
  int actual = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ConflictReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

inline std::vector<EdgePair> adjacent_pairs(const Graph& g) {
  std::vector<EdgePair> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        out.emplace_back(std::min(inc[i], inc[j]), std::max(inc[i], inc[j]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<EdgePair> midlinked_pairs(const Graph& g) {
  std::vector<EdgePair> out;
  for (EdgeIndex f = 0; f < g.edge_count(); ++f) {
    const Edge& mid = g.edge(f);
    for (EdgeIndex e1 : g.incident(mid.u)) {
      if (e1 == f) continue;
      for (EdgeIndex e2 : g.incident(mid.v)) {
        if (e2 == f || e2 == e1) continue;
        out.emplace_back(std::min(e1, e2), std::max(e1, e2));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Separation {
  EdgeIndex first = 0;
  EdgeIndex second = 0;
  int adjacent = 0;   // 0 when the edges are not adjacent
  int midlinked = 0;  // 0 when the edges are not mid-linked
  int required() const { return std::max(adjacent, midlinked); }
};

/// Every constrained pair with its separation requirements, sorted by pair.
/// Pairs whose requirement is zero are omitted.
inline std::vector<Separation> separations(const Graph& g, int p, int q) {
  std::map<EdgePair, Separation> acc;
  if (p > 0)
    for (auto pr : adjacent_pairs(g)) {
      auto& s = acc[pr];
      s.first = pr.first;
      s.second = pr.second;
      s.adjacent = p;
    }
  if (q > 0)
    for (auto pr : midlinked_pairs(g)) {
      auto& s = acc[pr];
      s.first = pr.first;
      s.second = pr.second;
      s.midlinked = q;
    }
  std::vector<Separation> out;
  out.reserve(acc.size());
  for (auto& [pr, s] : acc) out.push_back(s);
  return out;
}

inline std::map<EdgePair, int> required_separation(const Graph& g, const Params& params) {
  std::map<EdgePair, int> out;
  for (const auto& s : separations(g, params.p, params.q)) out.emplace(EdgePair{s.first, s.second}, s.required());
  return out;
}

inline void require_in_range(const Graph& g, const Params& params, const EdgeLabelling& c) {
  if (c.size() != g.edge_count())
    throw Error("labelling has " + std::to_string(c.size()) + " entries, graph has " +
                std::to_string(g.edge_count()) + " edges");
  for (EdgeIndex e = 0; e < c.size(); ++e)
    if (c.assigned(e) && (c[e] < 0 || c[e] >= params.k))
      throw Error("label out of range: edge " + std::to_string(e) + " has label " + std::to_string(c[e]) +
                  " but k = " + std::to_string(params.k));
}

/// Lists every violated constraint among assigned edges; does not require a
/// total labelling.
inline ConflictReport check_partial(const Graph& g, const Params& params, const EdgeLabelling& c) {
  require_in_range(g, params, c);
  ConflictReport report;
  for (const auto& s : separations(g, params.p, params.q)) {
    if (!c.assigned(s.first) || !c.assigned(s.second)) continue;
    const int gap = std::abs(c[s.first] - c[s.second]);
    if (gap < s.adjacent)
      report.violations.push_back({s.first, s.second, ViolationKind::kAdjacent, s.adjacent, gap});
    if (gap < s.midlinked)
      report.violations.push_back({s.first, s.second, ViolationKind::kMidLinked, s.midlinked, gap});
  }
  return report;
}

inline ConflictReport check(const Graph& g, const Params& params, const EdgeLabelling& c) {
  require_in_range(g, params, c);
  if (!c.is_total()) throw Error("incomplete labelling");
  return check_partial(g, params, c);
}

inline bool is_valid(const Graph& g, const Params& params, const EdgeLabelling& c) {
  return check(g, params, c).ok();
}

inline EdgeLabelling inverted(const EdgeLabelling& c, int k) {
  EdgeLabelling out(c.size());
  for (EdgeIndex e = 0; e < c.size(); ++e)
    if (c.assigned(e)) out.set(e, k - 1 - c[e]);
  return out;
}

inline EdgeLabelling scaled(const EdgeLabelling& c, int factor) {
  EdgeLabelling out(c.size());
  for (EdgeIndex e = 0; e < c.size(); ++e)
    if (c.assigned(e)) out.set(e, c[e] * factor);
  return out;
}

// Small named graphs used throughout tests and lemma checks.
namespace graphs {

inline Graph path(int edges) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i < edges; ++i) es.emplace_back(i, i + 1);
  return Graph(edges + 1, es);
}

inline Graph star(int leaves) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph(leaves + 1, es);
}

inline Graph complete(int n) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

inline Graph triangle() { return complete(3); }

}  // namespace graphs

}  // namespace lpq
