#pragma once

// Exact search for L(p,q)-edge-k-labellings.
//
// Every constraint has the form |c(e) - c(f)| >= s. A label x of f has a
// support in D(e) iff min D(e) <= x - s or max D(e) >= x + s, so arc
// consistency reduces to removing the interval
// [max D(e) - s + 1, min D(e) + s - 1] from D(f). The search maintains arc
// consistency after every branching step.
//
// Enumeration branches in edge-index order with ascending labels, so
// labellings come out in lexicographic order. Decision and projection
// branch on the edge with the fewest labels relative to its degree, where
// each constraint counts once plus once per wipe-out it has caused (the
// dom/wdeg rule). After every assignment they split the
// edges that still have several labels into components sharing no
// constraint, which are solved independently. Both orders are fixed, so
// every result is reproducible.

#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lpq/core.hpp"

namespace lpq {

/// Set of labels in [0, kMaxLabels).
class LabelSet {
 public:
  static constexpr int kWords = 4;
  static constexpr int kMaxLabels = 64 * kWords;

  LabelSet() = default;

  static LabelSet full(int k) {
    LabelSet s;
    for (int l = 0; l < k; ++l) s.insert(l);
    return s;
  }
  static LabelSet single(Label l) {
    LabelSet s;
    s.insert(l);
    return s;
  }
  static LabelSet of(std::initializer_list<Label> labels) {
    LabelSet s;
    for (Label l : labels) s.insert(l);
    return s;
  }
  static LabelSet range(Label lo, Label hi) {  // inclusive
    LabelSet s;
    for (Label l = std::max(lo, 0); l <= hi && l < kMaxLabels; ++l) s.insert(l);
    return s;
  }

  void insert(Label l) { words_[l >> 6] |= std::uint64_t{1} << (l & 63); }
  void erase(Label l) { words_[l >> 6] &= ~(std::uint64_t{1} << (l & 63)); }
  bool contains(Label l) const {
    return l >= 0 && l < kMaxLabels && ((words_[l >> 6] >> (l & 63)) & 1u);
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  int size() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  Label min() const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
    return -1;
  }
  Label max() const {
    for (int i = kWords - 1; i >= 0; --i)
      if (words_[i]) return i * 64 + 63 - std::countl_zero(words_[i]);
    return -1;
  }
  /// Smallest member strictly greater than l, or -1.
  Label next(Label l) const {
    ++l;
    if (l >= kMaxLabels) return -1;
    int i = l >> 6;
    std::uint64_t w = words_[i] & (~std::uint64_t{0} << (l & 63));
    while (true) {
      if (w) return i * 64 + std::countr_zero(w);
      if (++i == kWords) return -1;
      w = words_[i];
    }
  }

  /// Removes [lo, hi]; returns true when something was removed.
  bool remove_range(Label lo, Label hi) {
    lo = std::max(lo, 0);
    hi = std::min(hi, kMaxLabels - 1);
    if (lo > hi) return false;
    bool changed = false;
    for (int i = lo >> 6; i <= (hi >> 6); ++i) {
      const int from = (i == (lo >> 6)) ? (lo & 63) : 0;
      const int to = (i == (hi >> 6)) ? (hi & 63) : 63;
      std::uint64_t mask = (to == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (to + 1)) - 1)) &
                           (~std::uint64_t{0} << from);
      if (words_[i] & mask) {
        words_[i] &= ~mask;
        changed = true;
      }
    }
    return changed;
  }

  std::vector<Label> to_vector() const {
    std::vector<Label> out;
    for (Label l = min(); l >= 0; l = next(l)) out.push_back(l);
    return out;
  }

  LabelSet operator&(const LabelSet& o) const {
    LabelSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  LabelSet operator|(const LabelSet& o) const {
    LabelSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }
  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct SearchBudget {
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::milliseconds> time_limit;
};

enum class Outcome { kYes, kNo, kUnknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kYes: return "yes";
    case Outcome::kNo: return "no";
    case Outcome::kUnknown: return "unknown";
  }
  return "?";
}

struct SearchStats {
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

struct Decision {
  Outcome outcome = Outcome::kUnknown;
  std::optional<EdgeLabelling> labelling;
  SearchStats stats;
};

struct Enumeration {
  Outcome outcome = Outcome::kUnknown;  // kYes when the listing is complete up to the limit
  std::vector<EdgeLabelling> labellings;
  bool truncated = false;  // stopped at the requested limit
  SearchStats stats;
};

struct CountResult {
  Outcome outcome = Outcome::kUnknown;
  std::uint64_t count = 0;
  SearchStats stats;
};

/// Exact label sets per target edge, each label with a witness labelling.
struct ProjectionTable {
  Outcome outcome = Outcome::kUnknown;
  std::map<EdgeIndex, std::vector<Label>> labels;
  std::vector<EdgeLabelling> witnesses;
  std::map<std::pair<EdgeIndex, Label>, std::size_t> witness_of;
  SearchStats stats;
};

struct MinKResult {
  Outcome outcome = Outcome::kUnknown;  // kYes with k set, kNo when no k <= k_max works
  std::optional<int> k;
  std::optional<EdgeLabelling> labelling;
  SearchStats stats;
};

/// Per-edge allowed labels on top of the [0, k) range.
using DomainRestriction = std::map<EdgeIndex, LabelSet>;

namespace detail {

struct BudgetExhausted {};

class Search {
 public:
  Search(const Graph& g, const Params& params, const SearchBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {
    if (params.k > LabelSet::kMaxLabels)
      throw Error("k = " + std::to_string(params.k) + " exceeds the supported maximum of " +
                  std::to_string(LabelSet::kMaxLabels));
    const int m = g.edge_count();
    neighbours_.assign(m, {});
    for (const auto& s : separations(g, params.p, params.q)) {
      const int id = static_cast<int>(weights_.size());
      weights_.push_back(1);
      neighbours_[s.first].push_back({s.second, s.required(), id});
      neighbours_[s.second].push_back({s.first, s.required(), id});
    }
    domains_.assign(m, LabelSet::full(params.k));
    preferred_.assign(m, 0);
    saved_stamp_.assign(m, 0);
    in_queue_.assign(m, 0);
  }

  int edge_count() const { return static_cast<int>(domains_.size()); }

  /// Edges the satisfiability search branches on before any other.
  void prefer(const std::vector<EdgeIndex>& edges) {
    for (EdgeIndex e : edges) {
      if (e < 0 || e >= edge_count()) throw Error("branching hint on unknown edge " + std::to_string(e));
      preferred_[e] = 1;
    }
  }
  const LabelSet& domain(EdgeIndex e) const { return domains_[e]; }

  /// Intersects D(e) with `allowed`; false on wipe-out. Call propagate() after.
  bool restrict_to(EdgeIndex e, const LabelSet& allowed) {
    LabelSet next = domains_[e] & allowed;
    if (next == domains_[e]) return true;
    save(e);
    domains_[e] = next;
    enqueue(e);
    return !next.empty();
  }

  bool propagate() {
    while (!queue_.empty()) {
      const EdgeIndex e = queue_.back();
      queue_.pop_back();
      in_queue_[e] = 0;
      const LabelSet& de = domains_[e];
      const Label lo_e = de.min(), hi_e = de.max();
      for (auto [f, sep, id] : neighbours_[e]) {
        const Label lo = hi_e - sep + 1, hi = lo_e + sep - 1;
        if (lo > hi) continue;
        LabelSet& df = domains_[f];
        LabelSet probe = df;
        if (!probe.remove_range(lo, hi)) continue;
        save(f);
        df = probe;
        if (df.empty()) {
          ++weights_[id];
          clear_queue();
          return false;
        }
        enqueue(f);
      }
    }
    return true;
  }

  void enqueue_all() {
    for (EdgeIndex e = 0; e < edge_count(); ++e) enqueue(e);
  }

  std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto& [e, old] = trail_.back();
      domains_[e] = old;
      trail_.pop_back();
    }
    clear_queue();
    ++stamp_;
  }

  void begin_level() { ++stamp_; }

  void count_node() {
    ++stats_.nodes;
    if (budget_.node_limit && stats_.nodes > *budget_.node_limit) throw BudgetExhausted{};
    if (budget_.time_limit && (stats_.nodes & 1023) == 0 && elapsed() > *budget_.time_limit)
      throw BudgetExhausted{};
  }

  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  }

  SearchStats stats() const {
    SearchStats s = stats_;
    s.elapsed = elapsed();
    return s;
  }

  EdgeLabelling snapshot() const {
    EdgeLabelling out(edge_count());
    for (EdgeIndex e = 0; e < edge_count(); ++e)
      if (domains_[e].size() == 1) out.set(e, domains_[e].min());
    return out;
  }

  /// Depth-first search over `order` (ascending labels). The visitor returns
  /// false to stop. Returns false if stopped by the visitor.
  bool dfs(const std::vector<EdgeIndex>& order, std::size_t pos, const std::function<bool()>& visit) {
    while (pos < order.size() && domains_[order[pos]].size() == 1) ++pos;
    if (pos == order.size()) return visit();
    const EdgeIndex e = order[pos];
    const LabelSet choices = domains_[e];
    for (Label x = choices.min(); x >= 0; x = choices.next(x)) {
      count_node();
      const std::size_t m = mark();
      begin_level();
      bool ok = restrict_to(e, LabelSet::single(x)) && propagate();
      bool go_on = true;
      if (ok) go_on = dfs(order, pos + 1, visit);
      undo(m);
      if (!go_on) return false;
    }
    return true;
  }

  /// Satisfiability search over the open edges of `scope`: branches by the
  /// dom/wdeg rule (ties: smallest index) and splits into independent
  /// components after every assignment. On success the solution stays pinned; on failure every
  /// domain is restored.
  bool solve(const std::vector<EdgeIndex>& scope) {
    const std::size_t m = mark();
    for (const auto& comp : open_components(scope)) {
      if (!solve_component(comp)) {
        undo(m);
        return false;
      }
    }
    return true;
  }

  /// Groups the edges whose domain still has several labels into
  /// independent components, each sorted by index; components are ordered by
  /// their smallest edge. With a scope, only components meeting it are listed.
  std::vector<std::vector<EdgeIndex>> open_components(const std::vector<EdgeIndex>& scope = {}) const {
    const int m = edge_count();
    std::vector<EdgeIndex> seeds = scope;
    if (scope.empty()) {
      seeds.resize(m);
      for (EdgeIndex e = 0; e < m; ++e) seeds[e] = e;
    }
    std::vector<int> comp(m, -1);
    std::vector<std::vector<EdgeIndex>> out;
    for (EdgeIndex s : seeds) {
      if (comp[s] >= 0 || domains_[s].size() <= 1) continue;
      const int id = static_cast<int>(out.size());
      out.emplace_back();
      std::vector<EdgeIndex> stack{s};
      comp[s] = id;
      while (!stack.empty()) {
        EdgeIndex e = stack.back();
        stack.pop_back();
        out[id].push_back(e);
        for (auto [f, sep, id] : neighbours_[e])
          if (comp[f] < 0 && domains_[f].size() > 1) {
            comp[f] = id;
            stack.push_back(f);
          }
      }
      std::sort(out[id].begin(), out[id].end());
    }
    return out;
  }

 private:
  bool solve_component(const std::vector<EdgeIndex>& comp) {
    // preferred edges first, then the smallest ratio of domain size to
    // conflict-weighted open degree
    bool any_preferred = false;
    for (EdgeIndex e : comp) any_preferred = any_preferred || (preferred_[e] && domains_[e].size() > 1);
    EdgeIndex best = -1;
    std::uint64_t best_size = 0, best_weight = 0;
    for (EdgeIndex e : comp) {
      const std::uint64_t size = domains_[e].size();
      if (size <= 1 || (any_preferred && !preferred_[e])) continue;
      std::uint64_t weight = 0;
      for (auto [f, sep, id] : neighbours_[e])
        if (domains_[f].size() > 1) weight += weights_[id];
      if (best < 0 || size * best_weight < best_size * weight) {
        best = e;
        best_size = size;
        best_weight = weight;
      }
    }
    if (best < 0) return true;
    const LabelSet choices = domains_[best];
    for (Label x = choices.min(); x >= 0; x = choices.next(x)) {
      count_node();
      const std::size_t m = mark();
      begin_level();
      if (restrict_to(best, LabelSet::single(x)) && propagate() && solve(comp)) return true;
      undo(m);
    }
    return false;
  }

  void save(EdgeIndex e) {
    if (saved_stamp_[e] == stamp_) return;
    saved_stamp_[e] = stamp_;
    trail_.emplace_back(e, domains_[e]);
  }
  void enqueue(EdgeIndex e) {
    if (!in_queue_[e]) {
      in_queue_[e] = 1;
      queue_.push_back(e);
    }
  }
  void clear_queue() {
    for (EdgeIndex e : queue_) in_queue_[e] = 0;
    queue_.clear();
  }

  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  SearchStats stats_;
  struct Arc {
    EdgeIndex to;
    int separation;
    int id;
  };
  std::vector<std::vector<Arc>> neighbours_;
  std::vector<std::uint64_t> weights_;  // failures caused per constraint
  std::vector<LabelSet> domains_;
  std::vector<char> preferred_;
  std::vector<std::pair<EdgeIndex, LabelSet>> trail_;
  std::vector<std::uint64_t> saved_stamp_;
  std::uint64_t stamp_ = 1;
  std::vector<EdgeIndex> queue_;
  std::vector<char> in_queue_;
};

/// Validates and installs the fixed labels and restrictions, then runs the
/// initial propagation. Returns false if the instance is already infeasible.
inline bool install(Search& s, const Graph& g, const Params& params, const EdgeLabelling& fixed,
                    const DomainRestriction& restriction) {
  if (fixed.size() != 0) {
    require_in_range(g, params, fixed);
    if (!check_partial(g, params, fixed).ok()) throw InfeasiblePrefix();
  }
  for (EdgeIndex e = 0; e < fixed.size(); ++e)
    if (fixed.assigned(e) && !s.restrict_to(e, LabelSet::single(fixed[e]))) return false;
  for (const auto& [e, allowed] : restriction) {
    if (e < 0 || e >= g.edge_count()) throw Error("restriction on unknown edge " + std::to_string(e));
    if (!s.restrict_to(e, allowed)) return false;
  }
  s.enqueue_all();
  return s.propagate();
}

/// Finds and pins a solution of every open component. Returns false if some
/// component has none.
inline bool solve_components(Search& s) {
  s.begin_level();
  return s.solve({});
}

}  // namespace detail

/// `branch_first` only steers the search order (typically the interface
/// edges between loosely coupled parts); it never changes the outcome.
inline Decision decide(const Graph& g, const Params& params, const EdgeLabelling& fixed = {},
                       const SearchBudget& budget = {}, const DomainRestriction& restriction = {},
                       const std::vector<EdgeIndex>& branch_first = {}) {
  detail::Search s(g, params, budget);
  s.prefer(branch_first);
  Decision out;
  try {
    if (detail::install(s, g, params, fixed, restriction) && detail::solve_components(s)) {
      out.outcome = Outcome::kYes;
      out.labelling = s.snapshot();
    } else {
      out.outcome = Outcome::kNo;
    }
  } catch (const detail::BudgetExhausted&) {
    out.outcome = Outcome::kUnknown;
  }
  out.stats = s.stats();
  return out;
}

/// Calls `visit` on every valid total extension in lexicographic order until
/// it returns false. Returns kYes when the search completed, kUnknown when the
/// budget ran out.
inline Outcome for_each_labelling(const Graph& g, const Params& params, const EdgeLabelling& fixed,
                                  const std::function<bool(const EdgeLabelling&)>& visit,
                                  const SearchBudget& budget = {}, SearchStats* stats = nullptr,
                                  const DomainRestriction& restriction = {}) {
  detail::Search s(g, params, budget);
  Outcome outcome = Outcome::kYes;
  try {
    if (detail::install(s, g, params, fixed, restriction)) {
      std::vector<EdgeIndex> order(g.edge_count());
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) order[e] = e;
      s.begin_level();
      s.dfs(order, 0, [&] { return visit(s.snapshot()); });
    }
  } catch (const detail::BudgetExhausted&) {
    outcome = Outcome::kUnknown;
  }
  if (stats) *stats = s.stats();
  return outcome;
}

inline Enumeration enumerate(const Graph& g, const Params& params, const EdgeLabelling& fixed = {},
                             std::optional<std::size_t> limit = std::nullopt, const SearchBudget& budget = {}) {
  Enumeration out;
  out.outcome = for_each_labelling(
      g, params, fixed,
      [&](const EdgeLabelling& c) {
        if (limit && out.labellings.size() >= *limit) {
          out.truncated = true;
          return false;
        }
        out.labellings.push_back(c);
        return true;
      },
      budget, &out.stats);
  return out;
}

inline CountResult count(const Graph& g, const Params& params, const SearchBudget& budget = {},
                         const EdgeLabelling& fixed = {}) {
  detail::Search s(g, params, budget);
  CountResult out;
  try {
    if (!detail::install(s, g, params, fixed, {})) {
      out.outcome = Outcome::kYes;
      out.count = 0;
    } else {
      std::uint64_t total = 1;
      for (const auto& comp : s.open_components()) {
        std::uint64_t n = 0;
        s.begin_level();
        s.dfs(comp, 0, [&] {
          ++n;
          return true;
        });
        if (n != 0 && total > std::numeric_limits<std::uint64_t>::max() / n) throw Error("count overflows 64 bits");
        total *= n;
        if (total == 0) break;
      }
      out.outcome = Outcome::kYes;
      out.count = total;
    }
  } catch (const detail::BudgetExhausted&) {
    out.outcome = Outcome::kUnknown;
  }
  out.stats = s.stats();
  return out;
}

inline ProjectionTable project(const Graph& g, const Params& params, const EdgeLabelling& fixed,
                               const std::vector<EdgeIndex>& targets, const SearchBudget& budget = {},
                               const DomainRestriction& restriction = {}) {
  if (targets.empty()) throw Error("projection needs at least one target edge");
  for (EdgeIndex t : targets)
    if (t < 0 || t >= g.edge_count()) throw Error("projection target " + std::to_string(t) + " is not an edge");
  detail::Search s(g, params, budget);
  ProjectionTable out;
  for (EdgeIndex t : targets) out.labels[t];
  try {
    if (detail::install(s, g, params, fixed, restriction)) {
      std::map<EdgeIndex, LabelSet> seen;
      for (EdgeIndex t : targets) {
        const LabelSet candidates = s.domain(t);
        for (Label x = candidates.min(); x >= 0; x = candidates.next(x)) {
          if (seen[t].contains(x)) continue;
          const std::size_t m = s.mark();
          s.begin_level();
          bool ok = s.restrict_to(t, LabelSet::single(x)) && s.propagate() && detail::solve_components(s);
          if (ok) {
            EdgeLabelling w = s.snapshot();
            const std::size_t id = out.witnesses.size();
            out.witnesses.push_back(w);
            for (EdgeIndex u : targets)
              if (!seen[u].contains(w[u])) {
                seen[u].insert(w[u]);
                out.witness_of[{u, w[u]}] = id;
              }
          }
          s.undo(m);
        }
      }
      for (EdgeIndex t : targets) out.labels[t] = seen[t].to_vector();
    }
    out.outcome = Outcome::kYes;
  } catch (const detail::BudgetExhausted&) {
    out.outcome = Outcome::kUnknown;
  }
  out.stats = s.stats();
  return out;
}

/// Smallest k in [1, k_max] admitting a labelling; scans upward since
/// feasibility is monotone in k.
inline MinKResult min_k(const Graph& g, int p, int q, int k_max, const SearchBudget& budget = {}) {
  if (k_max < 1) throw Error("k_max must be positive");
  MinKResult out;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 1; k <= k_max; ++k) {
    SearchBudget rest = budget;
    if (budget.node_limit) {
      if (out.stats.nodes >= *budget.node_limit) {
        out.outcome = Outcome::kUnknown;
        break;
      }
      rest.node_limit = *budget.node_limit - out.stats.nodes;
    }
    if (budget.time_limit) {
      auto used = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      if (used >= *budget.time_limit) {
        out.outcome = Outcome::kUnknown;
        break;
      }
      rest.time_limit = *budget.time_limit - used;
    }
    Decision d = decide(g, Params(p, q, k), {}, rest);
    out.stats.nodes += d.stats.nodes;
    if (d.outcome == Outcome::kUnknown) {
      out.outcome = Outcome::kUnknown;
      break;
    }
    if (d.outcome == Outcome::kYes) {
      out.outcome = Outcome::kYes;
      out.k = k;
      out.labelling = d.labelling;
      break;
    }
    out.outcome = Outcome::kNo;
  }
  out.stats.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return out;
}

}  // namespace lpq
