#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the Graph container.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lpq/core.hpp"

namespace oracle {

using lpq::Edge;
using lpq::Graph;

inline bool shares(const Edge& x, const Edge& y) { return x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v; }

inline bool contains(const Edge& e, lpq::Vertex v) { return e.u == v || e.v == v; }

// Three-edge walk e1, f, e2: f runs from a vertex of e1 to a vertex of e2.
inline bool midlinked(const Graph& g, int i, int j) {
  const Edge& x = g.edges()[i];
  const Edge& y = g.edges()[j];
  for (int f = 0; f < g.edge_count(); ++f) {
    if (f == i || f == j) continue;
    const Edge& m = g.edges()[f];
    if ((contains(x, m.u) && contains(y, m.v)) || (contains(x, m.v) && contains(y, m.u))) return true;
  }
  return false;
}

inline bool valid(const Graph& g, int p, int q, const std::vector<int>& labels) {
  const int m = g.edge_count();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int need = 0;
      if (shares(g.edges()[i], g.edges()[j])) need = p;
      if (midlinked(g, i, j)) need = std::max(need, q);
      if (std::abs(labels[i] - labels[j]) < need) return false;
    }
  return true;
}

/// Every valid labelling in lexicographic order, by filtering all k^m.
inline std::vector<std::vector<int>> all_labellings(const Graph& g, int p, int q, int k) {
  std::vector<std::vector<int>> out;
  const int m = g.edge_count();
  std::vector<int> c(m, 0);
  while (true) {
    if (valid(g, p, q, c)) out.push_back(c);
    int i = m - 1;
    while (i >= 0 && ++c[i] == k) c[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline Graph random_graph(std::mt19937_64& rng, int max_edges, int max_vertices) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  const int n = nv(rng);
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<int> ne(0, std::min<int>(max_edges, static_cast<int>(all.size())));
  all.resize(ne(rng));
  return Graph(n, all);
}

}  // namespace oracle
