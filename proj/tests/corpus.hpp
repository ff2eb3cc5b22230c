#pragma once

// Fixed small source instances: graphs on at most 5 vertices and monotone
// formulas with at most 3 clauses over at most 6 variables.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lpq/reductions.hpp"

namespace corpus {

struct Named {
  std::string name;
  lpq::SourceInstance source;
};

inline std::vector<Named> graphs() {
  using lpq::ColInstance;
  using lpq::Graph;
  return {
      {"k2", ColInstance{Graph(2, {{0, 1}})}},
      {"p4", ColInstance{lpq::graphs::path(3)}},
      {"k3", ColInstance{lpq::graphs::triangle()}},
      {"c4", ColInstance{Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})}},
      {"c5", ColInstance{Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})}},
      {"k4-e", ColInstance{Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})}},
      {"k4", ColInstance{lpq::graphs::complete(4)}},
      {"w4", ColInstance{Graph(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}})}},
  };
}

/// A few hand-picked formulas plus seeded random ones.
inline std::vector<Named> formulas(lpq::CnfKind kind, int random_count = 6) {
  const int w = lpq::clause_width(kind);
  std::vector<Named> out;
  auto add = [&](const std::string& name, int n, std::vector<std::vector<int>> clauses) {
    out.push_back({name, lpq::CnfInstance{kind, n, std::move(clauses)}});
  };
  if (w == 3) {
    add("one", 3, {{0, 1, 2}});
    add("shared-pair", 4, {{0, 1, 2}, {0, 1, 3}});
    add("chain", 5, {{0, 1, 2}, {2, 3, 4}});
    add("three", 6, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}});
    add("dense", 4, {{0, 1, 2}, {1, 2, 3}, {0, 2, 3}});
  } else {
    add("one", 4, {{0, 1, 2, 3}});
    add("shared", 5, {{0, 1, 2, 3}, {0, 1, 2, 4}});
    add("three", 6, {{0, 1, 2, 3}, {2, 3, 4, 5}, {0, 1, 4, 5}});
  }
  std::mt19937_64 rng(4099 + w);
  for (int i = 0; i < random_count; ++i) {
    std::uniform_int_distribution<int> nv(w, 6), nc(1, 3);
    const int n = nv(rng), m = nc(rng);
    std::vector<std::vector<int>> clauses;
    for (int j = 0; j < m; ++j) {
      std::vector<int> all(n);
      for (int v = 0; v < n; ++v) all[v] = v;
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(w);
      std::sort(all.begin(), all.end());
      clauses.push_back(all);
    }
    add("random" + std::to_string(i), n, clauses);
  }
  return out;
}

}  // namespace corpus
