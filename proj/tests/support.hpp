#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "homophily/graph.hpp"

namespace testing {

using homophily::Edge;
using homophily::Graph;

inline Graph path(std::uint32_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph::from_edges(n, e);
}

// K_{1,leaves}, center is vertex 0.
inline Graph star(std::uint32_t leaves) {
  std::vector<Edge> e;
  for (std::uint32_t i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph::from_edges(leaves + 1, e);
}

inline Graph complete(std::uint32_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph::from_edges(n, e);
}

// m disjoint edges {2i, 2i+1}.
inline Graph matching(std::uint32_t m) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < m; ++i) e.push_back({2 * i, 2 * i + 1});
  return Graph::from_edges(2 * m, e);
}

// G(n, p) style graph; every pair is kept with probability p.
inline Graph random_graph(std::uint32_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (keep(rng)) e.push_back({i, j});
  return Graph::from_edges(n, e);
}

// Every composition of n into positive parts (ordered profiles).
inline void compositions(std::uint64_t n, std::vector<std::uint64_t>& cur,
                         std::vector<std::vector<std::uint64_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint64_t k = 1; k <= n; ++k) {
    cur.push_back(k);
    compositions(n - k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::uint64_t>> compositions(std::uint64_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur;
  compositions(n, cur, out);
  return out;
}

}  // namespace testing
