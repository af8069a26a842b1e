#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "permuto/bigraph.hpp"
#include "permuto/errors.hpp"
#include "permuto/lattice.hpp"

// Shared fixtures and independent oracles. The oracles deliberately avoid
// the library's algorithms: plain DFS for connectivity, direct recursion for
// integer vectors, Pascal's triangle for binomials.

namespace testutil {

using permuto::BipartiteGraph;
using permuto::Edge;
using permuto::LatticePoint;
using permuto::Tree;
using permuto::WeightVector;

inline BipartiteGraph k_mn(int m, int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) edges.push_back({i, j});
  return permuto::validate_graph(m, n, std::move(edges));
}

inline BipartiteGraph k22() { return k_mn(2, 2); }

// The path graph 1 - 1' - 2 - 2': edges (1,1),(2,1),(2,2). Already a tree.
inline BipartiteGraph path_graph() {
  return permuto::validate_graph(2, 2, {{1, 1}, {2, 1}, {2, 2}});
}

inline Tree tree_t1() { return Tree::spanning(k22(), {{1, 1}, {1, 2}, {2, 2}}); }
inline Tree tree_t2() { return Tree::spanning(k22(), {{1, 1}, {1, 2}, {2, 1}}); }
inline Tree tree_t3() { return Tree::spanning(k22(), {{1, 1}, {2, 1}, {2, 2}}); }
inline Tree tree_t4() { return Tree::spanning(k22(), {{1, 2}, {2, 1}, {2, 2}}); }

inline permuto::errc error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const permuto::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a permuto::Error");
}

// --- independent oracles -------------------------------------------------

// Is this edge set a tree spanning all m+n vertices? A graph on V vertices
// with V-1 edges is a tree exactly when it is connected; check that by DFS.
inline bool is_spanning_tree_oracle(int m, int n, const std::vector<Edge>& edges) {
  if (static_cast<int>(edges.size()) != m + n - 1) return false;
  std::vector<std::vector<int>> adj(m + n);
  for (const Edge& e : edges) {
    adj[e.left - 1].push_back(m + e.right - 1);
    adj[m + e.right - 1].push_back(e.left - 1);
  }
  std::vector<char> seen(m + n, 0);
  std::function<void(int)> dfs = [&](int v) {
    seen[v] = 1;
    for (int w : adj[v])
      if (!seen[w]) dfs(w);
  };
  dfs(0);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

// All spanning trees by brute enumeration of edge subsets.
inline std::vector<std::vector<Edge>> brute_spanning_trees(const BipartiteGraph& g) {
  const int m = g.left_count(), n = g.right_count();
  const std::vector<Edge>& edges = g.edges();
  const int need = m + n - 1;
  std::vector<std::vector<Edge>> out;
  std::vector<Edge> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (static_cast<int>(cur.size()) == need) {
      if (is_spanning_tree_oracle(m, n, cur)) out.push_back(cur);
      return;
    }
    if (idx == edges.size()) return;
    cur.push_back(edges[idx]);
    rec(idx + 1);
    cur.pop_back();
    rec(idx + 1);
  };
  rec(0);
  return out;
}

// Nonnegative integer vectors in Z^n supported on `support` with given sum.
inline std::vector<LatticePoint> support_vectors_oracle(const std::vector<int>& support,
                                                        std::int64_t total, int n) {
  std::vector<LatticePoint> out;
  LatticePoint cur(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t rem) {
    if (k == support.size()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= rem; ++v) {
      cur[support[k] - 1] = v;
      rec(k + 1, rem - v);
    }
    cur[support[k] - 1] = 0;
  };
  rec(0, total);
  return out;
}

// Every way to write q as p_1 + ... + p_m with p_i supported on T_i summing
// to y_i. Exhaustive cartesian search.
inline std::vector<std::vector<LatticePoint>> brute_decompositions(const Tree& t,
                                                                   const WeightVector& y,
                                                                   const LatticePoint& q) {
  const int m = t.left_count(), n = t.right_count();
  std::vector<std::vector<LatticePoint>> choices;
  for (int i = 1; i <= m; ++i)
    choices.push_back(support_vectors_oracle(t.neighbors_of_left(i), y[i - 1], n));
  std::vector<std::vector<LatticePoint>> out;
  std::vector<LatticePoint> picked;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      LatticePoint sum(n, 0);
      for (const LatticePoint& p : picked)
        for (int k = 0; k < n; ++k) sum[k] += p[k];
      if (sum == q) out.push_back(picked);
      return;
    }
    for (const LatticePoint& p : choices[i]) {
      picked.push_back(p);
      rec(i + 1);
      picked.pop_back();
    }
  };
  rec(0);
  return out;
}

// Binomial coefficients from Pascal's triangle.
inline std::uint64_t binomial_oracle(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<std::uint64_t>> c(n + 1);
  for (int a = 0; a <= n; ++a) {
    c[a].assign(a + 1, 1);
    for (int b = 1; b < a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
  }
  return c[n][k];
}

// Small random connected bipartite graphs for property tests.
inline BipartiteGraph random_graph(std::mt19937_64& rng, int max_m = 4, int max_n = 4) {
  for (;;) {
    int m = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_m - 1));
    int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    std::vector<Edge> edges;
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j)
        if (rng() % 100 < 55) edges.push_back({i, j});
    try {
      return permuto::validate_graph(m, n, std::move(edges));
    } catch (const permuto::Error&) {
      continue;
    }
  }
}

inline WeightVector random_weights(std::mt19937_64& rng, std::size_t m, std::int64_t max_y = 3) {
  std::vector<std::int64_t> y(m);
  for (auto& v : y) v = 1 + static_cast<std::int64_t>(rng() % static_cast<unsigned>(max_y));
  return WeightVector(std::move(y));
}

}  // namespace testutil
