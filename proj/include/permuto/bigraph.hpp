#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "permuto/errors.hpp"

// Bipartite graphs G inside K_{m,n} and their spanning-tree combinatorics.
//
// Vertices are 1-indexed: left vertices 1..m, right vertices 1..n. Right
// vertex 1 is the globally distinguished anchor: t-vectors point toward it
// and facet signs are measured against a reference point far in the e_1
// direction. Every value here is immutable after construction and every
// operation is a pure function.

namespace permuto {

struct Edge {
  int left = 0;
  int right = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string edge_str(Edge e) {
  return "(" + std::to_string(e.left) + "," + std::to_string(e.right) + ")";
}

// Integer lifting heights, one per edge of G.
using HeightFunction = std::map<Edge, std::int64_t>;

namespace detail {

// Builds 1-indexed adjacency lists; index 0 is unused.
inline void build_adjacency(int m, int n, const std::vector<Edge>& edges,
                            std::vector<std::vector<int>>& left_adj,
                            std::vector<std::vector<int>>& right_adj) {
  left_adj.assign(m + 1, {});
  right_adj.assign(n + 1, {});
  for (const Edge& e : edges) {
    left_adj[e.left].push_back(e.right);
    right_adj[e.right].push_back(e.left);
  }
  for (auto& v : left_adj) std::sort(v.begin(), v.end());
  for (auto& v : right_adj) std::sort(v.begin(), v.end());
}

}  // namespace detail

class BipartiteGraph {
 public:
  int left_count() const { return m_; }
  int right_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // I_i: right neighbors of left vertex i, sorted.
  const std::vector<int>& neighbors_of_left(int i) const { return left_adj_[i]; }
  const std::vector<int>& neighbors_of_right(int j) const { return right_adj_[j]; }

  bool has_edge(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

  friend BipartiteGraph validate_graph(int m, int n, std::vector<Edge> edges);

 private:
  BipartiteGraph(int m, int n, std::vector<Edge> edges)
      : m_(m), n_(n), edges_(std::move(edges)) {
    detail::build_adjacency(m_, n_, edges_, left_adj_, right_adj_);
  }

  int m_ = 0;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> left_adj_;
  std::vector<std::vector<int>> right_adj_;
};

// Checks every type invariant and returns the graph, or throws naming the
// offending vertex/edge: EmptySide, InvalidEdge, DuplicateEdge,
// IsolatedVertex, Disconnected.
inline BipartiteGraph validate_graph(int m, int n, std::vector<Edge> edges) {
  if (m < 1) fail(errc::empty_side, "left side is empty (m = " + std::to_string(m) + ")");
  if (n < 1) fail(errc::empty_side, "right side is empty (n = " + std::to_string(n) + ")");
  for (const Edge& e : edges) {
    if (e.left < 1 || e.left > m || e.right < 1 || e.right > n)
      fail(errc::invalid_edge, "edge " + edge_str(e) + " out of range for K_{" +
                                   std::to_string(m) + "," + std::to_string(n) + "}");
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k] == edges[k - 1])
      fail(errc::duplicate_edge, "edge " + edge_str(edges[k]) + " listed twice");
  }

  // Catch isolated vertices before building adjacency, so a bogus huge m or
  // n cannot force a giant allocation: a covered side has at most |edges|
  // distinct vertices.
  if (static_cast<std::size_t>(m) > edges.size() || static_cast<std::size_t>(n) > edges.size()) {
    std::vector<char> left_hit(std::min<std::size_t>(m, edges.size() + 1) + 1, 0);
    std::vector<char> right_hit(std::min<std::size_t>(n, edges.size() + 1) + 1, 0);
    for (const Edge& e : edges) {
      if (e.left < static_cast<int>(left_hit.size())) left_hit[e.left] = 1;
      if (e.right < static_cast<int>(right_hit.size())) right_hit[e.right] = 1;
    }
    for (int i = 1; i < static_cast<int>(left_hit.size()) && i <= m; ++i)
      if (!left_hit[i])
        fail(errc::isolated_vertex, "left vertex " + std::to_string(i) + " is isolated");
    for (int j = 1; j < static_cast<int>(right_hit.size()) && j <= n; ++j)
      if (!right_hit[j])
        fail(errc::isolated_vertex, "right vertex " + std::to_string(j) + " is isolated");
  }

  std::vector<std::vector<int>> ladj, radj;
  detail::build_adjacency(m, n, edges, ladj, radj);
  for (int i = 1; i <= m; ++i)
    if (ladj[i].empty())
      fail(errc::isolated_vertex, "left vertex " + std::to_string(i) + " is isolated");
  for (int j = 1; j <= n; ++j)
    if (radj[j].empty())
      fail(errc::isolated_vertex, "right vertex " + std::to_string(j) + " is isolated");

  // BFS over both sides; vertices 0..m-1 left, m..m+n-1 right.
  std::vector<char> seen(m + n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (v < m) {
      for (int j : ladj[v + 1])
        if (!seen[m + j - 1]) seen[m + j - 1] = 1, queue.push_back(m + j - 1);
    } else {
      for (int i : radj[v - m + 1])
        if (!seen[i - 1]) seen[i - 1] = 1, queue.push_back(i - 1);
    }
  }
  for (int v = 0; v < m + n; ++v) {
    if (!seen[v]) {
      std::string name = v < m ? "left vertex " + std::to_string(v + 1)
                               : "right vertex " + std::to_string(v - m + 1);
      fail(errc::disconnected, name + " unreachable from left vertex 1");
    }
  }
  return BipartiteGraph(m, n, std::move(edges));
}

inline BipartiteGraph transpose(const BipartiteGraph& g) {
  std::vector<Edge> rev;
  rev.reserve(g.edges().size());
  for (const Edge& e : g.edges()) rev.push_back({e.right, e.left});
  return validate_graph(g.right_count(), g.left_count(), std::move(rev));
}

// A spanning tree of some G inside K_{m,n}. The edge set alone determines the
// tree; the parent graph is checked at construction, not retained.
class Tree {
 public:
  static Tree spanning(const BipartiteGraph& g, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 1; k < edges.size(); ++k)
      if (edges[k] == edges[k - 1])
        fail(errc::duplicate_edge, "tree edge " + edge_str(edges[k]) + " listed twice");
    for (const Edge& e : edges)
      if (!g.has_edge(e))
        fail(errc::invalid_edge, "tree edge " + edge_str(e) + " not in parent graph");
    const int m = g.left_count(), n = g.right_count();
    if (static_cast<int>(edges.size()) != m + n - 1)
      fail(errc::not_spanning, "expected " + std::to_string(m + n - 1) + " edges, got " +
                                   std::to_string(edges.size()));
    // m+n-1 acyclic edges on m+n vertices is automatically connected.
    std::vector<int> parent(m + n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const Edge& e : edges) {
      int a = find(e.left - 1), b = find(m + e.right - 1);
      if (a == b) fail(errc::not_spanning, "edge " + edge_str(e) + " closes a cycle");
      parent[a] = b;
    }
    return Tree(m, n, std::move(edges));
  }

  int left_count() const { return m_; }
  int right_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // T_i: right neighbors of left vertex i in the tree.
  const std::vector<int>& neighbors_of_left(int i) const { return left_adj_[i]; }
  const std::vector<int>& neighbors_of_right(int j) const { return right_adj_[j]; }
  int degree_of_left(int i) const { return static_cast<int>(left_adj_[i].size()); }
  int degree_of_right(int j) const { return static_cast<int>(right_adj_[j].size()); }

  bool has_edge(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  friend bool operator==(const Tree&, const Tree&) = default;
  friend auto operator<=>(const Tree& a, const Tree& b) { return a.edges_ <=> b.edges_; }

 private:
  Tree(int m, int n, std::vector<Edge> edges)
      : m_(m), n_(n), edges_(std::move(edges)) {
    detail::build_adjacency(m_, n_, edges_, left_adj_, right_adj_);
  }

  int m_ = 0;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> left_adj_;
  std::vector<std::vector<int>> right_adj_;
};

// All spanning trees of G, each exactly once, ordered lexicographically by
// sorted edge list. Enumerates by include/exclude over the sorted edge list
// with cycle and edge-count pruning.
inline std::vector<Tree> spanning_trees(const BipartiteGraph& g) {
  const std::vector<Edge>& edges = g.edges();
  const int m = g.left_count(), n = g.right_count();
  const int verts = m + n;
  const int need = verts - 1;

  std::vector<int> parent(verts);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };

  std::vector<Edge> chosen;
  chosen.reserve(need);
  std::vector<Tree> out;

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (static_cast<int>(chosen.size()) == need) {
      out.push_back(Tree::spanning(g, chosen));
      return;
    }
    if (edges.size() - idx < static_cast<std::size_t>(need) - chosen.size()) return;
    const Edge& e = edges[idx];
    int a = find(e.left - 1), b = find(m + e.right - 1);
    if (a != b) {
      parent[a] = b;
      chosen.push_back(e);
      rec(idx + 1);
      chosen.pop_back();
      parent[a] = a;
    }
    rec(idx + 1);
  };
  rec(0);
  return out;
}

// t_i for each left vertex: its neighbor on the tree path toward right
// vertex 1 (so t_i = 1 exactly when that vertex is adjacent to i).
// Stored 0-based by left vertex, values are 1-based right indices.
using TVector = std::vector<int>;

inline TVector t_vector(const Tree& t) {
  const int m = t.left_count(), n = t.right_count();
  // BFS from right vertex 1 recording each vertex's parent toward the root.
  std::vector<int> parent(m + n, -1);
  std::vector<int> queue{m};
  parent[m] = m;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (v < m) {
      for (int j : t.neighbors_of_left(v + 1)) {
        int w = m + j - 1;
        if (parent[w] < 0) parent[w] = v, queue.push_back(w);
      }
    } else {
      for (int i : t.neighbors_of_right(v - m + 1)) {
        int w = i - 1;
        if (parent[w] < 0) parent[w] = v, queue.push_back(w);
      }
    }
  }
  TVector tv(m);
  for (int i = 0; i < m; ++i) tv[i] = parent[i] - m + 1;
  return tv;
}

struct DegreeVectors {
  std::vector<int> ld;  // length m, entry i-1 is deg(i) - 1; sums to n-1
  std::vector<int> rd;  // length n, entry j-1 is deg(j) - 1; sums to m-1
  friend bool operator==(const DegreeVectors&, const DegreeVectors&) = default;
};

inline DegreeVectors degree_vectors(const Tree& t) {
  DegreeVectors dv;
  dv.ld.resize(t.left_count());
  dv.rd.resize(t.right_count());
  for (int i = 1; i <= t.left_count(); ++i) dv.ld[i - 1] = t.degree_of_left(i) - 1;
  for (int j = 1; j <= t.right_count(); ++j) dv.rd[j - 1] = t.degree_of_right(j) - 1;
  return dv;
}

using DraconianSequence = std::vector<int>;

// All sequences (a_1..a_m) of nonnegative integers with sum n-1 such that
// every nonempty subset S of left vertices satisfies
// |union of I_i over S| >= 1 + sum of a_i over S. Lexicographic order.
inline std::vector<DraconianSequence> draconian_sequences(const BipartiteGraph& g) {
  const int m = g.left_count(), n = g.right_count();
  if (m > 24) fail(errc::size_limit, "draconian enumeration needs m <= 24, got " + std::to_string(m));
  if (n > 64) fail(errc::size_limit, "draconian enumeration needs n <= 64, got " + std::to_string(n));

  std::vector<std::uint64_t> nbr_mask(m, 0);
  for (const Edge& e : g.edges()) nbr_mask[e.left - 1] |= std::uint64_t{1} << (e.right - 1);

  const std::uint32_t full = (1u << m) - 1;
  std::vector<std::uint64_t> union_bits(full + 1, 0);
  std::vector<int> union_size(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    union_bits[mask] = nbr_mask[std::countr_zero(mask)] | union_bits[mask & (mask - 1)];
    union_size[mask] = std::popcount(union_bits[mask]);
  }

  std::vector<DraconianSequence> out;
  DraconianSequence a(m, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == m - 1) {
      a[pos] = remaining;
      for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int s = 0;
        for (std::uint32_t t = mask; t; t &= t - 1) s += a[std::countr_zero(t)];
        if (union_size[mask] < s + 1) return;
      }
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      a[pos] = v;
      rec(pos + 1, remaining - v);
    }
    a[pos] = 0;
  };
  rec(0, n - 1);
  return out;
}

namespace detail {

// Edges of the tree path between two vertices (0-based internal ids,
// left i -> i-1, right j -> m+j-1), in order starting at `from`.
inline std::vector<Edge> tree_path_edges(const Tree& t, int from, int to) {
  const int m = t.left_count(), n = t.right_count();
  std::vector<int> parent(m + n, -2);
  std::vector<int> queue{from};
  parent[from] = -1;
  for (std::size_t head = 0; head < queue.size() && parent[to] == -2; ++head) {
    int v = queue[head];
    if (v < m) {
      for (int j : t.neighbors_of_left(v + 1)) {
        int w = m + j - 1;
        if (parent[w] == -2) parent[w] = v, queue.push_back(w);
      }
    } else {
      for (int i : t.neighbors_of_right(v - m + 1)) {
        int w = i - 1;
        if (parent[w] == -2) parent[w] = v, queue.push_back(w);
      }
    }
  }
  std::vector<Edge> path;
  for (int v = to; parent[v] >= 0; v = parent[v]) {
    int u = parent[v];
    int l = std::min(u, v), r = std::max(u, v);  // one side < m, other >= m
    path.push_back({l + 1, r - m + 1});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::int64_t height_of(const HeightFunction& h, Edge e) {
  auto it = h.find(e);
  if (it == h.end()) fail(errc::bad_input, "no height for edge " + edge_str(e));
  return it->second;
}

}  // namespace detail

// Alternating height sum around the fundamental cycle of a non-tree edge e:
// writing the cycle as e, f_1, ..., f_{2k-1} with f_1.. the tree path from
// e's right endpoint to its left endpoint, returns
// h(e) - h(f_1) + h(f_2) - ... - h(f_{2k-1}).
inline std::int64_t cycle_alt_sum(const Tree& t, Edge e, const HeightFunction& h) {
  if (e.left < 1 || e.left > t.left_count() || e.right < 1 || e.right > t.right_count())
    fail(errc::invalid_edge, "edge " + edge_str(e) + " out of range");
  if (t.has_edge(e)) fail(errc::edge_in_tree, "edge " + edge_str(e) + " lies in the tree");
  const int m = t.left_count();
  std::vector<Edge> path = detail::tree_path_edges(t, m + e.right - 1, e.left - 1);
  std::int64_t sum = detail::height_of(h, e);
  std::int64_t sign = -1;
  for (const Edge& f : path) {
    sum += sign * detail::height_of(h, f);
    sign = -sign;
  }
  return sum;
}

}  // namespace permuto
