#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "permuto/bigint.hpp"
#include "permuto/bigraph.hpp"
#include "permuto/errors.hpp"

// Exact lattice-point machinery for P_G(y) = y_1 D_{I_1} + ... + y_m D_{I_m},
// where D_I is the face of the standard coordinate simplex spanned by the
// unit vectors indexed by I. The iterated set-sum here is the oracle of
// record: every formula-based count in the library is tested against it.
// No floating point anywhere; counts that can outgrow 64 bits use Natural.

namespace permuto {

using LatticePoint = std::vector<std::int64_t>;
using PointSet = std::set<LatticePoint>;

// Dilation weights y_i. Entries are required to be >= 1: a zero weight
// contributes no geometry, so callers model it by deleting the left vertex.
class WeightVector {
 public:
  explicit WeightVector(std::vector<std::int64_t> y) : y_(std::move(y)) {
    if (y_.empty()) fail(errc::invalid_weight, "weight vector is empty");
    for (std::size_t i = 0; i < y_.size(); ++i)
      if (y_[i] < 1)
        fail(errc::invalid_weight, "y_" + std::to_string(i + 1) + " = " +
                                       std::to_string(y_[i]) + " (must be >= 1)");
  }

  static WeightVector ones(std::size_t m) {
    return WeightVector(std::vector<std::int64_t>(m, 1));
  }

  std::size_t size() const { return y_.size(); }
  std::int64_t operator[](std::size_t i0) const { return y_[i0]; }
  const std::vector<std::int64_t>& values() const { return y_; }

  std::int64_t sum() const {
    std::int64_t total = 0;
    for (std::int64_t v : y_)
      if (__builtin_add_overflow(total, v, &total))
        fail(errc::invalid_weight, "weight sum exceeds the integer range");
    return total;
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<std::int64_t> y_;
};

namespace detail {

inline void require_weights_match(const BipartiteGraph& g, const WeightVector& y) {
  if (y.size() != static_cast<std::size_t>(g.left_count()))
    fail(errc::invalid_weight, "weight vector has length " + std::to_string(y.size()) +
                                   ", graph has m = " + std::to_string(g.left_count()));
}

inline std::int64_t coord_sum(const LatticePoint& p) {
  return std::accumulate(p.begin(), p.end(), std::int64_t{0});
}

}  // namespace detail

// Ascending factorial (y)_a = y (y+1) ... (y+a-1), with (y)_0 = 1.
inline Natural raising_power(std::int64_t y, int a) {
  if (y < 0) fail(errc::bad_input, "raising_power needs y >= 0");
  if (a < 0) fail(errc::bad_input, "raising_power needs a >= 0");
  Natural out{1};
  for (int k = 0; k < a; ++k) out.mul_word(static_cast<std::uint64_t>(y + k));
  return out;
}

// (y)_a / a! as an exact integer, i.e. the binomial C(y+a-1, a). Computed by
// interleaving multiplications and exact divisions so every partial result
// is itself a binomial coefficient.
inline Natural binomial_ascending(std::int64_t y, int a) {
  if (y < 0) fail(errc::bad_input, "binomial_ascending needs y >= 0");
  if (a < 0) fail(errc::bad_input, "binomial_ascending needs a >= 0");
  Natural out{1};
  for (int k = 1; k <= a; ++k) {
    out.mul_word(static_cast<std::uint64_t>(y + k - 1));
    out.div_exact(static_cast<std::uint32_t>(k));
  }
  return out;
}

// Lattice points of y * D_support inside Z^n: nonnegative vectors supported
// on `support` (1-based coordinate indices) with coordinate sum y.
// There are C(y + |support| - 1, |support| - 1) of them.
inline PointSet simplex_points(const std::vector<int>& support, std::int64_t y, int n) {
  if (support.empty()) fail(errc::empty_support, "simplex support is empty");
  std::vector<int> idx = support;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.front() < 1 || idx.back() > n)
    fail(errc::invalid_edge, "support index out of range 1.." + std::to_string(n));
  if (y < 0) fail(errc::bad_input, "dilation factor must be >= 0");

  PointSet out;
  LatticePoint p(n, 0);
  auto rec = [&](auto&& self, std::size_t k, std::int64_t remaining) -> void {
    if (k + 1 == idx.size()) {
      p[idx[k] - 1] = remaining;
      out.insert(p);
      p[idx[k] - 1] = 0;
      return;
    }
    for (std::int64_t v = 0; v <= remaining; ++v) {
      p[idx[k] - 1] = v;
      self(self, k + 1, remaining - v);
    }
    p[idx[k] - 1] = 0;
  };
  rec(rec, 0, y);
  return out;
}

inline PointSet minkowski_sum(const PointSet& a, const PointSet& b) {
  PointSet out;
  for (const LatticePoint& p : a) {
    for (const LatticePoint& q : b) {
      LatticePoint s(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) s[k] = p[k] + q[k];
      out.insert(std::move(s));
    }
  }
  return out;
}

// All lattice points of P_G(y), as the iterated set-sum of the summand
// simplices. This is the brute-force oracle the rest of the library is
// measured against.
inline PointSet minkowski_points(const BipartiteGraph& g, const WeightVector& y) {
  detail::require_weights_match(g, y);
  PointSet acc = simplex_points(g.neighbors_of_left(1), y[0], g.right_count());
  for (int i = 2; i <= g.left_count(); ++i)
    acc = minkowski_sum(acc, simplex_points(g.neighbors_of_left(i), y[i - 1], g.right_count()));
  return acc;
}

// Lattice points of the trimmed polytope P_G^-(y) = {x : x + D_[n] in P_G}:
// integer points p with p + e_j in P_G for every coordinate j.
inline PointSet trimmed_points(const BipartiteGraph& g, const WeightVector& y) {
  const PointSet points = minkowski_points(g, y);
  const int n = g.right_count();
  PointSet out;
  for (const LatticePoint& q : points) {
    LatticePoint p = q;
    p[0] -= 1;  // every trimmed point arises as q - e_1 for some q in P_G
    bool inside = true;
    for (int j = 0; j < n && inside; ++j) {
      LatticePoint shifted = p;
      shifted[j] += 1;
      inside = points.count(shifted) != 0;
    }
    if (inside) out.insert(std::move(p));
  }
  return out;
}

// A lattice point of a cell together with its summand decomposition:
// point = parts[0] + ... + parts[m-1], with parts[i] a lattice point of
// y_i * D_{T_i}.
struct CellPoint {
  LatticePoint point;
  std::vector<LatticePoint> parts;
  friend bool operator==(const CellPoint&, const CellPoint&) = default;
};

// Decomposes q within the cell of T by leaf peeling: a leaf edge forces the
// assignment across it, so the decomposition is either forced or absent.
// Returns nullopt exactly when q is not a lattice point of the cell.
inline std::optional<CellPoint> cell_decompose(const Tree& t, const WeightVector& y,
                                               const LatticePoint& q) {
  const int m = t.left_count(), n = t.right_count();
  if (y.size() != static_cast<std::size_t>(m))
    fail(errc::invalid_weight, "weight vector length != m");
  if (q.size() != static_cast<std::size_t>(n))
    fail(errc::bad_input, "point has wrong dimension");
  if (detail::coord_sum(q) != y.sum()) return std::nullopt;

  std::vector<std::int64_t> residual = q;
  std::vector<std::int64_t> capacity(m);
  for (int i = 0; i < m; ++i) capacity[i] = y[i];
  std::vector<LatticePoint> parts(m, LatticePoint(n, 0));

  const int verts = m + n;
  std::vector<int> degree(verts);
  std::vector<char> active(verts, 1);
  std::vector<std::vector<int>> adj(verts);  // 0-based ids, left then right
  for (const Edge& e : t.edges()) {
    adj[e.left - 1].push_back(m + e.right - 1);
    adj[m + e.right - 1].push_back(e.left - 1);
  }
  for (int v = 0; v < verts; ++v) degree[v] = static_cast<int>(adj[v].size());

  for (int step = 0; step + 1 < verts; ++step) {
    int leaf = -1;
    for (int v = 0; v < verts; ++v)
      if (active[v] && degree[v] == 1) { leaf = v; break; }
    int other = -1;
    for (int w : adj[leaf])
      if (active[w]) { other = w; break; }

    if (leaf < m) {
      // left leaf i: all remaining mass of part i goes on its last neighbor
      int i = leaf, j = other - m;
      parts[i][j] += capacity[i];
      residual[j] -= capacity[i];
      capacity[i] = 0;
    } else {
      // right leaf j: the rest of coordinate j must come from its last neighbor
      int j = leaf - m, i = other;
      parts[i][j] += residual[j];
      capacity[i] -= residual[j];
      residual[j] = 0;
    }
    active[leaf] = 0;
    --degree[other];
  }

  for (int i = 0; i < m; ++i) {
    if (capacity[i] != 0) return std::nullopt;
    for (int j = 0; j < n; ++j)
      if (parts[i][j] < 0) return std::nullopt;
  }
  for (int j = 0; j < n; ++j)
    if (residual[j] != 0) return std::nullopt;
  return CellPoint{q, std::move(parts)};
}

// Membership in the semi-polytope of (T, t): q decomposes in the cell and
// every part is strictly positive at its anchor coordinate t_i, i.e. no part
// lies on the removed facet of its summand simplex.
inline bool semi_contains(const Tree& t, const TVector& anchor, const WeightVector& y,
                          const LatticePoint& q) {
  std::optional<CellPoint> d = cell_decompose(t, y, q);
  if (!d) return false;
  for (int i = 0; i < t.left_count(); ++i)
    if (d->parts[i][anchor[i] - 1] < 1) return false;
  return true;
}

// Number of lattice points of the semi-polytope of T: the product over left
// vertices of (y_i)_{|T_i|-1} / (|T_i|-1)!, an exact integer.
inline Natural semi_count(const Tree& t, const WeightVector& y) {
  if (y.size() != static_cast<std::size_t>(t.left_count()))
    fail(errc::invalid_weight, "weight vector length != m");
  Natural out{1};
  for (int i = 1; i <= t.left_count(); ++i)
    out *= binomial_ascending(y[i - 1], t.degree_of_left(i) - 1);
  return out;
}

}  // namespace permuto
