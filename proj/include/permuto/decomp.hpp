#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "permuto/bigint.hpp"
#include "permuto/bigraph.hpp"
#include "permuto/errors.hpp"
#include "permuto/lattice.hpp"
#include "permuto/subdivision.hpp"

// Facet bookkeeping and the counting pipelines.
//
// Each non-leaf tree edge e of a cell determines a facet lying on the
// hyperplane  sum_{j in I_e} x_j = c_e,  where I_e collects the right
// vertices of the component of T - e containing right vertex 1 and c_e sums
// the weights of the left vertices there. Signs are measured against a
// reference point far in the e_1 direction on the ambient hyperplane,
//   inf_1 = ((n-1)c + sum y, -c, ..., -c)   for c large,
// handled symbolically as linear polynomials in c. A facet is positive when
// its hyperplane leaves the cell on the same side as inf_1; positive facets
// are removed to form the cell's semi-polytope.

namespace permuto {

enum class FacetSide { cell_above, cell_below };
enum class FacetSign { positive, negative };

struct FacetDescriptor {
  Edge removed;                   // the tree edge whose deletion exposes the facet
  std::vector<int> anchor_rights; // I_e, sorted, always containing 1
  std::int64_t threshold = 0;     // c_e
  FacetSide side = FacetSide::cell_above;
  FacetSign sign = FacetSign::negative;
  friend bool operator==(const FacetDescriptor&, const FacetDescriptor&) = default;
};

namespace detail {

// Value of an affine functional at inf_1, as slope*c + intercept.
struct LinearInC {
  std::int64_t slope = 0;
  std::int64_t intercept = 0;
  friend auto operator<=>(const LinearInC&, const LinearInC&) = default;
};

struct FacetSplit {
  std::vector<int> anchor_rights;  // right vertices in the component of right vertex 1
  std::vector<int> anchor_lefts;   // left vertices in that component
  bool right_endpoint_with_anchor = false;
};

inline FacetSplit split_at_edge(const Tree& t, Edge e) {
  if (!t.has_edge(e)) fail(errc::invalid_edge, "edge " + edge_str(e) + " not in the tree");
  if (t.degree_of_left(e.left) == 1)
    fail(errc::leaf_edge, "edge " + edge_str(e) + " touches a left leaf; no facet");

  const int m = t.left_count(), n = t.right_count();
  std::vector<char> seen(m + n, 0);
  std::vector<int> queue{m};  // right vertex 1
  seen[m] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (v < m) {
      for (int j : t.neighbors_of_left(v + 1)) {
        if ((v + 1 == e.left && j == e.right)) continue;
        int w = m + j - 1;
        if (!seen[w]) seen[w] = 1, queue.push_back(w);
      }
    } else {
      for (int i : t.neighbors_of_right(v - m + 1)) {
        if ((i == e.left && v - m + 1 == e.right)) continue;
        int w = i - 1;
        if (!seen[w]) seen[w] = 1, queue.push_back(w);
      }
    }
  }
  FacetSplit out;
  for (int j = 1; j <= n; ++j)
    if (seen[m + j - 1]) out.anchor_rights.push_back(j);
  for (int i = 1; i <= m; ++i)
    if (seen[i - 1]) out.anchor_lefts.push_back(i);
  out.right_endpoint_with_anchor = seen[m + e.right - 1];
  return out;
}

}  // namespace detail

// Sign of the facet of the cell of T exposed by deleting tree edge e.
// Two routes are computed and must agree:
//   - anchor route: positive iff e = (i, t_i);
//   - symbolic route: evaluate sum_{I_e} x_j at inf_1 as a polynomial in c
//     and compare against c_e; positive iff the cell sits on inf_1's side.
// Since 1 is in I_e and I_e is proper, the polynomial's slope n - |I_e| is
// positive, so the comparison is settled by the slope alone.
inline FacetSign facet_sign(const Tree& t, Edge e) {
  detail::FacetSplit split = detail::split_at_edge(t, e);
  const TVector anchor = t_vector(t);
  const FacetSign by_anchor =
      anchor[e.left - 1] == e.right ? FacetSign::positive : FacetSign::negative;

  const int n = t.right_count();
  const std::int64_t slope = n - static_cast<std::int64_t>(split.anchor_rights.size());
  if (slope <= 0) throw std::logic_error("facet hyperplane uses every right vertex");
  const bool inf_on_greater_side = slope > 0;
  const bool cell_on_greater_side = split.right_endpoint_with_anchor;
  const FacetSign by_symbol = (inf_on_greater_side == cell_on_greater_side)
                                  ? FacetSign::positive
                                  : FacetSign::negative;
  if (by_anchor != by_symbol)
    throw std::logic_error("facet sign routes disagree at edge " + edge_str(e));
  return by_anchor;
}

inline FacetDescriptor facet_descriptor(const Tree& t, const WeightVector& y, Edge e) {
  if (y.size() != static_cast<std::size_t>(t.left_count()))
    fail(errc::invalid_weight, "weight vector length != m");
  detail::FacetSplit split = detail::split_at_edge(t, e);

  FacetDescriptor d;
  d.removed = e;
  d.anchor_rights = split.anchor_rights;
  d.threshold = 0;
  for (int i : split.anchor_lefts) d.threshold += y[i - 1];
  d.side = split.right_endpoint_with_anchor ? FacetSide::cell_above : FacetSide::cell_below;

  // Full symbolic comparison at inf_1, intercepts included.
  const int n = t.right_count();
  detail::LinearInC at_inf{n - static_cast<std::int64_t>(split.anchor_rights.size()),
                           y.sum()};
  detail::LinearInC threshold{0, d.threshold};
  const bool inf_greater = at_inf > threshold;
  const bool cell_greater = d.side == FacetSide::cell_above;
  d.sign = (inf_greater == cell_greater) ? FacetSign::positive : FacetSign::negative;
  if (d.sign != facet_sign(t, e))
    throw std::logic_error("facet descriptor disagrees with facet_sign at " + edge_str(e));
  return d;
}

// A cell with its positive facets removed: the Minkowski sum of the
// half-open simplices y_i (D_{T_i} minus D_{T_i - t_i}).
struct SemiPolytope {
  Tree tree;
  TVector anchor;
  WeightVector weights;

  bool contains(const LatticePoint& q) const {
    return semi_contains(tree, anchor, weights, q);
  }

  // Direct enumeration: parts with a strictly positive anchor coordinate are
  // e_{t_i} plus the lattice points of (y_i - 1) D_{T_i}; distinct part
  // choices give distinct sums within a cell.
  PointSet lattice_points() const {
    const int n = tree.right_count();
    PointSet acc;
    for (int i = 1; i <= tree.left_count(); ++i) {
      PointSet shifted;
      for (LatticePoint p : simplex_points(tree.neighbors_of_left(i), weights[i - 1] - 1, n)) {
        p[anchor[i - 1] - 1] += 1;
        shifted.insert(std::move(p));
      }
      acc = (i == 1) ? std::move(shifted) : minkowski_sum(acc, shifted);
    }
    return acc;
  }
};

inline SemiPolytope semi_polytope_of_cell(const Tree& t, const WeightVector& y) {
  if (y.size() != static_cast<std::size_t>(t.left_count()))
    fail(errc::invalid_weight, "weight vector length != m");
  return SemiPolytope{t, t_vector(t), y};
}

// A point of P_G is good when it avoids every positive facet of P_G, which
// happens exactly when q - e_1 lies in the trimmed polytope.
inline bool is_good(const BipartiteGraph& g, const WeightVector& y, const LatticePoint& q) {
  const PointSet points = minkowski_points(g, y);
  if (!points.count(q)) fail(errc::not_in_polytope, "point is not in P_G");
  LatticePoint shifted = q;
  shifted[0] -= 1;
  return trimmed_points(g, y).count(shifted) != 0;
}

// Index (into S.cells()) of the unique cell whose semi-polytope contains q.
inline std::size_t assign_owner(const Subdivision& s, const WeightVector& y,
                                const LatticePoint& q) {
  const BipartiteGraph& g = s.graph();
  if (!is_good(g, y, q)) fail(errc::not_good, "point lies on a positive facet of P_G");
  std::vector<std::size_t> hits;
  for (std::size_t c = 0; c < s.cells().size(); ++c)
    if (semi_contains(s.cells()[c], t_vector(s.cells()[c]), y, q)) hits.push_back(c);
  if (hits.size() != 1)
    fail(errc::broken_partition,
         std::to_string(hits.size()) + " cells claim the point; subdivision invalid");
  return hits.front();
}

inline Natural count_via_cells(const Subdivision& s, const WeightVector& y) {
  Natural out{0};
  for (const Tree& t : s.cells()) out += semi_count(t, y);
  return out;
}

inline Natural count_via_draconian(const BipartiteGraph& g, const WeightVector& y) {
  detail::require_weights_match(g, y);
  Natural out{0};
  for (const DraconianSequence& a : draconian_sequences(g)) {
    Natural term{1};
    for (std::size_t i = 0; i < a.size(); ++i) term *= binomial_ascending(y[i], a[i]);
    out += term;
  }
  return out;
}

// The generalized Ehrhart polynomial of P_G^- as a formal object: a set of
// exponent vectors (a_1..a_m), each contributing prod_i (y_i)_{a_i} / a_i!.
class CountPolynomial {
 public:
  explicit CountPolynomial(std::vector<std::vector<int>> exponents)
      : exponents_(std::move(exponents)) {
    std::sort(exponents_.begin(), exponents_.end());
    if (std::adjacent_find(exponents_.begin(), exponents_.end()) != exponents_.end())
      throw std::logic_error("duplicate exponent vector in count polynomial");
    for (const auto& a : exponents_)
      if (!exponents_.empty() &&
          std::accumulate(a.begin(), a.end(), 0) !=
              std::accumulate(exponents_.front().begin(), exponents_.front().end(), 0))
        throw std::logic_error("exponent vectors with different degrees");
  }

  const std::vector<std::vector<int>>& exponents() const { return exponents_; }

  Natural evaluate(const WeightVector& y) const {
    Natural out{0};
    for (const auto& a : exponents_) {
      if (a.size() != y.size()) fail(errc::invalid_weight, "weight vector length != m");
      Natural term{1};
      for (std::size_t i = 0; i < a.size(); ++i) term *= binomial_ascending(y[i], a[i]);
      out += term;
    }
    return out;
  }

  friend bool operator==(const CountPolynomial&, const CountPolynomial&) = default;

 private:
  std::vector<std::vector<int>> exponents_;
};

inline CountPolynomial ehrhart_terms(const Subdivision& s) {
  std::vector<std::vector<int>> exps;
  for (const Tree& t : s.cells()) exps.push_back(degree_vectors(t).ld);
  return CountPolynomial(std::move(exps));
}

inline CountPolynomial ehrhart_terms(const BipartiteGraph& g) {
  return CountPolynomial(draconian_sequences(g));
}

// The full identity chain: the left-degree vectors of the cells, the
// draconian sequences of G, and the lattice points of the trimmed polytope
// of the transposed graph at unit weights must coincide as sets, and the
// three counting routes must agree on the number.
struct ChainReport {
  bool pass = false;
  bool sets_equal = false;
  bool counts_equal = false;
  std::vector<std::vector<int>> ld_vectors;          // sorted
  std::vector<std::vector<int>> draconian;           // sorted
  std::vector<std::vector<int>> trimmed_transposed;  // sorted
  Natural cells_count;
  Natural draconian_count;
  std::size_t brute_count = 0;
};

inline ChainReport verify_chain(const BipartiteGraph& g, const WeightVector& y,
                                const Subdivision& s) {
  ChainReport rep;
  for (const Tree& t : s.cells()) rep.ld_vectors.push_back(degree_vectors(t).ld);
  std::sort(rep.ld_vectors.begin(), rep.ld_vectors.end());

  rep.draconian = draconian_sequences(g);

  const BipartiteGraph gt = transpose(g);
  for (const LatticePoint& p :
       trimmed_points(gt, WeightVector::ones(gt.left_count()))) {
    std::vector<int> v(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) v[k] = static_cast<int>(p[k]);
    rep.trimmed_transposed.push_back(std::move(v));
  }
  std::sort(rep.trimmed_transposed.begin(), rep.trimmed_transposed.end());

  rep.sets_equal =
      rep.ld_vectors == rep.draconian && rep.draconian == rep.trimmed_transposed;

  rep.cells_count = count_via_cells(s, y);
  rep.draconian_count = count_via_draconian(g, y);
  rep.brute_count = trimmed_points(g, y).size();
  rep.counts_equal = rep.cells_count == rep.draconian_count &&
                     rep.draconian_count == Natural{rep.brute_count};

  rep.pass = rep.sets_equal && rep.counts_equal;
  return rep;
}

}  // namespace permuto
