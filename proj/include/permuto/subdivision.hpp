#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "permuto/bigraph.hpp"
#include "permuto/errors.hpp"
#include "permuto/lattice.hpp"

// Construction of a fine mixed subdivision of P_G(y) by edge lifting: pick
// integer heights on the edges of G; a spanning tree survives when every
// non-tree edge has strictly positive alternating height sum around its
// fundamental cycle. The surviving cells tile P_G. The construction is
// never trusted: every subdivision is certified point-by-point against the
// set-sum oracle before it can be used.

namespace permuto {

// Enumeration-then-filter over all spanning trees; the practical cap. The
// CLI lets PERMUTO_SIZE_LIMIT raise it.
inline constexpr int kDefaultSizeLimit = 25;

namespace detail {

inline void require_desk_scale(const BipartiteGraph& g, int max_product) {
  const int prod = g.left_count() * g.right_count();
  if (prod > max_product)
    fail(errc::size_limit, "m*n = " + std::to_string(prod) + " exceeds the cap of " +
                               std::to_string(max_product) +
                               " (set PERMUTO_SIZE_LIMIT to override)");
}

inline void require_total_heights(const BipartiteGraph& g, const HeightFunction& h) {
  for (const Edge& e : g.edges())
    if (!h.count(e)) fail(errc::bad_input, "heights missing edge " + edge_str(e));
  if (h.size() != g.edges().size())
    for (const auto& [e, v] : h)
      if (!g.has_edge(e)) fail(errc::bad_input, "height given for non-edge " + edge_str(e));
}

inline std::vector<Edge> non_tree_edges(const BipartiteGraph& g, const Tree& t) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (!t.has_edge(e)) out.push_back(e);
  return out;
}

inline bool generic_over(const BipartiteGraph& g, const std::vector<Tree>& trees,
                         const HeightFunction& h) {
  for (const Tree& t : trees)
    for (const Edge& e : non_tree_edges(g, t))
      if (cycle_alt_sum(t, e, h) == 0) return false;
  return true;
}

}  // namespace detail

// Heights are generic when no fundamental cycle of any spanning tree has
// alternating sum zero; only generic heights produce a fine subdivision.
inline bool is_generic(const BipartiteGraph& g, const HeightFunction& h,
                       int max_product = kDefaultSizeLimit) {
  detail::require_desk_scale(g, max_product);
  detail::require_total_heights(g, h);
  return detail::generic_over(g, spanning_trees(g), h);
}

// Deterministic pseudo-random heights in [0, 2^20), retried with an
// incremented seed until generic.
inline HeightFunction random_heights(const BipartiteGraph& g, std::uint64_t seed,
                                     int max_product = kDefaultSizeLimit) {
  detail::require_desk_scale(g, max_product);
  const std::vector<Tree> trees = spanning_trees(g);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    HeightFunction h;
    for (const Edge& e : g.edges()) h[e] = static_cast<std::int64_t>(rng() & 0xFFFFF);
    if (detail::generic_over(g, trees, h)) return h;
  }
  fail(errc::genericity_exhausted,
       "no generic heights after " + std::to_string(kAttempts) + " attempts from seed " +
           std::to_string(seed));
}

// Certificate that a candidate tree list tiles the good points of P_G(y):
// every good lattice point owned by exactly one semi-polytope, and the
// formula total matching the set-sum count of the trimmed polytope.
struct ValidationReport {
  bool pass = false;
  Natural total_semi_count;
  std::size_t brute_count = 0;
  std::vector<LatticePoint> orphan_points;        // good, owned by no cell
  std::vector<LatticePoint> doubly_owned_points;  // owned by two or more cells
};

inline ValidationReport validate(const BipartiteGraph& g, const WeightVector& y,
                                 const std::vector<Tree>& cells) {
  detail::require_weights_match(g, y);
  for (const Tree& t : cells)
    Tree::spanning(g, t.edges());  // each candidate must be a spanning tree of G

  const PointSet points = minkowski_points(g, y);
  const PointSet trimmed = trimmed_points(g, y);

  std::vector<TVector> anchors;
  anchors.reserve(cells.size());
  for (const Tree& t : cells) anchors.push_back(t_vector(t));

  ValidationReport rep;
  rep.brute_count = trimmed.size();
  rep.total_semi_count = Natural{0};
  for (const Tree& t : cells) rep.total_semi_count += semi_count(t, y);

  for (const LatticePoint& q : points) {
    int owners = 0;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (semi_contains(cells[c], anchors[c], y, q)) ++owners;
    LatticePoint shifted = q;
    shifted[0] -= 1;
    const bool good = trimmed.count(shifted) != 0;
    if (good && owners == 0) rep.orphan_points.push_back(q);
    if (owners >= 2) rep.doubly_owned_points.push_back(q);
  }
  rep.pass = rep.orphan_points.empty() && rep.doubly_owned_points.empty() &&
             rep.total_semi_count == Natural{rep.brute_count};
  return rep;
}

// A certified fine mixed subdivision: the cell list, the graph, and the
// weights it was validated against. Values of this type cannot exist
// without passing validate(), and cells always carry distinct left-degree
// vectors.
class Subdivision {
 public:
  static Subdivision from_cells(const BipartiteGraph& g, const WeightVector& y,
                                std::vector<Tree> cells) {
    std::sort(cells.begin(), cells.end());
    ValidationReport rep = validate(g, y, cells);
    if (!rep.pass) {
      fail(errc::validation_failed,
           "cells do not tile the good points: total " + rep.total_semi_count.str() +
               " vs trimmed " + std::to_string(rep.brute_count) + ", " +
               std::to_string(rep.orphan_points.size()) + " orphaned, " +
               std::to_string(rep.doubly_owned_points.size()) + " doubly owned");
    }
    std::vector<std::vector<int>> lds;
    for (const Tree& t : cells) lds.push_back(degree_vectors(t).ld);
    std::sort(lds.begin(), lds.end());
    if (std::adjacent_find(lds.begin(), lds.end()) != lds.end())
      fail(errc::validation_failed, "two cells share a left-degree vector");
    return Subdivision(g, y, std::move(cells));
  }

  const BipartiteGraph& graph() const { return graph_; }
  const WeightVector& weights() const { return weights_; }
  const std::vector<Tree>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

 private:
  Subdivision(BipartiteGraph g, WeightVector y, std::vector<Tree> cells)
      : graph_(std::move(g)), weights_(std::move(y)), cells_(std::move(cells)) {}

  BipartiteGraph graph_;
  WeightVector weights_;
  std::vector<Tree> cells_;
};

// The regular fine mixed subdivision induced by lifting heights h: keep the
// trees whose fundamental cycles all have positive alternating sum. The
// orientation is fixed by validation at runtime: if the ">0" filter fails
// to certify, the complementary "<0" filter is tried once before erroring.
inline Subdivision generate_regular(const BipartiteGraph& g, const WeightVector& y,
                                    const HeightFunction& h,
                                    int max_product = kDefaultSizeLimit) {
  detail::require_desk_scale(g, max_product);
  detail::require_weights_match(g, y);
  detail::require_total_heights(g, h);

  const std::vector<Tree> trees = spanning_trees(g);
  if (!detail::generic_over(g, trees, h))
    fail(errc::non_generic_heights, "some fundamental cycle has alternating sum 0");

  auto filter = [&](int want_sign) {
    std::vector<Tree> kept;
    for (const Tree& t : trees) {
      bool all = true;
      for (const Edge& e : detail::non_tree_edges(g, t)) {
        std::int64_t s = cycle_alt_sum(t, e, h);
        if ((want_sign > 0 && s < 0) || (want_sign < 0 && s > 0)) {
          all = false;
          break;
        }
      }
      if (all) kept.push_back(t);
    }
    return kept;
  };

  try {
    return Subdivision::from_cells(g, y, filter(+1));
  } catch (const Error& e) {
    if (e.code() != errc::validation_failed) throw;
  }
  try {
    return Subdivision::from_cells(g, y, filter(-1));
  } catch (const Error& e) {
    if (e.code() != errc::validation_failed) throw;
    fail(errc::validation_failed,
         std::string("neither cycle-sign orientation yields a valid subdivision: ") +
             e.what());
  }
}

}  // namespace permuto
