#include <catch2/catch.hpp>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "permuto/decomp.hpp"

using namespace permuto;
using namespace testutil;

namespace {

Subdivision worked_subdivision() {
  return Subdivision::from_cells(k22(), WeightVector{{1, 2}}, {tree_t1(), tree_t3()});
}

}  // namespace

TEST_CASE("facet_descriptor reads the split across a tree edge") {
  WeightVector y{{1, 2}};
  SECTION("component of the anchor on the far side") {
    FacetDescriptor d = facet_descriptor(tree_t1(), y, {1, 2});
    CHECK(d.anchor_rights == std::vector<int>{1});
    CHECK(d.threshold == 1);
    CHECK(d.side == FacetSide::cell_below);
    CHECK(d.sign == FacetSign::negative);
  }
  SECTION("anchor isolated by the cut") {
    FacetDescriptor d = facet_descriptor(tree_t1(), y, {1, 1});
    CHECK(d.anchor_rights == std::vector<int>{1});
    CHECK(d.threshold == 0);
    CHECK(d.side == FacetSide::cell_above);
    CHECK(d.sign == FacetSign::positive);
  }
  SECTION("edges at left leaves expose no facet") {
    CHECK(error_code_of([&] { facet_descriptor(tree_t1(), y, {2, 2}); }) == errc::leaf_edge);
    CHECK(error_code_of([&] { facet_sign(tree_t1(), {2, 2}); }) == errc::leaf_edge);
  }
}

TEST_CASE("facet_sign follows the anchor rule") {
  CHECK(facet_sign(tree_t3(), {2, 1}) == FacetSign::positive);
  CHECK(facet_sign(tree_t3(), {2, 2}) == FacetSign::negative);
  CHECK(facet_sign(tree_t1(), {1, 2}) == FacetSign::negative);
}

TEST_CASE("semi_polytope_of_cell removes exactly the positive facets") {
  WeightVector y{{1, 2}};
  CHECK(semi_polytope_of_cell(tree_t1(), y).lattice_points() == PointSet{{1, 2}});
  CHECK(semi_polytope_of_cell(tree_t3(), y).lattice_points() == PointSet{{3, 0}, {2, 1}});
  Tree path_tree = spanning_trees(path_graph())[0];
  CHECK(semi_polytope_of_cell(path_tree, y).lattice_points() == PointSet{{3, 0}, {2, 1}});
}

TEST_CASE("semi-polytope enumeration agrees with the membership filter") {
  std::mt19937_64 rng(301);
  for (int iter = 0; iter < 8; ++iter) {
    BipartiteGraph g = random_graph(rng, 3, 3);
    WeightVector y = random_weights(rng, g.left_count());
    PointSet points = minkowski_points(g, y);
    for (const Tree& t : spanning_trees(g)) {
      SemiPolytope sp = semi_polytope_of_cell(t, y);
      PointSet filtered;
      for (const LatticePoint& q : points)
        if (sp.contains(q)) filtered.insert(q);
      CHECK(sp.lattice_points() == filtered);
      CHECK(Natural{sp.lattice_points().size()} == semi_count(t, y));
    }
  }
}

TEST_CASE("is_good tests the shifted point against the trimmed polytope") {
  BipartiteGraph g = k22();
  WeightVector y{{1, 2}};
  CHECK(is_good(g, y, {1, 2}));
  CHECK_FALSE(is_good(g, y, {0, 3}));
  CHECK(is_good(g, y, {3, 0}));
  CHECK(error_code_of([&] { is_good(g, y, {5, 5}); }) == errc::not_in_polytope);
}

TEST_CASE("assign_owner finds the unique owning cell") {
  Subdivision s = worked_subdivision();
  WeightVector y{{1, 2}};
  REQUIRE(s.cells()[0] == tree_t1());  // cells sorted: T1 < T3
  CHECK(assign_owner(s, y, {1, 2}) == 0);
  CHECK(assign_owner(s, y, {2, 1}) == 1);
  CHECK(assign_owner(s, y, {3, 0}) == 1);
  CHECK(error_code_of([&] { assign_owner(s, y, {0, 3}); }) == errc::not_good);
}

TEST_CASE("count_via_cells sums the per-cell formulas") {
  WeightVector y{{1, 2}};
  CHECK(count_via_cells(worked_subdivision(), y).to_u64() == 3);

  BipartiteGraph pg = path_graph();
  HeightFunction h;
  for (const Edge& e : pg.edges()) h[e] = 0;
  CHECK(count_via_cells(generate_regular(pg, y, h), y).to_u64() == 2);

  BipartiteGraph star = k_mn(1, 3);
  HeightFunction hs;
  for (const Edge& e : star.edges()) hs[e] = 0;
  WeightVector ys{{2}};
  CHECK(count_via_cells(generate_regular(star, ys, hs), ys).to_u64() == 3);
}

TEST_CASE("count_via_draconian sums raising powers over the sequences") {
  CHECK(count_via_draconian(k22(), WeightVector{{1, 2}}).to_u64() == 3);
  CHECK(count_via_draconian(path_graph(), WeightVector{{1, 2}}).to_u64() == 2);

  std::mt19937_64 rng(311);
  for (int iter = 0; iter < 10; ++iter) {
    BipartiteGraph g = random_graph(rng);
    CHECK(count_via_draconian(g, WeightVector::ones(g.left_count())) ==
          Natural{draconian_sequences(g).size()});
  }
}

TEST_CASE("ehrhart_terms collects the exponent vectors") {
  CountPolynomial from_graph = ehrhart_terms(k22());
  CHECK(from_graph.exponents() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(from_graph.evaluate(WeightVector{{1, 2}}).to_u64() == 3);

  CHECK(ehrhart_terms(path_graph()).exponents() == std::vector<std::vector<int>>{{0, 1}});
  CHECK(ehrhart_terms(k_mn(1, 4)).exponents() == std::vector<std::vector<int>>{{3}});

  CountPolynomial from_cells = ehrhart_terms(worked_subdivision());
  CHECK(from_cells == from_graph);
}

TEST_CASE("verify_chain passes on the worked instances") {
  SECTION("K22") {
    ChainReport rep = verify_chain(k22(), WeightVector{{1, 2}}, worked_subdivision());
    CHECK(rep.pass);
    CHECK(rep.ld_vectors == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(rep.draconian == rep.ld_vectors);
    CHECK(rep.trimmed_transposed == rep.ld_vectors);
    CHECK(rep.cells_count.to_u64() == 3);
    CHECK(rep.draconian_count.to_u64() == 3);
    CHECK(rep.brute_count == 3);
  }
  SECTION("path graph") {
    BipartiteGraph pg = path_graph();
    WeightVector y{{1, 2}};
    HeightFunction h;
    for (const Edge& e : pg.edges()) h[e] = 0;
    ChainReport rep = verify_chain(pg, y, generate_regular(pg, y, h));
    CHECK(rep.pass);
    CHECK(rep.ld_vectors == std::vector<std::vector<int>>{{0, 1}});
    CHECK(rep.cells_count.to_u64() == 2);
  }
  SECTION("single simplex") {
    BipartiteGraph star = k_mn(1, 3);
    WeightVector y{{2}};
    HeightFunction h;
    for (const Edge& e : star.edges()) h[e] = 0;
    ChainReport rep = verify_chain(star, y, generate_regular(star, y, h));
    CHECK(rep.pass);
    CHECK(rep.ld_vectors == std::vector<std::vector<int>>{{2}});
    CHECK(rep.brute_count == 3);
  }
}

TEST_CASE("partition property: good points owned once, others not at all") {
  std::mt19937_64 rng(321);
  for (int iter = 0; iter < 8; ++iter) {
    BipartiteGraph g = random_graph(rng);
    WeightVector y = random_weights(rng, g.left_count());
    Subdivision s = generate_regular(g, y, random_heights(g, 400 + iter));
    PointSet points = minkowski_points(g, y);
    PointSet trimmed = trimmed_points(g, y);
    std::vector<TVector> anchors;
    for (const Tree& t : s.cells()) anchors.push_back(t_vector(t));
    for (const LatticePoint& q : points) {
      int owners = 0;
      for (std::size_t c = 0; c < s.cells().size(); ++c)
        if (semi_contains(s.cells()[c], anchors[c], y, q)) ++owners;
      LatticePoint shifted = q;
      shifted[0] -= 1;
      CHECK(owners == (trimmed.count(shifted) ? 1 : 0));
    }
  }
}

TEST_CASE("shift bijection between good points and the trimmed polytope") {
  std::mt19937_64 rng(331);
  for (int iter = 0; iter < 8; ++iter) {
    BipartiteGraph g = random_graph(rng);
    WeightVector y = random_weights(rng, g.left_count());
    PointSet points = minkowski_points(g, y);
    PointSet trimmed = trimmed_points(g, y);
    std::size_t good_count = 0;
    for (const LatticePoint& q : points) {
      if (!is_good(g, y, q)) continue;
      ++good_count;
      LatticePoint p = q;
      p[0] -= 1;
      CHECK(trimmed.count(p) == 1);
    }
    CHECK(good_count == trimmed.size());
    for (const LatticePoint& p : trimmed) {
      LatticePoint q = p;
      q[0] += 1;
      CHECK(points.count(q) == 1);
      CHECK(is_good(g, y, q));
    }
  }
}

TEST_CASE("positive facets are exactly the anchor edges at non-leaf vertices") {
  std::mt19937_64 rng(341);
  for (int iter = 0; iter < 8; ++iter) {
    BipartiteGraph g = random_graph(rng);
    WeightVector y = random_weights(rng, g.left_count());
    for (const Tree& t : spanning_trees(g)) {
      TVector tv = t_vector(t);
      for (const Edge& e : t.edges()) {
        if (t.degree_of_left(e.left) == 1) continue;
        FacetDescriptor d = facet_descriptor(t, y, e);
        CHECK((d.sign == FacetSign::positive) == (tv[e.left - 1] == e.right));
        CHECK((d.side == FacetSide::cell_above) == (d.sign == FacetSign::positive));
        CHECK(d.anchor_rights.front() == 1);
        CHECK(d.anchor_rights.size() < static_cast<std::size_t>(g.right_count()));
      }
    }
  }
}

TEST_CASE("shared facets of adjacent cells carry opposite signs") {
  std::mt19937_64 rng(351);
  for (int iter = 0; iter < 8; ++iter) {
    BipartiteGraph g = random_graph(rng);
    WeightVector y = random_weights(rng, g.left_count());
    Subdivision s = generate_regular(g, y, random_heights(g, 500 + iter));
    // facet identity: the lattice points of the facet polytope
    std::map<PointSet, std::vector<std::pair<std::size_t, FacetDescriptor>>> facets;
    for (std::size_t c = 0; c < s.cells().size(); ++c) {
      const Tree& t = s.cells()[c];
      for (const Edge& e : t.edges()) {
        if (t.degree_of_left(e.left) == 1) continue;
        FacetDescriptor d = facet_descriptor(t, y, e);
        PointSet pts;
        {
          PointSet acc;
          for (int i = 1; i <= g.left_count(); ++i) {
            std::vector<int> sup = t.neighbors_of_left(i);
            if (i == e.left) std::erase(sup, e.right);
            PointSet part = simplex_points(sup, y[i - 1], g.right_count());
            acc = (i == 1) ? std::move(part) : minkowski_sum(acc, part);
          }
          pts = std::move(acc);
        }
        facets[pts].push_back({c, d});
      }
    }
    for (const auto& [pts, shared] : facets) {
      REQUIRE(shared.size() <= 2);
      if (shared.size() == 2) {
        CHECK(shared[0].first != shared[1].first);
        CHECK(shared[0].second.anchor_rights == shared[1].second.anchor_rights);
        CHECK(shared[0].second.threshold == shared[1].second.threshold);
        CHECK(shared[0].second.sign != shared[1].second.sign);
      }
    }
  }
}

TEST_CASE("count_via_draconian stays exact far beyond 64 bits") {
  // K23 has draconian sequences (0,2),(1,1),(2,0), so at y1 = y2 = y the
  // count is 2 C(y+1,2) + y^2 = 2y^2 + y.
  const std::int64_t y = 4000000000000000000;
  Natural got = count_via_draconian(k_mn(2, 3), WeightVector{{y, y}});
  CHECK(got == Natural::from_decimal("32000000000000000004000000000000000000"));
  CHECK(ehrhart_terms(k_mn(2, 3)).evaluate(WeightVector{{y, y}}) == got);
}

TEST_CASE("hexagon graph: the 6-cycle worked by hand") {
  // I_1 = {1,2}, I_2 = {2,3}, I_3 = {1,3}: P_G is a hexagon for generic y.
  // Each |I_i| = 2 forces a_i <= 1, so the draconian sequences are the
  // permutations of (1,1,0), and at unit weights the count is 3.
  BipartiteGraph hex =
      validate_graph(3, 3, {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 1}, {3, 3}});
  CHECK(draconian_sequences(hex) ==
        std::vector<DraconianSequence>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  WeightVector ones = WeightVector::ones(3);
  CHECK(count_via_draconian(hex, ones).to_u64() == 3);
  CHECK(trimmed_points(hex, ones).size() == 3);
  Subdivision s = generate_regular(hex, ones, random_heights(hex, 1));
  CHECK(s.size() == 3);
  CHECK(verify_chain(hex, ones, s).pass);
}

TEST_CASE("count identities hold for several weights per graph") {
  std::mt19937_64 rng(361);
  for (int iter = 0; iter < 8; ++iter) {
    BipartiteGraph g = random_graph(rng);
    HeightFunction h = random_heights(g, 600 + iter);
    for (int rep = 0; rep < 3; ++rep) {
      WeightVector y = random_weights(rng, g.left_count(), 4);
      Subdivision s = generate_regular(g, y, h);
      Natural a = count_via_cells(s, y);
      Natural b = count_via_draconian(g, y);
      CHECK(a == b);
      CHECK(a == Natural{trimmed_points(g, y).size()});
    }
  }
}
