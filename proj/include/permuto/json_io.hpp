#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "permuto/bigraph.hpp"
#include "permuto/decomp.hpp"
#include "permuto/errors.hpp"
#include "permuto/lattice.hpp"
#include "permuto/subdivision.hpp"

// Wire formats. All structured I/O is JSON with 1-indexed vertices and
// sorted keys, so identical inputs always serialize to identical bytes.
//
//   graph     {"m":2,"n":2,"edges":[[1,1],[1,2],[2,1],[2,2]]}
//   heights   {"heights":[{"edge":[1,2],"h":7}, ...]}
//   cells     {"cells":[{"edges":[[1,1],[1,2],[2,2]]}, ...]}
//
// Counts are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings beyond that.

namespace permuto {

using json = nlohmann::json;

namespace detail {

inline const json& expect(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    fail(errc::bad_input, std::string(what) + ": missing key \"" + key + "\"");
  return j.at(key);
}

inline Edge edge_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(errc::bad_input, std::string(what) + ": edge must be [left,right]");
  return Edge{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

inline json edge_to_json(Edge e) { return json::array({e.left, e.right}); }

inline json graph_to_json(const BipartiteGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(edge_to_json(e));
  return json{{"m", g.left_count()}, {"n", g.right_count()}, {"edges", edges}};
}

inline BipartiteGraph graph_from_json(const json& j) {
  const json& jm = detail::expect(j, "m", "graph");
  const json& jn = detail::expect(j, "n", "graph");
  const json& je = detail::expect(j, "edges", "graph");
  if (!jm.is_number_integer() || !jn.is_number_integer())
    fail(errc::bad_input, "graph: m and n must be integers");
  if (!je.is_array()) fail(errc::bad_input, "graph: edges must be an array");
  std::vector<Edge> edges;
  for (const json& e : je) edges.push_back(detail::edge_from_json(e, "graph"));
  return validate_graph(jm.get<int>(), jn.get<int>(), std::move(edges));
}

inline json heights_to_json(const HeightFunction& h) {
  json arr = json::array();
  for (const auto& [e, v] : h) arr.push_back(json{{"edge", edge_to_json(e)}, {"h", v}});
  return json{{"heights", arr}};
}

inline HeightFunction heights_from_json(const json& j, const BipartiteGraph& g) {
  const json& arr = detail::expect(j, "heights", "heights");
  if (!arr.is_array()) fail(errc::bad_input, "heights: expected an array");
  HeightFunction h;
  for (const json& entry : arr) {
    Edge e = detail::edge_from_json(detail::expect(entry, "edge", "heights"), "heights");
    const json& hv = detail::expect(entry, "h", "heights");
    if (!hv.is_number_integer()) fail(errc::bad_input, "heights: h must be an integer");
    if (h.count(e)) fail(errc::bad_input, "heights: edge " + edge_str(e) + " listed twice");
    const std::int64_t v = hv.get<std::int64_t>();
    // keep alternating sums over tree paths comfortably inside int64
    if (v > (std::int64_t{1} << 40) || v < -(std::int64_t{1} << 40))
      fail(errc::bad_input, "heights: |h| must be at most 2^40");
    h[e] = v;
  }
  detail::require_total_heights(g, h);
  return h;
}

inline json cells_to_json(const std::vector<Tree>& cells) {
  json arr = json::array();
  for (const Tree& t : cells) {
    json edges = json::array();
    for (const Edge& e : t.edges()) edges.push_back(edge_to_json(e));
    arr.push_back(json{{"edges", edges}});
  }
  return json{{"cells", arr}};
}

inline json cells_to_json(const Subdivision& s) { return cells_to_json(s.cells()); }

inline std::vector<Tree> cells_from_json(const json& j, const BipartiteGraph& g) {
  const json& arr = detail::expect(j, "cells", "cells");
  if (!arr.is_array()) fail(errc::bad_input, "cells: expected an array");
  std::vector<Tree> out;
  for (const json& cell : arr) {
    const json& je = detail::expect(cell, "edges", "cells");
    if (!je.is_array()) fail(errc::bad_input, "cells: edges must be an array");
    std::vector<Edge> edges;
    for (const json& e : je) edges.push_back(detail::edge_from_json(e, "cells"));
    out.push_back(Tree::spanning(g, std::move(edges)));
  }
  return out;
}

inline json point_to_json(const LatticePoint& p) {
  json arr = json::array();
  for (std::int64_t v : p) arr.push_back(v);
  return arr;
}

inline LatticePoint point_from_json(const json& j) {
  if (!j.is_array()) fail(errc::bad_input, "point: expected an array");
  LatticePoint p;
  for (const json& v : j) {
    if (!v.is_number_integer()) fail(errc::bad_input, "point: coordinates must be integers");
    p.push_back(v.get<std::int64_t>());
  }
  return p;
}

inline json points_to_json(const PointSet& pts) {
  json arr = json::array();
  for (const LatticePoint& p : pts) arr.push_back(point_to_json(p));
  return arr;
}

inline json points_to_json(const std::vector<LatticePoint>& pts) {
  json arr = json::array();
  for (const LatticePoint& p : pts) arr.push_back(point_to_json(p));
  return arr;
}

inline json count_to_json(const Natural& c) {
  if (c.fits_u64()) return json(c.to_u64());
  return json(c.str());
}

inline Natural count_from_json(const json& j) {
  if (j.is_number_unsigned()) return Natural{j.get<std::uint64_t>()};
  if (j.is_string()) return Natural::from_decimal(j.get<std::string>());
  fail(errc::bad_input, "count: expected a nonnegative number or decimal string");
}

inline json int_vectors_to_json(const std::vector<std::vector<int>>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(json(v));
  return arr;
}

inline json validation_report_to_json(const ValidationReport& rep) {
  return json{{"pass", rep.pass},
              {"total_semi_count", count_to_json(rep.total_semi_count)},
              {"brute_count", rep.brute_count},
              {"orphan_points", points_to_json(rep.orphan_points)},
              {"doubly_owned_points", points_to_json(rep.doubly_owned_points)}};
}

inline json chain_report_to_json(const ChainReport& rep) {
  return json{{"pass", rep.pass},
              {"sets_equal", rep.sets_equal},
              {"counts_equal", rep.counts_equal},
              {"ld_vectors", int_vectors_to_json(rep.ld_vectors)},
              {"draconian", int_vectors_to_json(rep.draconian)},
              {"trimmed_transposed", int_vectors_to_json(rep.trimmed_transposed)},
              {"counts",
               json{{"cells", count_to_json(rep.cells_count)},
                    {"draconian", count_to_json(rep.draconian_count)},
                    {"brute", rep.brute_count}}}};
}

}  // namespace permuto
