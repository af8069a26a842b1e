#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "permuto/decomp.hpp"
#include "permuto/errors.hpp"
#include "permuto/lattice.hpp"
#include "permuto/subdivision.hpp"

// Static SVG figures of a subdivision, its facet signs and the lattice-point
// ownership. n = 2 draws the polytope as a number line segment, n = 3 as a
// barycentric projection of the ambient triangle. Output bytes depend only
// on the inputs.

namespace permuto {

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline const char* cell_color(std::size_t idx) {
  static const char* kPalette[] = {"#4878cf", "#d65f5f", "#6acc65", "#b47cc7",
                                   "#c4ad66", "#77bedb", "#e0884f", "#8c8c8c"};
  return kPalette[idx % 8];
}

// Convex hull (monotone chain) of exact integer 2D points; returns the hull
// in counterclockwise order without repeating the first point.
inline std::vector<std::pair<std::int64_t, std::int64_t>> hull2d(
    std::vector<std::pair<std::int64_t, std::int64_t>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](auto o, auto a, auto b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Vertex candidates of y_1 D_{J_1} + ... picking one support element per
// summand; the convex hull of these is the cell (or facet) polytope.
inline std::vector<LatticePoint> summand_vertex_sums(
    const std::vector<std::vector<int>>& supports, const WeightVector& y, int n) {
  std::vector<LatticePoint> out;
  LatticePoint cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == supports.size()) {
      out.push_back(cur);
      return;
    }
    for (int j : supports[i]) {
      cur[j - 1] += y[i];
      self(self, i + 1);
      cur[j - 1] -= y[i];
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

inline std::string render_svg(const Subdivision& s) {
  const BipartiteGraph& g = s.graph();
  const WeightVector& y = s.weights();
  const int n = g.right_count();
  if (n != 2 && n != 3)
    fail(errc::unsupported_dimension,
         "rendering supports n in {2,3}, got n = " + std::to_string(n));

  const double W = 520.0, H = (n == 2) ? 200.0 : 520.0, margin = 60.0;
  const std::int64_t total = y.sum();
  const PointSet points = minkowski_points(g, y);
  const PointSet trimmed = trimmed_points(g, y);

  // Drawing coordinates. n=2: the segment parametrized by x_1. n=3: the
  // barycentric image of (x_1,x_2,x_3) in a fixed triangle.
  auto place = [&](const LatticePoint& p) -> std::pair<double, double> {
    if (n == 2) {
      double u = static_cast<double>(p[0]) / static_cast<double>(total);
      return {margin + u * (W - 2 * margin), H / 2};
    }
    const double ax = margin, ay = H - margin;             // all mass on x_1
    const double bx = W - margin, by = H - margin;         // all mass on x_2
    const double cx = W / 2, cy = margin;                  // all mass on x_3
    const double t = static_cast<double>(total);
    double u = (p[0] * ax + p[1] * bx + p[2] * cx) / t;
    double v = (p[0] * ay + p[1] * by + p[2] * cy) / t;
    return {u, v};
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(W) +
         "\" height=\"" + detail::fmt(H) + "\" viewBox=\"0 0 " + detail::fmt(W) + " " +
         detail::fmt(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Ownership of every good lattice point.
  std::map<LatticePoint, std::size_t> owner;
  for (const LatticePoint& q : points) {
    for (std::size_t c = 0; c < s.cells().size(); ++c) {
      if (semi_contains(s.cells()[c], t_vector(s.cells()[c]), y, q)) {
        owner[q] = c;
        break;
      }
    }
  }

  // Cell bodies.
  for (std::size_t c = 0; c < s.cells().size(); ++c) {
    const Tree& t = s.cells()[c];
    std::vector<std::vector<int>> supports;
    for (int i = 1; i <= g.left_count(); ++i) supports.push_back(t.neighbors_of_left(i));
    std::vector<LatticePoint> cand = detail::summand_vertex_sums(supports, y, n);
    if (n == 2) {
      std::int64_t lo = cand[0][0], hi = cand[0][0];
      for (const auto& p : cand) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
      auto a = place({lo, total - lo}), b = place({hi, total - hi});
      double dy = 12.0 + 10.0 * static_cast<double>(c);
      svg += "<line x1=\"" + detail::fmt(a.first) + "\" y1=\"" + detail::fmt(a.second - dy) +
             "\" x2=\"" + detail::fmt(b.first) + "\" y2=\"" + detail::fmt(b.second - dy) +
             "\" stroke=\"" + detail::cell_color(c) + "\" stroke-width=\"5\"/>\n";
    } else {
      std::vector<std::pair<std::int64_t, std::int64_t>> flat;
      for (const auto& p : cand) flat.push_back({p[1], p[2]});
      auto hull = detail::hull2d(flat);
      std::string pts_attr;
      for (const auto& [x2, x3] : hull) {
        auto pos = place({total - x2 - x3, x2, x3});
        pts_attr += detail::fmt(pos.first) + "," + detail::fmt(pos.second) + " ";
      }
      svg += "<polygon points=\"" + pts_attr + "\" fill=\"" + detail::cell_color(c) +
             "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
    }
  }

  // Facets: dashed when positive (removed from the semi-polytope). Solid
  // ones first so a shared facet shows its removed side on top.
  std::vector<std::pair<std::size_t, Edge>> facet_order;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t c = 0; c < s.cells().size(); ++c) {
      const Tree& t = s.cells()[c];
      for (const Edge& e : t.edges()) {
        if (t.degree_of_left(e.left) == 1) continue;
        const bool positive = facet_sign(t, e) == FacetSign::positive;
        if (positive == (pass == 1)) facet_order.push_back({c, e});
      }
    }
  for (const auto& [c, e] : facet_order) {
    const Tree& t = s.cells()[c];
    FacetDescriptor d = facet_descriptor(t, y, e);
    std::vector<std::vector<int>> supports;
    for (int i = 1; i <= g.left_count(); ++i) {
      std::vector<int> sup = t.neighbors_of_left(i);
      if (i == e.left) std::erase(sup, e.right);
      supports.push_back(std::move(sup));
    }
    std::vector<LatticePoint> cand = detail::summand_vertex_sums(supports, y, n);
    const std::string dash =
        d.sign == FacetSign::positive ? " stroke-dasharray=\"5,4\"" : "";
    if (n == 2) {
      auto pos = place(cand[0]);
      svg += "<line x1=\"" + detail::fmt(pos.first) + "\" y1=\"" +
             detail::fmt(pos.second - 26.0) + "\" x2=\"" + detail::fmt(pos.first) +
             "\" y2=\"" + detail::fmt(pos.second + 8.0) + "\" stroke=\"" +
             detail::cell_color(c) + "\" stroke-width=\"2\"" + dash + "/>\n";
    } else {
      std::vector<std::pair<std::int64_t, std::int64_t>> flat;
      for (const auto& p : cand) flat.push_back({p[1], p[2]});
      auto hull = detail::hull2d(flat);
      auto a = hull.front(), b = hull.back();
      auto pa = place({total - a.first - a.second, a.first, a.second});
      auto pb = place({total - b.first - b.second, b.first, b.second});
      svg += "<line x1=\"" + detail::fmt(pa.first) + "\" y1=\"" + detail::fmt(pa.second) +
             "\" x2=\"" + detail::fmt(pb.first) + "\" y2=\"" + detail::fmt(pb.second) +
             "\" stroke=\"" + detail::cell_color(c) + "\" stroke-width=\"2\"" + dash +
             "/>\n";
    }
  }

  if (n == 2) {
    auto a = place({0, total}), b = place({total, 0});
    svg += "<line x1=\"" + detail::fmt(a.first) + "\" y1=\"" + detail::fmt(a.second) +
           "\" x2=\"" + detail::fmt(b.first) + "\" y2=\"" + detail::fmt(b.second) +
           "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  }

  // Lattice points: filled with the owner's color when good, hollow otherwise.
  for (const LatticePoint& q : points) {
    LatticePoint shifted = q;
    shifted[0] -= 1;
    const bool good = trimmed.count(shifted) != 0;
    auto pos = place(q);
    if (good) {
      auto it = owner.find(q);
      const char* color = it != owner.end() ? detail::cell_color(it->second) : "#000000";
      svg += "<circle cx=\"" + detail::fmt(pos.first) + "\" cy=\"" + detail::fmt(pos.second) +
             "\" r=\"5\" fill=\"" + color + "\" stroke=\"#222222\"/>\n";
    } else {
      svg += "<circle cx=\"" + detail::fmt(pos.first) + "\" cy=\"" + detail::fmt(pos.second) +
             "\" r=\"4\" fill=\"white\" stroke=\"#999999\"/>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace permuto
