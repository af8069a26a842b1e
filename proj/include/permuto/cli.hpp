#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permuto/decomp.hpp"
#include "permuto/json_io.hpp"
#include "permuto/render.hpp"

// Command-line front end.
//
//   permuto-decomp <count|decompose|subdivide|draconian|verify|render>
//       --graph G.json --y 1,2,3 [--seed N | --heights H.json]
//       [--method M] [--cells-file C.json] [--seeds 1,2,3] [--out PATH]
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 input error.

namespace permuto::cli {

struct RunConfig {
  std::string graph_path;
  std::vector<std::int64_t> y;
  std::optional<std::uint64_t> seed;
  std::string heights_path;
  std::string cells_path;
  std::vector<std::uint64_t> seeds;
  std::string method = "all";
  std::string out_path;
  int size_limit = kDefaultSizeLimit;
};

namespace detail {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::bad_input, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    fail(errc::bad_input, "invalid JSON in " + path + ": " + e.what());
  }
}

inline BipartiteGraph load_graph(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) fail(errc::bad_input, "--graph is required");
  return graph_from_json(parse_json_file(cfg.graph_path));
}

inline WeightVector load_weights(const RunConfig& cfg, const BipartiteGraph& g) {
  if (cfg.y.empty()) fail(errc::bad_input, "--y is required");
  WeightVector y{cfg.y};
  permuto::detail::require_weights_match(g, y);
  return y;
}

inline HeightFunction load_heights(const RunConfig& cfg, const BipartiteGraph& g) {
  if (!cfg.heights_path.empty())
    return heights_from_json(parse_json_file(cfg.heights_path), g);
  if (cfg.seed) return random_heights(g, *cfg.seed, cfg.size_limit);
  fail(errc::bad_input, "a subdivision is needed: give --seed or --heights");
}

inline void emit(const json& j, const RunConfig& cfg, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) fail(errc::bad_input, "cannot write file: " + cfg.out_path);
    f << text;
  }
}

}  // namespace detail

inline int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const BipartiteGraph g = detail::load_graph(cfg);
  const WeightVector y = detail::load_weights(cfg, g);
  const std::string& method = cfg.method;
  if (method != "cells" && method != "draconian" && method != "brute" && method != "all")
    fail(errc::bad_input, "--method must be one of cells, draconian, brute, all");

  json counts = json::object();
  if (method == "brute" || method == "all")
    counts["brute"] = trimmed_points(g, y).size();
  if (method == "draconian" || method == "all")
    counts["draconian"] = count_to_json(count_via_draconian(g, y));
  if (method == "cells" || method == "all") {
    Subdivision s = generate_regular(g, y, detail::load_heights(cfg, g), cfg.size_limit);
    counts["cells"] = count_to_json(count_via_cells(s, y));
  }

  json result{{"method", method}, {"y", cfg.y}, {"counts", counts}};
  int code = 0;
  if (method == "all") {
    const bool equal = counts["brute"] == counts["draconian"] &&
                       counts["draconian"] == counts["cells"];
    result["equal"] = equal;
    if (!equal) code = 1;
  }
  detail::emit(result, cfg, out);
  return code;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  const BipartiteGraph g = detail::load_graph(cfg);
  const WeightVector y = detail::load_weights(cfg, g);
  const Subdivision s = generate_regular(g, y, detail::load_heights(cfg, g), cfg.size_limit);

  const PointSet points = minkowski_points(g, y);
  const PointSet trimmed = trimmed_points(g, y);

  json cells = json::array();
  Natural total{0};
  std::size_t good_count = 0;
  for (std::size_t c = 0; c < s.cells().size(); ++c) {
    const Tree& t = s.cells()[c];
    const TVector anchor = t_vector(t);
    json edges = json::array();
    for (const Edge& e : t.edges()) edges.push_back(edge_to_json(e));
    std::vector<LatticePoint> owned;
    for (const LatticePoint& q : points)
      if (semi_contains(t, anchor, y, q)) owned.push_back(q);
    const Natural sc = semi_count(t, y);
    total += sc;
    good_count += owned.size();
    cells.push_back(json{{"index", c + 1},
                         {"edges", edges},
                         {"t", anchor},
                         {"ld", degree_vectors(t).ld},
                         {"semi_count", count_to_json(sc)},
                         {"owned_points", points_to_json(owned)}});
  }

  json shift = json::array();
  for (const LatticePoint& p : trimmed) {
    LatticePoint q = p;
    q[0] += 1;
    shift.push_back(json{{"good", point_to_json(q)}, {"trimmed", point_to_json(p)}});
  }

  json result{{"graph", graph_to_json(g)},
              {"y", cfg.y},
              {"cells", cells},
              {"totals", json{{"cell_count", s.size()},
                              {"total_semi_count", count_to_json(total)},
                              {"trimmed_count", trimmed.size()},
                              {"good_count", good_count}}},
              {"shift_table", shift}};
  detail::emit(result, cfg, out);
  return 0;
}

inline int cmd_subdivide(const RunConfig& cfg, std::ostream& out) {
  const BipartiteGraph g = detail::load_graph(cfg);
  const WeightVector y = detail::load_weights(cfg, g);
  const Subdivision s = generate_regular(g, y, detail::load_heights(cfg, g), cfg.size_limit);
  detail::emit(cells_to_json(s), cfg, out);
  return 0;
}

inline int cmd_draconian(const RunConfig& cfg, std::ostream& out) {
  const BipartiteGraph g = detail::load_graph(cfg);
  const std::vector<DraconianSequence> seqs = draconian_sequences(g);
  json result{{"m", g.left_count()},
              {"n", g.right_count()},
              {"count", seqs.size()},
              {"sequences", int_vectors_to_json(seqs)}};
  detail::emit(result, cfg, out);
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const BipartiteGraph g = detail::load_graph(cfg);
  const WeightVector y = detail::load_weights(cfg, g);

  if (!cfg.cells_path.empty()) {
    const std::vector<Tree> cells =
        cells_from_json(detail::parse_json_file(cfg.cells_path), g);
    const ValidationReport rep = validate(g, y, cells);
    json result{{"mode", "cells-file"}, {"validation", validation_report_to_json(rep)}};
    bool pass = rep.pass;
    if (pass) {
      try {
        const Subdivision s = Subdivision::from_cells(g, y, cells);
        const ChainReport chain = verify_chain(g, y, s);
        result["chain"] = chain_report_to_json(chain);
        pass = chain.pass;
      } catch (const Error& e) {
        if (e.code() != errc::validation_failed) throw;
        result["chain_error"] = e.what();
        pass = false;
      }
    }
    result["pass"] = pass;
    detail::emit(result, cfg, out);
    return pass ? 0 : 1;
  }

  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (seeds.empty() && cfg.seed) seeds = {*cfg.seed};
  json runs = json::array();
  bool all_pass = true;
  std::vector<CountPolynomial> polys;

  if (!cfg.heights_path.empty()) {
    const Subdivision s =
        generate_regular(g, y, detail::load_heights(cfg, g), cfg.size_limit);
    const ChainReport chain = verify_chain(g, y, s);
    json run = chain_report_to_json(chain);
    run["heights_file"] = cfg.heights_path;
    runs.push_back(run);
    all_pass = chain.pass;
    polys.push_back(ehrhart_terms(s));
  } else {
    if (seeds.empty()) seeds = {1, 2};
    for (std::uint64_t seed : seeds) {
      const Subdivision s =
          generate_regular(g, y, random_heights(g, seed, cfg.size_limit), cfg.size_limit);
      const ChainReport chain = verify_chain(g, y, s);
      json run = chain_report_to_json(chain);
      run["seed"] = seed;
      runs.push_back(run);
      all_pass = all_pass && chain.pass;
      polys.push_back(ehrhart_terms(s));
    }
  }

  bool cross_equal = true;
  for (std::size_t k = 1; k < polys.size(); ++k)
    cross_equal = cross_equal && polys[k] == polys[0];
  all_pass = all_pass && cross_equal;

  json result{{"mode", cfg.heights_path.empty() ? "seeds" : "heights"},
              {"runs", runs},
              {"cross_seed_ld_equal", cross_equal},
              {"pass", all_pass}};
  detail::emit(result, cfg, out);
  return all_pass ? 0 : 1;
}

inline int cmd_render(const RunConfig& cfg, std::ostream& out) {
  const BipartiteGraph g = detail::load_graph(cfg);
  const WeightVector y = detail::load_weights(cfg, g);
  const Subdivision s = generate_regular(g, y, detail::load_heights(cfg, g), cfg.size_limit);
  const std::string svg = render_svg(s);
  if (cfg.out_path.empty()) {
    out << svg;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) fail(errc::bad_input, "cannot write file: " + cfg.out_path);
    f << svg;
  }
  return 0;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact semi-polytope decompositions of generalized permutohedra"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("PERMUTO_SIZE_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      err << "PERMUTO_SIZE_LIMIT must be a positive integer\n";
      return 2;
    }
    cfg.size_limit = static_cast<int>(v);
  }

  auto add_common = [&](CLI::App* sub, bool wants_y) {
    sub->add_option("--graph", cfg.graph_path, "graph JSON file")->required();
    if (wants_y)
      sub->add_option("--y", cfg.y, "dilation weights y_1,..,y_m")
          ->required()
          ->delimiter(',');
    sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
  };
  auto add_subdivision_source = [&](CLI::App* sub) {
    auto* seed = sub->add_option("--seed", cfg.seed, "seed for random lifting heights");
    sub->add_option("--heights", cfg.heights_path, "heights JSON file")->excludes(seed);
  };

  CLI::App* count = app.add_subcommand("count", "count lattice points of the trimmed polytope");
  add_common(count, true);
  add_subdivision_source(count);
  count->add_option("--method", cfg.method, "cells | draconian | brute | all");

  CLI::App* decompose = app.add_subcommand("decompose", "full per-cell decomposition report");
  add_common(decompose, true);
  add_subdivision_source(decompose);

  CLI::App* subdivide = app.add_subcommand("subdivide", "emit a fine mixed subdivision");
  add_common(subdivide, true);
  add_subdivision_source(subdivide);

  CLI::App* draconian = app.add_subcommand("draconian", "list the G-draconian sequences");
  draconian->add_option("--graph", cfg.graph_path, "graph JSON file")->required();
  draconian->add_option("--out", cfg.out_path, "output path (default: stdout)");

  CLI::App* verify = app.add_subcommand("verify", "verify the counting identities");
  add_common(verify, true);
  auto* seeds_opt =
      verify->add_option("--seeds", cfg.seeds, "height seeds (default: 1,2)")->delimiter(',');
  auto* seed_opt = verify->add_option("--seed", cfg.seed, "single height seed")
                       ->excludes(seeds_opt);
  auto* heights_opt = verify->add_option("--heights", cfg.heights_path, "heights JSON file")
                          ->excludes(seeds_opt)
                          ->excludes(seed_opt);
  verify->add_option("--cells-file", cfg.cells_path, "validate an explicit cell list")
      ->excludes(seeds_opt)
      ->excludes(seed_opt)
      ->excludes(heights_opt);

  CLI::App* render = app.add_subcommand("render", "draw the decomposition as SVG (n = 2 or 3)");
  add_common(render, true);
  add_subdivision_source(render);

  std::vector<const char*> argv;
  argv.push_back("permuto-decomp");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    int code = app.exit(e, msg, msg);
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) return cmd_count(cfg, out);
    if (decompose->parsed()) return cmd_decompose(cfg, out);
    if (subdivide->parsed()) return cmd_subdivide(cfg, out);
    if (draconian->parsed()) return cmd_draconian(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (render->parsed()) return cmd_render(cfg, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return (e.code() == errc::validation_failed || e.code() == errc::broken_partition) ? 1 : 2;
  }
  return 2;
}

}  // namespace permuto::cli
