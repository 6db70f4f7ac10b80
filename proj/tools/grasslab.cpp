// grasslab: command-line front end to the geometry library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 semantic failure
// (unrecognized map, failing suite or gallery claim).

#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "grasslab/errors.hpp"
#include "grasslab/gallery.hpp"
#include "grasslab/io.hpp"
#include "grasslab/suites.hpp"

namespace fs = std::filesystem;
using namespace grasslab;

namespace {

struct Globals {
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 0;
};

FramePolicy parse_frames(const std::string& text, std::uint64_t seed) {
  FramePolicy p;
  p.seed = seed;
  if (text == "all") {
    p.mode = FramePolicy::Mode::all;
  } else if (text.rfind("sample:", 0) == 0) {
    try {
      p.samples = std::stoul(text.substr(7));
    } catch (const std::exception&) {
      throw ParseError("bad frame policy \"" + text + "\"");
    }
  } else if (text != "sample") {
    throw ParseError("frame policy must be all, sample or sample:N");
  }
  return p;
}

int emit_report(const Report& r, const Globals& g) {
  std::cout << (g.json ? dump(r.to_json(g.timing)) : r.to_text(g.timing));
  return r.passed() ? 0 : 2;
}

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
}

int cmd_build(const std::string& kind, int n, int q, int point, int points, const std::string& out,
              const std::string& geometry, int k, const std::string& map_kind, const Globals& g) {
  SpacePtr space;
  Json summary;
  if (kind == "pg") {
    if (n < 2) throw PreconditionError("n must be at least 2");
    auto pg = build_pg(n, gf::FieldSpec::of_order(q));
    space = pg->space();
    summary["points"] = pg->n_points();
    summary["lines"] = space->n_lines();
    summary["planes"] = pg->subspaces(2).size();
  } else if (kind == "punctured") {
    if (n < 2) throw PreconditionError("n must be at least 2");
    auto pg = build_pg(n, gf::FieldSpec::of_order(q));
    space = make_punctured(pg, point).space;
  } else if (kind == "kreuzer") {
    space = make_kreuzer_plane(build_pg(3, gf::FieldSpec::of_order(q)));
  } else if (kind == "complete") {
    space = complete_graph_space(points);
  } else if (kind == "map") {
    if (geometry.empty() || out.empty()) throw PreconditionError("build map needs --geometry and --out");
    auto geo = load_geometry(fs::path(geometry));
    if (!geo.pg) throw PreconditionError("build map needs a coordinatized projective geometry");
    auto gs = GrassmannSpace::of_projective(geo.pg, k);
    std::mt19937_64 rng(g.seed);
    std::vector<int> map;
    if (map_kind == "collineation" || map_kind == "duality") {
      auto pm = induced_point_map(geo.pg, {random_invertible(geo.pg->f(), geo.pg->n() + 1, rng), 0, false});
      auto f = lift_point_map(pm, gs, gs);
      if (map_kind == "duality") {
        if (geo.pg->n() != 2 * k + 1) throw PreconditionError("a duality stays at level k only when n = 2k+1");
        f = compose_with_annihilator(f);
      }
      map = f.map;
    } else if (map_kind == "permutation") {
      for (int i = 0; i < gs->size(); ++i) map.push_back(i);
      std::shuffle(map.begin(), map.end(), rng);
    } else {
      throw PreconditionError("map kind must be collineation, duality or permutation");
    }
    fs::path out_path(out);
    fs::path base = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
    std::string ref = fs::relative(fs::absolute(geometry), fs::absolute(base)).generic_string();
    write_text(out_path, dump(map_to_json(ref, ref, k, map)));
    summary["elements"] = gs->size();
    summary["kind"] = map_kind;
    summary["out"] = out;
    std::cout << (g.json ? dump(summary) : "wrote " + map_kind + " map on " + std::to_string(gs->size()) + " elements to " + out + "\n");
    return 0;
  } else {
    throw PreconditionError("unknown geometry kind \"" + kind + "\"");
  }
  if (!summary.contains("points")) {
    summary["points"] = space->n_points();
    summary["lines"] = space->n_lines();
  }
  summary["label"] = space->label();
  if (!out.empty()) write_text(out, dump(geometry_to_json(*space)));
  if (g.json) {
    std::cout << dump(summary);
  } else {
    std::cout << space->label() << ": " << summary["points"].get<int>() << " points, " << summary["lines"].get<int>()
              << " lines";
    if (summary.contains("planes")) std::cout << ", " << summary["planes"].get<int>() << " planes";
    std::cout << "\n";
  }
  return 0;
}

int cmd_check(const std::string& what, const std::string& geometry, int k, const std::string& frames, const Globals& g) {
  std::optional<Geometry> geo;
  if (!geometry.empty()) geo = load_geometry(fs::path(geometry));
  auto need = [&]() -> const Geometry& {
    if (!geo) throw PreconditionError("check " + what + " needs a geometry file");
    return *geo;
  };
  if (what == "axioms") return emit_report(check_axioms(*need().space), g);
  if (what == "exchange") return emit_report(check_exchange_report(*need().space), g);
  if (what == "bases") return emit_report(check_bases(*need().space), g);
  if (what == "projective") return emit_report(check_projective(*need().space), g);
  if (what == "baseset-lemmas") {
    if (!need().pg) throw PreconditionError("base-subset checks need a coordinatized projective geometry");
    return emit_report(check_baseset_lemmas(geo->pg, k, parse_frames(frames, g.seed)), g);
  }
  if (what == "all") {
    SuiteOptions o;
    o.seed = g.seed;
    o.geometry = geo;
    o.k = k;
    o.frames = parse_frames(frames, g.seed);
    return emit_report(check_all(o), g);
  }
  throw PreconditionError("unknown check \"" + what + "\"");
}

int cmd_recognize(const std::string& map_path, const std::string& mode, const std::string& frames, const Globals& g) {
  MapFile mf = load_map(fs::path(map_path));
  GrassmannMap f = grassmann_map(mf);
  RecognizeOptions opts;
  if (mode == "chow")
    opts.mode = RecognitionMode::chow;
  else if (mode == "baseset")
    opts.mode = RecognitionMode::baseset;
  else
    throw ParseError("mode must be chow or baseset");
  opts.frames = parse_frames(frames, g.seed);
  auto res = recognize(f, opts);
  if (g.json) {
    std::cout << dump(recognition_to_json(res));
  } else {
    std::cout << "verdict: " << to_string(res.verdict) << "\n";
    for (const auto& c : res.checks)
      std::cout << "  " << (c.passed ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    if (!res.diagnostic.empty()) std::cout << "diagnostic: " << res.diagnostic << "\n";
    if (res.witness) std::cout << "witness: " << Json(res.witness->map).dump() << "\n";
  }
  return res.recognized() ? 0 : 2;
}

int cmd_gallery(const std::string& item, const std::string& out, int q, const Globals& g) {
  std::vector<std::string> ids = item.empty() ? gallery_ids() : std::vector<std::string>{item};
  bool ok = true;
  Json summary = Json::array();
  for (const auto& id : ids) {
    auto it = build_gallery_item(id, q);
    if (!out.empty()) write_text(fs::path(out) / (id + ".json"), dump(it.to_json()));
    ok = ok && it.passed();
    summary.push_back(Json{{"id", id}, {"passed", it.passed()}, {"claims", it.claims.size()}});
    if (!g.json) {
      std::cout << (it.passed() ? "PASS " : "FAIL ") << id << " (" << it.claims.size() << " claims)\n";
      for (const auto& c : it.claims)
        if (!c.passed) std::cout << "  failed: " << c.name << "\n";
    }
  }
  if (g.json) std::cout << dump(summary);
  return ok ? 0 : 2;
}

int cmd_export(const std::string& format, const std::string& geometry, int k, const std::string& out) {
  auto geo = load_geometry(fs::path(geometry));
  auto gs = geo.pg ? GrassmannSpace::of_projective(geo.pg, k) : GrassmannSpace::of_linear(geo.space, k);
  if (format == "dot")
    write_or_print(out, adjacency_dot(*gs, "G" + std::to_string(k) + "(" + geo.space->label() + ")"));
  else if (format == "json")
    write_or_print(out, dump(grassmann_to_json(*gs)));
  else
    throw ParseError("export format must be dot or json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite linear spaces, Grassmann graphs and their structure-preserving maps"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON on stdout");
  app.add_flag("--timing", g.timing, "Include per-check timings in reports");
  app.add_option("--seed", g.seed, "Seed for randomized steps")->default_val(0);

  std::string kind, out, geometry, map_kind = "collineation";
  int n = 3, q = 2, point = 0, points = 5, k = 1;
  auto* build = app.add_subcommand("build", "Build a geometry (or a map between PG Grassmannians)");
  build->add_option("what", kind, "pg | punctured | kreuzer | complete | map")->required();
  build->add_option("--n", n, "Projective dimension");
  build->add_option("--q", q, "Field order");
  build->add_option("--point", point, "Deleted point (punctured)");
  build->add_option("--points", points, "Point count (complete)");
  build->add_option("--out", out, "Output file");
  build->add_option("--geometry", geometry, "Geometry file (map)");
  build->add_option("--k", k, "Grassmann level (map)");
  build->add_option("--map-kind", map_kind, "collineation | duality | permutation (map)");

  std::string what, frames = "sample";
  auto* check = app.add_subcommand("check", "Run property checks");
  check->add_option("what", what, "axioms | exchange | bases | projective | baseset-lemmas | all")->required();
  check->add_option("geometry", geometry, "Geometry file");
  check->add_option("--k", k, "Grassmann level");
  check->add_option("--frames", frames, "all | sample | sample:N");

  std::string map_path, mode = "chow";
  auto* rec = app.add_subcommand("recognize", "Recognize the point map behind a Grassmann map");
  rec->add_option("--map", map_path, "Map file")->required();
  rec->add_option("--mode", mode, "chow | baseset");
  rec->add_option("--frames", frames, "all | sample | sample:N");

  std::string action, item;
  auto* gal = app.add_subcommand("gallery", "Build the counterexample gallery");
  gal->add_option("action", action, "run")->required();
  gal->add_option("--item", item, "Only this item");
  gal->add_option("--out", out, "Output directory");
  gal->add_option("--q", q, "Field order");

  std::string format;
  auto* exp = app.add_subcommand("export", "Export a Grassmann graph");
  exp->add_option("format", format, "dot | json")->required();
  exp->add_option("geometry", geometry, "Geometry file")->required();
  exp->add_option("--k", k, "Grassmann level");
  exp->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) return cmd_build(kind, n, q, point, points, out, geometry, k, map_kind, g);
    if (*check) return cmd_check(what, geometry, k, frames, g);
    if (*rec) return cmd_recognize(map_path, mode, frames, g);
    if (*gal) {
      if (action != "run") throw ParseError("gallery action must be run");
      return cmd_gallery(item, out, q, g);
    }
    if (*exp) return cmd_export(format, geometry, k, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
