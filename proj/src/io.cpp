#include "grasslab/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "grasslab/errors.hpp"

namespace grasslab {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

Json geometry_to_json(const LinearSpace& space) {
  Json j;
  j["label"] = space.label();
  j["n_points"] = space.n_points();
  Json lines = Json::array();
  for (int id = 0; id < space.n_lines(); ++id) lines.push_back(space.line_points(id));
  j["lines"] = std::move(lines);
  if (space.field()) j["field"] = *space.field();
  if (!space.coords().empty()) j["coords"] = space.coords();
  return j;
}

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("key \"") + key + "\" has the wrong type");
  }
}

}  // namespace

SpacePtr geometry_from_json(const Json& j) {
  int n = get<int>(j, "n_points");
  auto lines = get<std::vector<std::vector<int>>>(j, "lines");
  if (n <= 0) throw ParseError("n_points must be positive");
  for (const auto& l : lines)
    for (int p : l)
      if (p < 0 || p >= n) throw ParseError("line entry " + std::to_string(p) + " out of range");
  auto space = std::make_shared<LinearSpace>(n, std::move(lines), j.value("label", std::string{}));
  if (j.contains("field")) space->set_field(get<std::string>(j, "field"));
  if (j.contains("coords")) space->set_coords(get<std::vector<std::vector<int>>>(j, "coords"));
  return space;
}

Geometry load_geometry(const Json& j) {
  SpacePtr space = geometry_from_json(j);
  Geometry g{space, nullptr};
  if (!space->field() || space->coords().empty()) return g;
  auto field = gf::FieldSpec::parse(*space->field());
  const int n = static_cast<int>(space->coords().front().size()) - 1;
  if (n < 1) throw ParseError("coordinates must have at least two entries");
  auto pg = build_pg(n, field);
  if (pg->n_points() != space->n_points() || pg->space()->coords() != space->coords())
    throw ParseError("coordinatized geometry must list the points of PG(" + std::to_string(n) + "," +
                     std::to_string(field->q()) + ") in canonical order");
  auto line_set = [](const LinearSpace& s) {
    std::set<std::vector<int>> out;
    for (int id = 0; id < s.n_lines(); ++id) {
      auto pts = s.line_points(id);
      std::sort(pts.begin(), pts.end());
      out.insert(pts);
    }
    return out;
  };
  if (line_set(*pg->space()) != line_set(*space)) throw ParseError("lines do not match the coordinates");
  g.space = pg->space();
  g.pg = pg;
  return g;
}

Geometry load_geometry(const std::filesystem::path& path) { return load_geometry(read_json(path)); }

Json subspace_to_json(const ProjSubspace& s) {
  Json rows = Json::array();
  for (const auto& r : s.basis) rows.push_back(std::vector<int>(r.begin(), r.end()));
  return Json{{"dim", s.dim()}, {"rref", rows}};
}

Json point_map_to_json(const PointMap& g) {
  return Json{{"source", g.source->label()}, {"target", g.target->label()}, {"map", g.map}};
}

Json base_subset_to_json(const BaseSubset& b) {
  return Json{{"frame", b.frame().points}, {"k", b.k()}, {"members", b.members()}};
}

MapFile load_map(const Json& j, const std::filesystem::path& base_dir) {
  auto resolve = [&](const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    const Json& ref = j.at(key);
    if (ref.is_string()) return load_geometry(base_dir / ref.get<std::string>());
    if (ref.is_object()) return load_geometry(ref);
    throw ParseError(std::string("\"") + key + "\" must be a path or a geometry object");
  };
  MapFile m;
  m.source = resolve("source");
  m.target = resolve("target");
  m.k = get<int>(j, "k");
  m.map = get<std::vector<int>>(j, "map");
  return m;
}

MapFile load_map(const std::filesystem::path& path) { return load_map(read_json(path), path.parent_path()); }

Json map_to_json(const Json& source_ref, const Json& target_ref, int k, const std::vector<int>& map) {
  return Json{{"source", source_ref}, {"target", target_ref}, {"k", k}, {"map", map}};
}

GrassmannMap grassmann_map(const MapFile& m) {
  auto level = [&](const Geometry& g) {
    return g.pg ? GrassmannSpace::of_projective(g.pg, m.k) : GrassmannSpace::of_linear(g.space, m.k);
  };
  GrassmannMap f{level(m.source), level(m.target), m.map};
  if (static_cast<int>(f.map.size()) != f.source->size())
    throw ParseError("map has " + std::to_string(f.map.size()) + " entries, source level has " +
                     std::to_string(f.source->size()) + " elements");
  for (int y : f.map)
    if (y < 0 || y >= f.target->size()) throw ParseError("map value " + std::to_string(y) + " out of range");
  return f;
}

Json recognition_to_json(const RecognitionResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["recognized"] = r.recognized();
  if (r.witness) j["witness"] = point_map_to_json(*r.witness);
  if (r.witness_class) j["witness_class"] = to_string(r.witness_class->kind);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  j["diagnostic"] = r.diagnostic;
  return j;
}

Json grassmann_to_json(const GrassmannSpace& g) {
  Json j;
  j["ambient"] = g.ambient()->label();
  if (g.ambient()->field()) j["field"] = *g.ambient()->field();
  j["k"] = g.k();
  j["n"] = g.n();
  Json elements = Json::array();
  for (int i = 0; i < g.size(); ++i) {
    Json e{{"index", i}, {"points", to_vector(g.points(i))}};
    if (g.projective()) e["form"] = subspace_to_json(g.form(i));
    elements.push_back(std::move(e));
  }
  j["elements"] = std::move(elements);
  Json rows = Json::array();
  for (int i = 0; i < g.size(); ++i) {
    std::string bits(g.size(), '0');
    for (int c = 0; c < g.size(); ++c)
      if (g.adjacent(i, c)) bits[c] = '1';
    rows.push_back(bits);
  }
  j["adjacency"] = std::move(rows);
  return j;
}

std::string adjacency_dot(const GrassmannSpace& g, const std::string& name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  for (int i = 0; i < g.size(); ++i) out << "  " << i << ";\n";
  for (int i = 0; i < g.size(); ++i)
    for (int c = i + 1; c < g.size(); ++c)
      if (g.adjacent(i, c)) out << "  " << i << " -- " << c << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace grasslab
