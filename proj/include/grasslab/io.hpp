#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "grasslab/baseset.hpp"
#include "grasslab/chow.hpp"
#include "grasslab/grassmann.hpp"
#include "grasslab/linspace.hpp"
#include "grasslab/projspace.hpp"

namespace grasslab {

/// Keys keep insertion order so that exports are byte-stable.
using Json = nlohmann::ordered_json;

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// { label, n_points, lines, field?, coords? }
Json geometry_to_json(const LinearSpace& space);
/// Structural parse; line lists are taken as given (validate() separately).
SpacePtr geometry_from_json(const Json& j);

/// A parsed geometry; `pg` is set when the file carries a field and
/// coordinates, after checking that it lists PG(n,q) in canonical order.
struct Geometry {
  SpacePtr space;
  PGPtr pg;
};
Geometry load_geometry(const Json& j);
Geometry load_geometry(const std::filesystem::path& path);

Json subspace_to_json(const ProjSubspace& s);
Json point_map_to_json(const PointMap& g);
Json base_subset_to_json(const BaseSubset& b);

/// Map file: { source, target, k, map }. Geometry references are either a
/// path (relative to the map file) or an inline geometry object.
struct MapFile {
  Geometry source;
  Geometry target;
  int k = 0;
  std::vector<int> map;
};
MapFile load_map(const Json& j, const std::filesystem::path& base_dir);
MapFile load_map(const std::filesystem::path& path);
Json map_to_json(const Json& source_ref, const Json& target_ref, int k, const std::vector<int>& map);

/// The Grassmann spaces a map file talks about, with the map checked for range.
GrassmannMap grassmann_map(const MapFile& m);

Json recognition_to_json(const RecognitionResult& r);

/// Elements (points, canonical forms when projective) and the adjacency
/// matrix as one bitstring per row.
Json grassmann_to_json(const GrassmannSpace& g);
/// Undirected adjacency graph; node ids are element indices.
std::string adjacency_dot(const GrassmannSpace& g, const std::string& name);

}  // namespace grasslab
