#pragma once

#include <string>
#include <vector>

#include "grasslab/io.hpp"

namespace grasslab {

struct Claim {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// A concrete counterexample with the assertions that make it one.
struct GalleryItem {
  std::string id;
  std::string title;
  Json construction;
  std::vector<Claim> claims;

  bool passed() const;
  Json to_json() const;
};

/// PG(3,q) with the first plane (in subspace order) collapsed into one line.
SpacePtr make_kreuzer_plane(const PGPtr& pg3);
/// PG(n,q) with one point deleted.
Restriction make_punctured(const PGPtr& pg, int deleted);

/// Line traces of punctured PG(3,q) -> the lines they lie on.
GrassmannMap one_sided_bijection_map(int q = 2, int deleted = 0);

/// Identity on points, PG(3,q) -> the collapsed plane: a semicollineation
/// that is not a collineation, between spaces of dimensions 3 and 2.
GalleryItem kreuzer_plane(int q);
/// Exchange holds but two lines of one plane miss each other.
GalleryItem punctured(int q, int deleted = 0);
/// A maximal clique of lines in punctured PG(3,q) that is neither a star nor a top.
GalleryItem clique_not_top(int q);
/// Lines of punctured PG(3,q) onto lines of PG(3,q): adjacency and base
/// subsets are preserved forward only.
GalleryItem one_sided_bijection(int q);
/// The embedding PG(3,2) -> PG(2,16), x -> (x1+x4 w, x2+x4 w^2, x3+x4 w^3):
/// an embedding that is not strong.
GalleryItem brezuleanu_radulescu();
/// Lines of a plane S of PG(4,q), identical except one line sent to a line
/// skew to S: base subsets land inside base subsets, yet no point map induces it.
GalleryItem base_into_base_not_embedding(int q);

std::vector<std::string> gallery_ids();
/// Throws PreconditionError for an unknown id.
GalleryItem build_gallery_item(const std::string& id, int q = 2);

}  // namespace grasslab
