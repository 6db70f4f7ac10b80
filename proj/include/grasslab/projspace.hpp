#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grasslab/gf.hpp"
#include "grasslab/linspace.hpp"

namespace grasslab {

using Row = std::vector<gf::Elem>;
using Matrix = std::vector<Row>;

/// Row-reduced echelon form with zero rows dropped. Pivots are 1 and rows are
/// sorted by pivot column, so equal row spaces give identical matrices.
Matrix rref(const gf::FieldSpec& f, Matrix m);
int rank(const gf::FieldSpec& f, const Matrix& m);
Matrix multiply(const gf::FieldSpec& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix identity_matrix(int size);
std::optional<Matrix> inverse(const gf::FieldSpec& f, const Matrix& m);
/// Entrywise Frobenius power.
Matrix frobenius(const gf::FieldSpec& f, const Matrix& m, int j);
Row frobenius(const gf::FieldSpec& f, const Row& r, int j);
/// x * M for a row vector x.
Row apply(const gf::FieldSpec& f, const Row& x, const Matrix& m);
/// Scales so that the first nonzero coordinate is 1. Throws on the zero vector.
Row normalize(const gf::FieldSpec& f, Row r);
/// Basis (in RREF) of {y : y . x = 0 for all rows x of m}, for vectors of length `cols`.
Matrix annihilator(const gf::FieldSpec& f, const Matrix& m, int cols);

/// A subspace of PG(n,q): an RREF basis of the underlying vector subspace.
/// The empty subspace has no rows.
struct ProjSubspace {
  Matrix basis;
  int cols = 0;

  int dim() const { return static_cast<int>(basis.size()) - 1; }
  std::string key() const;
  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b) { return a.basis == b.basis && a.cols == b.cols; }
};

/// PG(n,q) with canonical point order (RREF enumeration of 1-row matrices) and
/// its incidence structure as a LinearSpace whose line ids follow subspaces(1).
class ProjectiveSpace {
 public:
  ProjectiveSpace(int n, gf::Field field);

  int n() const { return n_; }
  const gf::Field& field() const { return field_; }
  const gf::FieldSpec& f() const { return *field_; }
  int n_points() const { return static_cast<int>(points_.size()); }
  const Row& point(int i) const { return points_[i]; }
  const std::vector<Row>& points() const { return points_; }
  /// Index of the point spanned by a nonzero vector.
  int index_of(const Row& v) const;
  const SpacePtr& space() const { return space_; }

  /// Every subspace of the given projective dimension in a fixed order:
  /// pivot patterns lexicographically, then free entries as a counter.
  std::vector<ProjSubspace> subspaces(int dim) const;

  ProjSubspace empty() const { return {{}, n_ + 1}; }
  ProjSubspace whole() const;
  ProjSubspace point_subspace(int p) const { return {{points_[p]}, n_ + 1}; }
  ProjSubspace from_rows(Matrix rows) const;
  ProjSubspace of_points(const PointSet& s) const;
  PointSet points_of(const ProjSubspace& s) const;

  ProjSubspace span(const ProjSubspace& a, const ProjSubspace& b) const;
  ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b) const;
  /// Annihilator under the dot-product pairing, as a subspace of the dual
  /// coordinate space (which has the same shape, so it is again a subspace here).
  ProjSubspace annihilator(const ProjSubspace& s) const;

  /// Number of points on a subspace of projective dimension d.
  long long points_in_dim(int d) const;

 private:
  void require_ambient(const ProjSubspace& s) const;

  int n_;
  gf::Field field_;
  std::vector<Row> points_;
  std::unordered_map<std::string, int> index_;
  SpacePtr space_;
};

using PGPtr = std::shared_ptr<const ProjectiveSpace>;

/// PG(n,q) for n >= 1; the LinearSpace carries field, coordinates and the
/// exchange hint.
PGPtr build_pg(int n, const gf::Field& field);

/// x -> sigma(x) * matrix, sigma the Frobenius power `sigma`.
/// `dual` marks a map composed with the annihilator duality; it changes only
/// how Grassmann lifts read the map (images land at the complementary level).
struct SemilinearMap {
  Matrix matrix;
  int sigma = 0;
  bool dual = false;
};

/// (a after b): matrix sigma_a(M_b) * M_a, automorphism indices added mod m.
SemilinearMap compose(const gf::FieldSpec& f, const SemilinearMap& a, const SemilinearMap& b);

/// P(l) as a point map of `pg` onto itself. Throws PreconditionError for a
/// singular matrix or a dual-flagged map.
PointMap induced_point_map(const PGPtr& pg, const SemilinearMap& l);

/// Point map PG(n,q) -> PG(n',q') from x -> embed(x) * matrix, where the
/// source field is GF(p) and `matrix` has entries in the target field.
/// Throws PreconditionError if some point maps to the zero vector.
PointMap linear_point_map(const PGPtr& source, const PGPtr& target, const Matrix& matrix);

/// Finds a semilinear map inducing the given point permutation, if any, by
/// solving on the standard frame plus the unit point.
std::optional<SemilinearMap> semilinear_from_collineation(const PGPtr& pg, const std::vector<int>& perm);

/// Pi*: points are the hyperplanes of Pi in subspaces(n-1) order, lines are
/// the pencils of hyperplanes through an (n-2)-subspace.
struct DualSpace {
  PGPtr pg;
  SpacePtr space;
  std::vector<ProjSubspace> hyperplanes;
  /// Point of the dual coordinate space (same PG) that annihilates hyperplane i.
  std::vector<int> annihilator_point;

  /// A subspace of Pi* (given by its points) -> the meet of those hyperplanes.
  ProjSubspace to_primal(const PointSet& dual_points) const;
  /// All hyperplanes containing U.
  PointSet from_primal(const ProjSubspace& u) const;
};

DualSpace dual_space(const PGPtr& pg);

/// Hyperplane -> its annihilator point, as a map from the dual space to pg.
PointMap annihilator_collineation(const DualSpace& dual);

struct ProjectiveAxioms {
  bool p1 = true;
  bool p2 = true;
  std::optional<int> short_line;
  /// Two disjoint lines of a common plane, and that plane.
  std::optional<std::pair<int, int>> disjoint_lines;
  std::optional<PointSet> plane;
  std::size_t planes_checked = 0;
  bool holds() const { return p1 && p2; }
};

/// P2 on every line; P1 inside every plane, planes being closures of a line
/// and a point off it.
ProjectiveAxioms verify_projective_axioms(const LinearSpace& space);

/// Gaussian binomial [n choose k]_q.
long long gaussian_binomial(int n, int k, int q);

}  // namespace grasslab
