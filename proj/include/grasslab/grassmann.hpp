#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "grasslab/linspace.hpp"
#include "grasslab/projspace.hpp"

namespace grasslab {

/// All k-dimensional subspaces of a space, indexed, with the adjacency graph.
///
/// Over a PG the elements are in ProjectiveSpace::subspaces(k) order and carry
/// their RREF forms; over an abstract space they are closed point sets sorted
/// by their point lists. Elements and adjacency rows are PointSets indexed by
/// element (adjacency) or ambient point (element).
class GrassmannSpace {
 public:
  static std::shared_ptr<const GrassmannSpace> of_projective(const PGPtr& pg, int k);
  static std::shared_ptr<const GrassmannSpace> of_linear(const SpacePtr& space, int k);

  int k() const { return k_; }
  int size() const { return static_cast<int>(elements_.size()); }
  /// Dimension of the ambient space.
  int n() const { return n_; }
  const SpacePtr& ambient() const { return ambient_; }
  /// Null for abstract ambients.
  const PGPtr& projective() const { return pg_; }

  const PointSet& points(int i) const { return elements_[i]; }
  /// RREF form; projective ambients only.
  const ProjSubspace& form(int i) const;
  /// -1 if the set is not an element.
  int index_of(const PointSet& s) const;
  int index_of(const ProjSubspace& s) const;

  bool adjacent(int i, int j) const { return adjacency_[i].test(j); }
  const PointSet& adjacency_row(int i) const { return adjacency_[i]; }
  std::size_t edge_count() const;

  int meet_dim(int i, int j) const;
  int span_dim(int i, int j) const;

  /// Subspaces of the ambient of the given dimension, as point sets (stars
  /// are centred on dim k-1, tops on dim k+1).
  std::vector<PointSet> subspaces_of_dim(int dim) const;
  /// Dimension of an arbitrary subspace of the ambient.
  int dim_of(const PointSet& s) const;

 private:
  GrassmannSpace() = default;
  void build_adjacency();

  int k_ = 0;
  int n_ = 0;
  SpacePtr ambient_;
  PGPtr pg_;
  std::vector<PointSet> elements_;
  std::vector<ProjSubspace> forms_;
  std::unordered_map<PointSet, int> index_;
  std::vector<PointSet> adjacency_;
};

using GrassPtr = std::shared_ptr<const GrassmannSpace>;

/// BFS distances from `from`; -1 marks unreachable elements.
std::vector<int> distances_from(const GrassmannSpace& g, int from);
int distance(const GrassmannSpace& g, int i, int j);

/// Path of length k - dim(meet) obtained by swapping, one at a time, the
/// points of a base of S outside S∩U for points of a base of U.
/// Projective ambients only.
std::vector<int> connecting_path(const GrassmannSpace& g, int i, int j);

struct AdjacentSet {
  enum class Kind { star, top };
  Kind kind;
  PointSet center;
  /// Element indices.
  PointSet members;
};

/// Elements containing a (k-1)-dimensional centre. Throws PreconditionError on a wrong dimension.
AdjacentSet star(const GrassmannSpace& g, const PointSet& center);
/// Elements contained in a (k+1)-dimensional centre.
AdjacentSet top(const GrassmannSpace& g, const PointSet& center);
std::vector<AdjacentSet> all_stars(const GrassmannSpace& g);
std::vector<AdjacentSet> all_tops(const GrassmannSpace& g);

bool pairwise_adjacent(const GrassmannSpace& g, const PointSet& members);

/// Every maximal clique of the adjacency graph (Bron–Kerbosch with pivoting).
/// Throws BoundError when the space has more than `cap` elements.
std::vector<PointSet> maximal_cliques(const GrassmannSpace& g, int cap = 500);

/// Star or top equal to the clique, if any: the star on the meet of all
/// members, the top on the closure of their union.
std::optional<AdjacentSet> classify_clique(const GrassmannSpace& g, const PointSet& clique);

/// Adjacency read off complements: S_i, S_j are related iff some third element S
/// has every complement of S among the complements of S_i or S_j. Exhaustive
/// over G_k and the complementary Grassmannian; projective ambients only.
class ComplementAdjacency {
 public:
  explicit ComplementAdjacency(const GrassPtr& g);
  bool operator()(int i, int j) const;

 private:
  GrassPtr g_;
  /// complements_[s] = indices of elements of G_{n-k-1} disjoint from element s.
  std::vector<PointSet> complements_;
};

}  // namespace grasslab
