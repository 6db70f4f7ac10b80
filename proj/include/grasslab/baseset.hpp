#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "grasslab/grassmann.hpp"

namespace grasslab {

/// Ordered base p_1..p_{n+1}; frame index i refers to points[i].
struct Frame {
  std::vector<int> points;
};

bool is_frame(const LinearSpace& space, const Frame& frame);

/// Every frame (as sorted point lists), by depth-first extension of
/// independent sets. Throws BoundError past `max_frames`.
std::vector<Frame> all_frames(const LinearSpace& space, std::size_t max_frames = 200'000);

/// Adds uniformly chosen points outside the current closure until the set spans.
Frame random_frame(const LinearSpace& space, std::mt19937_64& rng);

/// Subset of the members of one base subset, bit p = member at position p.
using MemberMask = std::uint64_t;

/// The k-subspaces spanned by (k+1)-subsets of a frame. Member positions
/// follow the (k+1)-subsets of frame indices in lexicographic order.
class BaseSubset {
 public:
  /// Throws PreconditionError unless `frame` is a base of the ambient, and
  /// BoundError above 64 members.
  BaseSubset(GrassPtr g, Frame frame);
  struct Unchecked {};
  /// Skips the base test, for frames produced by all_frames().
  BaseSubset(GrassPtr g, Frame frame, Unchecked);

  const GrassPtr& grassmann() const { return g_; }
  const Frame& frame() const { return frame_; }
  int k() const { return g_->k(); }
  int n() const { return g_->n(); }
  int size() const { return static_cast<int>(members_.size()); }

  /// Element index of the member at a position.
  int member(int pos) const { return members_[pos]; }
  const std::vector<int>& members() const { return members_; }
  /// Frame indices spanning the member at a position.
  std::uint32_t support(int pos) const { return supports_[pos]; }
  int position_of_support(std::uint32_t support) const;
  int position_of_element(int element) const;

  MemberMask all() const { return size() == 64 ? ~MemberMask{0} : (MemberMask{1} << size()) - 1; }
  /// Member elements selected by a mask, as a set of element indices.
  PointSet elements(MemberMask mask) const;

 private:
  void build();

  GrassPtr g_;
  Frame frame_;
  std::vector<int> members_;
  std::vector<std::uint32_t> supports_;
};

/// Members through p_i.
MemberMask plus(const BaseSubset& b, int i);
/// Members avoiding p_i.
MemberMask minus(const BaseSubset& b, int i);
/// Members incident to S (contained in S or containing it). S must be the
/// closure of frame points; otherwise PreconditionError.
MemberMask incident(const BaseSubset& b, const PointSet& s);

/// |members incident to a frame-spanned m-subspace|: C(m+1,k+1) if m >= k,
/// C(n-m,k-m) otherwise.
long long incident_count(int n, int k, int m);
long long binomial(int n, int r);

/// Whether a single frame spans both elements. Projective ambients use the
/// dimension formula; others search all frames.
bool co_spannable(const GrassmannSpace& g, int i, int j);

struct SiValue {
  PointSet points;
  /// No member of R passes through p_i; `points` is then the whole space.
  bool vacuous = false;
};

/// Intersection of all members of R through p_i.
SiValue s_i(const BaseSubset& b, MemberMask r, int i);

/// S_i(R) = {p_i} for every i.
bool is_exact(const BaseSubset& b, MemberMask r);

/// Every base subset of one Grassmann space, with an element -> base subset index.
class FrameIndex {
 public:
  explicit FrameIndex(GrassPtr g, std::size_t max_frames = 200'000);

  std::size_t frame_count() const { return frames_; }
  std::size_t base_subset_count() const { return base_subsets_.size(); }
  const std::vector<PointSet>& base_subsets() const { return base_subsets_; }
  /// Number of distinct base subsets containing all the given elements.
  std::size_t count_containing(const PointSet& elements) const;
  bool is_base_subset(const PointSet& elements) const;

 private:
  GrassPtr g_;
  std::size_t frames_ = 0;
  std::vector<PointSet> base_subsets_;
  std::vector<std::vector<int>> containing_;
};

/// R is exact iff exactly one base subset contains it.
bool is_exact_oracle(const FrameIndex& index, const BaseSubset& b, MemberMask r);

struct InexactFamilyMember {
  int i;
  int j;
  MemberMask mask;
};

/// Minus(i) together with the members containing the line p_i p_j, for each
/// ordered pair i != j.
std::vector<InexactFamilyMember> maximal_inexact_family(const BaseSubset& b);

/// All maximal inexact masks by enumerating every subset (at most 20 members).
/// Inexactness is inherited by subsets, so maximal means every one-member
/// extension is exact.
std::vector<MemberMask> maximal_inexact_exhaustive(const BaseSubset& b,
                                                   const std::function<bool(MemberMask)>& exact);

/// Members through p_i and avoiding p_j. Throws PreconditionError if i == j.
MemberMask complement_subset(const BaseSubset& b, int i, int j);

/// Size m of the collections used to recover adjacency: min{k, n-k-1}.
int regular_size(int n, int k);

using IndexPair = std::pair<int, int>;

/// Collections of m+1 complement subsets: regular iff their intersection is a
/// single member. Collections of m: regular iff some (m+1)-th complement subset
/// completes them. Other sizes throw PreconditionError.
bool is_regular(const BaseSubset& b, const std::vector<IndexPair>& pairs);

/// Index criterion for m+1 complement subsets: the i's and j's are disjoint and
/// the i's are distinct (n > 2k+1), the i's or the j's are distinct (n = 2k+1),
/// or the j's are distinct (n < 2k+1).
bool regular_by_index_criterion(int n, int k, const std::vector<IndexPair>& pairs);

/// Distinct members u, v (positions) lie together in every complement subset of
/// some regular collection of size m.
bool combinatorial_adjacent(const BaseSubset& b, int u, int v);

/// Recovers the frame of a set of elements that forms a base subset: frame
/// points lie in exactly C(n,k) of the elements, every other point in fewer.
/// Returns the frame (sorted) after verifying, or nullopt.
std::optional<Frame> frame_of_base_subset(const GrassmannSpace& g, const PointSet& elements);

}  // namespace grasslab
