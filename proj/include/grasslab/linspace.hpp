#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace grasslab {

/// A set of point indices of one space; always sized to that space's point count.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

PointSet make_point_set(int n_points, std::initializer_list<int> points);
PointSet make_point_set(int n_points, const std::vector<int>& points);
std::vector<int> to_vector(const PointSet& s);

/// Finite point/line incidence structure. Points are 0..n_points-1; lines are
/// stored as bitsets, and the joining line of every pair is tabulated.
///
/// Construction never rejects input; call validate() for the axioms.
class LinearSpace {
 public:
  LinearSpace(int n_points, std::vector<std::vector<int>> lines, std::string label = {});

  int n_points() const { return n_points_; }
  int n_lines() const { return static_cast<int>(lines_.size()); }
  const PointSet& line(int id) const { return lines_[id]; }
  const std::vector<int>& line_points(int id) const { return line_points_[id]; }
  const std::vector<PointSet>& lines() const { return lines_; }

  /// Index of the line through distinct points a and b, or -1 when the pair is uncovered.
  int line_through(int a, int b) const { return join_[a * n_points_ + b]; }
  bool collinear(int a, int b, int c) const;

  PointSet empty_set() const { return PointSet(n_points_); }
  PointSet full_set() const;

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Field designator for coordinatized spaces (JSON export only).
  const std::optional<std::string>& field() const { return field_; }
  void set_field(std::string designator) { field_ = std::move(designator); }
  /// Per-point normalized coordinates for coordinatized spaces (JSON export only).
  const std::vector<std::vector<int>>& coords() const { return coords_; }
  void set_coords(std::vector<std::vector<int>> coords) { coords_ = std::move(coords); }

  /// Set by constructions whose exchange property is known (projective spaces);
  /// lets dimension() use the greedy base without an exhaustive exchange check.
  std::optional<bool> exchange_hint() const { return exchange_hint_; }
  void set_exchange_hint(bool holds) { exchange_hint_ = holds; }

 private:
  int n_points_;
  std::vector<PointSet> lines_;
  std::vector<std::vector<int>> line_points_;
  std::vector<int> join_;
  std::string label_;
  std::optional<std::string> field_;
  std::vector<std::vector<int>> coords_;
  std::optional<bool> exchange_hint_;
};

using SpacePtr = std::shared_ptr<const LinearSpace>;

struct Violation {
  enum class Kind { undersized_line, improper_line, uncovered_pair, multiply_covered_pair, bad_point };
  Kind kind;
  int line = -1;
  int a = -1;
  int b = -1;
  std::string describe() const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationReport validate(const LinearSpace& space);

/// Minimal subspace containing X, computed by iterating the one-step hull
/// (union of all joining lines of point pairs) to a fixed point.
PointSet closure(const LinearSpace& space, const PointSet& x);

struct ClosureTrace {
  PointSet result;
  /// Number of hull steps that added points.
  int depth = 0;
};
ClosureTrace closure_with_depth(const LinearSpace& space, const PointSet& x);

bool is_subspace(const LinearSpace& space, const PointSet& s);

/// True iff no point of X lies in the closure of the others; sufficient
/// because subsets of independent sets are independent.
bool is_independent(const LinearSpace& space, const PointSet& x);

/// Every subspace, from the empty set up to the whole space, in discovery order.
std::vector<PointSet> all_subspaces(const LinearSpace& space);

struct ExchangeResult {
  bool holds = true;
  /// First counterexample: subspace X and points p1, p2 outside it with
  /// p2 in closure(X + p1) but p1 not in closure(X + p2).
  std::optional<PointSet> x;
  int p1 = -1;
  int p2 = -1;
  std::size_t subspaces_tested = 0;
};

/// Exhaustive exchange-axiom test over all subspaces X (the condition only
/// depends on the closure of X).
ExchangeResult check_exchange(const LinearSpace& space);

/// Greedy base: add points outside the current closure until it spans.
PointSet greedy_base(const LinearSpace& space, const PointSet& within);

enum class DimensionMethod { automatic, greedy, exhaustive };

/// Smallest spanning set size minus one. `automatic` uses the greedy base
/// when the exchange axiom is known or verified to hold.
int dimension(const LinearSpace& space, DimensionMethod method = DimensionMethod::automatic);

/// Dimension of a subspace S assuming the exchange axiom (greedy base of S).
int subspace_dimension(const LinearSpace& space, const PointSet& s);

/// Extends an independent set to a base by the swap procedure: start from a
/// reference base and repeatedly exchange one of its points for the next
/// point of X lying outside the closure of the rest.
/// Throws PreconditionError when X is dependent.
PointSet extend_to_base(const LinearSpace& space, const PointSet& x);

/// All bases (independent spanning sets). Throws BoundError above `max_points`.
std::vector<PointSet> all_bases(const LinearSpace& space, int max_points = 16);

/// Calls `visit` for every independent set of size <= max_size, in
/// depth-first order over increasing point indices. Returning false stops.
void for_each_independent(const LinearSpace& space, int max_size,
                          const std::function<bool(const PointSet&)>& visit);

struct Restriction {
  SpacePtr space;
  /// Point i of the restricted space is ambient point `ambient_point[i]`.
  std::vector<int> ambient_point;
};

/// Induced linear space on X: lines are traces of ambient lines with >= 2 points.
/// Throws PreconditionError unless X holds three non-collinear points.
Restriction restrict_to(const LinearSpace& space, const PointSet& x);

struct PointMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<int> map;

  bool injective() const;
  bool surjective() const;
  PointSet image(const PointSet& s) const;
};

PointMap identity_map(const SpacePtr& source, const SpacePtr& target);
/// (a ∘ b)(x) = a(b(x)).
PointMap compose(const PointMap& a, const PointMap& b);

struct MorphismClass {
  enum class Kind {
    not_collinearity_preserving,
    /// Preserves collinearity but is neither bijective nor an embedding.
    collinearity_preserving,
    semicollineation,
    collineation,
    embedding,
    strong_embedding
  };
  Kind kind = Kind::not_collinearity_preserving;
  bool injective = false;
  bool surjective = false;
  bool collinearity_preserving = false;
  bool non_collinearity_preserving = false;
  bool independence_preserving = false;

  bool is_semicollineation() const { return injective && surjective && collinearity_preserving; }
  bool is_collineation() const { return is_semicollineation() && non_collinearity_preserving; }
  bool is_embedding() const { return injective && collinearity_preserving && non_collinearity_preserving; }
  bool is_strong_embedding() const { return is_embedding() && independence_preserving; }
};

std::string to_string(MorphismClass::Kind kind);

/// Collinearity flags from all point triples, independence from all
/// independent sets of size <= dim(source)+1.
MorphismClass classify_map(const PointMap& f);

/// f(closure(X)) ⊆ closure(f(X)).
bool closure_image_included(const PointMap& f, const PointSet& x);

/// Backtracking search of all collineations a -> b; `visit` returns false to stop.
/// Returns the number visited.
std::size_t for_each_collineation(const LinearSpace& a, const LinearSpace& b,
                                  const std::function<bool(const std::vector<int>&)>& visit);

/// Point maps sending every base to a base that are not strong embeddings,
/// found by exhaustive search over all maps (bounded by `max_maps`).
struct BaseToBaseSearch {
  std::size_t maps_examined = 0;
  std::size_t base_to_base = 0;
  std::size_t not_strong = 0;
  std::optional<std::vector<int>> example;
  bool exhausted = false;
};
BaseToBaseSearch search_base_to_base_not_strong(const SpacePtr& a, const SpacePtr& b,
                                                std::size_t max_maps = 2'000'000);

/// Complete-graph space: every 2-subset is a line.
SpacePtr complete_graph_space(int n_points);

}  // namespace grasslab
