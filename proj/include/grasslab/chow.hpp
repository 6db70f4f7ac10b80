#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grasslab/baseset.hpp"
#include "grasslab/grassmann.hpp"
#include "grasslab/projspace.hpp"

namespace grasslab {

/// A total map between two indexed Grassmann spaces.
struct GrassmannMap {
  GrassPtr source;
  GrassPtr target;
  std::vector<int> map;

  bool injective() const;
  bool surjective() const;
  PointSet image(const PointSet& elements) const;
};

/// S -> closure(g(S)), looked up in `target`. Throws PreconditionError when
/// some image is not an element of `target`.
GrassmannMap lift_point_map(const PointMap& g, const GrassPtr& source, const GrassPtr& target);

/// Same lift, restricted to strong embeddings between spaces of equal
/// dimension. Throws PreconditionError otherwise.
GrassmannMap lift_embedding(const PointMap& g, const GrassPtr& source, const GrassPtr& target);

/// Hyperplane H -> closure(g(H)) as a map between the dual spaces. Both
/// ambients must be projective of the same dimension and g a strong embedding.
PointMap contragredient(const PointMap& g, const DualSpace& source, const DualSpace& target);

/// Element index i of `from` -> index of its annihilator in `to` (which must
/// sit at the complementary level of a PG of the same dimension).
std::vector<int> annihilator_index(const GrassmannSpace& from, const GrassmannSpace& to);

/// f followed by the annihilator: S -> ann(f(S)), landing at level n'-k-1 of
/// the target PG read in dual coordinates.
GrassmannMap compose_with_annihilator(const GrassmannMap& f);

struct AdjacencyCheck {
  bool forward = true;
  bool backward = true;
  /// Adjacent source pair with non-adjacent images.
  std::optional<std::pair<int, int>> forward_witness;
  /// Non-adjacent source pair with adjacent images.
  std::optional<std::pair<int, int>> backward_witness;
};

AdjacencyCheck check_adjacency_preserving(const GrassmannMap& f);

struct FramePolicy {
  enum class Mode { all, sample };
  Mode mode = Mode::sample;
  /// Random frames drawn in sample mode (one-point swaps of the standard frame are always added).
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

/// The standard frame: unit vectors for a PG, the greedy base otherwise.
Frame standard_frame(const GrassmannSpace& g);
/// Frames tested under a policy, in a deterministic order.
std::vector<Frame> frames_for_policy(const GrassmannSpace& g, const FramePolicy& policy);

struct BasePreservingCheck {
  bool holds = true;
  std::size_t frames_tested = 0;
  bool sampled = false;
  /// Source frame whose base subset is not sent onto a base subset.
  std::optional<Frame> witness;
};

/// For every tested frame, the image of its base subset must be the base
/// subset of some frame of the target (recovered from the image itself).
BasePreservingCheck check_base_preserving(const GrassmannMap& f, const FramePolicy& policy = {});

/// Inverse of a bijection, as a GrassmannMap. Throws PreconditionError otherwise.
GrassmannMap inverse(const GrassmannMap& f);

enum class CliqueAction { type_a, type_b };

/// Type A: stars go to stars and tops to tops; type B: they swap. Every star
/// and top of the source is checked. Throws HypothesisError if an image is
/// neither, the type is mixed, or type B occurs with n != 2k+1.
CliqueAction classify_clique_action(const GrassmannMap& f);

struct LowerMap {
  GrassmannMap map;
  /// Images are (k+1)-dimensional rather than (k-1)-dimensional.
  bool dual = false;
};

/// f_{k-1}: each (k-1)-subspace S goes to the unique S' with f(G_k(S)) ⊆ G_k(S').
/// The candidate is read from the images of the frame members through S and
/// then checked against every element through S. Throws HypothesisError when
/// no consistent S' exists or the star/top kind is not global.
LowerMap induce_lower(const GrassmannMap& f);

enum class Verdict {
  collineation_induced,
  duality_induced,
  strong_embedding_induced,
  dual_strong_embedding_induced,
  unrecognized
};
std::string to_string(Verdict v);

enum class RecognitionMode { chow, baseset };

struct RecognitionCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct RecognitionResult {
  Verdict verdict = Verdict::unrecognized;
  /// The inducing point map. For dual verdicts its target is the dual space
  /// of the target PG (points = hyperplanes).
  std::optional<PointMap> witness;
  std::optional<MorphismClass> witness_class;
  std::vector<RecognitionCheck> checks;
  std::string diagnostic;

  bool recognized() const { return verdict != Verdict::unrecognized; }
};

struct RecognizeOptions {
  RecognitionMode mode = RecognitionMode::chow;
  FramePolicy frames;
};

/// Full pipeline: hypotheses for the mode, duality reduction when n < 2k+1,
/// type-B rewrite through annihilators when n = 2k+1, descent to points,
/// classification of the point map, and exact reconstruction of f.
RecognitionResult recognize(const GrassmannMap& f, const RecognizeOptions& options = {});

struct BijectivityDescent {
  /// levels[l] = whether G_l(g) is bijective, l = k..0.
  std::vector<std::pair<int, bool>> levels;
  bool collineation = false;
};

/// For a strong embedding g between PGs with G_k(g) bijective, checks
/// bijectivity of the lifts down to points and that g is a collineation.
/// Throws PreconditionError if the source is not projective or G_k(g) is not bijective.
BijectivityDescent bijective_implies_collineation(const PointMap& g, int k);

struct PluckerMap {
  PGPtr target;
  /// Element index -> point of the exterior-power space.
  std::vector<int> map;
};

/// Wedge coordinates: all (k+1)x(k+1) minors of the RREF basis, column
/// subsets in lexicographic order.
PluckerMap plucker(const GrassmannSpace& g);

Matrix random_invertible(const gf::FieldSpec& f, int size, std::mt19937_64& rng);

}  // namespace grasslab
