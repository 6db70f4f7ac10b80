#include "grasslab/chow.hpp"

#include <algorithm>
#include <set>

#include "grasslab/errors.hpp"

namespace grasslab {

bool GrassmannMap::injective() const {
  std::vector<bool> hit(target->size(), false);
  for (int y : map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool GrassmannMap::surjective() const {
  std::vector<bool> hit(target->size(), false);
  for (int y : map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

PointSet GrassmannMap::image(const PointSet& elements) const {
  PointSet out(target->size());
  for (auto e = elements.find_first(); e != PointSet::npos; e = elements.find_next(e)) out.set(map[e]);
  return out;
}

GrassmannMap lift_point_map(const PointMap& g, const GrassPtr& source, const GrassPtr& target) {
  if (g.source->n_points() != source->ambient()->n_points() || g.target->n_points() != target->ambient()->n_points())
    throw PreconditionError("point map does not match the Grassmann ambients");
  GrassmannMap f{source, target, std::vector<int>(source->size())};
  for (int i = 0; i < source->size(); ++i) {
    int e = target->index_of(closure(*target->ambient(), g.image(source->points(i))));
    if (e < 0)
      throw PreconditionError("image of element " + std::to_string(i) + " is not a " +
                              std::to_string(target->k()) + "-dimensional subspace");
    f.map[i] = e;
  }
  return f;
}

GrassmannMap lift_embedding(const PointMap& g, const GrassPtr& source, const GrassPtr& target) {
  if (!classify_map(g).is_strong_embedding()) throw PreconditionError("point map is not a strong embedding");
  if (source->n() != target->n()) throw PreconditionError("ambient dimensions differ");
  return lift_point_map(g, source, target);
}

PointMap contragredient(const PointMap& g, const DualSpace& source, const DualSpace& target) {
  if (source.pg->n() != target.pg->n()) throw PreconditionError("ambient dimensions differ");
  auto lifted = lift_embedding(g, GrassmannSpace::of_projective(source.pg, source.pg->n() - 1),
                               GrassmannSpace::of_projective(target.pg, target.pg->n() - 1));
  return {source.space, target.space, lifted.map};
}

std::vector<int> annihilator_index(const GrassmannSpace& from, const GrassmannSpace& to) {
  const auto& pg = to.projective();
  if (!from.projective() || !pg) throw PreconditionError("annihilators need projective ambients");
  if (from.n() != to.n() || from.k() + to.k() != to.n() - 1)
    throw PreconditionError("annihilator levels must be complementary in the same dimension");
  std::vector<int> out(from.size());
  for (int i = 0; i < from.size(); ++i) {
    out[i] = to.index_of(pg->annihilator(from.form(i)));
    if (out[i] < 0) throw Error("annihilator lookup failed");
  }
  return out;
}

GrassmannMap compose_with_annihilator(const GrassmannMap& f) {
  const auto& pg = f.target->projective();
  if (!pg) throw PreconditionError("annihilators need a projective target");
  auto dual_level = GrassmannSpace::of_projective(pg, pg->n() - f.target->k() - 1);
  auto ann = annihilator_index(*f.target, *dual_level);
  GrassmannMap out{f.source, dual_level, std::vector<int>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) out.map[i] = ann[f.map[i]];
  return out;
}

AdjacencyCheck check_adjacency_preserving(const GrassmannMap& f) {
  AdjacencyCheck c;
  const auto& s = *f.source;
  const auto& t = *f.target;
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j) {
      bool a = s.adjacent(i, j);
      bool b = f.map[i] != f.map[j] && t.adjacent(f.map[i], f.map[j]);
      if (a && !b && c.forward) {
        c.forward = false;
        c.forward_witness = std::make_pair(i, j);
      }
      if (!a && b && c.backward) {
        c.backward = false;
        c.backward_witness = std::make_pair(i, j);
      }
    }
  return c;
}

Frame standard_frame(const GrassmannSpace& g) {
  if (const auto& pg = g.projective()) {
    Frame frame;
    for (int i = 0; i <= pg->n(); ++i) {
      Row e(pg->n() + 1, 0);
      e[i] = 1;
      frame.points.push_back(pg->index_of(e));
    }
    return frame;
  }
  return {to_vector(greedy_base(*g.ambient(), g.ambient()->full_set()))};
}

std::vector<Frame> frames_for_policy(const GrassmannSpace& g, const FramePolicy& policy) {
  const auto& space = *g.ambient();
  if (policy.mode == FramePolicy::Mode::all) return all_frames(space);
  std::vector<Frame> out;
  std::set<std::vector<int>> seen;
  auto add = [&](Frame f) {
    auto key = f.points;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back(std::move(f));
  };
  Frame std_frame = standard_frame(g);
  add(std_frame);
  for (std::size_t i = 0; i < std_frame.points.size(); ++i)
    for (int q = 0; q < space.n_points(); ++q) {
      Frame swapped = std_frame;
      swapped.points[i] = q;
      if (q != std_frame.points[i] && is_frame(space, swapped)) add(std::move(swapped));
    }
  std::mt19937_64 rng(policy.seed);
  for (std::size_t s = 0; s < policy.samples; ++s) add(random_frame(space, rng));
  return out;
}

BasePreservingCheck check_base_preserving(const GrassmannMap& f, const FramePolicy& policy) {
  BasePreservingCheck c;
  c.sampled = policy.mode == FramePolicy::Mode::sample;
  if (f.source->k() != f.target->k()) {
    c.holds = false;
    return c;
  }
  for (auto& frame : frames_for_policy(*f.source, policy)) {
    ++c.frames_tested;
    BaseSubset b(f.source, frame);
    PointSet img = f.image(b.elements(b.all()));
    if (static_cast<int>(img.count()) != b.size() || !frame_of_base_subset(*f.target, img)) {
      c.holds = false;
      c.witness = frame;
      break;
    }
  }
  return c;
}

GrassmannMap inverse(const GrassmannMap& f) {
  if (!f.injective() || !f.surjective()) throw PreconditionError("only bijections have inverses");
  GrassmannMap inv{f.target, f.source, std::vector<int>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) inv.map[f.map[i]] = static_cast<int>(i);
  return inv;
}

CliqueAction classify_clique_action(const GrassmannMap& f) {
  const int k = f.source->k();
  const int n = f.source->n();
  if (k <= 0 || k >= n - 1) throw PreconditionError("clique action needs 0 < k < n-1");
  std::optional<CliqueAction> type;
  auto record = [&](const AdjacentSet& s, const char* what) {
    auto cls = classify_clique(*f.target, f.image(s.members));
    if (!cls)
      throw HypothesisError(std::string("image of a ") + what + " with centre " +
                            std::to_string(to_vector(s.center).front()) + ".. is neither a star nor a top");
    CliqueAction t = (cls->kind == s.kind) ? CliqueAction::type_a : CliqueAction::type_b;
    if (type && *type != t) throw HypothesisError("maximal cliques change type for some but not all");
    type = t;
  };
  for (const auto& s : all_stars(*f.source)) record(s, "star");
  for (const auto& t : all_tops(*f.source)) record(t, "top");
  if (*type == CliqueAction::type_b && n != 2 * k + 1)
    throw HypothesisError("stars and tops swap although n != 2k+1");
  return *type;
}

LowerMap induce_lower(const GrassmannMap& f) {
  const auto& src = f.source;
  const auto& tgt = f.target;
  const int k = src->k();
  const int n = src->n();
  if (k < 1) throw PreconditionError("induce_lower needs k >= 1");
  if (n < 2 * k + 1) throw PreconditionError("induce_lower needs n >= 2k+1");
  const auto& space = *src->ambient();
  const auto& tspace = *tgt->ambient();
  auto level = [](const GrassPtr& g, int l) {
    return g->projective() ? GrassmannSpace::of_projective(g->projective(), l)
                           : GrassmannSpace::of_linear(g->ambient(), l);
  };
  GrassPtr lower_src = level(src, k - 1);
  GrassPtr lower_star = level(tgt, k - 1);
  GrassPtr lower_top = k + 1 <= tgt->n() - 1 ? level(tgt, k + 1) : nullptr;

  std::optional<bool> dual;
  std::vector<int> map(lower_src->size());
  for (int s = 0; s < lower_src->size(); ++s) {
    const PointSet& S = lower_src->points(s);
    PointSet base_s = greedy_base(space, S);
    Frame frame{to_vector(extend_to_base(space, base_s))};
    BaseSubset b(src, frame);
    std::uint32_t through = 0;
    for (std::size_t i = 0; i < frame.points.size(); ++i)
      if (base_s.test(frame.points[i])) through |= 1u << i;
    PointSet meet = tspace.full_set();
    PointSet join = tspace.empty_set();
    int count = 0;
    for (int p = 0; p < b.size(); ++p) {
      if ((b.support(p) & through) != through) continue;
      const auto& img = tgt->points(f.map[b.member(p)]);
      meet &= img;
      join |= img;
      ++count;
    }
    join = closure(tspace, join);
    bool star_ok = tgt->dim_of(meet) == k - 1;
    bool top_ok = lower_top && tgt->dim_of(join) == k + 1;
    if (star_ok == top_ok)
      throw HypothesisError("images of the " + std::to_string(count) + " frame members through lower element " +
                            std::to_string(s) + (star_ok ? " fit both a star and a top" : " fit neither a star nor a top"));
    if (dual && *dual != top_ok)
      throw HypothesisError("lower element " + std::to_string(s) + " breaks the global star/top dichotomy");
    dual = top_ok;
    const PointSet& centre = top_ok ? join : meet;
    for (int u = 0; u < src->size(); ++u) {
      if (!S.is_subset_of(src->points(u))) continue;
      const auto& img = tgt->points(f.map[u]);
      bool ok = top_ok ? img.is_subset_of(centre) : centre.is_subset_of(img);
      if (!ok)
        throw HypothesisError("element " + std::to_string(u) + " through lower element " + std::to_string(s) +
                              " does not map into the candidate " + (top_ok ? "top" : "star"));
    }
    map[s] = (top_ok ? lower_top : lower_star)->index_of(centre);
  }
  LowerMap out{{lower_src, *dual ? lower_top : lower_star, std::move(map)}, *dual};
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::collineation_induced:
      return "collineation-induced";
    case Verdict::duality_induced:
      return "duality-induced";
    case Verdict::strong_embedding_induced:
      return "strong-embedding-induced";
    case Verdict::dual_strong_embedding_induced:
      return "dual-strong-embedding-induced";
    case Verdict::unrecognized:
      return "unrecognized";
  }
  return "unknown";
}

namespace {

struct Descent {
  std::vector<int> points;
  bool dual = false;
  GrassmannMap rewritten;
};

// Walks f down to a point map, rewriting through annihilators on a type-B start.
Descent descend(const GrassmannMap& f, RecognitionResult& r, RecognitionMode mode) {
  const int k = f.source->k();
  Descent d{{}, false, f};
  if (k == 0) {
    d.points = f.map;
    return d;
  }
  if (mode == RecognitionMode::chow && k < f.source->n() - 1) {
    auto action = classify_clique_action(f);
    r.checks.push_back({"clique action", true, action == CliqueAction::type_a ? "type A" : "type B"});
  }
  LowerMap lower = induce_lower(f);
  if (lower.dual) {
    d.dual = true;
    d.rewritten = compose_with_annihilator(f);
    r.checks.push_back({"star/top dichotomy", true, "stars go to tops; rewritten through annihilators"});
    lower = induce_lower(d.rewritten);
    if (lower.dual) throw HypothesisError("rewritten map still swaps stars and tops");
  } else {
    r.checks.push_back({"star/top dichotomy", true, "stars go to stars"});
  }
  while (lower.map.source->k() > 0) {
    lower = induce_lower(lower.map);
    if (lower.dual) throw HypothesisError("descent at level " + std::to_string(lower.map.source->k() + 1) +
                                          " swaps stars and tops");
  }
  d.points = lower.map.map;
  return d;
}

void finish(const GrassmannMap& f, const Descent& d, RecognitionResult& r) {
  const auto& src = f.source;
  const auto& rewritten = d.rewritten;
  PointMap g{src->ambient(), rewritten.target->ambient(), d.points};
  auto cls = classify_map(g);
  bool reproduced = false;
  std::string detail;
  try {
    reproduced = lift_point_map(g, src, rewritten.target).map == rewritten.map;
    detail = reproduced ? "lift of the descended point map equals the input" : "lift differs from the input";
  } catch (const PreconditionError& e) {
    detail = e.what();
  }
  r.checks.push_back({"exact reconstruction", reproduced, detail});
  r.witness_class = cls;
  if (d.dual) {
    auto dual = dual_space(rewritten.target->projective());
    std::vector<int> hyperplane_of(dual.pg->n_points());
    for (std::size_t h = 0; h < dual.annihilator_point.size(); ++h)
      hyperplane_of[dual.annihilator_point[h]] = static_cast<int>(h);
    PointMap w{src->ambient(), dual.space, std::vector<int>(d.points.size())};
    for (std::size_t p = 0; p < d.points.size(); ++p) w.map[p] = hyperplane_of[d.points[p]];
    r.witness = w;
  } else {
    r.witness = g;
  }
  if (!reproduced) {
    r.diagnostic = "reconstruction failed: " + detail;
    return;
  }
  if (cls.is_collineation()) {
    r.verdict = d.dual ? Verdict::duality_induced : Verdict::collineation_induced;
  } else if (cls.is_strong_embedding()) {
    r.verdict = d.dual ? Verdict::dual_strong_embedding_induced : Verdict::strong_embedding_induced;
  } else {
    r.diagnostic = "descended point map is " + to_string(cls.kind) + ", not a strong embedding";
  }
}

}  // namespace

RecognitionResult recognize(const GrassmannMap& f, const RecognizeOptions& options) {
  RecognitionResult r;
  auto fail = [&](const std::string& name, const std::string& detail) {
    r.checks.push_back({name, false, detail});
    r.diagnostic = name + ": " + detail;
    return r;
  };
  const auto& src = f.source;
  const auto& tgt = f.target;
  if (!src->projective() || !tgt->projective())
    return fail("projective ambients", "source and target must both be projective spaces");
  r.checks.push_back({"projective ambients", true, ""});
  const int k = src->k();
  const int n = src->n();
  if (tgt->k() != k) return fail("equal levels", "source level " + std::to_string(k) + ", target level " + std::to_string(tgt->k()));
  if (tgt->n() != n)
    return fail("equal dimensions", "source dimension " + std::to_string(n) + ", target dimension " + std::to_string(tgt->n()));
  r.checks.push_back({"equal dimensions", true, "n=" + std::to_string(n) + ", k=" + std::to_string(k)});

  const bool injective = f.injective();
  const bool surjective = f.surjective();
  bool need_collineation = false;
  if (options.mode == RecognitionMode::chow) {
    if (!injective || !surjective) return fail("bijective", injective ? "not surjective" : "not injective");
    r.checks.push_back({"bijective", true, ""});
    auto adj = check_adjacency_preserving(f);
    if (!adj.forward || !adj.backward)
      return fail("adjacency preserved both ways", adj.forward ? "inverse is not adjacency preserving" : "not adjacency preserving");
    r.checks.push_back({"adjacency preserved both ways", true, ""});
  } else {
    if (k == 0 || k == n - 1)
      return fail("level 0<k<n-1", "base-subset recognition is not available at k=0 or k=n-1");
    r.checks.push_back({"level 0<k<n-1", true, ""});
    auto bp = check_base_preserving(f, options.frames);
    std::string frames = std::to_string(bp.frames_tested) + (bp.sampled ? " sampled frames" : " frames (all)");
    if (!bp.holds) return fail("base subsets preserved", "fails on a frame after " + frames);
    r.checks.push_back({"base subsets preserved", true, frames});
    if (!injective) return fail("injective", "two elements share an image");
    r.checks.push_back({"injective", true, ""});
    auto adj = check_adjacency_preserving(f);
    if (!adj.forward) return fail("adjacency preserved", "an adjacent pair maps to a non-adjacent pair");
    r.checks.push_back({"adjacency preserved", true, "forward direction"});
    if (surjective && n > 2 * k + 1) {
      auto back = check_base_preserving(inverse(f), options.frames);
      r.checks.push_back({"inverse preserves base subsets", back.holds, ""});
      need_collineation = back.holds;
    }
  }

  try {
    if (n < 2 * k + 1) {
      // Read f on annihilators, where the level n-k-1 satisfies n > 2(n-k-1)+1.
      const auto& spg = src->projective();
      const auto& tpg = tgt->projective();
      const int k2 = n - k - 1;
      auto src2 = GrassmannSpace::of_projective(spg, k2);
      auto tgt2 = GrassmannSpace::of_projective(tpg, k2);
      auto to_src = annihilator_index(*src2, *src);
      auto to_tgt2 = annihilator_index(*tgt, *tgt2);
      GrassmannMap f2{src2, tgt2, std::vector<int>(src2->size())};
      for (int t = 0; t < src2->size(); ++t) f2.map[t] = to_tgt2[f.map[to_src[t]]];
      r.checks.push_back({"duality reduction", true, "level " + std::to_string(k) + " read as level " + std::to_string(k2)});
      Descent d2 = descend(f2, r, options.mode);
      if (d2.dual) throw HypothesisError("reduced map swaps stars and tops");
      // Contragredient of the reduced witness: p -> ann(closure(g2(ann p))).
      PointMap g2{spg->space(), tpg->space(), d2.points};
      Descent d{std::vector<int>(spg->n_points()), false, f};
      for (int p = 0; p < spg->n_points(); ++p) {
        PointSet h = spg->points_of(spg->annihilator(spg->point_subspace(p)));
        ProjSubspace img = tpg->of_points(closure(*tpg->space(), g2.image(h)));
        if (img.dim() != n - 1) throw HypothesisError("reduced witness does not keep hyperplanes");
        d.points[p] = tpg->index_of(tpg->annihilator(img).basis.at(0));
      }
      finish(f, d, r);
    } else {
      finish(f, descend(f, r, options.mode), r);
    }
  } catch (const HypothesisError& e) {
    r.verdict = Verdict::unrecognized;
    return fail("descent", e.what());
  }
  if (need_collineation) {
    bool ok = r.verdict == Verdict::collineation_induced;
    r.checks.push_back({"two-sided base preservation gives a collineation", ok, ""});
    if (!ok && r.recognized()) {
      r.verdict = Verdict::unrecognized;
      r.diagnostic = "f and its inverse preserve base subsets but the witness is not a collineation";
    }
  }
  return r;
}

BijectivityDescent bijective_implies_collineation(const PointMap& g, int k) {
  if (!verify_projective_axioms(*g.source).holds())
    throw PreconditionError("source space is not projective");
  if (!classify_map(g).is_strong_embedding()) throw PreconditionError("point map is not a strong embedding");
  BijectivityDescent out;
  for (int l = k; l >= 0; --l) {
    auto lifted = lift_point_map(g, GrassmannSpace::of_linear(g.source, l), GrassmannSpace::of_linear(g.target, l));
    bool bij = lifted.injective() && lifted.surjective();
    if (l == k && !bij) throw PreconditionError("G_k(g) is not bijective");
    out.levels.emplace_back(l, bij);
  }
  out.collineation = classify_map(g).is_collineation();
  return out;
}

namespace {

gf::Elem determinant(const gf::FieldSpec& f, Matrix m) {
  const int n = static_cast<int>(m.size());
  gf::Elem det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    gf::Elem inv = f.inv(m[c][c]);
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      gf::Elem factor = f.mul(m[r][c], inv);
      for (int j = c; j < n; ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[c][j]));
    }
  }
  return det;
}

}  // namespace

PluckerMap plucker(const GrassmannSpace& g) {
  const auto& pg = g.projective();
  if (!pg) throw PreconditionError("wedge coordinates need a projective ambient");
  const int cols = pg->n() + 1;
  const int r = g.k() + 1;
  std::vector<std::vector<int>> subsets;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    subsets.push_back(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == cols - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  PluckerMap out{build_pg(static_cast<int>(subsets.size()) - 1, pg->field()), std::vector<int>(g.size())};
  for (int e = 0; e < g.size(); ++e) {
    const auto& basis = g.form(e).basis;
    Row coords;
    for (const auto& cs : subsets) {
      Matrix minor(r, Row(r));
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) minor[a][b] = basis[a][cs[b]];
      coords.push_back(determinant(pg->f(), std::move(minor)));
    }
    out.map[e] = out.target->index_of(coords);
  }
  return out;
}

Matrix random_invertible(const gf::FieldSpec& f, int size, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(0, f.q() - 1);
  while (true) {
    Matrix m(size, Row(size));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<gf::Elem>(entry(rng));
    if (inverse(f, m)) return m;
  }
}

}  // namespace grasslab
