#include "grasslab/gallery.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "grasslab/errors.hpp"

namespace grasslab {

bool GalleryItem::passed() const {
  return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; });
}

Json GalleryItem::to_json() const {
  Json j;
  j["id"] = id;
  j["title"] = title;
  j["construction"] = construction;
  Json cs = Json::array();
  for (const auto& c : claims) cs.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["claims"] = std::move(cs);
  j["passed"] = passed();
  return j;
}

SpacePtr make_kreuzer_plane(const PGPtr& pg3) {
  if (pg3->n() != 3) throw PreconditionError("the collapsed plane is built from PG(3,q)");
  const auto& space = *pg3->space();
  PointSet plane = pg3->points_of(pg3->subspaces(2).front());
  std::vector<std::vector<int>> lines;
  for (int id = 0; id < space.n_lines(); ++id)
    if (!space.line(id).is_subset_of(plane)) lines.push_back(space.line_points(id));
  lines.push_back(to_vector(plane));
  return std::make_shared<LinearSpace>(space.n_points(), std::move(lines),
                                       "kreuzer-plane(" + std::to_string(pg3->f().q()) + ")");
}

Restriction make_punctured(const PGPtr& pg, int deleted) {
  if (deleted < 0 || deleted >= pg->n_points()) throw PreconditionError("deleted point out of range");
  PointSet x = pg->space()->full_set();
  x.reset(deleted);
  auto r = restrict_to(*pg->space(), x);
  auto labelled = std::make_shared<LinearSpace>(*r.space);
  labelled->set_label(pg->space()->label() + "-minus-" + std::to_string(deleted));
  r.space = labelled;
  return r;
}

namespace {

struct ItemBuilder {
  GalleryItem item;
  void claim(std::string name, bool passed, std::string detail = {}) {
    item.claims.push_back({std::move(name), passed, std::move(detail)});
  }
};

PGPtr pg_of(int n, int q) { return build_pg(n, gf::FieldSpec::of_order(q)); }

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

/// Lines through `p`, in line-id order.
std::vector<int> lines_through(const LinearSpace& space, int p) {
  std::vector<int> out;
  for (int id = 0; id < space.n_lines(); ++id)
    if (space.line(id).test(p)) out.push_back(id);
  return out;
}

/// Ambient point set of a set of local points of a restriction.
PointSet to_ambient(const Restriction& r, const PointSet& local, int ambient_points) {
  PointSet out(ambient_points);
  for (auto p = local.find_first(); p != PointSet::npos; p = local.find_next(p)) out.set(r.ambient_point[p]);
  return out;
}

}  // namespace

GalleryItem kreuzer_plane(int q) {
  ItemBuilder b;
  b.item.id = "kreuzer-plane";
  b.item.title = "semicollineation from PG(3,q) onto a plane";
  auto pg = pg_of(3, q);
  auto plane = make_kreuzer_plane(pg);
  long long expected_lines = gaussian_binomial(4, 2, q) - gaussian_binomial(3, 2, q) + 1;
  b.claim("line count", plane->n_lines() == expected_lines,
          std::to_string(plane->n_lines()) + " lines, expected " + std::to_string(expected_lines));
  b.claim("linear space axioms", validate(*plane).ok);
  auto ex = check_exchange(*plane);
  b.claim("exchange axiom holds", ex.holds);
  int dim_plane = dimension(*plane);
  int dim_pg = dimension(*pg->space());
  b.claim("collapsed space is a plane", dim_plane == 2, "dimension " + std::to_string(dim_plane));
  b.claim("source dimension exceeds target dimension", dim_pg == 3 && dim_plane < dim_pg,
          std::to_string(dim_pg) + " > " + std::to_string(dim_plane));
  auto id = identity_map(pg->space(), plane);
  auto cls = classify_map(id);
  b.claim("identity is a semicollineation", cls.kind == MorphismClass::Kind::semicollineation, to_string(cls.kind));
  b.claim("identity is not a collineation", !cls.is_collineation());
  // A non-collinear triple of the collapsed plane becomes collinear.
  const auto& big = plane->line_points(plane->n_lines() - 1);
  std::optional<std::vector<int>> triple;
  for (std::size_t i = 0; i < big.size() && !triple; ++i)
    for (std::size_t j = i + 1; j < big.size() && !triple; ++j)
      for (std::size_t k = j + 1; k < big.size() && !triple; ++k)
        if (!pg->space()->collinear(big[i], big[j], big[k])) triple = std::vector<int>{big[i], big[j], big[k]};
  b.claim("a non-collinear triple becomes collinear", triple.has_value(),
          triple ? "points " + std::to_string((*triple)[0]) + ", " + std::to_string((*triple)[1]) + ", " +
                       std::to_string((*triple)[2])
                 : "");
  b.item.construction = Json{{"source", geometry_to_json(*pg->space())},
                             {"target", geometry_to_json(*plane)},
                             {"collapsed_plane", big},
                             {"map", point_map_to_json(id)}};
  return b.item;
}

GalleryItem punctured(int q, int deleted) {
  ItemBuilder b;
  b.item.id = "punctured";
  b.item.title = "PG(3,q) minus a point: exchange without the projective axiom";
  auto pg = pg_of(3, q);
  auto r = make_punctured(pg, deleted);
  const auto& space = *r.space;
  b.claim("point count", space.n_points() == pg->n_points() - 1, std::to_string(space.n_points()) + " points");
  b.claim("linear space axioms", validate(space).ok);
  b.claim("exchange axiom holds", check_exchange(space).holds);
  auto ax = verify_projective_axioms(space);
  b.claim("intersection axiom fails", !ax.p1 && ax.disjoint_lines.has_value(),
          ax.disjoint_lines ? "lines " + pair_text(ax.disjoint_lines->first, ax.disjoint_lines->second) : "");

  // Two lines through the deleted point lose it and stop meeting.
  auto through = lines_through(*pg->space(), deleted);
  std::vector<int> local(pg->n_points(), -1);
  for (std::size_t i = 0; i < r.ambient_point.size(); ++i) local[r.ambient_point[i]] = static_cast<int>(i);
  auto trace = [&](int line) {
    PointSet t = space.empty_set();
    for (int p : pg->space()->line_points(line))
      if (local[p] >= 0) t.set(local[p]);
    return t;
  };
  PointSet t1 = trace(through[0]);
  PointSet t2 = trace(through[1]);
  int span_dim = subspace_dimension(space, closure(space, t1 | t2));
  b.claim("two truncated lines span a plane without meeting", !t1.intersects(t2) && span_dim == 2,
          "traces of lines " + pair_text(through[0], through[1]) + ", span dimension " + std::to_string(span_dim));

  // Subspaces of the restriction are exactly the traces of ambient subspaces.
  std::set<std::vector<int>> restricted;
  for (const auto& s : all_subspaces(space)) restricted.insert(to_vector(s));
  std::set<std::vector<int>> traces;
  for (int d = -1; d <= 3; ++d) {
    auto subs = d < 0 ? std::vector<ProjSubspace>{pg->empty()} : pg->subspaces(d);
    for (const auto& s : subs) {
      PointSet t = space.empty_set();
      PointSet pts = pg->points_of(s);
      for (auto p = pts.find_first(); p != PointSet::npos; p = pts.find_next(p))
        if (local[p] >= 0) t.set(local[p]);
      traces.insert(to_vector(t));
    }
  }
  bool lifts = true;
  for (const auto& s : restricted) {
    PointSet amb = pg->space()->empty_set();
    for (int p : s) amb.set(r.ambient_point[p]);
    PointSet with = amb;
    with.set(deleted);
    lifts = lifts && (is_subspace(*pg->space(), amb) || is_subspace(*pg->space(), with));
  }
  b.claim("subspaces are traces of ambient subspaces", restricted == traces && lifts,
          std::to_string(restricted.size()) + " subspaces, " + std::to_string(traces.size()) + " traces");
  b.item.construction = Json{{"ambient", pg->space()->label()},
                             {"deleted_point", deleted},
                             {"ambient_point", r.ambient_point},
                             {"geometry", geometry_to_json(space)}};
  return b.item;
}

GalleryItem clique_not_top(int q) {
  ItemBuilder b;
  b.item.id = "clique-not-top";
  b.item.title = "a maximal clique of lines that is neither a star nor a top";
  auto pg = pg_of(3, q);
  const int deleted = 0;
  auto r = make_punctured(pg, deleted);
  const auto& space = *r.space;
  auto g = GrassmannSpace::of_linear(r.space, 1);

  std::vector<int> local(pg->n_points(), -1);
  for (std::size_t i = 0; i < r.ambient_point.size(); ++i) local[r.ambient_point[i]] = static_cast<int>(i);
  auto through = lines_through(*pg->space(), deleted);
  auto trace = [&](const PointSet& amb) {
    PointSet t = space.empty_set();
    for (auto p = amb.find_first(); p != PointSet::npos; p = amb.find_next(p))
      if (local[p] >= 0) t.set(local[p]);
    return t;
  };
  PointSet plane_amb = closure(*pg->space(), pg->space()->line(through[0]) | pg->space()->line(through[1]));
  PointSet plane = trace(plane_amb);
  PointSet l_pts = trace(pg->space()->line(through[0]));
  PointSet l2_pts = trace(pg->space()->line(through[1]));
  auto lv = to_vector(l_pts);
  int p1 = lv[0];
  int p2 = lv[1];
  int qp = -1;
  for (auto p = plane.find_first(); p != PointSet::npos && qp < 0; p = plane.find_next(p))
    if (!l_pts.test(p)) qp = static_cast<int>(p);
  int e_l = g->index_of(l_pts);
  int e_l2 = g->index_of(l2_pts);
  int e_1 = g->index_of(space.line(space.line_through(p1, qp)));
  int e_2 = g->index_of(space.line(space.line_through(p2, qp)));

  PointSet clique(g->size());
  clique.set(e_l);
  clique.set(e_1);
  clique.set(e_2);
  b.claim("starting lines are mutually adjacent", pairwise_adjacent(*g, clique),
          "elements " + std::to_string(e_l) + ", " + std::to_string(e_1) + ", " + std::to_string(e_2));
  b.claim("the two truncated lines are not adjacent", !g->adjacent(e_l, e_l2), pair_text(e_l, e_l2));
  for (int e = 0; e < g->size(); ++e)
    if (!clique.test(e) && clique.is_subset_of(g->adjacency_row(e))) clique.set(e);
  bool maximal = true;
  for (int e = 0; e < g->size(); ++e)
    if (!clique.test(e) && clique.is_subset_of(g->adjacency_row(e))) maximal = false;
  b.claim("greedy extension is a maximal clique", maximal && pairwise_adjacent(*g, clique),
          std::to_string(clique.count()) + " lines");
  auto all = maximal_cliques(*g);
  b.claim("exhaustive clique enumeration contains it", std::find(all.begin(), all.end(), clique) != all.end(),
          std::to_string(all.size()) + " maximal cliques");
  PointSet in_plane(g->size());
  for (int e = 0; e < g->size(); ++e)
    if (g->points(e).is_subset_of(plane)) in_plane.set(e);
  b.claim("clique is a proper subset of the lines of the plane", clique.is_proper_subset_of(in_plane),
          std::to_string(clique.count()) + " of " + std::to_string(in_plane.count()));
  b.claim("clique is neither a star nor a top", !classify_clique(*g, clique).has_value());
  b.item.construction = Json{{"geometry", geometry_to_json(space)},
                             {"deleted_point", deleted},
                             {"plane", to_vector(plane)},
                             {"start", {e_l, e_1, e_2}},
                             {"clique", to_vector(clique)}};
  return b.item;
}

GrassmannMap one_sided_bijection_map(int q, int deleted) {
  auto pg = pg_of(3, q);
  auto r = make_punctured(pg, deleted);
  auto src = GrassmannSpace::of_linear(r.space, 1);
  auto tgt = GrassmannSpace::of_projective(pg, 1);
  GrassmannMap f{src, tgt, std::vector<int>(src->size())};
  for (int e = 0; e < src->size(); ++e)
    f.map[e] = tgt->index_of(closure(*pg->space(), to_ambient(r, src->points(e), pg->n_points())));
  return f;
}

GalleryItem one_sided_bijection(int q) {
  ItemBuilder b;
  b.item.id = "one-sided-bijection";
  b.item.title = "lines of punctured PG(3,q) onto lines of PG(3,q)";
  const int deleted = 0;
  GrassmannMap f = one_sided_bijection_map(q, deleted);
  const auto& src = f.source;
  const auto& tgt = f.target;
  auto pg = tgt->projective();
  auto r = make_punctured(pg, deleted);
  b.claim("bijective", f.injective() && f.surjective(),
          std::to_string(src->size()) + " -> " + std::to_string(tgt->size()));
  auto adj = check_adjacency_preserving(f);
  b.claim("adjacency preserved", adj.forward);
  b.claim("inverse not adjacency preserving", !adj.backward && adj.backward_witness.has_value(),
          adj.backward_witness ? "source pair " + pair_text(adj.backward_witness->first, adj.backward_witness->second) +
                                     " is not adjacent, images " +
                                     pair_text(f.map[adj.backward_witness->first], f.map[adj.backward_witness->second]) +
                                     " are"
                               : "");
  FramePolicy all;
  all.mode = FramePolicy::Mode::all;
  auto fwd = check_base_preserving(f, all);
  b.claim("base subsets go to base subsets", fwd.holds, std::to_string(fwd.frames_tested) + " frames");
  auto back = check_base_preserving(inverse(f), all);
  b.claim("inverse does not send base subsets to base subsets", !back.holds && back.witness.has_value(),
          back.witness ? "frame contains the deleted point: " +
                             std::string(std::find(back.witness->points.begin(), back.witness->points.end(), deleted) !=
                                                 back.witness->points.end()
                                             ? "yes"
                                             : "no")
                       : "");
  b.item.construction = Json{{"source", geometry_to_json(*r.space)},
                             {"target", geometry_to_json(*pg->space())},
                             {"deleted_point", deleted},
                             {"map", map_to_json(r.space->label(), pg->space()->label(), 1, f.map)}};
  return b.item;
}

GalleryItem brezuleanu_radulescu() {
  ItemBuilder b;
  b.item.id = "brezuleanu-radulescu";
  b.item.title = "an embedding PG(3,2) -> PG(2,16) that is not strong";
  auto src = pg_of(3, 2);
  auto tgt = pg_of(2, 16);
  const auto& f16 = tgt->f();
  // w is the class of x in GF(2)[x]/(x^4+x+1); its powers are the codes 2, 4, 8.
  const gf::Elem w = 2;
  const gf::Elem w2 = f16.mul(w, w);
  const gf::Elem w3 = f16.mul(w2, w);
  Matrix coeffs;
  for (gf::Elem e : {gf::Elem{1}, w, w2, w3}) {
    auto c = f16.coefficients(e);
    coeffs.push_back(Row(c.begin(), c.end()));
  }
  auto gf2 = gf::FieldSpec::of_order(2);
  b.claim("1, w, w^2, w^3 independent over GF(2)", rank(*gf2, coeffs) == 4);
  Matrix m{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {w, w2, w3}};
  auto g = linear_point_map(src, tgt, m);
  auto cls = classify_map(g);
  b.claim("injective", cls.injective);
  b.claim("collinearity preserving", cls.collinearity_preserving);
  long long n = src->n_points();
  b.claim("non-collinearity preserving", cls.non_collinearity_preserving,
          std::to_string(n * (n - 1) * (n - 2) / 6) + " point triples");
  b.claim("classified as an embedding", cls.kind == MorphismClass::Kind::embedding, to_string(cls.kind));
  b.claim("not a strong embedding", !cls.is_strong_embedding());
  PointSet base = make_point_set(src->n_points(), standard_frame(*GrassmannSpace::of_projective(src, 0)).points);
  bool base_indep = is_independent(*src->space(), base);
  bool image_dep = !is_independent(*tgt->space(), g.image(base));
  b.claim("a base maps to a dependent set", base_indep && image_dep, "standard frame " + Json(to_vector(base)).dump());
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(std::vector<int>(r.begin(), r.end()));
  b.item.construction = Json{{"source", src->space()->label()},
                             {"target", tgt->space()->label()},
                             {"field", f16.designator()},
                             {"matrix", rows},
                             {"map", point_map_to_json(g)}};
  return b.item;
}

GalleryItem base_into_base_not_embedding(int q) {
  ItemBuilder b;
  b.item.id = "base-into-base";
  b.item.title = "base subsets into base subsets, not induced by a point map";
  const int n = 4;
  auto pg = pg_of(n, q);
  const auto& amb = *pg->space();
  PointSet s_pts = pg->points_of(pg->subspaces(n - 2).front());
  auto tgt = GrassmannSpace::of_projective(pg, 1);
  int l_new = -1;
  for (int e = 0; e < tgt->size() && l_new < 0; ++e)
    if (!tgt->points(e).intersects(s_pts)) l_new = e;
  b.claim("skew line complements the subspace",
          l_new >= 0 && closure(amb, s_pts | tgt->points(l_new)) == amb.full_set(),
          "subspace dimension " + std::to_string(tgt->dim_of(s_pts)) + ", line element " + std::to_string(l_new));

  auto r = restrict_to(amb, s_pts);
  auto src = GrassmannSpace::of_linear(r.space, 1);
  GrassmannMap f{src, tgt, std::vector<int>(src->size())};
  for (int e = 0; e < src->size(); ++e) f.map[e] = tgt->index_of(to_ambient(r, src->points(e), amb.n_points()));
  const int moved = 0;
  const int l_old = f.map[moved];
  f.map[moved] = l_new;
  b.claim("injective", f.injective(), std::to_string(src->size()) + " lines of the subspace");

  FrameIndex index(tgt);
  std::set<std::vector<int>> seen;
  std::size_t checked = 0;
  std::size_t least = SIZE_MAX;
  bool into = true;
  for (const auto& frame : all_frames(*r.space)) {
    BaseSubset bs(src, frame);
    PointSet members = bs.elements(bs.all());
    if (!seen.insert(to_vector(members)).second) continue;
    ++checked;
    PointSet img = f.image(members);
    img.set(l_new);
    std::size_t c = index.count_containing(img);
    least = std::min(least, c);
    into = into && c > 0;
  }
  b.claim("every base subset image, with the skew line, lies in a base subset", into && checked > 0,
          std::to_string(checked) + " base subsets, fewest containing base subsets " + std::to_string(least));
  auto adj = check_adjacency_preserving(f);
  b.claim("adjacency not preserved", !adj.forward,
          adj.forward_witness ? "pair " + pair_text(adj.forward_witness->first, adj.forward_witness->second) : "");

  // A point map inducing f sends each point into every image line through it,
  // so candidates shrink to intersections; search all of them.
  const auto& ssp = *r.space;
  std::vector<std::vector<int>> candidates(ssp.n_points());
  for (int p = 0; p < ssp.n_points(); ++p) {
    PointSet c = amb.full_set();
    for (int e = 0; e < src->size(); ++e)
      if (src->points(e).test(p)) c &= tgt->points(f.map[e]);
    candidates[p] = to_vector(c);
  }
  std::size_t inducing = 0;
  std::size_t leaves = 0;
  std::vector<int> g(ssp.n_points());
  std::function<void(int)> search = [&](int p) {
    if (p == ssp.n_points()) {
      ++leaves;
      PointMap pm{r.space, pg->space(), g};
      bool same = true;
      for (int e = 0; e < src->size() && same; ++e)
        same = tgt->index_of(closure(amb, pm.image(src->points(e)))) == f.map[e];
      if (same) ++inducing;
      return;
    }
    for (int c : candidates[p]) {
      g[p] = c;
      search(p + 1);
    }
  };
  search(0);
  std::size_t empty = std::count_if(candidates.begin(), candidates.end(), [](const auto& c) { return c.empty(); });
  b.claim("no point map induces it", inducing == 0,
          std::to_string(leaves) + " candidate point maps, " + std::to_string(empty) + " points without candidates");
  b.item.construction = Json{{"ambient", geometry_to_json(amb)},
                             {"subspace", to_vector(s_pts)},
                             {"ambient_point", r.ambient_point},
                             {"moved_element", moved},
                             {"moved_from", l_old},
                             {"moved_to", l_new},
                             {"map", f.map}};
  return b.item;
}

std::vector<std::string> gallery_ids() {
  return {"kreuzer-plane", "punctured", "clique-not-top", "one-sided-bijection", "brezuleanu-radulescu",
          "base-into-base"};
}

GalleryItem build_gallery_item(const std::string& id, int q) {
  if (id == "kreuzer-plane") return kreuzer_plane(q);
  if (id == "punctured") return punctured(q);
  if (id == "clique-not-top") return clique_not_top(q);
  if (id == "one-sided-bijection") return one_sided_bijection(q);
  if (id == "brezuleanu-radulescu") return brezuleanu_radulescu();
  if (id == "base-into-base") return base_into_base_not_embedding(q);
  throw PreconditionError("unknown gallery item \"" + id + "\"");
}

}  // namespace grasslab
