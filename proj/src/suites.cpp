#include "grasslab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "grasslab/errors.hpp"
#include "grasslab/gallery.hpp"

namespace grasslab {

bool Report::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const ReportLine& l) { return l.passed; });
}

Json Report::to_json(bool timing) const {
  Json j;
  j["title"] = title;
  Json ls = Json::array();
  for (const auto& l : lines) {
    Json e{{"id", l.id}, {"claim", l.claim}, {"passed", l.passed}, {"instances", l.instances}, {"detail", l.detail}};
    if (timing) e["millis"] = l.millis;
    ls.push_back(std::move(e));
  }
  j["lines"] = std::move(ls);
  j["passed"] = passed();
  return j;
}

std::string Report::to_text(bool timing) const {
  std::ostringstream out;
  out << title << "\n";
  for (const auto& l : lines) {
    out << (l.passed ? "PASS " : "FAIL ") << l.id << "  [" << l.instances << "]  " << l.claim;
    if (!l.detail.empty()) out << "  -- " << l.detail;
    if (timing) out << "  (" << static_cast<long long>(l.millis) << " ms)";
    out << "\n";
  }
  out << (passed() ? "all passed" : "FAILED") << " (" << lines.size() << (lines.size() == 1 ? " check)\n" : " checks)\n");
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

void run_line(Report& r, std::string id, std::string claim, const std::function<void(ReportLine&)>& body) {
  ReportLine line(std::move(id), std::move(claim));
  auto t0 = Clock::now();
  try {
    body(line);
  } catch (const std::exception& e) {
    line.passed = false;
    line.detail = std::string("error: ") + e.what();
  }
  line.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  r.lines.push_back(std::move(line));
}

/// Marks the line failed with the first witness only.
void fail(ReportLine& l, const std::string& witness) {
  if (l.passed) l.detail = witness;
  l.passed = false;
}

std::string str(long long v) { return std::to_string(v); }

PGPtr pg_of(int n, int q) { return build_pg(n, gf::FieldSpec::of_order(q)); }

struct NamedSpace {
  std::string name;
  SpacePtr space;
};

SpacePtr near_pencil(int n_points) {
  std::vector<int> big;
  for (int i = 0; i < n_points - 1; ++i) big.push_back(i);
  std::vector<std::vector<int>> lines{big};
  for (int i = 0; i < n_points - 1; ++i) lines.push_back({i, n_points - 1});
  return std::make_shared<LinearSpace>(n_points, std::move(lines), "near-pencil-" + std::to_string(n_points));
}

std::vector<NamedSpace> space_corpus(const SuiteOptions& o) {
  auto pg32 = pg_of(3, 2);
  std::vector<NamedSpace> out{{"PG(2,2)", pg_of(2, 2)->space()},
                              {"PG(3,2)", pg32->space()},
                              {"punctured PG(3,2)", make_punctured(pg32, 0).space},
                              {"kreuzer-plane(2)", make_kreuzer_plane(pg32)},
                              {"complete-5", complete_graph_space(5)},
                              {"near-pencil-5", near_pencil(5)},
                              {"PG(2,3)", pg_of(2, 3)->space()}};
  if (o.geometry) out.push_back({o.geometry->space->label().empty() ? "input" : o.geometry->space->label(), o.geometry->space});
  return out;
}

PointSet random_subset(const LinearSpace& s, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution coin(density);
  PointSet x = s.empty_set();
  for (int p = 0; p < s.n_points(); ++p)
    if (coin(rng)) x.set(p);
  return x;
}

struct NamedMap {
  std::string name;
  PointMap map;
};

std::vector<NamedMap> map_corpus(const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<NamedMap> out;
  auto pg22 = pg_of(2, 2);
  auto pg32 = pg_of(3, 2);
  auto pg24 = pg_of(2, 4);
  for (const auto& ns : space_corpus(o)) out.push_back({"identity of " + ns.name, identity_map(ns.space, ns.space)});
  for (const auto& pg : {pg22, pg32})
    for (int t = 0; t < 5; ++t)
      out.push_back({"collineation of " + pg->space()->label(),
                     induced_point_map(pg, {random_invertible(pg->f(), pg->n() + 1, rng), 0, false})});
  for (int t = 0; t < 3; ++t)
    out.push_back({"semilinear map of PG(2,4)", induced_point_map(pg24, {random_invertible(pg24->f(), 3, rng), 1, false})});
  out.push_back({"identity PG(3,2) -> kreuzer-plane(2)", identity_map(pg32->space(), make_kreuzer_plane(pg32))});
  auto punct = make_punctured(pg32, 0);
  out.push_back({"inclusion of punctured PG(3,2)", {punct.space, pg32->space(), punct.ambient_point}});
  auto pg216 = pg_of(2, 16);
  const auto& f16 = pg216->f();
  gf::Elem w = 2, w2 = f16.mul(w, w), w3 = f16.mul(w2, w);
  out.push_back({"embedding PG(3,2) -> PG(2,16)",
                 linear_point_map(pg32, pg216, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {w, w2, w3}})});
  for (int t = 0; t < 5; ++t) {
    std::vector<int> perm(pg22->n_points());
    for (int i = 0; i < pg22->n_points(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    out.push_back({"random permutation of PG(2,2)", {pg22->space(), pg22->space(), perm}});
  }
  return out;
}

/// All subsets of the points with at most `max_size` elements.
void for_each_small_subset(int n, int max_size, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    visit(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int p = start; p < n; ++p) {
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

bool is_maximal_clique(const GrassmannSpace& g, const PointSet& members) {
  if (!pairwise_adjacent(g, members)) return false;
  for (int e = 0; e < g.size(); ++e)
    if (!members.test(e) && members.is_subset_of(g.adjacency_row(e))) return false;
  return true;
}

std::vector<Frame> sampled_frames(const LinearSpace& space, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Frame> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_frame(space, rng));
  return out;
}

GrassmannMap lift_of(const PGPtr& pg, const GrassPtr& g, const Matrix& m) {
  return lift_point_map(induced_point_map(pg, {m, 0, false}), g, g);
}

}  // namespace

// ---------------------------------------------------------------- geometry

Report check_axioms(const LinearSpace& space) {
  Report r{"axioms of " + space.label()};
  run_line(r, "linspace.axioms", "every line has two points and every pair lies on exactly one line", [&](ReportLine& l) {
    auto v = validate(space);
    l.instances = static_cast<std::size_t>(space.n_points()) * (space.n_points() - 1) / 2;
    l.passed = v.ok;
    if (!v.ok) l.detail = v.violations.front().describe();
    else l.detail = str(space.n_points()) + " points, " + str(space.n_lines()) + " lines";
  });
  return r;
}

Report check_exchange_report(const LinearSpace& space) {
  Report r{"exchange axiom on " + space.label()};
  run_line(r, "linspace.exchange", "p2 in cl(X+p1) \\ cl(X) implies p1 in cl(X+p2)", [&](ReportLine& l) {
    auto ex = check_exchange(space);
    l.instances = all_subspaces(space).size();
    l.passed = ex.holds;
    if (!ex.holds)
      l.detail = "X=" + Json(to_vector(*ex.x)).dump() + ", p1=" + str(ex.p1) + ", p2=" + str(ex.p2);
  });
  return r;
}

Report check_bases(const LinearSpace& space) {
  Report r{"bases of " + space.label()};
  run_line(r, "linspace.bases", "all bases have the same size", [&](ReportLine& l) {
    auto bases = all_bases(space);
    l.instances = bases.size();
    std::set<std::size_t> sizes;
    for (const auto& b : bases) sizes.insert(b.count());
    l.passed = sizes.size() == 1;
    std::string list;
    for (auto s : sizes) list += (list.empty() ? "" : ", ") + str(static_cast<long long>(s));
    l.detail = str(bases.size()) + " bases, sizes {" + list + "}";
  });
  return r;
}

Report check_projective(const LinearSpace& space) {
  Report r{"projective axioms on " + space.label()};
  auto ax = verify_projective_axioms(space);
  run_line(r, "projspace.lines-have-three-points", "every line has at least three points", [&](ReportLine& l) {
    l.instances = space.n_lines();
    l.passed = ax.p2;
    if (!ax.p2) l.detail = "line " + str(*ax.short_line);
  });
  run_line(r, "projspace.coplanar-lines-meet", "two lines of a plane always meet", [&](ReportLine& l) {
    l.instances = ax.planes_checked;
    l.passed = ax.p1;
    if (!ax.p1)
      l.detail = "disjoint lines " + str(ax.disjoint_lines->first) + " and " + str(ax.disjoint_lines->second) +
                 " in plane " + Json(to_vector(*ax.plane)).dump();
  });
  return r;
}

// ---------------------------------------------------------------- baseset lines

namespace {

void exact_line(Report& r, const std::string& id, const std::vector<std::pair<PGPtr, int>>& levels,
                const std::function<std::vector<Frame>(const PGPtr&)>& frames_of) {
  run_line(r, id, "is_exact agrees with the frame-index oracle on every subset", [&](ReportLine& l) {
    for (auto [pg, k] : levels) {
      auto g = GrassmannSpace::of_projective(pg, k);
      FrameIndex index(g);
      for (const auto& frame : frames_of(pg)) {
        BaseSubset b(g, frame);
        if (b.size() > 20) throw BoundError("more than 20 members");
        for (MemberMask m = 0; m <= b.all(); ++m) {
          ++l.instances;
          if (is_exact(b, m) != is_exact_oracle(index, b, m))
            fail(l, pg->space()->label() + " k=" + str(k) + " mask " + str(static_cast<long long>(m)));
        }
      }
    }
  });
}

void maximal_inexact_line(Report& r, const std::string& id, const std::vector<std::pair<PGPtr, int>>& levels,
                          const std::function<std::vector<Frame>(const PGPtr&)>& frames_of) {
  run_line(r, id, "maximal inexact subsets are exactly the inexact subsets of the extremal size", [&](ReportLine& l) {
    std::string sizes;
    for (auto [pg, k] : levels) {
      auto g = GrassmannSpace::of_projective(pg, k);
      const int n = pg->n();
      const long long c = binomial(n, k + 1) + binomial(n - 1, k - 1);
      sizes += (sizes.empty() ? "" : ", ") + pg->space()->label() + " k=" + str(k) + ": " + str(c);
      for (const auto& frame : frames_of(pg)) {
        BaseSubset b(g, frame);
        auto exact = [&](MemberMask m) { return is_exact(b, m); };
        auto maximal = maximal_inexact_exhaustive(b, exact);
        std::set<MemberMask> max_set(maximal.begin(), maximal.end());
        std::set<MemberMask> of_size;
        bool larger = false;
        for (MemberMask m = 0; m <= b.all(); ++m) {
          if (exact(m)) continue;
          if (std::popcount(m) == c) of_size.insert(m);
          if (std::popcount(m) > c) larger = true;
        }
        std::set<MemberMask> family;
        for (const auto& fm : maximal_inexact_family(b)) family.insert(fm.mask);
        ++l.instances;
        if (max_set != of_size || larger || family != max_set)
          fail(l, pg->space()->label() + " k=" + str(k) + " frame " + Json(frame.points).dump());
      }
    }
    if (l.passed) l.detail = "sizes " + sizes;
  });
}

void regular_line(Report& r, const std::string& id, const std::vector<std::pair<PGPtr, int>>& levels,
                  const std::function<std::vector<Frame>(const PGPtr&)>& frames_of) {
  run_line(r, id, "regularity by intersection agrees with the index criterion", [&](ReportLine& l) {
    for (auto [pg, k] : levels) {
      auto g = GrassmannSpace::of_projective(pg, k);
      const int n = pg->n();
      const int m = regular_size(n, k);
      std::vector<IndexPair> pairs;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          if (i != j) pairs.emplace_back(i, j);
      for (const auto& frame : frames_of(pg)) {
        BaseSubset b(g, frame);
        // Multisets of m+1 pairs.
        std::vector<int> idx(m + 1, 0);
        while (true) {
          std::vector<IndexPair> coll;
          for (int t : idx) coll.push_back(pairs[t]);
          ++l.instances;
          if (is_regular(b, coll) != regular_by_index_criterion(n, k, coll))
            fail(l, pg->space()->label() + " k=" + str(k) + " collection starting " + str(coll[0].first) + "," +
                        str(coll[0].second));
          int t = m;
          while (t >= 0 && idx[t] == static_cast<int>(pairs.size()) - 1) --t;
          if (t < 0) break;
          ++idx[t];
          for (int u = t + 1; u <= m; ++u) idx[u] = idx[t];
        }
      }
    }
  });
}

void combinatorial_line(Report& r, const std::string& id, const std::vector<std::pair<PGPtr, int>>& levels,
                        const std::function<std::vector<Frame>(const PGPtr&)>& frames_of) {
  run_line(r, id, "combinatorial adjacency agrees with geometric adjacency on base subsets", [&](ReportLine& l) {
    for (auto [pg, k] : levels) {
      auto g = GrassmannSpace::of_projective(pg, k);
      for (const auto& frame : frames_of(pg)) {
        BaseSubset b(g, frame, BaseSubset::Unchecked{});
        for (int u = 0; u < b.size(); ++u)
          for (int v = u + 1; v < b.size(); ++v) {
            ++l.instances;
            if (combinatorial_adjacent(b, u, v) != g->adjacent(b.member(u), b.member(v)))
              fail(l, pg->space()->label() + " k=" + str(k) + " members " + str(u) + "," + str(v));
          }
      }
    }
  });
}

}  // namespace

Report check_baseset_lemmas(const PGPtr& pg, int k, const FramePolicy& frames) {
  Report r{"base-subset calculus on " + pg->space()->label() + ", k=" + str(k)};
  if (k <= 0 || k >= pg->n() - 1) throw PreconditionError("base-subset calculus needs 0 < k < n-1");
  auto g = GrassmannSpace::of_projective(pg, k);
  auto list = frames_for_policy(*g, frames);
  auto frames_of = [&](const PGPtr&) { return list; };
  std::vector<std::pair<PGPtr, int>> levels{{pg, k}};
  exact_line(r, "baseset.exact-vs-oracle", levels, frames_of);
  maximal_inexact_line(r, "baseset.maximal-inexact-size", levels, frames_of);
  combinatorial_line(r, "baseset.combinatorial-adjacency", levels, frames_of);
  regular_line(r, "baseset.regular-criterion", levels, frames_of);
  return r;
}

// ---------------------------------------------------------------- linspace

Report suite_linspace(const SuiteOptions& o) {
  Report r{"linear spaces"};
  auto corpus = space_corpus(o);
  run_line(r, "linspace.closure-laws", "closure is extensive, monotone and idempotent", [&](ReportLine& l) {
    std::mt19937_64 rng(o.seed);
    for (const auto& ns : corpus) {
      const auto& s = *ns.space;
      for (int t = 0; t < 200; ++t) {
        PointSet x = random_subset(s, rng, 0.15);
        PointSet y = x | random_subset(s, rng, 0.1);
        PointSet cx = closure(s, x);
        ++l.instances;
        if (!x.is_subset_of(cx) || !cx.is_subset_of(closure(s, y)) || closure(s, cx) != cx)
          fail(l, ns.name + " X=" + Json(to_vector(x)).dump());
      }
    }
  });
  run_line(r, "linspace.closure-depth", "closure stabilises within n_points hull steps", [&](ReportLine& l) {
    std::mt19937_64 rng(o.seed + 1);
    int deepest = 0;
    for (const auto& ns : corpus) {
      const auto& s = *ns.space;
      for (int t = 0; t < 200; ++t) {
        PointSet x = random_subset(s, rng, 0.15);
        auto tr = closure_with_depth(s, x);
        deepest = std::max(deepest, tr.depth);
        ++l.instances;
        if (tr.depth > s.n_points() || tr.result != closure(s, x)) fail(l, ns.name + " X=" + Json(to_vector(x)).dump());
      }
    }
    if (l.passed) l.detail = "deepest " + str(deepest);
  });
  run_line(r, "linspace.base-intersections",
           "cl(X-X_I) meets cl(X-X_J) in cl(X-(X_I+X_J)) for every base X and index sets I, J", [&](ReportLine& l) {
             for (const auto& ns : corpus) {
               const auto& s = *ns.space;
               if (s.n_points() > 16) continue;
               for (const auto& base : all_bases(s)) {
                 auto pts = to_vector(base);
                 const int size = static_cast<int>(pts.size());
                 std::vector<PointSet> cl(std::size_t{1} << size);
                 for (std::size_t mask = 0; mask < cl.size(); ++mask) {
                   PointSet rest = s.empty_set();
                   for (int i = 0; i < size; ++i)
                     if (!(mask >> i & 1)) rest.set(pts[i]);
                   cl[mask] = closure(s, rest);
                 }
                 for (std::size_t i = 0; i < cl.size(); ++i)
                   for (std::size_t j = 0; j < cl.size(); ++j) {
                     ++l.instances;
                     if ((cl[i] & cl[j]) != cl[i | j]) fail(l, ns.name + " base " + Json(pts).dump());
                   }
               }
             }
           });
  run_line(r, "linspace.bases-equicardinal",
           "in exchange spaces all bases have one size and every independent set extends to a base", [&](ReportLine& l) {
             for (const auto& ns : corpus) {
               const auto& s = *ns.space;
               if (s.n_points() > 16 || !check_exchange(s).holds) continue;
               std::set<std::size_t> sizes;
               for (const auto& b : all_bases(s)) sizes.insert(b.count());
               if (sizes.size() != 1) fail(l, ns.name + " has bases of several sizes");
               const std::size_t size = *sizes.begin();
               for_each_independent(s, s.n_points(), [&](const PointSet& x) {
                 ++l.instances;
                 PointSet b = extend_to_base(s, x);
                 if (!x.is_subset_of(b) || b.count() != size || !is_independent(s, b) || closure(s, b) != s.full_set())
                   fail(l, ns.name + " X=" + Json(to_vector(x)).dump());
                 return true;
               });
             }
           });
  auto maps = map_corpus(o);
  run_line(r, "linspace.semicollineation-dimension",
           "a semicollineation into a space of no smaller dimension is a collineation", [&](ReportLine& l) {
             bool witness = false;
             for (const auto& nm : maps) {
               auto cls = classify_map(nm.map);
               if (!cls.is_semicollineation()) continue;
               int ds = dimension(*nm.map.source);
               int dt = dimension(*nm.map.target);
               if (ds <= dt) {
                 ++l.instances;
                 if (!cls.is_collineation()) fail(l, nm.name);
               } else if (!cls.is_collineation()) {
                 witness = true;
               }
             }
             if (!witness) fail(l, "no semicollineation lowering the dimension in the corpus");
             if (l.passed) l.detail = "dimension-lowering semicollineation present (PG(3,2) -> kreuzer-plane(2))";
           });
  run_line(r, "linspace.base-preserving-surjection",
           "a surjection between equal-dimension exchange spaces sending bases to bases is a collineation",
           [&](ReportLine& l) {
             auto fano = pg_of(2, 2)->space();
             std::vector<std::pair<SpacePtr, SpacePtr>> pairs{{fano, fano},
                                                              {complete_graph_space(4), complete_graph_space(4)},
                                                              {near_pencil(4), near_pencil(4)},
                                                              {fano, near_pencil(4)},
                                                              {near_pencil(5), near_pencil(4)}};
             std::size_t found = 0;
             for (const auto& [a, b] : pairs) {
               if (dimension(*a) != dimension(*b)) throw Error("corpus pair of unequal dimension");
               auto bases_a = all_bases(*a);
               auto bases_b = all_bases(*b);
               std::unordered_set<PointSet> target(bases_b.begin(), bases_b.end());
               const int na = a->n_points();
               const int nb = b->n_points();
               std::vector<int> img(na, 0);
               while (true) {
                 PointMap f{a, b, img};
                 if (f.surjective()) {
                   ++l.instances;
                   bool b2b = true;
                   for (const auto& base : bases_a) {
                     PointSet im = f.image(base);
                     if (im.count() != base.count() || !target.count(im)) {
                       b2b = false;
                       break;
                     }
                   }
                   if (b2b) {
                     ++found;
                     if (!classify_map(f).is_collineation()) fail(l, a->label() + " -> " + b->label());
                   }
                 }
                 int t = na - 1;
                 while (t >= 0 && img[t] == nb - 1) img[t--] = 0;
                 if (t < 0) break;
                 ++img[t];
               }
             }
             if (l.passed) l.detail = str(found) + " base-preserving surjections, all collineations";
           });
  run_line(r, "linspace.closure-image", "a collinearity-preserving injection maps cl(X) into cl(f(X)), |X| <= 4",
           [&](ReportLine& l) {
             for (const auto& nm : maps) {
               auto cls = classify_map(nm.map);
               if (!cls.injective || !cls.collinearity_preserving) continue;
               for_each_small_subset(nm.map.source->n_points(), 4, [&](const std::vector<int>& xs) {
                 ++l.instances;
                 if (!closure_image_included(nm.map, make_point_set(nm.map.source->n_points(), xs)))
                   fail(l, nm.name + " X=" + Json(xs).dump());
               });
             }
           });
  return r;
}

// ---------------------------------------------------------------- projspace

Report suite_projspace(const SuiteOptions& o) {
  Report r{"projective spaces"};
  run_line(r, "projspace.subspace-counts", "subspace counts equal Gaussian binomials and a brute-force count",
           [&](ReportLine& l) {
             std::string brute;
             for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}}) {
               auto pg = pg_of(n, q);
               const auto& f = pg->f();
               for (int d = 0; d < n; ++d) {
                 ++l.instances;
                 long long expected = gaussian_binomial(n + 1, d + 1, q);
                 long long have = static_cast<long long>(pg->subspaces(d).size());
                 if (have != expected) fail(l, pg->space()->label() + " dim " + str(d));
                 // Brute force: every (d+1)-row matrix, kept when its row space has q^(d+1) vectors.
                 const int cells = (d + 1) * (n + 1);
                 double total = 1;
                 for (int c = 0; c < cells; ++c) total *= q;
                 if (total > 70000) continue;
                 std::set<std::set<Row>> spaces;
                 std::vector<int> digits(cells, 0);
                 long long full = 1;
                 for (int c = 0; c <= d; ++c) full *= q;
                 while (true) {
                   std::set<Row> span;
                   std::vector<int> coef(d + 1, 0);
                   while (true) {
                     Row v(n + 1, 0);
                     for (int rI = 0; rI <= d; ++rI)
                       for (int c = 0; c <= n; ++c)
                         v[c] = f.add(v[c], f.mul(static_cast<gf::Elem>(coef[rI]),
                                                  static_cast<gf::Elem>(digits[rI * (n + 1) + c])));
                     span.insert(v);
                     int t = d;
                     while (t >= 0 && coef[t] == q - 1) coef[t--] = 0;
                     if (t < 0) break;
                     ++coef[t];
                   }
                   if (static_cast<long long>(span.size()) == full) spaces.insert(std::move(span));
                   int t = cells - 1;
                   while (t >= 0 && digits[t] == q - 1) digits[t--] = 0;
                   if (t < 0) break;
                   ++digits[t];
                 }
                 brute += (brute.empty() ? "" : ", ") + pg->space()->label() + " dim " + str(d);
                 if (static_cast<long long>(spaces.size()) != expected)
                   fail(l, pg->space()->label() + " dim " + str(d) + ": brute force " + str(spaces.size()));
               }
             }
             if (l.passed) l.detail = "brute force on " + brute;
           });
  run_line(r, "projspace.modular-law", "dim span + dim meet = dim A + dim B, with spans and meets as point sets",
           [&](ReportLine& l) {
             auto pg = pg_of(3, 2);
             std::vector<ProjSubspace> all{pg->empty()};
             for (int d = 0; d <= 3; ++d)
               for (auto& s : pg->subspaces(d)) all.push_back(s);
             for (const auto& a : all)
               for (const auto& b : all) {
                 ++l.instances;
                 auto sp = pg->span(a, b);
                 auto me = pg->meet(a, b);
                 PointSet pa = pg->points_of(a), pb = pg->points_of(b);
                 if (sp.dim() + me.dim() != a.dim() + b.dim() || pg->points_of(me) != (pa & pb) ||
                     pg->points_of(sp) != closure(*pg->space(), pa | pb))
                   fail(l, "subspaces " + a.key() + " and " + b.key());
               }
           });
  run_line(r, "projspace.semilinear-composition",
           "the point map of a composite is the composite of point maps, automorphism indices adding", [&](ReportLine& l) {
             std::mt19937_64 rng(o.seed);
             for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {2, 4}, {2, 8}, {2, 9}}) {
               auto pg = pg_of(n, q);
               const auto& f = pg->f();
               std::uniform_int_distribution<int> sig(0, f.m() - 1);
               for (int t = 0; t < 25; ++t) {
                 SemilinearMap a{random_invertible(f, n + 1, rng), sig(rng), false};
                 SemilinearMap b{random_invertible(f, n + 1, rng), sig(rng), false};
                 auto ab = compose(f, a, b);
                 ++l.instances;
                 if (ab.sigma != (a.sigma + b.sigma) % f.m() ||
                     induced_point_map(pg, ab).map != compose(induced_point_map(pg, a), induced_point_map(pg, b)).map)
                   fail(l, pg->space()->label());
               }
             }
           });
  run_line(r, "projspace.collineations-are-semilinear",
           "every collineation found by automorphism search is induced by a matrix", [&](ReportLine& l) {
             std::string counts;
             for (int n : {2, 3}) {
               auto pg = pg_of(n, 2);
               long long expected = 1;
               for (int i = 0; i <= n; ++i) expected *= (1LL << (n + 1)) - (1LL << i);
               std::size_t count = for_each_collineation(*pg->space(), *pg->space(), [&](const std::vector<int>& perm) {
                 ++l.instances;
                 auto sl = semilinear_from_collineation(pg, perm);
                 if (!sl || induced_point_map(pg, *sl).map != perm) fail(l, pg->space()->label() + " permutation");
                 return true;
               });
               if (static_cast<long long>(count) != expected)
                 fail(l, pg->space()->label() + ": " + str(count) + " collineations, expected " + str(expected));
               counts += (counts.empty() ? "" : ", ") + pg->space()->label() + ": " + str(count);
             }
             if (l.passed) l.detail = counts;
           });
  run_line(r, "projspace.rref-canonical", "RREF is idempotent and equal row spaces give equal RREF", [&](ReportLine& l) {
    std::mt19937_64 rng(o.seed);
    for (int q : {2, 3, 4, 5, 9}) {
      auto f = gf::FieldSpec::of_order(q);
      std::uniform_int_distribution<int> entry(0, q - 1), dim(1, 5);
      for (int t = 0; t < 60; ++t) {
        int rows = dim(rng), cols = dim(rng) + 1;
        Matrix m(rows, Row(cols));
        for (auto& row : m)
          for (auto& x : row) x = static_cast<gf::Elem>(entry(rng));
        Matrix a = random_invertible(*f, rows, rng);
        ++l.instances;
        Matrix once = rref(*f, m);
        if (rref(*f, once) != once || rref(*f, multiply(*f, a, m)) != once) fail(l, "GF(" + str(q) + ") sample " + str(t));
      }
    }
  });
  return r;
}

// ---------------------------------------------------------------- grassmann

Report suite_grassmann(const SuiteOptions& o) {
  Report r{"Grassmann spaces"};
  auto corpus = space_corpus(o);
  std::vector<std::pair<std::string, GrassPtr>> lines_of;
  for (const auto& ns : corpus) {
    auto g = GrassmannSpace::of_linear(ns.space, 1);
    lines_of.emplace_back(ns.name, g);
  }
  run_line(r, "grassmann.distance-sandwich", "dim span - k <= distance <= k - dim meet on lines of every space",
           [&](ReportLine& l) {
             std::size_t strict_low = 0, strict_high = 0;
             std::string where;
             for (const auto& [name, g] : lines_of) {
               const auto& s = *g->ambient();
               for (int i = 0; i < g->size(); ++i) {
                 auto dist = distances_from(*g, i);
                 for (int j = 0; j < g->size(); ++j) {
                   ++l.instances;
                   PointSet m = g->points(i) & g->points(j);
                   int me = m.none() ? -1 : subspace_dimension(s, m);
                   int sp = subspace_dimension(s, closure(s, g->points(i) | g->points(j)));
                   if (dist[j] < 0 || sp - 1 > dist[j] || dist[j] > 1 - me) fail(l, name + " pair " + str(i) + "," + str(j));
                   if (sp - 1 < dist[j]) ++strict_low;
                   if (dist[j] < 1 - me) {
                     if (strict_high == 0) where = name;
                     ++strict_high;
                   }
                 }
               }
             }
             if (l.passed)
               l.detail = "strict lower bound on " + str(strict_low) + " pairs, strict upper bound on " + str(strict_high) +
                          " pairs" + (where.empty() ? "" : " (first in " + where + ")");
           });
  run_line(r, "grassmann.distance-equality", "distance = k - dim meet = dim span - k in PG(3,2) and PG(4,2)",
           [&](ReportLine& l) {
             std::vector<GrassPtr> gs{GrassmannSpace::of_projective(pg_of(3, 2), 1),
                                      GrassmannSpace::of_projective(pg_of(4, 2), 1)};
             if (o.geometry && o.geometry->pg && o.k >= 0 && o.k < o.geometry->pg->n())
               gs.push_back(GrassmannSpace::of_projective(o.geometry->pg, o.k));
             for (const auto& g : gs)
               for (int i = 0; i < g->size(); ++i) {
                 auto dist = distances_from(*g, i);
                 for (int j = 0; j < g->size(); ++j) {
                   ++l.instances;
                   int k = g->k();
                   if (dist[j] != k - g->meet_dim(i, j) || dist[j] != g->span_dim(i, j) - k)
                     fail(l, g->ambient()->label() + " pair " + str(i) + "," + str(j));
                 }
               }
           });
  std::vector<std::pair<std::string, GrassPtr>> all_levels = lines_of;
  all_levels.emplace_back("PG(4,2) k=1", GrassmannSpace::of_projective(pg_of(4, 2), 1));
  all_levels.emplace_back("PG(4,2) k=2", GrassmannSpace::of_projective(pg_of(4, 2), 2));
  all_levels.emplace_back("PG(3,2) k=2", GrassmannSpace::of_projective(pg_of(3, 2), 2));
  run_line(r, "grassmann.adjacent-span", "adjacent elements span a (k+1)-subspace", [&](ReportLine& l) {
    for (const auto& [name, g] : all_levels)
      for (int i = 0; i < g->size(); ++i)
        for (int j = i + 1; j < g->size(); ++j) {
          if (!g->adjacent(i, j)) continue;
          ++l.instances;
          if (g->span_dim(i, j) != g->k() + 1) fail(l, name + " pair " + str(i) + "," + str(j));
        }
  });
  run_line(r, "grassmann.cliques-are-stars-and-tops", "maximal cliques of lines of PG(3,2) are the stars and tops",
           [&](ReportLine& l) {
             auto g = GrassmannSpace::of_projective(pg_of(3, 2), 1);
             auto cliques = maximal_cliques(*g);
             std::set<std::vector<int>> found, expected;
             for (const auto& c : cliques) found.insert(to_vector(c));
             for (const auto& s : all_stars(*g)) expected.insert(to_vector(s.members));
             for (const auto& t : all_tops(*g)) expected.insert(to_vector(t.members));
             l.instances = cliques.size();
             l.passed = found == expected;
             l.detail = str(cliques.size()) + " maximal cliques, " + str(expected.size()) + " stars and tops";
           });
  run_line(r, "grassmann.star-top-maximal", "stars (k < n-1) and tops (k > 0) are maximal cliques", [&](ReportLine& l) {
    for (const auto& [name, g] : all_levels) {
      if (!g->projective()) continue;
      if (g->k() >= 1 && g->k() < g->n() - 1)
        for (const auto& s : all_stars(*g)) {
          ++l.instances;
          if (!is_maximal_clique(*g, s.members)) fail(l, name + " star");
        }
      if (g->k() > 0)
        for (const auto& t : all_tops(*g)) {
          ++l.instances;
          if (!is_maximal_clique(*g, t.members)) fail(l, name + " top");
        }
    }
  });
  run_line(r, "grassmann.complement-adjacency", "adjacency read from complements agrees with adjacency",
           [&](ReportLine& l) {
             for (auto g : {GrassmannSpace::of_projective(pg_of(3, 2), 1), GrassmannSpace::of_projective(pg_of(4, 2), 1)}) {
               ComplementAdjacency ca(g);
               for (int i = 0; i < g->size(); ++i)
                 for (int j = 0; j < g->size(); ++j) {
                   ++l.instances;
                   if (ca(i, j) != g->adjacent(i, j)) fail(l, g->ambient()->label() + " pair " + str(i) + "," + str(j));
                 }
             }
           });
  return r;
}

// ---------------------------------------------------------------- baseset

Report suite_baseset(const SuiteOptions& o) {
  Report r{"base subsets"};
  auto pg3 = pg_of(3, 2);
  auto pg4 = pg_of(4, 2);
  auto all3 = all_frames(*pg3->space());
  auto frames_of = [&](const PGPtr& pg) {
    return pg == pg3 ? all3 : sampled_frames(*pg->space(), 24, o.seed);
  };
  std::vector<std::pair<PGPtr, int>> levels{{pg3, 1}, {pg4, 1}, {pg4, 2}};
  exact_line(r, "baseset.exact-vs-oracle", levels, frames_of);
  maximal_inexact_line(r, "baseset.maximal-inexact-size", levels, frames_of);
  auto all4 = all_frames(*pg4->space());
  combinatorial_line(r, "baseset.combinatorial-adjacency", levels,
                     [&](const PGPtr& pg) { return pg == pg3 ? all3 : all4; });
  regular_line(r, "baseset.regular-criterion", {{pg3, 1}, {pg4, 1}}, frames_of);
  run_line(r, "baseset.duality-transport",
           "the base subset at level n-k-1 for a frame is the base subset at level k of the dual frame",
           [&](ReportLine& l) {
             for (const auto& pg : {pg3, pg4}) {
               const int n = pg->n();
               auto dual = dual_space(pg);
               std::map<std::string, int> hyper_index;
               for (std::size_t h = 0; h < dual.hyperplanes.size(); ++h) hyper_index[dual.hyperplanes[h].key()] = static_cast<int>(h);
               auto frames = pg == pg3 ? all3 : sampled_frames(*pg->space(), 12, o.seed);
               for (int k = 0; k < n; ++k) {
                 auto primal = GrassmannSpace::of_projective(pg, n - k - 1);
                 auto dual_g = GrassmannSpace::of_linear(dual.space, k);
                 for (const auto& frame : frames) {
                   Frame dual_frame;
                   for (std::size_t i = 0; i < frame.points.size(); ++i) {
                     PointSet rest = pg->space()->empty_set();
                     for (std::size_t j = 0; j < frame.points.size(); ++j)
                       if (j != i) rest.set(frame.points[j]);
                     dual_frame.points.push_back(hyper_index.at(pg->of_points(closure(*pg->space(), rest)).key()));
                   }
                   BaseSubset bp(primal, frame);
                   BaseSubset bd(dual_g, dual_frame);
                   std::set<std::vector<int>> lhs, rhs;
                   for (int e : bp.members()) lhs.insert(to_vector(primal->points(e)));
                   for (int e : bd.members()) rhs.insert(to_vector(pg->points_of(dual.to_primal(dual_g->points(e)))));
                   ++l.instances;
                   if (lhs != rhs) fail(l, pg->space()->label() + " k=" + str(k) + " frame " + Json(frame.points).dump());
                 }
               }
             }
           });
  return r;
}

// ---------------------------------------------------------------- chow

Report suite_chow(const SuiteOptions& o) {
  Report r{"recognition"};
  auto pg3 = pg_of(3, 2);
  auto g31 = GrassmannSpace::of_projective(pg3, 1);
  run_line(r, "chow.round-trip", "lifts of semilinear maps are recognized with the same point action",
           [&](ReportLine& l) {
             std::mt19937_64 rng(o.seed);
             for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 4}, {3, 3}, {3, 4}}) {
               auto pg = pg_of(n, q);
               std::uniform_int_distribution<int> sig(0, pg->f().m() - 1);
               for (int k = 0; k < n; ++k) {
                 auto g = GrassmannSpace::of_projective(pg, k);
                 for (int t = 0; t < 3; ++t) {
                   SemilinearMap sl{random_invertible(pg->f(), n + 1, rng), sig(rng), false};
                   auto pm = induced_point_map(pg, sl);
                   auto res = recognize(lift_point_map(pm, g, g));
                   ++l.instances;
                   if (res.verdict != Verdict::collineation_induced || res.witness->map != pm.map)
                     fail(l, pg->space()->label() + " k=" + str(k) + ": " + to_string(res.verdict) + " " + res.diagnostic);
                 }
               }
             }
           });
  std::mt19937_64 rng(o.seed);
  std::vector<GrassmannMap> lifts, dual_lifts;
  for (int t = 0; t < 10; ++t) {
    lifts.push_back(lift_of(pg3, g31, random_invertible(pg3->f(), 4, rng)));
    dual_lifts.push_back(compose_with_annihilator(lifts.back()));
  }
  run_line(r, "chow.forward-adjacency-is-two-sided",
           "bijections of the lines of PG(3,2) preserving adjacency forward also preserve it backward",
           [&](ReportLine& l) {
             std::size_t forward = 0;
             std::mt19937_64 local(o.seed + 7);
             std::vector<GrassmannMap> candidates;
             for (int t = 0; t < 200; ++t) {
               GrassmannMap f{g31, g31, std::vector<int>(g31->size())};
               for (int i = 0; i < g31->size(); ++i) f.map[i] = i;
               std::shuffle(f.map.begin(), f.map.end(), local);
               candidates.push_back(std::move(f));
             }
             for (const auto& set : {&lifts, &dual_lifts})
               for (std::size_t s = 0; s < 4; ++s) {
                 const auto& base = (*set)[s];
                 candidates.push_back(base);
                 for (int i = 0; i < g31->size(); ++i)
                   for (int j = i + 1; j < g31->size(); ++j) {
                     GrassmannMap f = base;
                     std::swap(f.map[i], f.map[j]);
                     candidates.push_back(std::move(f));
                   }
               }
             for (const auto& f : candidates) {
               ++l.instances;
               auto adj = check_adjacency_preserving(f);
               if (!adj.forward) continue;
               ++forward;
               if (!adj.backward) fail(l, "a forward-only bijection");
             }
             if (l.passed) l.detail = str(forward) + " forward-preserving bijections, all two-sided";
           });
  run_line(r, "chow.base-preserving-implies-adjacency",
           "injective maps sending base subsets to base subsets preserve adjacency", [&](ReportLine& l) {
             std::vector<GrassmannMap> corpus = lifts;
             corpus.insert(corpus.end(), dual_lifts.begin(), dual_lifts.end());
             corpus.push_back(one_sided_bijection_map());
             auto pg4 = pg_of(4, 2);
             for (int k : {1, 2}) {
               auto g = GrassmannSpace::of_projective(pg4, k);
               for (int t = 0; t < 2; ++t) corpus.push_back(lift_of(pg4, g, random_invertible(pg4->f(), 5, rng)));
             }
             std::mt19937_64 local(o.seed + 11);
             for (int t = 0; t < 10; ++t) {
               GrassmannMap f = lifts[t];
               std::uniform_int_distribution<int> pick(0, g31->size() - 1);
               std::swap(f.map[pick(local)], f.map[pick(local)]);
               corpus.push_back(std::move(f));
             }
             FramePolicy all;
             all.mode = FramePolicy::Mode::all;
             FramePolicy sample;
             sample.samples = 40;
             sample.seed = o.seed;
             std::size_t preserving = 0;
             for (const auto& f : corpus) {
               ++l.instances;
               if (!f.injective()) continue;
               auto bp = check_base_preserving(f, f.source->size() <= 35 ? all : sample);
               if (!bp.holds) continue;
               ++preserving;
               if (!check_adjacency_preserving(f).forward) fail(l, f.source->ambient()->label() + " map");
             }
             if (l.passed) l.detail = str(preserving) + " base-preserving maps, all adjacency preserving";
           });
  run_line(r, "chow.surjective-base-preserving-recognized",
           "surjective base-preserving maps on lines of PG(3,2) get a collineation or duality witness with bijective lift",
           [&](ReportLine& l) {
             RecognizeOptions opts;
             opts.mode = RecognitionMode::baseset;
             opts.frames.mode = FramePolicy::Mode::all;
             auto dual = dual_space(pg3);
             auto dual_lines = GrassmannSpace::of_linear(dual.space, 1);
             for (const auto* set : {&lifts, &dual_lifts})
               for (const auto& f : *set) {
                 ++l.instances;
                 auto res = recognize(f, opts);
                 bool ok = false;
                 if (res.verdict == Verdict::collineation_induced) {
                   auto lift = lift_point_map(*res.witness, g31, g31);
                   ok = lift.injective() && lift.surjective();
                 } else if (res.verdict == Verdict::duality_induced) {
                   auto lift = lift_point_map(*res.witness, g31, dual_lines);
                   ok = lift.injective() && lift.surjective();
                 }
                 if (!ok) fail(l, to_string(res.verdict) + " " + res.diagnostic);
               }
           });
  run_line(r, "chow.plucker", "wedge coordinates are injective and send base subsets to bases", [&](ReportLine& l) {
    auto pl = plucker(*g31);
    const auto& tgt = *pl.target->space();
    std::set<int> distinct(pl.map.begin(), pl.map.end());
    if (distinct.size() != pl.map.size()) fail(l, "two lines share wedge coordinates");
    for (const auto& frame : all_frames(*pg3->space())) {
      BaseSubset b(g31, frame, BaseSubset::Unchecked{});
      PointSet img = tgt.empty_set();
      for (int e : b.members()) img.set(pl.map[e]);
      ++l.instances;
      if (img.count() != 6 || !is_independent(tgt, img) || closure(tgt, img) != tgt.full_set())
        fail(l, "frame " + Json(frame.points).dump());
    }
    // Consistency probes: stars and tops go into planes, pencils into lines.
    auto span_dim = [&](const PointSet& members) {
      PointSet img = tgt.empty_set();
      for (auto e = members.find_first(); e != PointSet::npos; e = members.find_next(e)) img.set(pl.map[e]);
      return subspace_dimension(tgt, closure(tgt, img));
    };
    for (const auto& s : all_stars(*g31))
      if (span_dim(s.members) != 2) fail(l, "star image does not span a plane");
    for (const auto& t : all_tops(*g31))
      if (span_dim(t.members) != 2) fail(l, "top image does not span a plane");
    std::size_t pencils = 0;
    for (const auto& s : all_stars(*g31))
      for (const auto& t : all_tops(*g31)) {
        PointSet pencil = s.members & t.members;
        if (pencil.none()) continue;
        ++pencils;
        if (span_dim(pencil) != 1) fail(l, "pencil image does not span a line");
      }
    if (l.passed)
      l.detail = str(pl.target->n_points()) + "-point target, 35 distinct images; stars and tops span planes, " +
                 str(pencils) + " pencils span lines";
  });
  run_line(r, "chow.frame-star-counts",
           "a frame-spanned (k-1)-subspace lies in n-k+1 members; a (k+1)-subspace contains k+2; images match",
           [&](ReportLine& l) {
             const int n = 3, k = 1;
             std::vector<const GrassmannMap*> maps{&lifts[0], &dual_lifts[0]};
             for (const auto& frame : all_frames(*pg3->space())) {
               BaseSubset b(g31, frame, BaseSubset::Unchecked{});
               for (const auto* f : maps) {
                 PointSet img = f->image(b.elements(b.all()));
                 auto tf = frame_of_base_subset(*f->target, img);
                 if (!tf) {
                   fail(l, "image is not a base subset");
                   continue;
                 }
                 BaseSubset bi(f->target, *tf, BaseSubset::Unchecked{});
                 for (int i = 0; i <= n; ++i) {
                   ++l.instances;
                   MemberMask through = plus(b, i);
                   if (std::popcount(through) != n - k + 1) fail(l, "members through a frame point");
                   PointSet images(f->target->size());
                   for (int p = 0; p < b.size(); ++p)
                     if (through >> p & 1) images.set(f->map[b.member(p)]);
                   // Images all pass through one frame point of the image frame, or all lie in one of its planes.
                   bool star_side = false, top_side = false;
                   for (int j = 0; j <= n; ++j) {
                     MemberMask s = plus(bi, j);
                     if (std::popcount(s) == n - k + 1 && images == bi.elements(s)) star_side = true;
                   }
                   for (int j = 0; j <= n; ++j) {
                     MemberMask t = minus(bi, j);
                     if (std::popcount(t) == k + 2 && images == bi.elements(t)) top_side = true;
                   }
                   if (star_side == top_side) fail(l, "image members are not a frame star or top");
                 }
               }
             }
           });
  return r;
}

// ---------------------------------------------------------------- gallery

Report suite_gallery(const SuiteOptions&) {
  Report r{"gallery"};
  std::vector<std::string> first;
  run_line(r, "gallery.claims", "every gallery item builds and all its claims hold", [&](ReportLine& l) {
    for (const auto& id : gallery_ids()) {
      auto item = build_gallery_item(id);
      l.instances += item.claims.size();
      first.push_back(dump(item.to_json()));
      for (const auto& c : item.claims)
        if (!c.passed) fail(l, id + ": " + c.name);
    }
  });
  run_line(r, "gallery.deterministic", "building the gallery twice gives identical JSON", [&](ReportLine& l) {
    auto ids = gallery_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ++l.instances;
      if (i >= first.size() || dump(build_gallery_item(ids[i]).to_json()) != first[i]) fail(l, ids[i]);
    }
  });
  return r;
}

Report check_all(const SuiteOptions& options) {
  Report all{"all suites"};
  for (auto suite : {suite_linspace, suite_projspace, suite_grassmann, suite_baseset, suite_chow, suite_gallery}) {
    auto part = suite(options);
    all.lines.insert(all.lines.end(), part.lines.begin(), part.lines.end());
  }
  return all;
}

}  // namespace grasslab
