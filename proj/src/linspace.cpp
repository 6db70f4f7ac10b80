#include "grasslab/linspace.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "grasslab/errors.hpp"

namespace grasslab {

PointSet make_point_set(int n_points, std::initializer_list<int> points) {
  PointSet s(n_points);
  for (int p : points) s.set(p);
  return s;
}

PointSet make_point_set(int n_points, const std::vector<int>& points) {
  PointSet s(n_points);
  for (int p : points) s.set(p);
  return s;
}

std::vector<int> to_vector(const PointSet& s) {
  std::vector<int> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

LinearSpace::LinearSpace(int n_points, std::vector<std::vector<int>> lines, std::string label)
    : n_points_(n_points), label_(std::move(label)) {
  if (n_points < 0) throw PreconditionError("negative point count");
  join_.assign(static_cast<std::size_t>(n_points) * n_points, -1);
  lines_.reserve(lines.size());
  line_points_.reserve(lines.size());
  for (auto& pts : lines) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    PointSet s(n_points);
    for (int p : pts) {
      if (p < 0 || p >= n_points) throw PreconditionError("line point " + std::to_string(p) + " out of range");
      s.set(p);
    }
    int id = static_cast<int>(lines_.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        auto& a = join_[pts[i] * n_points + pts[j]];
        auto& b = join_[pts[j] * n_points + pts[i]];
        if (a < 0) a = b = id;
      }
    }
    lines_.push_back(std::move(s));
    line_points_.push_back(std::move(pts));
  }
}

bool LinearSpace::collinear(int a, int b, int c) const {
  if (a == b || a == c || b == c) return true;
  int l = line_through(a, b);
  return l >= 0 && lines_[l].test(c);
}

PointSet LinearSpace::full_set() const {
  PointSet s(n_points_);
  s.set();
  return s;
}

std::string Violation::describe() const {
  switch (kind) {
    case Kind::undersized_line:
      return "line " + std::to_string(line) + " has fewer than two points";
    case Kind::improper_line:
      return "line " + std::to_string(line) + " is the whole point set";
    case Kind::uncovered_pair:
      return "points " + std::to_string(a) + "," + std::to_string(b) + " lie on no line";
    case Kind::multiply_covered_pair:
      return "points " + std::to_string(a) + "," + std::to_string(b) + " lie on more than one line";
    case Kind::bad_point:
      return "point index out of range";
  }
  return "unknown violation";
}

ValidationReport validate(const LinearSpace& space) {
  ValidationReport report;
  const int n = space.n_points();
  std::vector<int> cover(static_cast<std::size_t>(n) * n, 0);
  for (int id = 0; id < space.n_lines(); ++id) {
    const auto& pts = space.line_points(id);
    if (pts.size() < 2) report.violations.push_back({Violation::Kind::undersized_line, id});
    if (static_cast<int>(pts.size()) == n) report.violations.push_back({Violation::Kind::improper_line, id});
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) ++cover[pts[i] * n + pts[j]];
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int c = cover[a * n + b];
      if (c == 0) report.violations.push_back({Violation::Kind::uncovered_pair, -1, a, b});
      if (c > 1) report.violations.push_back({Violation::Kind::multiply_covered_pair, -1, a, b});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

namespace {

// Iterated hull of `base` ∪ `frontier`, where pairs inside `base` need no joining.
ClosureTrace hull(const LinearSpace& space, const PointSet& base, PointSet frontier) {
  ClosureTrace trace{base | frontier, 0};
  if (trace.result.count() <= 1) return trace;
  PointSet& cur = trace.result;
  const auto full = static_cast<std::size_t>(space.n_points());
  while (cur.count() < full) {
    // Pairs of two old points were joined in an earlier step.
    PointSet next = cur;
    for (auto a = frontier.find_first(); a != PointSet::npos; a = frontier.find_next(a)) {
      for (auto b = cur.find_first(); b != PointSet::npos; b = cur.find_next(b)) {
        if (a == b) continue;
        int l = space.line_through(static_cast<int>(a), static_cast<int>(b));
        if (l >= 0) next |= space.line(l);
      }
    }
    if (next == cur) break;
    frontier = next - cur;
    cur = std::move(next);
    ++trace.depth;
  }
  return trace;
}

// Closure of a closed set plus one point.
PointSet extend_closed(const LinearSpace& space, const PointSet& closed, int p) {
  PointSet frontier = space.empty_set();
  frontier.set(p);
  return hull(space, closed, frontier).result;
}

}  // namespace

ClosureTrace closure_with_depth(const LinearSpace& space, const PointSet& x) {
  return hull(space, space.empty_set(), x);
}

PointSet closure(const LinearSpace& space, const PointSet& x) { return closure_with_depth(space, x).result; }

bool is_subspace(const LinearSpace& space, const PointSet& s) {
  for (auto a = s.find_first(); a != PointSet::npos; a = s.find_next(a)) {
    for (auto b = s.find_next(a); b != PointSet::npos; b = s.find_next(b)) {
      int l = space.line_through(static_cast<int>(a), static_cast<int>(b));
      if (l < 0 || !space.line(l).is_subset_of(s)) return false;
    }
  }
  return true;
}

bool is_independent(const LinearSpace& space, const PointSet& x) {
  for (auto p = x.find_first(); p != PointSet::npos; p = x.find_next(p)) {
    PointSet rest = x;
    rest.reset(p);
    if (closure(space, rest).test(p)) return false;
  }
  return true;
}

std::vector<PointSet> all_subspaces(const LinearSpace& space) {
  std::vector<PointSet> found{space.empty_set()};
  std::unordered_set<PointSet> seen{space.empty_set()};
  for (std::size_t i = 0; i < found.size(); ++i) {
    PointSet s = found[i];
    for (int p = 0; p < space.n_points(); ++p) {
      if (s.test(p)) continue;
      PointSet t = s;
      t.set(p);
      t = closure(space, t);
      if (seen.insert(t).second) found.push_back(std::move(t));
    }
  }
  return found;
}

ExchangeResult check_exchange(const LinearSpace& space) {
  ExchangeResult result;
  const int n = space.n_points();
  std::vector<PointSet> ext(n);
  for (const auto& x : all_subspaces(space)) {
    ++result.subspaces_tested;
    for (int p = 0; p < n; ++p) {
      if (x.test(p)) continue;
      PointSet t = x;
      t.set(p);
      ext[p] = closure(space, t);
    }
    for (int p1 = 0; p1 < n; ++p1) {
      if (x.test(p1)) continue;
      PointSet gained = ext[p1] - x;
      for (auto p2 = gained.find_first(); p2 != PointSet::npos; p2 = gained.find_next(p2)) {
        if (static_cast<int>(p2) == p1) continue;
        if (!ext[p2].test(p1)) {
          result.holds = false;
          result.x = x;
          result.p1 = p1;
          result.p2 = static_cast<int>(p2);
          return result;
        }
      }
    }
  }
  return result;
}

PointSet greedy_base(const LinearSpace& space, const PointSet& within) {
  PointSet base = space.empty_set();
  PointSet span = space.empty_set();
  for (auto p = within.find_first(); p != PointSet::npos; p = within.find_next(p)) {
    if (span.test(p)) continue;
    base.set(p);
    span = extend_closed(space, span, static_cast<int>(p));
    if (within.is_subset_of(span)) break;
  }
  return base;
}

namespace {

bool next_combination(std::vector<int>& idx, int n) {
  int r = static_cast<int>(idx.size());
  int i = r - 1;
  while (i >= 0 && idx[i] == n - r + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

int exhaustive_dimension(const LinearSpace& space) {
  const int n = space.n_points();
  const auto full = space.full_set();
  for (int r = 1; r <= n; ++r) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    do {
      PointSet s = space.empty_set();
      for (int i : idx) s.set(i);
      if (closure(space, s) == full) return r - 1;
    } while (next_combination(idx, n));
  }
  return -1;
}

}  // namespace

int dimension(const LinearSpace& space, DimensionMethod method) {
  if (space.n_points() == 0) return -1;
  if (method == DimensionMethod::automatic) {
    bool exchange = space.exchange_hint().value_or(false) || check_exchange(space).holds;
    method = exchange ? DimensionMethod::greedy : DimensionMethod::exhaustive;
  }
  if (method == DimensionMethod::greedy)
    return static_cast<int>(greedy_base(space, space.full_set()).count()) - 1;
  return exhaustive_dimension(space);
}

int subspace_dimension(const LinearSpace& space, const PointSet& s) {
  return static_cast<int>(greedy_base(space, s).count()) - 1;
}

PointSet extend_to_base(const LinearSpace& space, const PointSet& x) {
  if (!is_independent(space, x)) throw PreconditionError("extend_to_base: the given point set is dependent");
  auto reference = to_vector(greedy_base(space, space.full_set()));
  auto qs = to_vector(x);
  if (qs.size() > reference.size())
    throw Error("independent set larger than a base; the exchange axiom fails in this space");
  // reference[0..t) already holds q_1..q_t.
  for (std::size_t t = 0; t < qs.size(); ++t) {
    bool placed = false;
    for (std::size_t j = t; j < reference.size() && !placed; ++j) {
      PointSet rest = space.empty_set();
      for (std::size_t i = 0; i < reference.size(); ++i)
        if (i != j) rest.set(reference[i]);
      if (!closure(space, rest).test(qs[t])) {
        std::swap(reference[j], reference[t]);
        reference[t] = qs[t];
        placed = true;
      }
    }
    if (!placed) throw Error("base exchange step failed; the exchange axiom fails in this space");
  }
  PointSet base = make_point_set(space.n_points(), reference);
  if (!is_independent(space, base) || closure(space, base) != space.full_set())
    throw Error("base exchange produced a non-base; the exchange axiom fails in this space");
  return base;
}

void for_each_independent(const LinearSpace& space, int max_size,
                          const std::function<bool(const PointSet&)>& visit) {
  const int n = space.n_points();
  const bool exchange = space.exchange_hint().value_or(false);
  PointSet cur = space.empty_set();
  bool stop = false;
  std::function<void(int, const PointSet&)> rec = [&](int start, const PointSet& span) {
    if (!visit(cur)) {
      stop = true;
      return;
    }
    if (static_cast<int>(cur.count()) >= max_size) return;
    for (int p = start; p < n && !stop; ++p) {
      if (span.test(p)) continue;
      cur.set(p);
      if (exchange || is_independent(space, cur)) rec(p + 1, extend_closed(space, span, p));
      cur.reset(p);
    }
  };
  rec(0, space.empty_set());
}

std::vector<PointSet> all_bases(const LinearSpace& space, int max_points) {
  if (space.n_points() > max_points)
    throw BoundError("all_bases: " + std::to_string(space.n_points()) + " points exceeds bound " +
                     std::to_string(max_points));
  std::vector<PointSet> bases;
  const auto full = space.full_set();
  for_each_independent(space, space.n_points(), [&](const PointSet& s) {
    if (!s.none() && closure(space, s) == full) bases.push_back(s);
    return true;
  });
  return bases;
}

Restriction restrict_to(const LinearSpace& space, const PointSet& x) {
  auto pts = to_vector(x);
  bool spread = false;
  for (std::size_t i = 0; i < pts.size() && !spread; ++i)
    for (std::size_t j = i + 1; j < pts.size() && !spread; ++j)
      for (std::size_t k = j + 1; k < pts.size() && !spread; ++k)
        spread = !space.collinear(pts[i], pts[j], pts[k]);
  if (!spread) throw PreconditionError("restriction needs three non-collinear points");
  std::vector<int> local(space.n_points(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) local[pts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> lines;
  for (int id = 0; id < space.n_lines(); ++id) {
    std::vector<int> trace;
    for (int p : space.line_points(id))
      if (local[p] >= 0) trace.push_back(local[p]);
    if (trace.size() >= 2) lines.push_back(std::move(trace));
  }
  Restriction r;
  r.space = std::make_shared<LinearSpace>(static_cast<int>(pts.size()), std::move(lines),
                                          space.label().empty() ? "restriction" : space.label() + "|restricted");
  r.ambient_point = std::move(pts);
  return r;
}

bool PointMap::injective() const {
  std::vector<bool> hit(target->n_points(), false);
  for (int y : map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool PointMap::surjective() const {
  std::vector<bool> hit(target->n_points(), false);
  for (int y : map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

PointSet PointMap::image(const PointSet& s) const {
  PointSet out = target->empty_set();
  for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) out.set(map[p]);
  return out;
}

PointMap identity_map(const SpacePtr& source, const SpacePtr& target) {
  if (source->n_points() != target->n_points()) throw PreconditionError("identity map needs equal point sets");
  PointMap f{source, target, std::vector<int>(source->n_points())};
  for (int i = 0; i < source->n_points(); ++i) f.map[i] = i;
  return f;
}

PointMap compose(const PointMap& a, const PointMap& b) {
  if (b.target->n_points() != a.source->n_points()) throw PreconditionError("compose: incompatible maps");
  PointMap c{b.source, a.target, std::vector<int>(b.map.size())};
  for (std::size_t i = 0; i < b.map.size(); ++i) c.map[i] = a.map[b.map[i]];
  return c;
}

std::string to_string(MorphismClass::Kind kind) {
  switch (kind) {
    case MorphismClass::Kind::not_collinearity_preserving:
      return "not-collinearity-preserving";
    case MorphismClass::Kind::collinearity_preserving:
      return "collinearity-preserving";
    case MorphismClass::Kind::semicollineation:
      return "semicollineation";
    case MorphismClass::Kind::collineation:
      return "collineation";
    case MorphismClass::Kind::embedding:
      return "embedding";
    case MorphismClass::Kind::strong_embedding:
      return "strong-embedding";
  }
  return "unknown";
}

MorphismClass classify_map(const PointMap& f) {
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  if (static_cast<int>(f.map.size()) != src.n_points()) throw PreconditionError("point map is not total");
  MorphismClass c;
  c.injective = f.injective();
  c.surjective = f.surjective();

  c.collinearity_preserving = true;
  for (int id = 0; id < src.n_lines() && c.collinearity_preserving; ++id) {
    std::vector<int> img;
    for (int p : src.line_points(id)) img.push_back(f.map[p]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (img.size() <= 2) continue;
    int l = tgt.line_through(img[0], img[1]);
    for (int y : img) c.collinearity_preserving = c.collinearity_preserving && l >= 0 && tgt.line(l).test(y);
  }

  c.non_collinearity_preserving = true;
  const int n = src.n_points();
  for (int a = 0; a < n && c.non_collinearity_preserving; ++a)
    for (int b = a + 1; b < n && c.non_collinearity_preserving; ++b)
      for (int d = b + 1; d < n; ++d) {
        if (src.collinear(a, b, d)) continue;
        if (tgt.collinear(f.map[a], f.map[b], f.map[d])) {
          c.non_collinearity_preserving = false;
          break;
        }
      }

  c.independence_preserving = c.injective;
  if (c.injective) {
    int dim = dimension(src);
    if (c.surjective && c.collinearity_preserving && c.non_collinearity_preserving) {
      // A bijection preserving collinearity both ways commutes with closure.
    } else if (src.exchange_hint().value_or(false) && tgt.exchange_hint().value_or(false)) {
      // Both sides satisfy exchange: a set stays independent iff each new
      // point avoids the span of the earlier ones, so spans can be carried along.
      PointSet cur = src.empty_set();
      std::function<void(int, const PointSet&, const PointSet&)> rec = [&](int start, const PointSet& span,
                                                                         const PointSet& tspan) {
        if (static_cast<int>(cur.count()) > dim || !c.independence_preserving) return;
        for (int p = start; p < n && c.independence_preserving; ++p) {
          if (span.test(p)) continue;
          if (tspan.test(f.map[p])) {
            c.independence_preserving = false;
            return;
          }
          cur.set(p);
          rec(p + 1, extend_closed(src, span, p), extend_closed(tgt, tspan, f.map[p]));
          cur.reset(p);
        }
      };
      rec(0, src.empty_set(), tgt.empty_set());
    } else {
      for_each_independent(src, dim + 1, [&](const PointSet& x) {
        if (!is_independent(tgt, f.image(x))) c.independence_preserving = false;
        return c.independence_preserving;
      });
    }
  }

  using K = MorphismClass::Kind;
  if (!c.collinearity_preserving)
    c.kind = K::not_collinearity_preserving;
  else if (c.injective && c.surjective)
    c.kind = c.non_collinearity_preserving ? K::collineation : K::semicollineation;
  else if (c.injective && c.non_collinearity_preserving)
    c.kind = c.independence_preserving ? K::strong_embedding : K::embedding;
  else
    c.kind = K::collinearity_preserving;
  return c;
}

bool closure_image_included(const PointMap& f, const PointSet& x) {
  return f.image(closure(*f.source, x)).is_subset_of(closure(*f.target, f.image(x)));
}

std::size_t for_each_collineation(const LinearSpace& a, const LinearSpace& b,
                                  const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = a.n_points();
  if (n != b.n_points() || a.n_lines() != b.n_lines()) return 0;
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  std::size_t count = 0;
  bool stop = false;
  std::function<void(int)> rec = [&](int c) {
    if (c == n) {
      ++count;
      if (!visit(img)) stop = true;
      return;
    }
    for (int y = 0; y < n && !stop; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int u = 0; u < c && ok; ++u)
        for (int v = u + 1; v < c && ok; ++v)
          ok = a.collinear(u, v, c) == b.collinear(img[u], img[v], y);
      if (!ok) continue;
      img[c] = y;
      used[y] = true;
      rec(c + 1);
      used[y] = false;
      img[c] = -1;
    }
  };
  rec(0);
  return count;
}

BaseToBaseSearch search_base_to_base_not_strong(const SpacePtr& a, const SpacePtr& b, std::size_t max_maps) {
  BaseToBaseSearch result;
  const int n = a->n_points();
  const int m = b->n_points();
  auto bases_a = all_bases(*a, std::max(n, 16));
  auto bases_b = all_bases(*b, std::max(m, 16));
  std::unordered_set<PointSet> target_bases(bases_b.begin(), bases_b.end());
  std::vector<std::vector<std::vector<int>>> by_last(n);
  for (const auto& base : bases_a) {
    auto pts = to_vector(base);
    by_last[pts.back()].push_back(pts);
  }
  std::vector<int> img(n, 0);
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == n) {
      ++result.base_to_base;
      PointMap f{a, b, img};
      if (!classify_map(f).is_strong_embedding()) {
        ++result.not_strong;
        if (!result.example) result.example = img;
      }
      return;
    }
    for (int y = 0; y < m && !stop; ++y) {
      if (++result.maps_examined > max_maps) {
        stop = true;
        return;
      }
      img[i] = y;
      bool ok = true;
      for (const auto& pts : by_last[i]) {
        PointSet s = b->empty_set();
        for (int p : pts) s.set(img[p]);
        if (!target_bases.count(s)) {
          ok = false;
          break;
        }
      }
      if (ok) rec(i + 1);
    }
  };
  rec(0);
  result.exhausted = !stop;
  return result;
}

SpacePtr complete_graph_space(int n_points) {
  if (n_points < 3) throw PreconditionError("complete-graph space needs at least three points");
  std::vector<std::vector<int>> lines;
  for (int a = 0; a < n_points; ++a)
    for (int b = a + 1; b < n_points; ++b) lines.push_back({a, b});
  return std::make_shared<LinearSpace>(n_points, std::move(lines), "complete-" + std::to_string(n_points));
}

}  // namespace grasslab
