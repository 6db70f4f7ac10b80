#include "grasslab/grassmann.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "grasslab/errors.hpp"

namespace grasslab {

namespace {

bool by_points(const PointSet& a, const PointSet& b) { return to_vector(a) < to_vector(b); }

}  // namespace

std::shared_ptr<const GrassmannSpace> GrassmannSpace::of_projective(const PGPtr& pg, int k) {
  if (k < 0 || k > pg->n() - 1)
    throw PreconditionError("level k=" + std::to_string(k) + " outside 0.." + std::to_string(pg->n() - 1));
  std::shared_ptr<GrassmannSpace> g(new GrassmannSpace());
  g->k_ = k;
  g->n_ = pg->n();
  g->ambient_ = pg->space();
  g->pg_ = pg;
  g->forms_ = pg->subspaces(k);
  for (const auto& s : g->forms_) g->elements_.push_back(pg->points_of(s));
  g->build_adjacency();
  return g;
}

std::shared_ptr<const GrassmannSpace> GrassmannSpace::of_linear(const SpacePtr& space, int k) {
  std::shared_ptr<GrassmannSpace> g(new GrassmannSpace());
  g->n_ = dimension(*space);
  if (k < 0 || k > g->n_ - 1)
    throw PreconditionError("level k=" + std::to_string(k) + " outside 0.." + std::to_string(g->n_ - 1));
  g->k_ = k;
  g->ambient_ = space;
  for (auto& s : all_subspaces(*space))
    if (subspace_dimension(*space, s) == k) g->elements_.push_back(std::move(s));
  std::sort(g->elements_.begin(), g->elements_.end(), by_points);
  g->build_adjacency();
  return g;
}

void GrassmannSpace::build_adjacency() {
  const int size = static_cast<int>(elements_.size());
  for (int i = 0; i < size; ++i) index_[elements_[i]] = i;
  adjacency_.assign(size, PointSet(size));
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if (meet_dim(i, j) == k_ - 1) {
        adjacency_[i].set(j);
        adjacency_[j].set(i);
      }
}

const ProjSubspace& GrassmannSpace::form(int i) const {
  if (!pg_) throw PreconditionError("canonical forms exist only over a projective ambient");
  return forms_[i];
}

int GrassmannSpace::index_of(const PointSet& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int GrassmannSpace::index_of(const ProjSubspace& s) const {
  if (!pg_) throw PreconditionError("canonical forms exist only over a projective ambient");
  return index_of(pg_->points_of(s));
}

std::size_t GrassmannSpace::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adjacency_) total += row.count();
  return total / 2;
}

int GrassmannSpace::dim_of(const PointSet& s) const {
  if (pg_) {
    const long long count = static_cast<long long>(s.count());
    for (int d = -1; d <= n_; ++d)
      if (pg_->points_in_dim(d) == count) return d;
    throw PreconditionError("point set is not a subspace");
  }
  return subspace_dimension(*ambient_, s);
}

int GrassmannSpace::meet_dim(int i, int j) const { return dim_of(elements_[i] & elements_[j]); }

int GrassmannSpace::span_dim(int i, int j) const {
  if (pg_) return dim_of(pg_->points_of(pg_->span(forms_[i], forms_[j])));
  return dim_of(closure(*ambient_, elements_[i] | elements_[j]));
}

std::vector<PointSet> GrassmannSpace::subspaces_of_dim(int dim) const {
  std::vector<PointSet> out;
  if (pg_) {
    for (const auto& s : pg_->subspaces(dim)) out.push_back(pg_->points_of(s));
    return out;
  }
  for (auto& s : all_subspaces(*ambient_))
    if (subspace_dimension(*ambient_, s) == dim) out.push_back(std::move(s));
  std::sort(out.begin(), out.end(), by_points);
  return out;
}

std::vector<int> distances_from(const GrassmannSpace& g, int from) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    const auto& row = g.adjacency_row(u);
    for (auto v = row.find_first(); v != PointSet::npos; v = row.find_next(v)) {
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(static_cast<int>(v));
    }
  }
  return dist;
}

int distance(const GrassmannSpace& g, int i, int j) { return distances_from(g, i)[j]; }

std::vector<int> connecting_path(const GrassmannSpace& g, int i, int j) {
  const auto& pg = g.projective();
  if (!pg) throw PreconditionError("connecting_path needs a projective ambient");
  if (i == j) return {i};
  const auto& f = pg->f();
  ProjSubspace m = pg->meet(g.form(i), g.form(j));
  auto extend = [&](const ProjSubspace& s) {
    Matrix acc = m.basis;
    Matrix added;
    for (const auto& r : s.basis) {
      acc.push_back(r);
      if (rank(f, acc) == static_cast<int>(acc.size()))
        added.push_back(r);
      else
        acc.pop_back();
    }
    return added;
  };
  Matrix s_ext = extend(g.form(i));
  Matrix u_ext = extend(g.form(j));
  std::vector<int> path;
  for (std::size_t t = 0; t <= s_ext.size(); ++t) {
    Matrix rows = m.basis;
    rows.insert(rows.end(), u_ext.begin(), u_ext.begin() + t);
    rows.insert(rows.end(), s_ext.begin() + t, s_ext.end());
    path.push_back(g.index_of(pg->from_rows(std::move(rows))));
  }
  return path;
}

AdjacentSet star(const GrassmannSpace& g, const PointSet& center) {
  if (g.dim_of(center) != g.k() - 1) throw PreconditionError("star centre must have dimension k-1");
  AdjacentSet s{AdjacentSet::Kind::star, center, PointSet(g.size())};
  for (int i = 0; i < g.size(); ++i)
    if (center.is_subset_of(g.points(i))) s.members.set(i);
  return s;
}

AdjacentSet top(const GrassmannSpace& g, const PointSet& center) {
  if (g.dim_of(center) != g.k() + 1) throw PreconditionError("top centre must have dimension k+1");
  AdjacentSet s{AdjacentSet::Kind::top, center, PointSet(g.size())};
  for (int i = 0; i < g.size(); ++i)
    if (g.points(i).is_subset_of(center)) s.members.set(i);
  return s;
}

std::vector<AdjacentSet> all_stars(const GrassmannSpace& g) {
  std::vector<AdjacentSet> out;
  for (const auto& c : g.subspaces_of_dim(g.k() - 1)) out.push_back(star(g, c));
  return out;
}

std::vector<AdjacentSet> all_tops(const GrassmannSpace& g) {
  std::vector<AdjacentSet> out;
  if (g.k() + 1 > g.n()) return out;
  for (const auto& c : g.subspaces_of_dim(g.k() + 1)) out.push_back(top(g, c));
  return out;
}

bool pairwise_adjacent(const GrassmannSpace& g, const PointSet& members) {
  for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i)) {
    PointSet others = members;
    others.reset(i);
    if (!others.is_subset_of(g.adjacency_row(static_cast<int>(i)))) return false;
  }
  return true;
}

std::vector<PointSet> maximal_cliques(const GrassmannSpace& g, int cap) {
  if (g.size() > cap)
    throw BoundError("clique enumeration over " + std::to_string(g.size()) + " elements exceeds cap " +
                     std::to_string(cap));
  std::vector<PointSet> out;
  std::function<void(PointSet&, PointSet, PointSet)> bk = [&](PointSet& r, PointSet p, PointSet x) {
    if (p.none() && x.none()) {
      out.push_back(r);
      return;
    }
    PointSet px = p | x;
    std::size_t best = 0;
    int pivot = -1;
    for (auto u = px.find_first(); u != PointSet::npos; u = px.find_next(u)) {
      std::size_t c = (p & g.adjacency_row(static_cast<int>(u))).count();
      if (pivot < 0 || c > best) {
        best = c;
        pivot = static_cast<int>(u);
      }
    }
    PointSet candidates = p - g.adjacency_row(pivot);
    for (auto v = candidates.find_first(); v != PointSet::npos; v = candidates.find_next(v)) {
      const auto& nv = g.adjacency_row(static_cast<int>(v));
      r.set(v);
      bk(r, p & nv, x & nv);
      r.reset(v);
      p.reset(v);
      x.set(v);
    }
  };
  PointSet r(g.size());
  PointSet p(g.size());
  p.set();
  bk(r, p, PointSet(g.size()));
  std::sort(out.begin(), out.end(), by_points);
  return out;
}

std::optional<AdjacentSet> classify_clique(const GrassmannSpace& g, const PointSet& clique) {
  if (clique.none()) return std::nullopt;
  PointSet meet = g.ambient()->full_set();
  PointSet join = g.ambient()->empty_set();
  for (int i : to_vector(clique)) {
    meet &= g.points(i);
    join |= g.points(i);
  }
  join = closure(*g.ambient(), join);
  if (g.dim_of(meet) == g.k() - 1) {
    auto s = star(g, meet);
    if (s.members == clique) return s;
  }
  if (g.k() + 1 <= g.n() && g.dim_of(join) == g.k() + 1) {
    auto t = top(g, join);
    if (t.members == clique) return t;
  }
  return std::nullopt;
}

ComplementAdjacency::ComplementAdjacency(const GrassPtr& g) : g_(g) {
  if (!g->projective()) throw PreconditionError("complement adjacency needs a projective ambient");
  auto others = g->subspaces_of_dim(g->n() - g->k() - 1);
  complements_.assign(g->size(), PointSet(others.size()));
  for (int s = 0; s < g->size(); ++s)
    for (std::size_t t = 0; t < others.size(); ++t)
      if (!g->points(s).intersects(others[t])) complements_[s].set(t);
}

bool ComplementAdjacency::operator()(int i, int j) const {
  if (i == j) return false;
  PointSet either = complements_[i] | complements_[j];
  for (int s = 0; s < g_->size(); ++s) {
    if (s == i || s == j) continue;
    if (complements_[s].is_subset_of(either)) return true;
  }
  return false;
}

}  // namespace grasslab
