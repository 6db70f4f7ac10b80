#include "grasslab/projspace.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "grasslab/errors.hpp"

namespace grasslab {

namespace {

std::string row_key(const Row& r) { return std::string(r.begin(), r.end()); }

}  // namespace

Matrix rref(const gf::FieldSpec& f, Matrix m) {
  if (m.empty()) return m;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    gf::Elem s = f.inv(m[r][c]);
    for (auto& x : m[r]) x = f.mul(x, s);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      gf::Elem factor = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
    }
    ++r;
  }
  m.resize(r);
  return m;
}

int rank(const gf::FieldSpec& f, const Matrix& m) { return static_cast<int>(rref(f, m).size()); }

Matrix multiply(const gf::FieldSpec& f, const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  if (a[0].size() != b.size()) throw PreconditionError("matrix shapes do not match");
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  Matrix c(a.size(), Row(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
    }
  return c;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Row(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix identity_matrix(int size) {
  Matrix m(size, Row(size, 0));
  for (int i = 0; i < size; ++i) m[i][i] = 1;
  return m;
}

std::optional<Matrix> inverse(const gf::FieldSpec& f, const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Matrix aug(n, Row(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw PreconditionError("inverse of a non-square matrix");
    std::copy(m[i].begin(), m[i].end(), aug[i].begin());
    aug[i][n + i] = 1;
  }
  aug = rref(f, aug);
  if (static_cast<int>(aug.size()) < n) return std::nullopt;
  Matrix inv(n, Row(n));
  for (int i = 0; i < n; ++i) {
    if (aug[i][i] != 1) return std::nullopt;
    std::copy(aug[i].begin() + n, aug[i].end(), inv[i].begin());
  }
  return inv;
}

Row frobenius(const gf::FieldSpec& f, const Row& r, int j) {
  Row out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = f.frob(r[i], j);
  return out;
}

Matrix frobenius(const gf::FieldSpec& f, const Matrix& m, int j) {
  Matrix out;
  out.reserve(m.size());
  for (const auto& r : m) out.push_back(frobenius(f, r, j));
  return out;
}

Row apply(const gf::FieldSpec& f, const Row& x, const Matrix& m) {
  if (x.size() != m.size()) throw PreconditionError("vector length does not match matrix");
  Row y(m.empty() ? 0 : m[0].size(), 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = f.add(y[j], f.mul(x[k], m[k][j]));
  }
  return y;
}

Row normalize(const gf::FieldSpec& f, Row r) {
  auto it = std::find_if(r.begin(), r.end(), [](gf::Elem e) { return e != 0; });
  if (it == r.end()) throw PreconditionError("the zero vector spans no point");
  gf::Elem s = f.inv(*it);
  for (auto& x : r) x = f.mul(x, s);
  return r;
}

Matrix annihilator(const gf::FieldSpec& f, const Matrix& m, int cols) {
  Matrix r = rref(f, m);
  std::vector<int> pivot;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : r) {
    int c = static_cast<int>(std::find_if(row.begin(), row.end(), [](gf::Elem e) { return e != 0; }) - row.begin());
    pivot.push_back(c);
    is_pivot[c] = true;
  }
  Matrix out;
  for (int j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    Row y(cols, 0);
    y[j] = 1;
    for (std::size_t i = 0; i < r.size(); ++i) y[pivot[i]] = f.neg(r[i][j]);
    out.push_back(std::move(y));
  }
  return rref(f, std::move(out));
}

std::string ProjSubspace::key() const {
  std::string k;
  k.reserve(basis.size() * cols + 1);
  k.push_back(static_cast<char>(basis.size()));
  for (const auto& r : basis) k += row_key(r);
  return k;
}

ProjectiveSpace::ProjectiveSpace(int n, gf::Field field) : n_(n), field_(std::move(field)) {
  if (n < 1) throw PreconditionError("projective dimension must be at least 1");
  for (auto& s : subspaces(0)) points_.push_back(s.basis[0]);
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) index_[row_key(points_[i])] = i;

  std::vector<std::vector<int>> lines;
  for (const auto& l : subspaces(1)) lines.push_back(to_vector(points_of(l)));
  auto space = std::make_shared<LinearSpace>(static_cast<int>(points_.size()), std::move(lines),
                                             "PG(" + std::to_string(n) + "," + std::to_string(field_->q()) + ")");
  space->set_field(field_->designator());
  std::vector<std::vector<int>> coords;
  for (const auto& p : points_) coords.emplace_back(p.begin(), p.end());
  space->set_coords(std::move(coords));
  space->set_exchange_hint(true);
  space_ = std::move(space);
}

int ProjectiveSpace::index_of(const Row& v) const {
  if (static_cast<int>(v.size()) != n_ + 1) throw PreconditionError("vector length does not match PG dimension");
  auto it = index_.find(row_key(normalize(*field_, v)));
  if (it == index_.end()) throw Error("point lookup failed");
  return it->second;
}

std::vector<ProjSubspace> ProjectiveSpace::subspaces(int dim) const {
  const int cols = n_ + 1;
  const int r = dim + 1;
  if (r < 0 || r > cols) throw PreconditionError("subspace dimension " + std::to_string(dim) + " out of range");
  std::vector<ProjSubspace> out;
  if (r == 0) {
    out.push_back(empty());
    return out;
  }
  const int q = field_->q();
  std::vector<int> piv(r);
  for (int i = 0; i < r; ++i) piv[i] = i;
  while (true) {
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < r; ++i)
      for (int c = piv[i] + 1; c < cols; ++c)
        if (!is_pivot[c]) free.emplace_back(i, c);
    std::vector<int> digit(free.size(), 0);
    while (true) {
      Matrix m(r, Row(cols, 0));
      for (int i = 0; i < r; ++i) m[i][piv[i]] = 1;
      for (std::size_t t = 0; t < free.size(); ++t) m[free[t].first][free[t].second] = static_cast<gf::Elem>(digit[t]);
      out.push_back({std::move(m), cols});
      int t = static_cast<int>(free.size()) - 1;
      while (t >= 0 && digit[t] == q - 1) digit[t--] = 0;
      if (t < 0) break;
      ++digit[t];
    }
    int i = r - 1;
    while (i >= 0 && piv[i] == cols - r + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

ProjSubspace ProjectiveSpace::whole() const { return {identity_matrix(n_ + 1), n_ + 1}; }

ProjSubspace ProjectiveSpace::from_rows(Matrix rows) const {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n_ + 1) throw PreconditionError("row length does not match PG dimension");
  return {rref(*field_, std::move(rows)), n_ + 1};
}

ProjSubspace ProjectiveSpace::of_points(const PointSet& s) const {
  Matrix rows;
  for (int p : to_vector(s)) rows.push_back(points_[p]);
  return from_rows(std::move(rows));
}

PointSet ProjectiveSpace::points_of(const ProjSubspace& s) const {
  require_ambient(s);
  const auto& f = *field_;
  const int r = static_cast<int>(s.basis.size());
  const int q = f.q();
  PointSet out(points_.size());
  // First nonzero coefficient 1 gives normalized vectors directly, pivots being leading ones.
  for (int lead = 0; lead < r; ++lead) {
    std::vector<int> digit(r - lead - 1, 0);
    while (true) {
      Row v = s.basis[lead];
      for (int t = 0; t < r - lead - 1; ++t) {
        if (digit[t] == 0) continue;
        const auto& row = s.basis[lead + 1 + t];
        for (int c = 0; c <= n_; ++c) v[c] = f.add(v[c], f.mul(static_cast<gf::Elem>(digit[t]), row[c]));
      }
      out.set(index_.at(row_key(v)));
      int t = r - lead - 2;
      while (t >= 0 && digit[t] == q - 1) digit[t--] = 0;
      if (t < 0) break;
      ++digit[t];
    }
  }
  return out;
}

void ProjectiveSpace::require_ambient(const ProjSubspace& s) const {
  if (s.cols != n_ + 1) throw PreconditionError("subspace belongs to a different ambient space");
}

ProjSubspace ProjectiveSpace::span(const ProjSubspace& a, const ProjSubspace& b) const {
  require_ambient(a);
  require_ambient(b);
  Matrix rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return from_rows(std::move(rows));
}

ProjSubspace ProjectiveSpace::annihilator(const ProjSubspace& s) const {
  require_ambient(s);
  return {grasslab::annihilator(*field_, s.basis, n_ + 1), n_ + 1};
}

ProjSubspace ProjectiveSpace::meet(const ProjSubspace& a, const ProjSubspace& b) const {
  // ann(A ∩ B) = ann(A) + ann(B).
  return annihilator(span(annihilator(a), annihilator(b)));
}

long long ProjectiveSpace::points_in_dim(int d) const {
  long long count = 0;
  long long pw = 1;
  for (int i = 0; i <= d; ++i) {
    count += pw;
    pw *= field_->q();
  }
  return count;
}

PGPtr build_pg(int n, const gf::Field& field) { return std::make_shared<ProjectiveSpace>(n, field); }

SemilinearMap compose(const gf::FieldSpec& f, const SemilinearMap& a, const SemilinearMap& b) {
  if (a.dual || b.dual) throw PreconditionError("composition of dual-flagged maps is not supported");
  return {multiply(f, frobenius(f, b.matrix, a.sigma), a.matrix), (a.sigma + b.sigma) % f.m(), false};
}

PointMap induced_point_map(const PGPtr& pg, const SemilinearMap& l) {
  if (l.dual) throw PreconditionError("dual-flagged maps act on subspaces, not points");
  const auto& f = pg->f();
  if (static_cast<int>(l.matrix.size()) != pg->n() + 1 || !inverse(f, l.matrix))
    throw PreconditionError("semilinear map needs an invertible matrix of size n+1");
  PointMap out{pg->space(), pg->space(), std::vector<int>(pg->n_points())};
  for (int i = 0; i < pg->n_points(); ++i)
    out.map[i] = pg->index_of(apply(f, frobenius(f, pg->point(i), l.sigma), l.matrix));
  return out;
}

PointMap linear_point_map(const PGPtr& source, const PGPtr& target, const Matrix& matrix) {
  const auto& sf = source->f();
  const auto& tf = target->f();
  if (sf.m() != 1 || sf.p() != tf.p()) throw PreconditionError("source field must be the prime field of the target");
  if (static_cast<int>(matrix.size()) != source->n() + 1 ||
      static_cast<int>(matrix[0].size()) != target->n() + 1)
    throw PreconditionError("matrix shape does not match the two spaces");
  PointMap out{source->space(), target->space(), std::vector<int>(source->n_points())};
  for (int i = 0; i < source->n_points(); ++i) {
    Row x;
    for (auto c : source->point(i)) x.push_back(tf.embed_prime(c));
    Row y = apply(tf, x, matrix);
    if (std::all_of(y.begin(), y.end(), [](gf::Elem e) { return e == 0; }))
      throw PreconditionError("point " + std::to_string(i) + " maps to the zero vector");
    out.map[i] = target->index_of(y);
  }
  return out;
}

std::optional<SemilinearMap> semilinear_from_collineation(const PGPtr& pg, const std::vector<int>& perm) {
  const auto& f = pg->f();
  const int d = pg->n() + 1;
  Matrix v(d);
  Row unit(d, 1);
  for (int i = 0; i < d; ++i) {
    Row e(d, 0);
    e[i] = 1;
    v[i] = pg->point(perm[pg->index_of(e)]);
  }
  Row w = pg->point(perm[pg->index_of(unit)]);
  auto vinv = inverse(f, v);
  if (!vinv) return std::nullopt;
  Row c = apply(f, w, *vinv);
  Matrix m(d);
  for (int i = 0; i < d; ++i) {
    if (c[i] == 0) return std::nullopt;
    m[i] = v[i];
    for (auto& x : m[i]) x = f.mul(x, c[i]);
  }
  for (int sigma = 0; sigma < f.m(); ++sigma) {
    SemilinearMap l{m, sigma, false};
    if (induced_point_map(pg, l).map == perm) return l;
  }
  return std::nullopt;
}

ProjSubspace DualSpace::to_primal(const PointSet& dual_points) const {
  ProjSubspace s = pg->whole();
  for (int h : to_vector(dual_points)) s = pg->meet(s, hyperplanes[h]);
  return s;
}

PointSet DualSpace::from_primal(const ProjSubspace& u) const {
  PointSet ann = pg->points_of(pg->annihilator(u));
  PointSet out(hyperplanes.size());
  for (std::size_t h = 0; h < hyperplanes.size(); ++h)
    if (ann.test(annihilator_point[h])) out.set(h);
  return out;
}

DualSpace dual_space(const PGPtr& pg) {
  DualSpace d;
  d.pg = pg;
  d.hyperplanes = pg->subspaces(pg->n() - 1);
  std::vector<int> hyperplane_of(pg->n_points(), -1);
  for (std::size_t h = 0; h < d.hyperplanes.size(); ++h) {
    int p = pg->index_of(pg->annihilator(d.hyperplanes[h]).basis.at(0));
    d.annihilator_point.push_back(p);
    hyperplane_of[p] = static_cast<int>(h);
  }
  const auto& primal = *pg->space();
  std::vector<std::vector<int>> lines;
  for (int l = 0; l < primal.n_lines(); ++l) {
    std::vector<int> pencil;
    for (int p : primal.line_points(l)) pencil.push_back(hyperplane_of[p]);
    lines.push_back(std::move(pencil));
  }
  auto space = std::make_shared<LinearSpace>(static_cast<int>(d.hyperplanes.size()), std::move(lines),
                                             primal.label() + "*");
  space->set_exchange_hint(true);
  d.space = std::move(space);
  return d;
}

PointMap annihilator_collineation(const DualSpace& dual) {
  return {dual.space, dual.pg->space(), dual.annihilator_point};
}

ProjectiveAxioms verify_projective_axioms(const LinearSpace& space) {
  ProjectiveAxioms out;
  for (int l = 0; l < space.n_lines(); ++l) {
    if (space.line_points(l).size() < 3) {
      out.p2 = false;
      out.short_line = l;
      break;
    }
  }
  std::unordered_set<PointSet> planes;
  for (int l = 0; l < space.n_lines() && out.p1; ++l) {
    PointSet covered = space.line(l);
    for (int x = 0; x < space.n_points() && out.p1; ++x) {
      if (covered.test(x)) continue;
      PointSet seed = space.line(l);
      seed.set(x);
      PointSet plane = closure(space, seed);
      covered |= plane;
      if (!planes.insert(plane).second) continue;
      std::vector<int> inside;
      for (int m = 0; m < space.n_lines(); ++m)
        if (space.line(m).is_subset_of(plane)) inside.push_back(m);
      for (std::size_t i = 0; i < inside.size() && out.p1; ++i)
        for (std::size_t j = i + 1; j < inside.size(); ++j)
          if (!space.line(inside[i]).intersects(space.line(inside[j]))) {
            out.p1 = false;
            out.disjoint_lines = std::make_pair(inside[i], inside[j]);
            out.plane = plane;
            break;
          }
    }
  }
  out.planes_checked = planes.size();
  return out;
}

long long gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  long long num = 1;
  long long den = 1;
  for (int i = 0; i < k; ++i) {
    long long a = 1, b = 1;
    for (int t = 0; t < n - i; ++t) a *= q;
    for (int t = 0; t < i + 1; ++t) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

}  // namespace grasslab
