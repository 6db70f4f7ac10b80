#include "grasslab/baseset.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "grasslab/errors.hpp"

namespace grasslab {

bool is_frame(const LinearSpace& space, const Frame& frame) {
  PointSet s = make_point_set(space.n_points(), frame.points);
  if (s.count() != frame.points.size()) return false;
  return is_independent(space, s) && closure(space, s) == space.full_set();
}

std::vector<Frame> all_frames(const LinearSpace& space, std::size_t max_frames) {
  std::vector<Frame> out;
  const auto full = space.full_set();
  // With the exchange property every independent set of dim+1 points is a base.
  const bool exchange = space.exchange_hint().value_or(false);
  const std::size_t base_size = exchange ? static_cast<std::size_t>(dimension(space)) + 1 : 0;
  for_each_independent(space, exchange ? static_cast<int>(base_size) : space.n_points(), [&](const PointSet& s) {
    if (exchange ? s.count() != base_size : s.none() || closure(space, s) != full) return true;
    if (out.size() >= max_frames)
      throw BoundError("more than " + std::to_string(max_frames) + " frames");
    out.push_back({to_vector(s)});
    return true;
  });
  return out;
}

Frame random_frame(const LinearSpace& space, std::mt19937_64& rng) {
  Frame frame;
  PointSet chosen = space.empty_set();
  PointSet span = space.empty_set();
  const auto full = space.full_set();
  while (span != full) {
    std::vector<int> outside = to_vector(full - span);
    std::uniform_int_distribution<std::size_t> pick(0, outside.size() - 1);
    int p = outside[pick(rng)];
    frame.points.push_back(p);
    chosen.set(p);
    span = closure(space, chosen);
  }
  return frame;
}

long long binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  long long c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

BaseSubset::BaseSubset(GrassPtr g, Frame frame) : g_(std::move(g)), frame_(std::move(frame)) {
  if (!is_frame(*g_->ambient(), frame_)) throw PreconditionError("frame is not a base of the ambient space");
  build();
}

BaseSubset::BaseSubset(GrassPtr g, Frame frame, Unchecked) : g_(std::move(g)), frame_(std::move(frame)) { build(); }

void BaseSubset::build() {
  const auto& space = *g_->ambient();
  const int size = static_cast<int>(frame_.points.size());
  const int r = g_->k() + 1;
  if (binomial(size, r) > 64) throw BoundError("base subset has more than 64 members");
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::uint32_t support = 0;
    PointSet s = space.empty_set();
    for (int i : idx) {
      support |= 1u << i;
      s.set(frame_.points[i]);
    }
    int e = g_->index_of(closure(space, s));
    if (e < 0) throw Error("span of frame points is not an element of the Grassmann space");
    members_.push_back(e);
    supports_.push_back(support);
    int i = r - 1;
    while (i >= 0 && idx[i] == size - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int BaseSubset::position_of_support(std::uint32_t support) const {
  auto it = std::find(supports_.begin(), supports_.end(), support);
  return it == supports_.end() ? -1 : static_cast<int>(it - supports_.begin());
}

int BaseSubset::position_of_element(int element) const {
  auto it = std::find(members_.begin(), members_.end(), element);
  return it == members_.end() ? -1 : static_cast<int>(it - members_.begin());
}

PointSet BaseSubset::elements(MemberMask mask) const {
  PointSet out(g_->size());
  for (int p = 0; p < size(); ++p)
    if (mask >> p & 1) out.set(members_[p]);
  return out;
}

MemberMask plus(const BaseSubset& b, int i) {
  MemberMask m = 0;
  for (int p = 0; p < b.size(); ++p)
    if (b.support(p) >> i & 1) m |= MemberMask{1} << p;
  return m;
}

MemberMask minus(const BaseSubset& b, int i) { return b.all() & ~plus(b, i); }

MemberMask incident(const BaseSubset& b, const PointSet& s) {
  const auto& g = *b.grassmann();
  const auto& space = *g.ambient();
  PointSet on = space.empty_set();
  for (int p : b.frame().points)
    if (s.test(p)) on.set(p);
  if (closure(space, on) != s) throw PreconditionError("subspace is not spanned by frame points");
  MemberMask m = 0;
  for (int p = 0; p < b.size(); ++p) {
    const auto& u = g.points(b.member(p));
    if (u.is_subset_of(s) || s.is_subset_of(u)) m |= MemberMask{1} << p;
  }
  return m;
}

long long incident_count(int n, int k, int m) {
  return m >= k ? binomial(m + 1, k + 1) : binomial(n - m, k - m);
}

bool co_spannable(const GrassmannSpace& g, int i, int j) {
  if (g.projective()) return g.span_dim(i, j) == 2 * g.k() - g.meet_dim(i, j);
  const auto& space = *g.ambient();
  for (const auto& base : all_bases(space)) {
    bool both = true;
    for (int e : {i, j}) {
      const auto& u = g.points(e);
      both = both && closure(space, u & base) == u;
    }
    if (both) return true;
  }
  return false;
}

SiValue s_i(const BaseSubset& b, MemberMask r, int i) {
  const auto& g = *b.grassmann();
  SiValue out{g.ambient()->full_set(), true};
  for (int p = 0; p < b.size(); ++p) {
    if (!(r >> p & 1) || !(b.support(p) >> i & 1)) continue;
    out.points &= g.points(b.member(p));
    out.vacuous = false;
  }
  return out;
}

bool is_exact(const BaseSubset& b, MemberMask r) {
  const auto& space = *b.grassmann()->ambient();
  for (int i = 0; i < static_cast<int>(b.frame().points.size()); ++i) {
    auto s = s_i(b, r, i);
    if (s.vacuous || s.points != make_point_set(space.n_points(), {b.frame().points[i]})) return false;
  }
  return true;
}

FrameIndex::FrameIndex(GrassPtr g, std::size_t max_frames) : g_(std::move(g)) {
  std::unordered_set<PointSet> seen;
  containing_.assign(g_->size(), {});
  for (auto& frame : all_frames(*g_->ambient(), max_frames)) {
    ++frames_;
    BaseSubset b(g_, std::move(frame), BaseSubset::Unchecked{});
    PointSet e = b.elements(b.all());
    if (!seen.insert(e).second) continue;
    int id = static_cast<int>(base_subsets_.size());
    for (int m : b.members()) containing_[m].push_back(id);
    base_subsets_.push_back(std::move(e));
  }
}

std::size_t FrameIndex::count_containing(const PointSet& elements) const {
  auto members = to_vector(elements);
  if (members.empty()) return base_subsets_.size();
  int rarest = *std::min_element(members.begin(), members.end(), [&](int a, int b) {
    return containing_[a].size() < containing_[b].size();
  });
  std::size_t count = 0;
  for (int id : containing_[rarest])
    if (elements.is_subset_of(base_subsets_[id])) ++count;
  return count;
}

bool FrameIndex::is_base_subset(const PointSet& elements) const {
  auto members = to_vector(elements);
  if (members.empty()) return false;
  for (int id : containing_[members[0]])
    if (base_subsets_[id] == elements) return true;
  return false;
}

bool is_exact_oracle(const FrameIndex& index, const BaseSubset& b, MemberMask r) {
  return index.count_containing(b.elements(r)) == 1;
}

std::vector<InexactFamilyMember> maximal_inexact_family(const BaseSubset& b) {
  std::vector<InexactFamilyMember> out;
  const auto& space = *b.grassmann()->ambient();
  const int size = static_cast<int>(b.frame().points.size());
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      if (i == j) continue;
      PointSet line = closure(space, make_point_set(space.n_points(), {b.frame().points[i], b.frame().points[j]}));
      out.push_back({i, j, minus(b, i) | incident(b, line)});
    }
  return out;
}

std::vector<MemberMask> maximal_inexact_exhaustive(const BaseSubset& b,
                                                   const std::function<bool(MemberMask)>& exact) {
  if (b.size() > 20) throw BoundError("exhaustive subset enumeration limited to 20 members");
  const MemberMask total = MemberMask{1} << b.size();
  std::vector<bool> is_exact_mask(total);
  for (MemberMask r = 0; r < total; ++r) is_exact_mask[r] = exact(r);
  std::vector<MemberMask> out;
  for (MemberMask r = 0; r < total; ++r) {
    if (is_exact_mask[r]) continue;
    bool maximal = true;
    for (int p = 0; p < b.size() && maximal; ++p)
      if (!(r >> p & 1) && !is_exact_mask[r | MemberMask{1} << p]) maximal = false;
    if (maximal) out.push_back(r);
  }
  return out;
}

MemberMask complement_subset(const BaseSubset& b, int i, int j) {
  if (i == j) throw PreconditionError("complement subset needs distinct indices");
  return plus(b, i) & minus(b, j);
}

int regular_size(int n, int k) { return std::min(k, n - k - 1); }

namespace {

MemberMask intersect_all(const BaseSubset& b, const std::vector<IndexPair>& pairs) {
  MemberMask acc = b.all();
  for (auto [i, j] : pairs) acc &= complement_subset(b, i, j);
  return acc;
}

}  // namespace

bool is_regular(const BaseSubset& b, const std::vector<IndexPair>& pairs) {
  const int m = regular_size(b.n(), b.k());
  const int size = static_cast<int>(b.frame().points.size());
  if (static_cast<int>(pairs.size()) == m + 1) return std::popcount(intersect_all(b, pairs)) == 1;
  if (static_cast<int>(pairs.size()) != m)
    throw PreconditionError("regular collections have " + std::to_string(m) + " or " + std::to_string(m + 1) +
                            " complement subsets");
  auto extended = pairs;
  extended.emplace_back();
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      if (i == j) continue;
      extended.back() = {i, j};
      if (std::popcount(intersect_all(b, extended)) == 1) return true;
    }
  return false;
}

bool regular_by_index_criterion(int n, int k, const std::vector<IndexPair>& pairs) {
  std::vector<int> is, js;
  for (auto [i, j] : pairs) {
    is.push_back(i);
    js.push_back(j);
  }
  for (int i : is)
    if (std::find(js.begin(), js.end(), i) != js.end()) return false;
  auto distinct = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (n > 2 * k + 1) return distinct(is);
  if (n == 2 * k + 1) return distinct(is) || distinct(js);
  return distinct(js);
}

bool combinatorial_adjacent(const BaseSubset& b, int u, int v) {
  if (u == v) throw PreconditionError("combinatorial adjacency needs distinct members");
  const int m = regular_size(b.n(), b.k());
  const int size = static_cast<int>(b.frame().points.size());
  std::vector<IndexPair> all_pairs;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (i != j) all_pairs.emplace_back(i, j);
  const MemberMask both = MemberMask{1} << u | MemberMask{1} << v;
  // Multisets of m pairs as non-decreasing index sequences.
  std::vector<int> idx(m, 0);
  const int count = static_cast<int>(all_pairs.size());
  while (true) {
    std::vector<IndexPair> pairs;
    for (int t : idx) pairs.push_back(all_pairs[t]);
    if ((intersect_all(b, pairs) & both) == both && is_regular(b, pairs)) return true;
    int t = m - 1;
    while (t >= 0 && idx[t] == count - 1) --t;
    if (t < 0) break;
    ++idx[t];
    for (int s = t + 1; s < m; ++s) idx[s] = idx[t];
  }
  return false;
}

std::optional<Frame> frame_of_base_subset(const GrassmannSpace& g, const PointSet& elements) {
  const int n = g.n();
  const int k = g.k();
  if (static_cast<long long>(elements.count()) != binomial(n + 1, k + 1)) return std::nullopt;
  const auto& space = *g.ambient();
  std::vector<long long> hits(space.n_points(), 0);
  for (int e : to_vector(elements))
    for (int p : to_vector(g.points(e))) ++hits[p];
  Frame frame;
  for (int p = 0; p < space.n_points(); ++p)
    if (hits[p] == binomial(n, k)) frame.points.push_back(p);
  if (static_cast<int>(frame.points.size()) != n + 1 || !is_frame(space, frame)) return std::nullopt;
  BaseSubset b(GrassPtr(GrassPtr{}, &g), frame);
  if (b.elements(b.all()) != elements) return std::nullopt;
  return frame;
}

}  // namespace grasslab
