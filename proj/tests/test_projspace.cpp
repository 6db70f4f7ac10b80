#include "doctest.h"

#include <random>
#include <set>

#include "grasslab/chow.hpp"
#include "grasslab/errors.hpp"
#include "grasslab/gallery.hpp"
#include "grasslab/projspace.hpp"
#include "oracles.hpp"

using namespace grasslab;

namespace {

gf::Elem dot(const gf::FieldSpec& f, const Row& a, const Row& b) {
  gf::Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

ProjSubspace random_subspace(const ProjectiveSpace& pg, std::mt19937_64& rng) {
  int rows = static_cast<int>(rng() % (pg.n() + 2));
  Matrix m;
  for (int i = 0; i < rows; ++i) {
    Row r(pg.n() + 1);
    for (auto& x : r) x = static_cast<gf::Elem>(rng() % pg.f().q());
    m.push_back(r);
  }
  return pg.from_rows(m);
}

}  // namespace

TEST_SUITE("projspace") {
  TEST_CASE("subspace counts match spans of vector tuples and the Gaussian recurrence") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 5}}) {
      auto pg = build_pg(n, gf::FieldSpec::of_order(q));
      for (int d = 0; d < n; ++d) {
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(d);
        long long got = static_cast<long long>(pg->subspaces(d).size());
        CHECK(got == oracle::gaussian_recurrence(n + 1, d + 1, q));
        CHECK(got == gaussian_binomial(n + 1, d + 1, q));
        if (d <= 2 && n <= 3) CHECK(got == oracle::count_vector_subspaces(n + 1, d + 1, q));
      }
    }
    // Non-prime orders against the recurrence only.
    CHECK(build_pg(2, gf::FieldSpec::of_order(4))->n_points() == 21);
    CHECK(build_pg(2, gf::FieldSpec::of_order(4))->subspaces(1).size() == 21);
    CHECK(build_pg(3, gf::FieldSpec::of_order(4))->subspaces(1).size() == 357);
  }

  TEST_CASE("PG(3,2) counts and point normalization") {
    auto pg = build_pg(3, gf::FieldSpec::of_order(2));
    CHECK(pg->n_points() == 15);
    CHECK(pg->space()->n_lines() == 35);
    CHECK(pg->subspaces(2).size() == 15);
    for (int i = 0; i < pg->n_points(); ++i) {
      CHECK(pg->index_of(pg->point(i)) == i);
      CHECK(normalize(pg->f(), pg->point(i)) == pg->point(i));
    }
  }

  TEST_CASE("RREF is canonical for random bases") {
    std::mt19937_64 rng(5);
    auto pg = build_pg(3, gf::FieldSpec::of_order(3));
    const auto& f = pg->f();
    for (int t = 0; t < 200; ++t) {
      auto s = random_subspace(*pg, rng);
      CHECK(rref(f, s.basis) == s.basis);
      CHECK(oracle::rank_mod_p([&] {
              std::vector<oracle::Vec> v;
              for (const auto& r : s.basis) v.push_back(oracle::Vec(r.begin(), r.end()));
              return v;
            }(), 3) == static_cast<int>(s.basis.size()));
      // Mixing rows by an invertible matrix keeps the canonical form.
      int r = static_cast<int>(s.basis.size());
      if (r == 0) continue;
      auto g = random_invertible(f, r, rng);
      CHECK(pg->from_rows(multiply(f, g, s.basis)) == s);
    }
  }

  TEST_CASE("span and meet obey the modular law and act on point sets") {
    std::mt19937_64 rng(9);
    for (int q : {2, 3}) {
      auto pg = build_pg(3, gf::FieldSpec::of_order(q));
      for (int t = 0; t < 300; ++t) {
        auto a = random_subspace(*pg, rng);
        auto b = random_subspace(*pg, rng);
        auto sp = pg->span(a, b);
        auto mt = pg->meet(a, b);
        CHECK(sp.dim() + mt.dim() == a.dim() + b.dim());
        CHECK(pg->points_of(mt) == (pg->points_of(a) & pg->points_of(b)));
        PointSet un = pg->points_of(a) | pg->points_of(b);
        CHECK(pg->points_of(sp) == closure(*pg->space(), un));
        CHECK(static_cast<long long>(pg->points_of(a).count()) == pg->points_in_dim(a.dim()));
      }
    }
  }

  TEST_CASE("annihilators are orthogonal complements and involutive") {
    std::mt19937_64 rng(13);
    auto pg = build_pg(4, gf::FieldSpec::of_order(2));
    for (int t = 0; t < 200; ++t) {
      auto s = random_subspace(*pg, rng);
      auto a = pg->annihilator(s);
      CHECK(a.dim() == pg->n() - 1 - s.dim());
      for (const auto& x : s.basis)
        for (const auto& y : a.basis) CHECK(dot(pg->f(), x, y) == 0);
      CHECK(pg->annihilator(a) == s);
    }
  }

  TEST_CASE("point maps of semilinear maps compose") {
    std::mt19937_64 rng(17);
    auto pg = build_pg(2, gf::FieldSpec::of_order(4));
    const auto& f = pg->f();
    for (int t = 0; t < 40; ++t) {
      SemilinearMap a{random_invertible(f, 3, rng), static_cast<int>(rng() % 2), false};
      SemilinearMap b{random_invertible(f, 3, rng), static_cast<int>(rng() % 2), false};
      auto ab = compose(f, a, b);
      CHECK(ab.sigma == (a.sigma + b.sigma) % 2);
      auto lhs = induced_point_map(pg, ab);
      auto rhs = compose(induced_point_map(pg, a), induced_point_map(pg, b));
      CHECK(lhs.map == rhs.map);
      auto back = semilinear_from_collineation(pg, lhs.map);
      REQUIRE(back.has_value());
      CHECK(induced_point_map(pg, *back).map == lhs.map);
    }
  }

  TEST_CASE("a non-semilinear permutation of points is rejected") {
    auto pg = build_pg(2, gf::FieldSpec::of_order(2));
    std::vector<int> swap{1, 0, 2, 3, 4, 5, 6};
    CHECK_FALSE(semilinear_from_collineation(pg, swap).has_value());
    Matrix singular{{1, 0, 0}, {1, 0, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(induced_point_map(pg, {singular, 0, false}), PreconditionError);
  }

  TEST_CASE("matrix inverse and transpose") {
    std::mt19937_64 rng(19);
    auto f = gf::FieldSpec::of_order(5);
    for (int t = 0; t < 50; ++t) {
      auto m = random_invertible(*f, 4, rng);
      auto inv = inverse(*f, m);
      REQUIRE(inv.has_value());
      CHECK(multiply(*f, m, *inv) == identity_matrix(4));
      CHECK(transpose(transpose(m)) == m);
      CHECK(rank(*f, m) == 4);
    }
    CHECK_FALSE(inverse(*f, Matrix{{1, 2}, {2, 4}}).has_value());
  }

  TEST_CASE("the dual space is a projective space on hyperplanes") {
    auto pg = build_pg(3, gf::FieldSpec::of_order(2));
    auto d = dual_space(pg);
    CHECK(d.space->n_points() == 15);
    CHECK(d.space->n_lines() == 35);
    CHECK(validate(*d.space).ok);
    CHECK(classify_map(annihilator_collineation(d)).kind == MorphismClass::Kind::collineation);
    for (int i = 0; i < 15; ++i) {
      auto u = pg->point_subspace(i);
      auto through = d.from_primal(u);
      CHECK(through.count() == 7);
      CHECK(d.to_primal(through) == u);
    }
  }

  TEST_CASE("projective axioms: PG holds, punctured PG fails P1") {
    auto pg = build_pg(3, gf::FieldSpec::of_order(2));
    CHECK(verify_projective_axioms(*pg->space()).holds());
    auto r = verify_projective_axioms(*make_punctured(pg, 0).space);
    CHECK_FALSE(r.p2);
    CHECK_FALSE(r.p1);
    CHECK(r.disjoint_lines.has_value());
  }

  TEST_CASE("wrong shapes are rejected") {
    auto pg = build_pg(2, gf::FieldSpec::of_order(2));
    CHECK_THROWS_AS(pg->subspaces(5), PreconditionError);
    CHECK_THROWS_AS(pg->index_of(Row{0, 0, 0}), Error);
    CHECK_THROWS_AS(build_pg(0, gf::FieldSpec::of_order(2)), PreconditionError);
    CHECK_THROWS_AS(normalize(pg->f(), Row{0, 0, 0}), PreconditionError);
  }
}
