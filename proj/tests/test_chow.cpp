#include "doctest.h"

#include <random>
#include <set>

#include "grasslab/chow.hpp"
#include "grasslab/errors.hpp"
#include "grasslab/gallery.hpp"
#include "oracles.hpp"

using namespace grasslab;

namespace {

PGPtr pg_of(int n, int q) { return build_pg(n, gf::FieldSpec::of_order(q)); }

PointMap random_collineation(const PGPtr& pg, std::mt19937_64& rng) {
  int sigma = static_cast<int>(rng() % pg->f().m());
  return induced_point_map(pg, {random_invertible(pg->f(), pg->n() + 1, rng), sigma, false});
}

}  // namespace

TEST_SUITE("chow") {
  TEST_CASE("lifted collineations are recognized with their own point action") {
    std::mt19937_64 rng(31);
    struct Case {
      int n, k, q;
    };
    for (auto c : {Case{3, 1, 2}, Case{4, 1, 2}, Case{4, 2, 2}, Case{2, 1, 4}, Case{3, 1, 3}}) {
      CAPTURE(c.n);
      CAPTURE(c.k);
      CAPTURE(c.q);
      auto pg = pg_of(c.n, c.q);
      auto g = GrassmannSpace::of_projective(pg, c.k);
      for (int t = 0; t < 5; ++t) {
        auto pm = random_collineation(pg, rng);
        auto f = lift_point_map(pm, g, g);
        auto r = recognize(f);
        REQUIRE(r.verdict == Verdict::collineation_induced);
        CHECK(r.witness->map == pm.map);
        CHECK(r.witness_class->kind == MorphismClass::Kind::collineation);
        if (c.k > 0 && c.k < c.n - 1) {
          RecognizeOptions o;
          o.mode = RecognitionMode::baseset;
          auto rb = recognize(f, o);
          CHECK(rb.verdict == Verdict::collineation_induced);
          CHECK(rb.witness->map == pm.map);
        }
      }
    }
  }

  TEST_CASE("duality-composed maps of lines of PG(3,q) are duality induced") {
    std::mt19937_64 rng(37);
    for (int q : {2, 3}) {
      auto pg = pg_of(3, q);
      auto g = GrassmannSpace::of_projective(pg, 1);
      auto dual = dual_space(pg);
      for (int t = 0; t < 5; ++t) {
        auto pm = random_collineation(pg, rng);
        auto f = compose_with_annihilator(lift_point_map(pm, g, g));
        CHECK(classify_clique_action(f) == CliqueAction::type_b);
        auto r = recognize(f);
        REQUIRE(r.verdict == Verdict::duality_induced);
        // Point p must go to the hyperplane annihilating its collineation image.
        for (int p = 0; p < pg->n_points(); ++p)
          CHECK(dual.hyperplanes[r.witness->map[p]] == pg->annihilator(pg->point_subspace(pm.map[p])));
      }
    }
  }

  TEST_CASE("random permutations are not recognized and the diagnostic names the failing check") {
    std::mt19937_64 rng(41);
    auto g = GrassmannSpace::of_projective(pg_of(3, 2), 1);
    for (int t = 0; t < 20; ++t) {
      GrassmannMap f{g, g, std::vector<int>(35)};
      for (int i = 0; i < 35; ++i) f.map[i] = i;
      std::shuffle(f.map.begin(), f.map.end(), rng);
      auto r = recognize(f);
      CHECK_FALSE(r.recognized());
      REQUIRE_FALSE(r.checks.empty());
      CHECK_FALSE(r.checks.back().passed);
      CHECK(r.diagnostic.rfind(r.checks.back().name, 0) == 0);
    }
  }

  TEST_CASE("adjacency checks are one-sided on the punctured-space bijection") {
    auto f = one_sided_bijection_map(2, 0);
    CHECK(f.injective());
    CHECK(f.surjective());
    auto a = check_adjacency_preserving(f);
    CHECK(a.forward);
    CHECK_FALSE(a.backward);
    REQUIRE(a.backward_witness.has_value());
    auto [x, y] = *a.backward_witness;
    CHECK_FALSE(f.source->adjacent(x, y));
    CHECK(f.target->adjacent(f.map[x], f.map[y]));
    FramePolicy all;
    all.mode = FramePolicy::Mode::all;
    CHECK(check_base_preserving(f, all).holds);
    CHECK_FALSE(check_base_preserving(inverse(f), all).holds);
  }

  TEST_CASE("injective base-preserving maps preserve adjacency") {
    std::mt19937_64 rng(43);
    auto pg = pg_of(4, 2);
    auto g = GrassmannSpace::of_projective(pg, 1);
    for (int t = 0; t < 6; ++t) {
      auto f = lift_point_map(random_collineation(pg, rng), g, g);
      FramePolicy p;
      p.samples = 50;
      p.seed = static_cast<std::uint64_t>(t);
      REQUIRE(check_base_preserving(f, p).holds);
      CHECK(check_adjacency_preserving(f).forward);
    }
  }

  TEST_CASE("lower maps descend one level and keep the star/top kind") {
    std::mt19937_64 rng(47);
    auto pg = pg_of(4, 2);
    auto g1 = GrassmannSpace::of_projective(pg, 1);
    auto g0 = GrassmannSpace::of_projective(pg, 0);
    auto pm = random_collineation(pg, rng);
    auto lower = induce_lower(lift_point_map(pm, g1, g1));
    CHECK_FALSE(lower.dual);
    CHECK(lower.map.map == lift_point_map(pm, g0, g0).map);
  }

  TEST_CASE("annihilator indices form an involution between complementary levels") {
    auto pg = pg_of(4, 2);
    auto g1 = GrassmannSpace::of_projective(pg, 1);
    auto g2 = GrassmannSpace::of_projective(pg, 2);
    auto a = annihilator_index(*g1, *g2);
    auto b = annihilator_index(*g2, *g1);
    std::set<int> seen(a.begin(), a.end());
    CHECK(seen.size() == static_cast<std::size_t>(g1->size()));
    for (int i = 0; i < g1->size(); ++i) CHECK(b[a[i]] == i);
  }

  TEST_CASE("wedge coordinates of lines of PG(3,2)") {
    auto g = GrassmannSpace::of_projective(pg_of(3, 2), 1);
    auto pl = plucker(*g);
    CHECK(pl.target->n() == 5);
    std::set<int> images(pl.map.begin(), pl.map.end());
    CHECK(images.size() == 35);
    // Images satisfy the single quadratic relation p01 p23 + p02 p13 + p03 p12 = 0
    // (over GF(2) signs do not matter); minors are ordered 01,02,03,12,13,23.
    for (int e = 0; e < 35; ++e) {
      const auto& x = pl.target->point(pl.map[e]);
      CHECK(((x[0] * x[5] + x[1] * x[4] + x[2] * x[3]) % 2) == 0);
    }
    // Every base subset goes to a base of PG(5,2).
    for (const auto& f : all_frames(*g->ambient())) {
      BaseSubset b(g, f, BaseSubset::Unchecked{});
      std::vector<oracle::Vec> rows;
      for (int m : b.members()) {
        const auto& x = pl.target->point(pl.map[m]);
        rows.push_back(oracle::Vec(x.begin(), x.end()));
      }
      REQUIRE(oracle::rank_mod_p(rows, 2) == 6);
    }
  }

  TEST_CASE("bijective lifts of strong embeddings come from collineations") {
    std::mt19937_64 rng(53);
    auto pg = pg_of(3, 2);
    auto d = bijective_implies_collineation(random_collineation(pg, rng), 1);
    CHECK(d.collineation);
    REQUIRE(d.levels.size() == 2);
    CHECK(d.levels[0] == std::make_pair(1, true));
    CHECK(d.levels[1] == std::make_pair(0, true));
  }

  TEST_CASE("preconditions") {
    auto pg = pg_of(3, 2);
    auto g = GrassmannSpace::of_projective(pg, 1);
    GrassmannMap constant{g, g, std::vector<int>(35, 0)};
    CHECK_THROWS_AS(inverse(constant), PreconditionError);
    RecognizeOptions o;
    o.mode = RecognitionMode::baseset;
    auto g0 = GrassmannSpace::of_projective(pg, 0);
    GrassmannMap id0{g0, g0, std::vector<int>(15)};
    for (int i = 0; i < 15; ++i) id0.map[i] = i;
    auto r = recognize(id0, o);
    CHECK_FALSE(r.recognized());
    CHECK(r.checks.back().name == "level 0<k<n-1");
    // The non-strong embedding into PG(2,16) has no equal-dimension lift.
    auto tgt = pg_of(2, 16);
    Matrix m{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 4, 8}};
    auto emb = linear_point_map(pg, tgt, m);
    CHECK_THROWS_AS(lift_embedding(emb, g, GrassmannSpace::of_projective(tgt, 1)), PreconditionError);
  }
}
