#include "doctest.h"

#include "grasslab/errors.hpp"
#include "grasslab/gallery.hpp"
#include "grasslab/suites.hpp"

using namespace grasslab;

TEST_SUITE("gallery") {
  TEST_CASE("every item passes all of its claims and serializes deterministically") {
    for (const auto& id : gallery_ids()) {
      CAPTURE(id);
      auto a = build_gallery_item(id);
      CHECK(a.id == id);
      CHECK_FALSE(a.claims.empty());
      for (const auto& c : a.claims) {
        CAPTURE(c.name);
        CHECK(c.passed);
      }
      CHECK(dump(a.to_json()) == dump(build_gallery_item(id).to_json()));
    }
    CHECK_THROWS_AS(build_gallery_item("nope"), PreconditionError);
  }

  TEST_CASE("collapsed plane keeps the point set and loses lines") {
    auto kp = make_kreuzer_plane(build_pg(3, gf::FieldSpec::of_order(2)));
    CHECK(kp->n_points() == 15);
    // The 7 lines of one plane become a single line.
    CHECK(kp->n_lines() == 35 - 7 + 1);
    CHECK(validate(*kp).ok);
    CHECK(check_exchange(*kp).holds);
  }

  TEST_CASE("items also build over GF(3)") {
    for (const auto& id : {"kreuzer-plane", "punctured", "clique-not-top"}) {
      auto it = build_gallery_item(id, 3);
      CAPTURE(id);
      CHECK(it.passed());
    }
  }
}

TEST_SUITE("suites") {
  TEST_CASE("reports are byte-identical for a fixed seed") {
    SuiteOptions o;
    o.seed = 4;
    auto a = suite_grassmann(o);
    auto b = suite_grassmann(o);
    CHECK(a.passed());
    CHECK(a.to_text() == b.to_text());
    CHECK(dump(a.to_json()) == dump(b.to_json()));
  }

  TEST_CASE("single-geometry reports name their witnesses") {
    auto pg = build_pg(3, gf::FieldSpec::of_order(2));
    auto r = check_projective(*make_punctured(pg, 0).space);
    CHECK_FALSE(r.passed());
    bool witness = false;
    for (const auto& line : r.lines) witness = witness || line.detail.find("disjoint lines") != std::string::npos;
    CHECK(witness);
    CHECK(check_projective(*pg->space()).passed());
    CHECK(check_axioms(*pg->space()).passed());
    CHECK(check_exchange_report(*make_kreuzer_plane(pg)).passed());
    CHECK_THROWS_AS(check_baseset_lemmas(pg, 0, FramePolicy{}), PreconditionError);
  }
}
