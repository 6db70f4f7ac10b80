#include "doctest.h"

#include "grasslab/errors.hpp"
#include "grasslab/gallery.hpp"
#include "grasslab/grassmann.hpp"
#include "oracles.hpp"

using namespace grasslab;

namespace {

/// Adjacency from raw point sets: two k-subspaces of PG(n,2) are adjacent
/// iff they share a (k-1)-subspace, i.e. 2^k - 1 points.
std::vector<std::vector<int>> oracle_adjacency(const GrassmannSpace& g, std::size_t shared) {
  std::vector<std::vector<int>> adj(g.size());
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (i != j && (g.points(i) & g.points(j)).count() == shared) adj[i].push_back(j);
  return adj;
}

}  // namespace

TEST_SUITE("grassmann") {
  TEST_CASE("adjacency and BFS distance match the point-set oracle") {
    struct Case {
      int n, k;
      std::size_t shared;
    };
    for (auto c : {Case{3, 1, 1}, Case{4, 1, 1}, Case{4, 2, 3}}) {
      CAPTURE(c.n);
      CAPTURE(c.k);
      auto g = GrassmannSpace::of_projective(build_pg(c.n, gf::FieldSpec::of_order(2)), c.k);
      auto adj = oracle_adjacency(*g, c.shared);
      std::size_t edges = 0;
      for (const auto& row : adj) edges += row.size();
      CHECK(g->edge_count() == edges / 2);
      for (int i = 0; i < g->size(); ++i) {
        auto expect = oracle::bfs(adj, i);
        auto got = distances_from(*g, i);
        REQUIRE(got == expect);
        for (int j = 0; j < g->size(); ++j) {
          CHECK(got[j] == c.k - g->meet_dim(i, j));
          CHECK(got[j] == g->span_dim(i, j) - c.k);
        }
      }
    }
  }

  TEST_CASE("lines of PG(3,2) form a graph with 315 edges; points form K15") {
    auto pg = build_pg(3, gf::FieldSpec::of_order(2));
    // Each line meets 3 * (7 - 1) = 18 others.
    CHECK(GrassmannSpace::of_projective(pg, 1)->edge_count() == 35 * 18 / 2);
    CHECK(GrassmannSpace::of_projective(pg, 0)->edge_count() == 15 * 14 / 2);
  }

  TEST_CASE("connecting paths are geodesics") {
    auto g = GrassmannSpace::of_projective(build_pg(4, gf::FieldSpec::of_order(2)), 2);
    for (int i = 0; i < g->size(); i += 7)
      for (int j = 0; j < g->size(); j += 5) {
        auto path = connecting_path(*g, i, j);
        REQUIRE(!path.empty());
        CHECK(path.front() == i);
        CHECK(path.back() == j);
        CHECK(static_cast<int>(path.size()) - 1 == distance(*g, i, j));
        for (std::size_t t = 1; t < path.size(); ++t) CHECK(g->adjacent(path[t - 1], path[t]));
      }
  }

  TEST_CASE("maximal cliques of lines of PG(3,2) are the 15 stars and 15 tops") {
    auto g = GrassmannSpace::of_projective(build_pg(3, gf::FieldSpec::of_order(2)), 1);
    auto cliques = maximal_cliques(*g);
    CHECK(cliques.size() == 30);
    int stars = 0, tops = 0;
    for (const auto& c : cliques) {
      CHECK(c.count() == 7);
      CHECK(pairwise_adjacent(*g, c));
      auto kind = classify_clique(*g, c);
      REQUIRE(kind.has_value());
      (kind->kind == AdjacentSet::Kind::star ? stars : tops)++;
    }
    CHECK(stars == 15);
    CHECK(tops == 15);
    CHECK(all_stars(*g).size() == 15);
    CHECK(all_tops(*g).size() == 15);
  }

  TEST_CASE("punctured PG(3,2) has a maximal clique that is neither star nor top") {
    auto r = make_punctured(build_pg(3, gf::FieldSpec::of_order(2)), 0);
    auto g = GrassmannSpace::of_linear(r.space, 1);
    CHECK(g->size() == 35);
    bool found = false;
    for (const auto& c : maximal_cliques(*g)) found = found || !classify_clique(*g, c).has_value();
    CHECK(found);
  }

  TEST_CASE("complement adjacency reproduces adjacency") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2}}) {
      auto g = GrassmannSpace::of_projective(build_pg(n, gf::FieldSpec::of_order(2)), k);
      ComplementAdjacency ca(g);
      for (int i = 0; i < g->size(); ++i)
        for (int j = 0; j < g->size(); ++j)
          if (i != j) REQUIRE(ca(i, j) == g->adjacent(i, j));
    }
  }

  TEST_CASE("stars and tops need centres of the right dimension") {
    auto pg = build_pg(3, gf::FieldSpec::of_order(2));
    auto g = GrassmannSpace::of_projective(pg, 1);
    PointSet pt = make_point_set(15, {0});
    CHECK(star(*g, pt).members.count() == 7);
    CHECK_THROWS_AS(top(*g, pt), PreconditionError);
    CHECK_THROWS_AS(star(*g, g->points(0)), PreconditionError);
    CHECK_THROWS_AS(maximal_cliques(*g, 10), BoundError);
  }
}
