#include "doctest.h"

#include <random>

#include "conelab/tangents.hpp"
#include "oracles.hpp"

using namespace conelab;
using namespace conelab::testing;

namespace {

Face face_of(const Cone& k, std::initializer_list<long> point) { return minimal_face({v(point)}, k); }

// d is a limit of feasible directions at x: x + eps d in K for eps = 2^-j.
bool feasible_direction(const Cone& k, const Vector& x, const Vector& d) {
  Scalar eps(1);
  for (int j = 0; j <= 20; ++j) {
    if (contains(k, add(x, scale(d, eps)))) return true;
    eps = eps / Scalar(2);
  }
  return false;
}

}  // namespace

TEST_CASE("tangent_cone examples") {
  Cone k = orthant(3);
  Cone t = tangent_cone(k, face_of(k, {1, 0, 0}));
  CHECK(equals(t, Cone::from_halfspaces({v({0, 1, 0}), v({0, 0, 1})}, {}, 3)));
  CHECK(equals(tangent_cone(diamond(), face_of(diamond(), {0, 0, 0})), diamond()));
  Cone td = tangent_cone(diamond(), face_of(diamond(), {1, 0, 1}));
  CHECK(equals(td, Cone::from_halfspaces({v({-1, -1, 1}), v({-1, 1, 1})}, {}, 3)));
  Face e = enumerate_faces(orthant(2), true).back();
  CHECK_THROWS_AS(tangent_cone(orthant(2), e), EmptyFace);
}

TEST_CASE("normal_cone examples") {
  Cone k = orthant(3);
  Cone n = normal_cone(k, face_of(k, {1, 0, 0}));
  CHECK(equals(n, Cone::from_halfspaces({v({0, -1, 0}), v({0, 0, -1})}, {v({1, 0, 0})}, 3)));
  CHECK(equals(normal_cone(k, face_of(k, {1, 1, 1})), Cone::zero(3)));
  CHECK(equals(normal_cone(diamond(), face_of(diamond(), {0, 0, 0})), polar(diamond())));
}

TEST_CASE("tangent cones agree with feasible directions") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<long> e(-3, 3);
  for (int t = 0; t < 50; ++t) {
    Cone k = random_cone(rng, 2 + t % 4, 3 + t % 6);
    auto faces = enumerate_faces(k);
    const Face& f = faces[t % faces.size()];
    Vector x = relative_interior_point(f);
    Cone tc = tangent_cone(k, f);
    for (int s = 0; s < 10; ++s) {
      Vector d;
      for (std::size_t i = 0; i < k.ambient_dim(); ++i) d.emplace_back(e(rng));
      CHECK(contains(tc, d) == feasible_direction(k, x, d));
    }
  }
}

TEST_CASE("normal cone is the polar of the tangent cone; faces of tangent cones") {
  std::mt19937 rng(41);
  for (int t = 0; t < 15; ++t) {
    Cone k = random_cone(rng, 2 + t % 3, 3 + t % 5);
    for (const auto& f : enumerate_faces(k)) {
      Cone tc = tangent_cone(k, f);
      Cone nc = normal_cone(k, f);
      CHECK(equals(nc, polar(tc)));
      // For u in N(F;K), T(F;K) cap u^perp is a face of T(F;K).
      Vector u = zero_vector(k.ambient_dim());
      for (const auto& r : nc.generators().rays) u = add(u, r);
      Cone cut = intersect(tc, Cone::from_halfspaces({}, {u}, k.ambient_dim()));
      Vector p = zero_vector(k.ambient_dim());
      for (const auto& r : cut.generators().rays) p = add(p, r);
      Face g = minimal_face({p}, tc);
      CHECK(equals(g.as_cone(), cut));
    }
  }
}

TEST_CASE("supporting hyperplane lifts to the tangent cone") {
  std::mt19937 rng(43);
  for (int t = 0; t < 20; ++t) {
    Cone k = random_cone(rng, 2 + t % 4, 3 + t % 5);
    Cone d = dual(k);
    for (const auto& u : d.generators().rays) {
      Cone slice = intersect(k, Cone::from_halfspaces({}, {u}, k.ambient_dim()));
      Vector x = zero_vector(k.ambient_dim());
      for (const auto& r : slice.generators().rays) x = add(x, r);
      Cone tc = tangent_cone(k, minimal_face({x}, k));
      CHECK(contains(dual(tc), u));
    }
  }
}

TEST_CASE("second_order_tangent") {
  Cone k = orthant(3);
  Cone t0 = tangent_cone(k, face_of(k, {0, 0, 0}));
  Cone s = second_order_tangent(k, face_of(k, {0, 0, 0}), minimal_face({v({1, 0, 0})}, t0));
  CHECK(equals(s, Cone::from_halfspaces({v({0, 1, 0}), v({0, 0, 1})}, {}, 3)));
  Cone tk = tangent_cone(k, face_of(k, {1, 1, 1}));
  CHECK(equals(tk, Cone::full_space(3)));

  Cone d = diamond();
  Cone tr = tangent_cone(d, face_of(d, {1, 0, 1}));
  // the facet through (1,0,1) and (0,1,1), seen in the tangent cone
  Face facet = minimal_face({v({1, 1, 2})}, tr);
  Cone s2 = second_order_tangent(d, face_of(d, {1, 0, 1}), facet);
  CHECK(equals(s2, Cone::from_halfspaces({v({-1, -1, 1})}, {}, 3)));
}

TEST_CASE("tangential exposure on named cones") {
  CHECK(is_tangentially_exposed(orthant(3)).passed());
  CHECK(is_tangentially_exposed(diamond()).passed());
  CHECK(is_strongly_tangentially_exposed(orthant(3)).passed());
  CHECK(is_strongly_tangentially_exposed(diamond()).passed());
  CHECK(is_strongly_tangentially_exposed(Cone::subspace({v({1, 1, 0})}, 3)).passed());
}

TEST_CASE("one-sided inclusion T(G;F) within T(G;K) cap span F") {
  Cone k = diamond();
  auto faces = enumerate_faces(k);
  for (const auto& f : faces) {
    Cone fc = f.as_cone();
    Cone span = Cone::subspace(f.span_basis.row_vectors(), 3);
    for (const auto& g : faces) {
      if (!is_subface(g, f)) continue;
      Cone small = tangent_cone(fc, minimal_face({relative_interior_point(g)}, fc));
      Cone big = intersect(tangent_cone(k, g), span);
      for (const auto& r : small.generators().rays) CHECK(contains(big, r));
      for (const auto& l : small.generators().lineality) CHECK(contains(big, l));
    }
  }
}

TEST_CASE("lexicographic tangent family") {
  SUBCASE("full space") {
    auto fam = lex_tangent_family(Cone::full_space(2));
    CHECK(fam.depth == 0);
    CHECK(fam.stabilized);
    CHECK(fam.members().size() == 1);
  }
  SUBCASE("orthant") {
    auto fam = lex_tangent_family(orthant(3));
    CHECK(fam.depth == 1);
    CHECK(fam.members().size() == 8);
    // shapes by lineality dimension: R3+, three R x R2+, three R2 x R+, R3
    std::vector<std::size_t> shapes(4);
    for (const auto& [key, c] : fam.members()) ++shapes[lineality_dim(c)];
    CHECK(shapes == std::vector<std::size_t>{1, 3, 3, 1});
  }
  SUBCASE("halfspace") {
    auto fam = lex_tangent_family(Cone::from_halfspaces({v({1, 0})}, {}, 2));
    CHECK(fam.depth == 1);
    CHECK(fam.members().size() == 2);
  }
  SUBCASE("lineality grows along the family; depth bound") {
    std::mt19937 rng(47);
    for (int t = 0; t < 20; ++t) {
      Cone k = random_cone(rng, 2 + t % 4, 3 + t % 6);
      auto fam = lex_tangent_family(k);
      CHECK(fam.depth <= dim(k));
      CHECK(fam.depth <= 1);
      for (std::size_t level = 0; level + 1 < fam.levels.size(); ++level) {
        for (const auto& [key, c] : fam.levels[level]) {
          for (const auto& g : enumerate_faces(c)) {
            Cone t2 = tangent_cone(c, g);
            CHECK(fam.levels[level + 1].count(t2.canonical().key()) == 1);
            if (t2.canonical().key() != key) CHECK(lineality_dim(t2) >= lineality_dim(c) + 1);
          }
        }
      }
    }
  }
}

TEST_CASE("strong tangential exposure is inherited by the family") {
  Cone k = diamond();
  REQUIRE(is_strongly_tangentially_exposed(k).passed());
  TangentFamily family = lex_tangent_family(k);
  for (const auto& [key, c] : family.members()) {
    CHECK(is_strongly_tangentially_exposed(c).passed());
  }
}

TEST_CASE("tangent and face cones match one-sided conversions") {
  std::mt19937 rng(61);
  for (int t = 0; t < 30; ++t) {
    Cone k = random_cone(rng, 2 + t % 5, 3 + t % 8);
    const std::size_t n = k.ambient_dim();
    const auto& ineqs = k.halfspaces().inequalities;
    for (const auto& f : enumerate_faces(k)) {
      std::vector<Vector> active;
      for (auto i : f.active_set) active.push_back(ineqs[i]);
      Cone by_dd = Cone::from_halfspaces(active, k.halfspaces().equations, n);
      CHECK(tangent_cone(k, f).canonical() == by_dd.canonical());

      std::vector<Vector> rays;
      for (auto r : f.member_rays) rays.push_back(k.generators().rays[r]);
      CHECK(f.as_cone().canonical() ==
            Cone::from_generators(rays, k.generators().lineality, n).canonical());
    }
  }
}
