#include "doctest.h"

#include <algorithm>
#include <random>
#include <thread>

#include "conelab/cone.hpp"
#include "oracles.hpp"

using namespace conelab;
using namespace conelab::testing;

namespace {

std::vector<Vector> concat_for_test(std::vector<Vector> xs, const Vector& x) {
  xs.push_back(x);
  return xs;
}

}  // namespace

TEST_CASE("construction conventions") {
  Cone quadrant = Cone::from_generators({v({1, 0}), v({0, 1})}, {}, 2);
  CHECK(contains(quadrant, v({1, 1})));
  CHECK_FALSE(contains(quadrant, v({-1, 1})));
  Cone full = Cone::full_space(3);
  CHECK(dim(full) == 3);
  CHECK(full.generators().lineality.size() == 3);
  Cone zero = Cone::zero(3);
  CHECK(dim(zero) == 0);
  CHECK(zero.halfspaces().equations.size() == 3);
  CHECK_THROWS_AS(Cone::from_generators({v({1, 0})}, {}, 3), DimensionMismatch);
  CHECK_THROWS_AS(intersect(Cone::full_space(2), Cone::full_space(3)), DimensionMismatch);
}

TEST_CASE("dd_convert examples") {
  SUBCASE("quadrant") {
    Cone k = dd_convert(Cone::from_generators({v({1, 0}), v({0, 1})}, {}, 2));
    CHECK(k.halfspaces().inequalities == std::vector<Vector>{v({0, 1}), v({1, 0})});
    CHECK(k.halfspaces().equations.empty());
  }
  SUBCASE("diamond against the brute-force facet oracle") {
    Cone k = diamond();
    auto facets = brute_force_facets(k.generators().rays, 3);
    CHECK(facets == k.halfspaces().inequalities);
    std::vector<Vector> listed{v({-1, -1, 1}), v({-1, 1, 1}), v({1, -1, 1}), v({1, 1, 1})};
    std::sort(listed.begin(), listed.end(), [](auto& a, auto& b) { return lex_compare(a, b) < 0; });
    CHECK(k.halfspaces().inequalities == listed);
  }
  SUBCASE("line") {
    Cone k = Cone::from_generators({v({1, 1}), v({-1, -1})}, {}, 2);
    CHECK(k.generators().rays.empty());
    CHECK(k.generators().lineality == std::vector<Vector>{v({1, 1})});
    CHECK(k.halfspaces().equations == std::vector<Vector>{v({1, -1})});
    CHECK(k.halfspaces().inequalities.empty());
  }
  SUBCASE("halfspace side to generators") {
    Cone k = Cone::from_halfspaces({v({-1, -1, 1}), v({-1, 1, 1}), v({1, -1, 1}), v({1, 1, 1}),
                                    v({0, 0, 1}), v({1, 0, 3})},
                                   {}, 3);
    CHECK(equals(k, diamond()));
    CHECK(k.halfspaces().inequalities.size() == 4);
  }
}

TEST_CASE("dual examples") {
  CHECK(equals(dual(orthant(2)), orthant(2)));
  Cone k = Cone::from_generators({v({1, 0}), v({1, 1})}, {}, 2);
  Cone d = dual(k);
  std::vector<Vector> expected{v({0, 1}), v({1, -1})};
  CHECK(d.generators().rays == expected);
  for (const auto& s : d.generators().rays)
    for (const auto& x : k.generators().rays) CHECK(dot(s, x).sign() >= 0);
  CHECK(equals(dual(Cone::full_space(3)), Cone::zero(3)));
  CHECK(equals(dual(dual(diamond())), diamond()));
}

TEST_CASE("polar examples") {
  Cone neg = Cone::from_generators({v({-1, 0}), v({0, -1})}, {}, 2);
  CHECK(equals(polar(orthant(2)), neg));
  CHECK(equals(polar(Cone::zero(2)), Cone::full_space(2)));
  Cone half = Cone::from_halfspaces({v({1, 0})}, {}, 2);
  Cone p = polar(half);
  CHECK(p.generators().rays == std::vector<Vector>{v({-1, 0})});
  CHECK(p.generators().lineality.empty());
  // polar of a converted cone takes the cheap path and is still canonical
  Cone pd = polar(dd_convert(diamond()));
  CHECK(equals(pd, polar(diamond())));
  CHECK(pd.canonical() == dd_convert(Cone::from_generators(pd.generators().rays, {}, 3)).canonical());
}

TEST_CASE("intersect and minkowski_sum") {
  Cone below = Cone::from_halfspaces({v({-1, 1})}, {}, 2);
  Cone k = intersect(orthant(2), below);
  CHECK(k.generators().rays == std::vector<Vector>{v({0, 1}), v({1, 1})});
  CHECK(brute_force_facets(k.generators().rays, 2) == k.halfspaces().inequalities);

  Cone e1 = Cone::from_generators({v({1, 0})}, {}, 2);
  Cone e2 = Cone::from_generators({v({0, 1})}, {}, 2);
  CHECK(equals(minkowski_sum(e1, e2), orthant(2)));

  Cone s = minkowski_sum(orthant(3), Cone::subspace({v({0, 1, 0}), v({0, 0, 1})}, 3));
  CHECK(s.halfspaces().inequalities == std::vector<Vector>{v({1, 0, 0})});
  CHECK(s.generators().lineality.size() == 2);
  CHECK(s.generators().rays == std::vector<Vector>{v({1, 0, 0})});
}

TEST_CASE("linear_image") {
  Matrix proj({v({1, 0, 0}), v({0, 1, 0})}, 3);
  CHECK(equals(linear_image(diamond(), proj), Cone::full_space(2)));
  CHECK(equals(linear_image(diamond(), Matrix::identity(3)), diamond()));
  Matrix zero({v({0, 0, 0}), v({0, 0, 0})}, 3);
  CHECK(equals(linear_image(diamond(), zero), Cone::zero(2)));

  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Cone k = random_cone(rng, 3 + t % 2, 5);
    const std::size_t n = k.ambient_dim();
    Matrix a(n);
    std::uniform_int_distribution<long> e(-2, 2);
    for (int i = 0; i < 2; ++i) {
      Vector row;
      for (std::size_t j = 0; j < n; ++j) row.emplace_back(e(rng));
      a.push_back(row);
    }
    Cone img = linear_image(k, a);
    for (int s = 0; s < 10; ++s) {
      Vector y{Scalar(e(rng)), Scalar(e(rng))};
      CHECK(contains(img, y) == preimage_feasible(k, a, y));
    }
  }
}

TEST_CASE("decompose_pointed") {
  Cone half = Cone::from_halfspaces({v({0, 1})}, {}, 2);
  auto d = decompose_pointed(half);
  CHECK(d.certified);
  CHECK(d.lineality.row_vectors() == std::vector<Vector>{v({1, 0})});
  CHECK(equals(d.pointed, Cone::from_generators({v({0, 1})}, {}, 2)));

  auto p = decompose_pointed(diamond());
  CHECK(p.certified);
  CHECK(p.lineality.rows() == 0);
  CHECK(equals(p.pointed, diamond()));

  auto f = decompose_pointed(Cone::full_space(3));
  CHECK(f.certified);
  CHECK(f.lineality.rows() == 3);
  CHECK(equals(f.pointed, Cone::zero(3)));

  Cone skew = Cone::from_generators({v({1, 1, 0}), v({1, 0, 1})}, {v({1, 0, 0})}, 3);
  CHECK(decompose_pointed(skew).certified);
}

TEST_CASE("contains equals dim") {
  CHECK(contains(orthant(2), v({1, 1})));
  CHECK(dim(Cone::zero(4)) == 0);
  CHECK(dim(diamond()) == 3);
  CHECK(is_pointed(diamond()));
  CHECK_FALSE(is_pointed(Cone::from_halfspaces({v({1, 0})}, {}, 2)));
}

TEST_CASE("lazy completion is safe under concurrent readers") {
  Cone k = Cone::from_generators({v({1, 0, 1}), v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})}, {}, 3);
  std::vector<std::thread> readers;
  std::vector<std::size_t> counts(4);
  for (int i = 0; i < 4; ++i) {
    readers.emplace_back([&, i] { counts[i] = k.halfspaces().inequalities.size(); });
  }
  for (auto& t : readers) t.join();
  CHECK(std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 4; }));
}

TEST_CASE("representation consistency on random cones") {
  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    Cone k = random_cone(rng, 2 + t % 5, 3 + t % 8);
    const auto& g = k.generators();
    const auto& h = k.halfspaces();
    const std::size_t n = k.ambient_dim();
    const std::size_t d = dim(k);
    for (const auto& r : g.rays) {
      for (const auto& a : h.inequalities) CHECK(dot(a, r).sign() >= 0);
      for (const auto& e : h.equations) CHECK(dot(e, r).is_zero());
    }
    for (const auto& l : g.lineality) {
      for (const auto& a : h.inequalities) CHECK(dot(a, l).is_zero());
      for (const auto& e : h.equations) CHECK(dot(e, l).is_zero());
    }
    for (const auto& a : h.inequalities) {
      std::vector<Vector> tight = g.lineality;
      for (const auto& r : g.rays)
        if (dot(a, r).is_zero()) tight.push_back(r);
      CHECK(rank(tight, n) == d - 1);
    }
    if (lineality_dim(k) == 0 && d == n) {
      CHECK(brute_force_facets(g.rays, n) == h.inequalities);
    }
    // Fresh one-sided copies force a double description run each time.
    CHECK(Cone::from_halfspaces(g.rays, g.lineality, n).canonical() == dual(k).canonical());
    CHECK(dual(dd_convert(dual(Cone::from_generators(g.rays, g.lineality, n)))).canonical() ==
          k.canonical());
    CHECK(Cone::from_halfspaces(h.inequalities, h.equations, n).canonical() == k.canonical());
  }
}

TEST_CASE("from_matching_sides agrees with the double description") {
  std::mt19937 rng(19);
  for (int t = 0; t < 60; ++t) {
    Cone k = random_cone(rng, 2 + t % 5, 3 + t % 8);
    const std::size_t n = k.ambient_dim();
    const auto& g = k.generators();
    const auto& h = k.halfspaces();
    // redundant copies on both sides are pruned away
    std::vector<Vector> rays = g.rays, ineqs = h.inequalities;
    if (rays.size() >= 2) rays.push_back(add(rays[0], rays[1]));
    if (ineqs.size() >= 2) ineqs.push_back(add(ineqs[0], scale(ineqs[1], Scalar(2))));
    Cone both = from_matching_sides({rays, g.lineality}, {ineqs, h.equations}, n);
    CHECK(both.canonical() == Cone::from_generators(g.rays, g.lineality, n).canonical());
    CHECK(dual(both).canonical() == Cone::from_halfspaces(g.rays, g.lineality, n).canonical());
  }
}

TEST_CASE("certificate shortcuts in equals never contradict canonical comparison") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<long> e(-2, 2);
  for (int t = 0; t < 80; ++t) {
    Cone k = random_cone(rng, 2 + t % 4, 3 + t % 6);
    const std::size_t n = k.ambient_dim();
    const auto& g = k.generators();
    const auto& h = k.halfspaces();
    Cone both = from_matching_sides(g, h, n);

    std::vector<Cone> others;
    others.push_back(Cone::from_halfspaces(h.inequalities, h.equations, n));
    others.push_back(Cone::from_generators(g.rays, g.lineality, n));
    if (!h.inequalities.empty()) {
      std::vector<Vector> fewer(h.inequalities.begin() + 1, h.inequalities.end());
      others.push_back(Cone::from_halfspaces(fewer, h.equations, n));
    }
    Vector extra;
    for (std::size_t i = 0; i < n; ++i) extra.emplace_back(e(rng));
    others.push_back(Cone::from_generators(concat_for_test(g.rays, extra), g.lineality, n));
    others.push_back(Cone::from_halfspaces(concat_for_test(h.inequalities, extra), h.equations, n));

    for (const auto& o : others) {
      // a second copy of `o`, converted independently, supplies the reference answer
      Cone reference = o.given_generators() ? Cone::from_generators(o.given_generators()->rays,
                                                                    o.given_generators()->lineality, n)
                                            : Cone::from_halfspaces(o.given_halfspaces()->inequalities,
                                                                    o.given_halfspaces()->equations, n);
      bool expected = reference.canonical() == k.canonical();
      CHECK(equals(o, both) == expected);
      CHECK(equals(both, o) == expected);
    }
  }
}
