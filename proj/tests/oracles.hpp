#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these go through the double description code.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "conelab/cone.hpp"

namespace conelab::testing {

inline Vector v(std::initializer_list<long> xs) {
  Vector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline Cone orthant(std::size_t n) {
  std::vector<Vector> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
  Cone k = Cone::from_generators(rays, {}, n);
  k.name = "orthant" + std::to_string(n);
  return k;
}

inline Cone diamond() {
  Cone k = Cone::from_generators({v({1, 0, 1}), v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})}, {}, 3);
  k.name = "diamond";
  return k;
}

inline void for_each_subset(std::size_t count, std::size_t size,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(size);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == size) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < count; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

inline void sort_vectors(std::vector<Vector>& vs) {
  std::sort(vs.begin(), vs.end(), [](const Vector& a, const Vector& b) { return lex_compare(a, b) < 0; });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

/// Facet normals of a full-dimensional pointed cone: every hyperplane through
/// n-1 independent rays that keeps all rays on one side.
inline std::vector<Vector> brute_force_facets(const std::vector<Vector>& rays, std::size_t n) {
  std::vector<Vector> out;
  for_each_subset(rays.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vector> sub;
    for (auto i : idx) sub.push_back(rays[i]);
    RowReduction rr = row_reduce(Matrix(sub, n));
    if (rr.rank != n - 1) return;
    Vector a = rr.basis_of_nullspace.row(0);
    bool pos = true, neg = true;
    for (const auto& r : rays) {
      int s = dot(a, r).sign();
      pos = pos && s >= 0;
      neg = neg && s <= 0;
    }
    if (pos) out.push_back(normalize_ray(a));
    if (neg) out.push_back(normalize_ray(negate(a)));
  });
  sort_vectors(out);
  return out;
}

/// Whether y = A x for some x in K, by Caratheodory: y must be a nonnegative
/// combination of an independent subset of the image generators.
inline bool preimage_feasible(const Cone& k, const Matrix& a, const Vector& y) {
  const auto& g = k.given_generators() ? *k.given_generators() : k.generators();
  std::vector<Vector> images;
  for (const auto& r : g.rays) images.push_back(a.apply(r));
  for (const auto& l : g.lineality) {
    images.push_back(a.apply(l));
    images.push_back(negate(a.apply(l)));
  }
  if (is_zero(y)) return true;
  const std::size_t m = a.rows();
  bool found = false;
  for (std::size_t size = 1; size <= std::min(m, images.size()) && !found; ++size) {
    for_each_subset(images.size(), size, [&](const std::vector<std::size_t>& idx) {
      if (found) return;
      std::vector<Vector> sub;
      for (auto i : idx) sub.push_back(images[i]);
      if (rank(sub, m) != size) return;
      Matrix gram(size);
      Vector rhs;
      for (std::size_t i = 0; i < size; ++i) {
        Vector row;
        for (std::size_t j = 0; j < size; ++j) row.push_back(dot(sub[i], sub[j]));
        gram.push_back(row);
        rhs.push_back(dot(sub[i], y));
      }
      Vector c = solve(gram, rhs);
      Vector back = zero_vector(m);
      for (std::size_t i = 0; i < size; ++i) back = add(back, scale(sub[i], c[i]));
      if (back != y) return;
      found = std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.sign() >= 0; });
    });
  }
  return found;
}

/// Random polyhedral cone with small integer data: mostly generator-given,
/// sometimes with a lineality direction, sometimes halfspace-given.
inline Cone random_cone(std::mt19937& rng, std::size_t n, std::size_t max_rays) {
  std::uniform_int_distribution<long> entry(-3, 3);
  std::uniform_int_distribution<std::size_t> count(1, max_rays);
  std::uniform_int_distribution<int> kind(0, 9);
  auto random_vector = [&] {
    Vector x;
    for (std::size_t i = 0; i < n; ++i) x.emplace_back(entry(rng));
    return x;
  };
  std::vector<Vector> rays, lin;
  std::size_t c = count(rng);
  for (std::size_t i = 0; i < c; ++i) rays.push_back(random_vector());
  int k = kind(rng);
  if (k == 0) lin.push_back(random_vector());
  if (k == 1) return Cone::from_halfspaces(rays, {}, n);
  return Cone::from_generators(rays, lin, n);
}

}  // namespace conelab::testing
