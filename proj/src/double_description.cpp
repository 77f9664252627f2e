#include "double_description.hpp"

#include <algorithm>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

namespace conelab::detail {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
  Vector z;
  Bits zeros;  // processed constraints this ray is tight on
};

// Rank of the constraint rows selected by `rows`.
std::size_t rank_of_rows(const std::vector<Vector>& m, const Bits& rows, std::size_t cols) {
  std::vector<Vector> selected;
  for (auto i = rows.find_first(); i != Bits::npos; i = rows.find_next(i)) selected.push_back(m[i]);
  return rank(selected, cols);
}

// Pointed case: {z in R^r : <m_i, z> >= 0} where the rows have full column rank r.
std::vector<Vector> pointed_extreme_rays(const std::vector<Vector>& m, std::size_t r) {
  const std::size_t count = m.size();

  // Greedy choice of r independent rows in the given (sorted) order.
  std::vector<std::size_t> initial;
  std::vector<Vector> chosen;
  for (std::size_t i = 0; i < count && initial.size() < r; ++i) {
    chosen.push_back(m[i]);
    if (rank(chosen, r) == chosen.size()) {
      initial.push_back(i);
    } else {
      chosen.pop_back();
    }
  }

  // Columns of the inverse of the initial block generate the initial simplicial cone.
  Matrix block(chosen, r);
  std::vector<Ray> rays;
  Bits processed(count);
  for (auto i : initial) processed.set(i);
  for (std::size_t j = 0; j < r; ++j) {
    Ray ray{normalize_ray(solve(block, unit_vector(r, j))), Bits(count)};
    for (std::size_t k = 0; k < r; ++k) {
      if (k != j) ray.zeros.set(initial[k]);
    }
    rays.push_back(std::move(ray));
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (processed.test(i)) continue;
    std::vector<Scalar> value(rays.size());
    std::vector<std::size_t> plus, minus, zero;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      value[k] = dot(m[i], rays[k].z);
      int s = value[k].sign();
      (s > 0 ? plus : s < 0 ? minus : zero).push_back(k);
    }
    if (minus.empty()) {
      for (auto k : zero) rays[k].zeros.set(i);
      processed.set(i);
      continue;
    }

    std::vector<Ray> next;
    next.reserve(plus.size() + zero.size());
    for (auto k : plus) next.push_back(rays[k]);
    for (auto k : zero) {
      rays[k].zeros.set(i);
      next.push_back(rays[k]);
    }
    for (auto p : plus) {
      for (auto q : minus) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < r) continue;
        // Cheap combinatorial filter: no third ray may be tight on all of `common`.
        bool dominated = false;
        for (std::size_t o = 0; o < rays.size() && !dominated; ++o) {
          dominated = o != p && o != q && common.is_subset_of(rays[o].zeros);
        }
        if (dominated) continue;
        if (rank_of_rows(m, common, r) + 2 != r) continue;
        Vector z = subtract(scale(rays[q].z, value[p]), scale(rays[p].z, value[q]));
        common.set(i);
        next.push_back(Ray{normalize_ray(z), std::move(common)});
      }
    }
    rays = std::move(next);
    processed.set(i);
  }

  std::vector<Vector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.z));
  return out;
}

}  // namespace

ExtremeRays extreme_rays(std::span<const Vector> inequalities, std::span<const Vector> equations,
                         std::size_t n) {
  ExtremeRays out;
  if (n == 0) return out;

  // Parametrize the solution space of the equations: x = sum_l y_l N_l.
  Matrix param = equations.empty() ? Matrix::identity(n) : orthogonal_complement(equations, n);
  const std::size_t k = param.rows();
  if (k == 0) return out;

  // Constraints in y-coordinates, deterministic order, duplicates and zero rows dropped.
  std::vector<Vector> normalized;
  for (const auto& a : inequalities) {
    if (a.size() != n) throw DimensionMismatch("inequality has wrong length");
    Vector row = param.apply(a);
    if (!is_zero(row)) normalized.push_back(normalize_ray(row));
  }
  std::sort(normalized.begin(), normalized.end(),
            [](const Vector& x, const Vector& y) { return lex_compare(x, y) < 0; });
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  auto to_ambient = [&](const Vector& y) {
    Vector x = zero_vector(n);
    for (std::size_t l = 0; l < k; ++l) {
      if (!y[l].is_zero()) x = add(x, scale(param.row(l), y[l]));
    }
    return x;
  };

  if (normalized.empty()) {
    out.lineality = param.row_vectors();
    return out;
  }

  // Lineality is ker B; the pointed part lives on the row space of B.
  RowReduction rr = row_reduce(Matrix(normalized, k));
  for (const auto& y : rr.basis_of_nullspace.row_vectors()) out.lineality.push_back(to_ambient(y));
  const Matrix& w = rr.basis_of_rowspace;
  const std::size_t r = rr.rank;

  std::vector<Vector> reduced;
  reduced.reserve(normalized.size());
  for (const auto& b : normalized) reduced.push_back(normalize_ray(w.apply(b)));

  for (const auto& z : pointed_extreme_rays(reduced, r)) {
    Vector y = zero_vector(k);
    for (std::size_t j = 0; j < r; ++j) {
      if (!z[j].is_zero()) y = add(y, scale(w.row(j), z[j]));
    }
    out.rays.push_back(normalize_ray(to_ambient(y)));
  }
  return out;
}

}  // namespace conelab::detail
