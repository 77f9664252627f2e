#include "doctest.h"

#include <limits>
#include <random>

#include "conelab/exact.hpp"

using namespace conelab;

namespace {

Vector v(std::initializer_list<long> xs) {
  Vector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

bool in_span(const Vector& x, const Matrix& basis) {
  std::vector<Vector> rows = basis.row_vectors();
  std::size_t before = rank(rows, x.size());
  rows.push_back(x);
  return rank(rows, x.size()) == before;
}

}  // namespace

TEST_CASE("scalar normalization and printing") {
  CHECK(Scalar(6, -4).to_string() == "-3/2");
  CHECK(Scalar(0, 5).to_string() == "0");
  CHECK(Scalar::parse("-2.5") == Scalar(-5, 2));
  CHECK(Scalar::parse("4/6") == Scalar(2, 3));
  CHECK(Scalar::parse("7") == Scalar(7));
  CHECK_THROWS(Scalar::parse("abc"));
  CHECK_THROWS(Scalar::parse("1/0"));
}

TEST_CASE("quadratic field arithmetic is exact") {
  Scalar r7 = Scalar::sqrt_of(7);
  CHECK(r7 * r7 == Scalar(7));
  CHECK((r7 * r7).is_rational());
  Scalar x = Scalar(2) + r7;
  Scalar inv = Scalar(1) / x;
  CHECK(x * inv == Scalar(1));
  // (5 - sqrt7) > 0 and (2 - sqrt7) < 0
  CHECK((Scalar(5) - r7).sign() > 0);
  CHECK((Scalar(2) - r7).sign() < 0);
  CHECK((Scalar(3) - r7).sign() > 0);
  CHECK((Scalar(5) - r7).to_double() == doctest::Approx(5 - std::sqrt(7.0)));
  CHECK(r7 > Scalar(2));
  CHECK(r7 < Scalar(3));
}

TEST_CASE("mixed surds overflow the field") {
  CHECK_THROWS_AS(Scalar::sqrt_of(7) + Scalar::sqrt_of(2), FieldOverflow);
  CHECK_THROWS_AS(Scalar::sqrt_of(7) * Scalar::sqrt_of(2), FieldOverflow);
  CHECK_THROWS(Scalar::sqrt_of(4));
}

TEST_CASE("sign of surd expressions agrees with floating point") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coef(-50, 50);
  for (int i = 0; i < 500; ++i) {
    long a = coef(rng), b = coef(rng), d = std::vector<long>{2, 3, 5, 7}[i % 4];
    Scalar s = Scalar::quadratic(a, b, d);
    double f = a + b * std::sqrt(static_cast<double>(d));
    int expect = f > 1e-9 ? 1 : f < -1e-9 ? -1 : 0;
    CHECK(s.sign() == expect);
  }
}

TEST_CASE("row_reduce") {
  SUBCASE("identity") {
    auto r = row_reduce(Matrix::identity(3));
    CHECK(r.rank == 3);
    CHECK(r.basis_of_nullspace.rows() == 0);
  }
  SUBCASE("repeated row") {
    Matrix m({v({1, 1, 0}), v({2, 2, 0})}, 3);
    auto r = row_reduce(m);
    CHECK(r.rank == 1);
    REQUIRE(r.basis_of_nullspace.rows() == 2);
    for (const auto& z : r.basis_of_nullspace.row_vectors()) {
      CHECK(is_zero(m.apply(z)));
    }
    CHECK(in_span(v({1, -1, 0}), r.basis_of_nullspace));
    CHECK(in_span(v({0, 0, 1}), r.basis_of_nullspace));
  }
  SUBCASE("zero matrix") {
    Matrix m({v({0, 0, 0}), v({0, 0, 0})}, 3);
    auto r = row_reduce(m);
    CHECK(r.rank == 0);
    CHECK(r.basis_of_nullspace.rows() == 3);
  }
  SUBCASE("rank plus nullity on random matrices") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> e(-3, 3);
    for (int t = 0; t < 100; ++t) {
      std::size_t rows = 1 + t % 5, cols = 1 + (t / 5) % 6;
      Matrix m(cols);
      for (std::size_t i = 0; i < rows; ++i) {
        Vector row;
        for (std::size_t j = 0; j < cols; ++j) row.emplace_back(e(rng));
        m.push_back(row);
      }
      auto r = row_reduce(m);
      CHECK(r.rank + r.basis_of_nullspace.rows() == cols);
      for (const auto& z : r.basis_of_nullspace.row_vectors()) CHECK(is_zero(m.apply(z)));
      for (const auto& row : m.row_vectors()) CHECK(in_span(row, r.basis_of_rowspace));
    }
  }
}

TEST_CASE("span_basis") {
  CHECK(span_basis(std::vector<Vector>{v({1, 0}), v({2, 0})}, 2).rows() == 1);
  CHECK(span_basis(std::vector<Vector>{}, 3).rows() == 0);
  std::vector<Vector> plane{v({1, 1, 0}), v({0, 1, 1})};
  Matrix b = span_basis(plane, 3);
  CHECK(b.rows() == 2);
  for (const auto& p : plane) CHECK(in_span(p, b));
  for (const auto& q : b.row_vectors()) CHECK(in_span(q, Matrix(plane, 3)));
}

TEST_CASE("project_onto_span") {
  Matrix e12({v({1, 0, 0}), v({0, 1, 0})}, 3);
  CHECK(project_onto_span(v({1, 2, 3}), e12) == v({1, 2, 0}));
  Matrix diag({v({1, 1})}, 2);
  // Normal equations: c * <(1,1),(1,1)> = <(1,0),(1,1)>, so c = 1/2.
  CHECK(project_onto_span(v({1, 0}), diag) == Vector{Scalar(1, 2), Scalar(1, 2)});
  CHECK(project_onto_span(v({3, 3}), diag) == v({3, 3}));

  std::mt19937 rng(11);
  std::uniform_int_distribution<long> e(-4, 4);
  for (int t = 0; t < 60; ++t) {
    std::vector<Vector> gens;
    for (int k = 0; k < 1 + t % 3; ++k) gens.push_back(v({e(rng), e(rng), e(rng), e(rng)}));
    Matrix basis = span_basis(gens, 4);
    if (basis.empty()) continue;
    Vector x = v({e(rng), e(rng), e(rng), e(rng)});
    Vector p = project_onto_span(x, basis);
    CHECK(project_onto_span(p, basis) == p);
    for (const auto& l : basis.row_vectors()) CHECK(dot(subtract(x, p), l).is_zero());
  }
}

TEST_CASE("projection in Q(sqrt 2) stays in the field") {
  Scalar r2 = Scalar::sqrt_of(2);
  Matrix basis({Vector{Scalar(1), r2, Scalar(0)}}, 3);
  Vector x{Scalar(0), Scalar(1), Scalar(1)};
  Vector p = project_onto_span(x, basis);
  for (const auto& l : basis.row_vectors()) CHECK(dot(subtract(x, p), l).is_zero());
  Matrix mixed({Vector{Scalar(1), Scalar::sqrt_of(7), Scalar(0)}}, 3);
  CHECK_THROWS_AS(project_onto_span(Vector{Scalar(0), r2, Scalar(0)}, mixed), FieldOverflow);
}

TEST_CASE("normalize_ray gives primitive integer vectors") {
  CHECK(normalize_ray(Vector{Scalar(2, 3), Scalar(-4, 9)}) == v({3, -2}));
  CHECK(normalize_ray(v({0, -6, 9})) == v({0, -2, 3}));
  CHECK(normalize_line(v({0, -6, 9})) == v({0, 2, -3}));
  Scalar r7 = Scalar::sqrt_of(7);
  Vector w{Scalar(-2) * r7, Scalar(4)};
  Vector n = normalize_ray(w);
  CHECK(n[0] == Scalar(-1));
}

TEST_CASE("chart coordinates") {
  Matrix b = span_basis(std::vector<Vector>{v({1, 1, 0}), v({0, 1, 1})}, 3);
  Vector x = v({2, 5, 3});
  Vector c = chart_coordinates(x, b);
  Vector back = zero_vector(3);
  for (std::size_t j = 0; j < c.size(); ++j) back = add(back, scale(b.row(j), c[j]));
  CHECK(back == x);
  CHECK_THROWS_AS(chart_coordinates(v({1, 0, 0}), b), NotMember);
}

TEST_CASE("hybrid rationals agree with GMP across the 64-bit boundary") {
  std::mt19937_64 rng(7);
  const long big = std::numeric_limits<long>::max();
  std::vector<long> edges{0, 1, -1, 2, -2, 3, 7, -9, big, -big, big - 1, -(big - 1), big / 2, -(big / 3),
                          1L << 32, -(1L << 31), 1L << 62};
  auto pick = [&] {
    if (rng() % 3 == 0) return edges[rng() % edges.size()];
    return static_cast<long>(rng() % 2001) - 1000;
  };
  auto make = [&](mpq_class& q) {
    long num = pick();
    long den = pick();
    if (den == 0) den = 1;
    q = mpq_class(mpz_class(num), mpz_class(den));
    q.canonicalize();
    return Rational(num, den);
  };
  for (int t = 0; t < 5000; ++t) {
    mpq_class qa, qb;
    Rational a = make(qa), b = make(qb);
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
    CHECK((a * b).to_mpq() == qa * qb);
    if (sgn(qb) != 0) CHECK((a / b).to_mpq() == qa / qb);
    CHECK(((a <=> b) < 0) == (qa < qb));
    CHECK((a == b) == (qa == qb));
    CHECK(a.sign() == sgn(qa));
    CHECK((-a).to_mpq() == -qa);
    // a value that outgrew 64 bits and came back is stored inline again
    if (sgn(qb) != 0) {
      Rational round = a * b / b;
      CHECK(round == a);
      CHECK(round.is_small() == a.is_small());
    }
  }
  Rational huge = Rational(big) * Rational(big);
  CHECK_FALSE(huge.is_small());
  CHECK(huge.to_string() == mpz_class(mpz_class(big) * big).get_str());
  CHECK((huge / Rational(big)).is_small());
}

TEST_CASE("normalize_ray matches the GMP path on large entries") {
  const long big = std::numeric_limits<long>::max();
  Vector x{Scalar(big), Scalar(big - 1)};
  CHECK(normalize_ray(x) == x);
  Vector y{Scalar(Rational(1, 3)), Scalar(Rational(big, 2))};
  Vector ny = normalize_ray(y);
  // lcm of denominators is 6; the gcd of (2, 3*big) is 1
  CHECK(ny[0] == Scalar(2));
  CHECK(ny[1].rational_part().to_mpq() == mpq_class(mpz_class(big) * 3));
}
