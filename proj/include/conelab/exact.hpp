#pragma once

// Exact scalars and small dense linear algebra over Q and Q(sqrt d).

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "conelab/errors.hpp"
#include "conelab/rational.hpp"

namespace conelab {

/// An element a + b*sqrt(d) of Q(sqrt d), or a plain rational when b == 0.
///
/// Values are normalized so that b == 0 always means rational mode (root() ==
/// 0). Arithmetic between two values carrying different roots throws
/// FieldOverflow; rationals combine freely with either field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& value) : a_(canonical(value)) {}  // NOLINT
  Scalar(Rational value) : a_(std::move(value)) {}  // NOLINT
  Scalar(long num, long den);

  /// a + b*sqrt(root). `root` must be a square-free integer >= 2.
  static Scalar quadratic(const mpq_class& a, const mpq_class& b, long root);
  static Scalar sqrt_of(long root) { return quadratic(0, 1, root); }

  /// Parses "p", "p/q" or a decimal literal such as "-2.5".
  static Scalar parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  long root() const { return root_; }
  bool is_rational() const { return root_ == 0; }
  bool is_zero() const { return root_ == 0 && a_.is_zero(); }

  int sign() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  double to_double() const;

  /// Canonical text: "p/q" (or "p" for integers) in rational mode,
  /// "a+b*sqrt(d)" otherwise.
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs) {
    if (root_ == 0 && rhs.root_ == 0) {
      a_ += rhs.a_;
      return *this;
    }
    return add_slow(rhs);
  }
  Scalar& operator-=(const Scalar& rhs) {
    if (root_ == 0 && rhs.root_ == 0) {
      a_ -= rhs.a_;
      return *this;
    }
    return subtract_slow(rhs);
  }
  Scalar& operator*=(const Scalar& rhs) {
    if (root_ == 0 && rhs.root_ == 0) {
      a_ *= rhs.a_;
      return *this;
    }
    return multiply_slow(rhs);
  }
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs) {
    return lhs.root_ == rhs.root_ && lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
  }
  friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

 private:
  static mpq_class canonical(mpq_class q) {
    q.canonicalize();
    return q;
  }
  Scalar& add_slow(const Scalar& rhs);
  Scalar& subtract_slow(const Scalar& rhs);
  Scalar& multiply_slow(const Scalar& rhs);
  void adopt_root(long other_root);
  void normalize();

  Rational a_;
  Rational b_;
  long root_ = 0;
};

using Vector = std::vector<Scalar>;

/// Row-major dense matrix; generators and constraint normals are stored as
/// rows throughout the library.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t cols) : cols_(cols) {}
  Matrix(std::vector<Vector> rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_.empty(); }

  const Vector& row(std::size_t i) const { return rows_[i]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

  void push_back(Vector row);
  const std::vector<Vector>& row_vectors() const { return rows_; }

  Vector apply(const Vector& x) const;
  Matrix transpose() const;
  static Matrix identity(std::size_t n);

 private:
  std::size_t cols_ = 0;
  std::vector<Vector> rows_;
};

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Scalar dot(const Vector& x, const Vector& y);
Vector add(const Vector& x, const Vector& y);
Vector subtract(const Vector& x, const Vector& y);
Vector scale(const Vector& x, const Scalar& factor);
Vector negate(const Vector& x);
bool is_zero(const Vector& x);
std::vector<double> to_doubles(const Vector& x);

/// Lexicographic comparison by exact value.
std::strong_ordering lex_compare(const Vector& x, const Vector& y);

/// Positive rescaling to a canonical representative of the ray through x:
/// a primitive integer vector for rational input, otherwise the first nonzero
/// entry becomes +1 or -1.
Vector normalize_ray(const Vector& x);

/// Canonical representative of the line through x: normalize_ray with the
/// first nonzero entry made positive.
Vector normalize_line(const Vector& x);

struct RowReduction {
  std::size_t rank = 0;
  Matrix basis_of_rowspace;         // reduced row echelon form, nonzero rows
  Matrix basis_of_nullspace;        // one row per free column
  std::vector<std::size_t> pivots;  // pivot column of each rowspace row
};

RowReduction row_reduce(const Matrix& m);
std::size_t rank(std::span<const Vector> rows, std::size_t cols);

/// Basis of span(S) in reduced row echelon form (canonical for the subspace).
Matrix span_basis(std::span<const Vector> vectors, std::size_t n);

/// Basis of the orthogonal complement of span(S).
Matrix orthogonal_complement(std::span<const Vector> vectors, std::size_t n);

/// Orthogonal projection of x onto span(basis); basis rows must be independent.
Vector project_onto_span(const Vector& x, const Matrix& basis);

/// Coordinates c with sum_j c_j * basis_j == x, for x in the span of a basis in
/// reduced row echelon form. Throws NotMember when x is outside the span.
Vector chart_coordinates(const Vector& x, const Matrix& rref_basis);

/// Solves the square system A x = b; throws std::domain_error when singular.
Vector solve(const Matrix& a, const Vector& b);

/// Reduces x modulo span(rref_basis) so that it vanishes on the pivot columns.
Vector reduce_modulo(const Vector& x, const Matrix& rref_basis,
                     std::span<const std::size_t> pivots);

}  // namespace conelab
