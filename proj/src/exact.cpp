#include "conelab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace conelab {

namespace {

bool is_square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

// Integer-only version of the rational branch of normalize_ray; gives up on overflow.
std::optional<Vector> normalize_small(const Vector& x) {
  std::int64_t l = 1;
  for (const auto& v : x) {
    const Rational& q = v.rational_part();
    if (!q.is_small()) return std::nullopt;
    std::int64_t d = q.denominator();
    std::int64_t step = l / std::gcd(l, d);
    if (__builtin_mul_overflow(step, d, &l)) return std::nullopt;
  }
  std::int64_t g = 0;
  std::vector<std::int64_t> nums;
  nums.reserve(x.size());
  for (const auto& v : x) {
    const Rational& q = v.rational_part();
    std::int64_t num;
    if (__builtin_mul_overflow(q.numerator(), l / q.denominator(), &num)) return std::nullopt;
    if (num == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
    nums.push_back(num);
    g = std::gcd(g, num < 0 ? -num : num);
  }
  Vector r;
  r.reserve(x.size());
  for (auto num : nums) r.emplace_back(static_cast<long>(num / g));
  return r;
}

}  // namespace

Scalar::Scalar(long num, long den) : a_(num, den) {}

Scalar Scalar::quadratic(const mpq_class& a, const mpq_class& b, long root) {
  if (!is_square_free(root)) {
    throw std::invalid_argument("sqrt root must be a square-free integer >= 2, got " +
                                std::to_string(root));
  }
  Scalar s;
  s.a_ = canonical(a);
  s.b_ = canonical(b);
  s.root_ = root;
  s.normalize();
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Decimal literal: exact value of the digits as written.
    bool negative = s[0] == '-';
    std::string body = s.substr(negative || s[0] == '+' ? 1 : 0);
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed decimal literal '" + s + "'");
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    return Scalar(mpq_class(negative ? mpz_class(-num) : num, den));
  }
  if (s.find_first_not_of("0123456789/-+") != std::string::npos) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  mpq_class q;
  if (s[0] == '+') s.erase(0, 1);
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  return Scalar(q);
}

void Scalar::normalize() {
  if (root_ != 0 && b_.is_zero()) root_ = 0;
}

void Scalar::adopt_root(long other_root) {
  if (other_root == 0 || other_root == root_) return;
  if (root_ != 0) {
    throw FieldOverflow("mixed surds sqrt(" + std::to_string(root_) + ") and sqrt(" +
                        std::to_string(other_root) + ") in one computation");
  }
  root_ = other_root;
}

int Scalar::sign() const {
  int sa = a_.sign();
  if (root_ == 0) return sa;
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d; equality is impossible for irrational sqrt d.
  Rational a2 = a_ * a_;
  Rational b2d = b_ * b_ * Rational(root_);
  return a2 > b2d ? sa : sb;
}

double Scalar::to_double() const {
  if (root_ == 0) return a_.to_double();
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(root_));
}

std::string Scalar::to_string() const {
  if (root_ == 0) return a_.to_string();
  std::ostringstream out;
  out << a_.to_string() << (b_.sign() < 0 ? "-" : "+") << (b_.sign() < 0 ? -b_ : b_).to_string() << "*sqrt("
      << root_ << ")";
  return out.str();
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.a_ = -a_;
  if (root_ != 0) r.b_ = -b_;
  r.root_ = root_;
  return r;
}

Scalar& Scalar::add_slow(const Scalar& rhs) {
  a_ += rhs.a_;
  if (rhs.root_ != 0) {
    adopt_root(rhs.root_);
    b_ += rhs.b_;
  }
  normalize();
  return *this;
}

Scalar& Scalar::subtract_slow(const Scalar& rhs) {
  a_ -= rhs.a_;
  if (rhs.root_ != 0) {
    adopt_root(rhs.root_);
    b_ -= rhs.b_;
  }
  normalize();
  return *this;
}

Scalar& Scalar::multiply_slow(const Scalar& rhs) {
  if (rhs.root_ == 0) {
    a_ *= rhs.a_;
    if (root_ != 0) b_ *= rhs.a_;
    normalize();
    return *this;
  }
  adopt_root(rhs.root_);
  // (a + b r)(c + e r) = (ac + be d) + (ae + bc) r
  Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(root_);
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  if (rhs.root_ == 0) {
    a_ /= rhs.a_;
    if (root_ != 0) b_ /= rhs.a_;
    normalize();
    return *this;
  }
  adopt_root(rhs.root_);
  // 1/(c + e r) = (c - e r)/(c^2 - e^2 d)
  Rational norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * Rational(rhs.root_);
  Scalar conj;
  conj.a_ = rhs.a_ / norm;
  conj.b_ = -rhs.b_ / norm;
  conj.root_ = rhs.root_;
  return *this *= conj;
}

std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.root_ == 0 && rhs.root_ == 0) return lhs.a_ <=> rhs.a_;
  int s = (lhs - rhs).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::vector<Vector> rows, std::size_t cols) : cols_(cols), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw DimensionMismatch("matrix row has wrong length");
  }
}

void Matrix::push_back(Vector row) {
  if (row.size() != cols_) throw DimensionMismatch("matrix row has wrong length");
  rows_.push_back(std::move(row));
}

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vector y;
  y.reserve(rows_.size());
  for (const auto& r : rows_) y.push_back(dot(r, x));
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(rows_.size());
  for (std::size_t j = 0; j < cols_; ++j) {
    Vector col;
    col.reserve(rows_.size());
    for (const auto& r : rows_) col.push_back(r[j]);
    t.push_back(std::move(col));
  }
  return t;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.push_back(unit_vector(n, i));
  return m;
}

// ---------------------------------------------------------------- vectors

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

Scalar dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot product of vectors of different length");
  Scalar s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero() || y[i].is_zero()) continue;
    s += x[i] * y[i];
  }
  return s;
}

Vector add(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector sum of different lengths");
  Vector r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vector subtract(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector difference of different lengths");
  Vector r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vector scale(const Vector& x, const Scalar& factor) {
  Vector r = x;
  for (auto& v : r) v *= factor;
  return r;
}

Vector negate(const Vector& x) {
  Vector r = x;
  for (auto& v : r) v = -v;
  return r;
}

bool is_zero(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v.is_zero(); });
}

std::vector<double> to_doubles(const Vector& x) {
  std::vector<double> r;
  r.reserve(x.size());
  for (const auto& v : x) r.push_back(v.to_double());
  return r;
}

std::strong_ordering lex_compare(const Vector& x, const Vector& y) {
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return x.size() <=> y.size();
}

Vector normalize_ray(const Vector& x) {
  auto first = std::find_if(x.begin(), x.end(), [](const Scalar& v) { return !v.is_zero(); });
  if (first == x.end()) return x;
  bool rational = std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v.is_rational(); });
  if (!rational) return scale(x, Scalar(1) / first->abs());
  if (auto small = normalize_small(x)) return *small;
  mpz_class l = 1;
  for (const auto& v : x) {
    mpq_class q = v.rational_part().to_mpq();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& v : x) {
    mpq_class q = v.rational_part().to_mpq();
    mpz_class num = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  mpq_class q(l, g);
  q.canonicalize();
  Rational factor(q);
  Vector r;
  r.reserve(x.size());
  for (const auto& v : x) r.emplace_back(v.rational_part() * factor);
  return r;
}

Vector normalize_line(const Vector& x) {
  Vector r = normalize_ray(x);
  auto first = std::find_if(r.begin(), r.end(), [](const Scalar& v) { return !v.is_zero(); });
  if (first != r.end() && first->sign() < 0) r = negate(r);
  return r;
}

// ---------------------------------------------------------------- elimination

RowReduction row_reduce(const Matrix& m) {
  const std::size_t cols = m.cols();
  std::vector<Vector> a = m.row_vectors();
  RowReduction out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && a[pivot][col].is_zero()) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    Scalar inv = Scalar(1) / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      Scalar f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) {
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  a.resize(row);
  out.basis_of_rowspace = Matrix(a, cols);
  out.basis_of_nullspace = Matrix(cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : out.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < out.pivots.size(); ++i) v[out.pivots[i]] = -a[i][free];
    out.basis_of_nullspace.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(std::span<const Vector> rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return row_reduce(Matrix(std::vector<Vector>(rows.begin(), rows.end()), cols)).rank;
}

Matrix span_basis(std::span<const Vector> vectors, std::size_t n) {
  if (vectors.empty()) return Matrix(n);
  return row_reduce(Matrix(std::vector<Vector>(vectors.begin(), vectors.end()), n))
      .basis_of_rowspace;
}

Matrix orthogonal_complement(std::span<const Vector> vectors, std::size_t n) {
  if (vectors.empty()) return Matrix::identity(n);
  return row_reduce(Matrix(std::vector<Vector>(vectors.begin(), vectors.end()), n))
      .basis_of_nullspace;
}

Vector solve(const Matrix& a, const Vector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionMismatch("solve needs a square system");
  std::vector<Vector> aug;
  aug.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector r = a.row(i);
    r.push_back(b[i]);
    aug.push_back(std::move(r));
  }
  RowReduction rr = row_reduce(Matrix(std::move(aug), n + 1));
  if (rr.rank != n || rr.pivots.back() != n - 1) {
    throw std::domain_error("singular linear system");
  }
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rr.basis_of_rowspace(i, n);
  return x;
}

Vector project_onto_span(const Vector& x, const Matrix& basis) {
  const std::size_t k = basis.rows();
  if (basis.cols() != x.size()) throw DimensionMismatch("projection basis has wrong length");
  if (k == 0) return zero_vector(x.size());
  Matrix gram(k);
  Vector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    Vector g(k);
    for (std::size_t j = 0; j < k; ++j) g[j] = dot(basis.row(i), basis.row(j));
    gram.push_back(std::move(g));
    rhs[i] = dot(basis.row(i), x);
  }
  Vector lambda = solve(gram, rhs);
  Vector p = zero_vector(x.size());
  for (std::size_t i = 0; i < k; ++i) p = add(p, scale(basis.row(i), lambda[i]));
  return p;
}

Vector chart_coordinates(const Vector& x, const Matrix& rref_basis) {
  if (rref_basis.cols() != x.size()) throw DimensionMismatch("chart basis has wrong length");
  RowReduction rr = row_reduce(rref_basis);
  Vector c(rref_basis.rows());
  Vector rebuilt = zero_vector(x.size());
  for (std::size_t i = 0; i < rref_basis.rows(); ++i) {
    c[i] = x[rr.pivots.at(i)];
    rebuilt = add(rebuilt, scale(rref_basis.row(i), c[i]));
  }
  if (rebuilt != x) throw NotMember("vector is not in the span of the chart basis");
  return c;
}

Vector reduce_modulo(const Vector& x, const Matrix& rref_basis,
                     std::span<const std::size_t> pivots) {
  Vector r = x;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Scalar f = r[pivots[i]];
    if (f.is_zero()) continue;
    const Vector& row = rref_basis.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!row[j].is_zero()) r[j] -= f * row[j];
    }
  }
  return r;
}

}  // namespace conelab
