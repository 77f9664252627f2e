#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>

namespace conelab {

/// Exact rational number. Values whose numerator and denominator fit in 64
/// bits are kept inline; anything larger moves to a heap mpq_class and moves
/// back once it fits again.
class Rational {
 public:
  Rational() = default;
  Rational(long value) {  // NOLINT(google-explicit-constructor)
    if (value == std::numeric_limits<long>::min()) {
      assign(mpq_class(value));
    } else {
      num_ = value;
    }
  }
  Rational(long num, long den);
  Rational(const mpq_class& value) { assign(value); }  // NOLINT(google-explicit-constructor)

  Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other) {
    if (this != &other) {
      num_ = other.num_;
      den_ = other.den_;
      big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_small() const { return !big_; }
  /// Inline numerator and denominator; meaningful only when is_small().
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

  mpq_class to_mpq() const;
  std::string to_string() const;
  double to_double() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_ && den_ == 1 && rhs.den_ == 1 && fits(num_, rhs.num_)) {
      num_ += rhs.num_;
      return *this;
    }
    return add_slow(rhs);
  }
  Rational& operator-=(const Rational& rhs) {
    if (!big_ && !rhs.big_ && den_ == 1 && rhs.den_ == 1 && fits(num_, -rhs.num_)) {
      num_ -= rhs.num_;
      return *this;
    }
    return subtract_slow(rhs);
  }
  Rational& operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_ && den_ == 1 && rhs.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(num_, rhs.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
        num_ = p;
        return *this;
      }
    }
    return multiply_slow(rhs);
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
    // Canonical storage means a small value never equals a big one.
    return lhs.big_ && rhs.big_ && *lhs.big_ == *rhs.big_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  // Inline storage never holds INT64_MIN, so negation is always safe.
  static bool fits(std::int64_t a, std::int64_t b) {
    std::int64_t s;
    return !__builtin_add_overflow(a, b, &s) && s != std::numeric_limits<std::int64_t>::min();
  }
  Rational& add_slow(const Rational& rhs);
  Rational& subtract_slow(const Rational& rhs);
  Rational& multiply_slow(const Rational& rhs);
  void assign(const mpq_class& value);
  void set_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace conelab
