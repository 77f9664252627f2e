#include "conelab/rational.hpp"

#include <limits>
#include <stdexcept>

namespace conelab {

namespace {

using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 magnitude(__int128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(__int128 x) {
  u128 m = magnitude(x);
  mpz_class hi(static_cast<unsigned long>(m >> 64));
  mpz_class r = hi << 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(m));
  return x < 0 ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  set_wide(num, den);
}

void Rational::assign(const mpq_class& value) {
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(value);
    num_ = 0;
    den_ = 1;
  }
}

void Rational::set_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  u128 mag = magnitude(num);
  u128 g = (mag >> 64) == 0 && (static_cast<u128>(den) >> 64) == 0
               ? gcd64(static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(den))
               : gcd128(mag, static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (magnitude(num) <= static_cast<u128>(kMax) && static_cast<u128>(den) <= static_cast<u128>(kMax)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  big_ = std::make_unique<mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::add_slow(const Rational& rhs) {
  if (big_ || rhs.big_) {
    assign(to_mpq() + rhs.to_mpq());
    return *this;
  }
  if (den_ == 1 && rhs.den_ == 1) {
    std::int64_t s;
    if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
      num_ = s;
      return *this;
    }
  }
  set_wide(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
           static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::subtract_slow(const Rational& rhs) {
  if (big_ || rhs.big_) {
    assign(to_mpq() - rhs.to_mpq());
    return *this;
  }
  if (den_ == 1 && rhs.den_ == 1) {
    std::int64_t s;
    if (!__builtin_sub_overflow(num_, rhs.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
      num_ = s;
      return *this;
    }
  }
  set_wide(static_cast<__int128>(num_) * rhs.den_ - static_cast<__int128>(rhs.num_) * den_,
           static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::multiply_slow(const Rational& rhs) {
  if (big_ || rhs.big_) {
    assign(to_mpq() * rhs.to_mpq());
    return *this;
  }
  if (num_ == 0 || rhs.num_ == 0) {
    num_ = 0;
    den_ = 1;
    return *this;
  }
  if (den_ == 1 && rhs.den_ == 1) {
    std::int64_t p;
    if (!__builtin_mul_overflow(num_, rhs.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
      num_ = p;
      return *this;
    }
  }
  // Cross-cancel first so the product is already in lowest terms.
  std::uint64_t g1 = gcd64(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_),
                           static_cast<std::uint64_t>(rhs.den_));
  std::uint64_t g2 = gcd64(static_cast<std::uint64_t>(rhs.num_ < 0 ? -rhs.num_ : rhs.num_),
                           static_cast<std::uint64_t>(den_));
  __int128 n = static_cast<__int128>(num_ / static_cast<std::int64_t>(g1)) *
               (rhs.num_ / static_cast<std::int64_t>(g2));
  __int128 d = static_cast<__int128>(den_ / static_cast<std::int64_t>(g2)) *
               (rhs.den_ / static_cast<std::int64_t>(g1));
  set_wide(n, d);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  if (big_ || rhs.big_) {
    assign(to_mpq() / rhs.to_mpq());
    return *this;
  }
  Rational inv;
  inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
  inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
  return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.big_ || rhs.big_) {
    int c = cmp(lhs.to_mpq(), rhs.to_mpq());
    return c <=> 0;
  }
  return static_cast<__int128>(lhs.num_) * rhs.den_ <=> static_cast<__int128>(rhs.num_) * lhs.den_;
}

}  // namespace conelab
