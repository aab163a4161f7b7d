#include "kmflag/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace kmflag {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<int64_t>::max();
constexpr i128 kMin = -kMax;  // INT64_MIN excluded so negation never overflows

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v >= kMin && v <= kMax; }

mpq_class make_mpq(int64_t n, int64_t d) {
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), n);
  mpz_set_si(q.get_den_mpz_t(), d);
  return q;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(abs128(nn), abs128(dd));
  nn /= static_cast<i128>(g);
  dd /= static_cast<i128>(g);
  if (fits(nn) && fits(dd)) {
    num_ = static_cast<int64_t>(nn);
    den_ = static_cast<int64_t>(dd);
  } else {
    assign_big(make_mpq(n, d));
  }
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  q.canonicalize();
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    long n = mpz_get_si(q.get_num_mpz_t());
    long d = mpz_get_si(q.get_den_mpz_t());
    if (n != std::numeric_limits<long>::min()) {
      num_ = n;
      den_ = d;
      big_.reset();
      return;
    }
  }
  big_ = std::make_unique<mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

bool Rational::is_integer() const {
  if (big_) return mpz_cmp_ui(big_->get_den_mpz_t(), 1) == 0;
  return den_ == 1;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const { return big_ ? *big_ : make_mpq(num_, den_); }

int64_t Rational::to_int64() const {
  if (big_ || den_ != 1) throw std::overflow_error("Rational is not a machine integer: " + to_string());
  return num_;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      i128 s = static_cast<i128>(num_) + o.num_;
      if (fits(s)) {
        num_ = static_cast<int64_t>(s);
        return *this;
      }
    } else {
      u128 g = gcd128(static_cast<u128>(den_), static_cast<u128>(o.den_));
      i128 bd = den_ / static_cast<int64_t>(g);
      i128 dd = o.den_ / static_cast<int64_t>(g);
      i128 n = static_cast<i128>(num_) * dd + static_cast<i128>(o.num_) * bd;
      i128 d = bd * o.den_;
      u128 g2 = gcd128(abs128(n), static_cast<u128>(d));
      if (g2 > 1) {
        n /= static_cast<i128>(g2);
        d /= static_cast<i128>(g2);
      }
      if (n == 0) d = 1;
      if (fits(n) && fits(d)) {
        num_ = static_cast<int64_t>(n);
        den_ = static_cast<int64_t>(d);
        return *this;
      }
    }
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    u128 g1 = gcd128(abs128(num_), static_cast<u128>(o.den_));
    u128 g2 = gcd128(abs128(o.num_), static_cast<u128>(den_));
    i128 n = static_cast<i128>(num_ / static_cast<int64_t>(g1)) * (o.num_ / static_cast<int64_t>(g2));
    i128 d = static_cast<i128>(den_ / static_cast<int64_t>(g2)) * (o.den_ / static_cast<int64_t>(g1));
    if (fits(n) && fits(d)) {
      num_ = static_cast<int64_t>(n);
      den_ = static_cast<int64_t>(d);
      return *this;
    }
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this *= inv;
  }
  assign_big(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: big values never fit in a machine word
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace kmflag
