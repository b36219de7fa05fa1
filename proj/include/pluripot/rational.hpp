// Exact rational arithmetic for polytope geometry. int64 numerator/denominator
// with __int128 intermediates; every narrowing is overflow-checked so geometry
// either stays exact or fails loudly.
#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "pluripot/util.hpp"

namespace pluripot {

class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ValidationError("rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  bool is_integer() const { return den_ == 1; }

  /// floor(num/den); exact for negative values too.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ValidationError("rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // both normalized
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  Rational abs() const { return num_ < 0 ? -*this : *this; }

 private:
  using i128 = __int128;

  static std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw NumericalError("rational: int64 overflow in exact arithmetic");
    return static_cast<std::int64_t>(v);
  }

  static Rational from_i128(i128 num, i128 den) {
    if (den == 0) throw ValidationError("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace pluripot
