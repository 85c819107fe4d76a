#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gamedyn {

/// Exact rational number over 64-bit integers. Always normalized:
/// denominator > 0 and gcd(|num|, den) == 1. Intermediate products use
/// 128-bit arithmetic and throw std::overflow_error if the reduced result
/// does not fit in 64 bits.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(std::int64_t n) : num_(n), den_(1) {}
  Rat(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num_ = g ? n / g : n;
    den_ = g ? d / g : d;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rat: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static Rat from128(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rat: value out of 64-bit range");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace gamedyn
