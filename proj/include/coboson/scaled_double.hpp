#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace coboson {

// Non-negative floating value m * 2^e with the mantissa kept in [0.5, 1).
// Same relative accuracy as plain double arithmetic, but the exponent lives
// in a 64-bit integer, so products of thousands of probabilities neither
// underflow nor overflow.
class ScaledDouble {
 public:
  ScaledDouble() : m_(0.0), e_(0) {}

  explicit ScaledDouble(double value) {
    if (value < 0.0 || !std::isfinite(value)) {
      m_ = std::numeric_limits<double>::quiet_NaN();
      e_ = 0;
      return;
    }
    if (value == 0.0) {
      m_ = 0.0;
      e_ = 0;
      return;
    }
    int k = 0;
    m_ = std::frexp(value, &k);
    e_ = k;
  }

  static ScaledDouble zero() { return ScaledDouble(); }
  static ScaledDouble one() { return ScaledDouble(1.0); }

  bool is_zero() const { return m_ == 0.0; }

  // Natural log of the stored value; -inf for zero.
  double log() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(m_) + static_cast<double>(e_) * ln2_;
  }

  // Plain double conversion; underflows/overflows honestly at the double range.
  double to_double() const { return std::ldexp(m_, clamp_exp()); }

  ScaledDouble& operator+=(const ScaledDouble& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    std::int64_t d = e_ - o.e_;
    if (d >= 64) return *this;  // o is below one ulp of *this
    if (d <= -64) {
      *this = o;
      return *this;
    }
    if (d >= 0) {
      m_ += std::ldexp(o.m_, static_cast<int>(-d));
    } else {
      m_ = o.m_ + std::ldexp(m_, static_cast<int>(d));
      e_ = o.e_;
    }
    normalize();
    return *this;
  }

  ScaledDouble& operator*=(const ScaledDouble& o) {
    if (is_zero() || o.is_zero()) {
      *this = zero();
      return *this;
    }
    m_ *= o.m_;  // in [0.25, 1)
    e_ += o.e_;
    normalize();
    return *this;
  }

  ScaledDouble& operator*=(double s) { return *this *= ScaledDouble(s); }

  friend ScaledDouble operator+(ScaledDouble a, const ScaledDouble& b) {
    a += b;
    return a;
  }
  friend ScaledDouble operator*(ScaledDouble a, const ScaledDouble& b) {
    a *= b;
    return a;
  }

  // a / b as plain double; requires b != 0.
  friend double ratio(const ScaledDouble& a, const ScaledDouble& b) {
    if (a.is_zero()) return 0.0;
    return std::ldexp(a.m_ / b.m_, static_cast<int>(a.e_ - b.e_));
  }

  friend bool operator<(const ScaledDouble& a, const ScaledDouble& b) {
    if (a.is_zero() || b.is_zero()) return b.m_ > 0.0 && a.is_zero();
    if (a.e_ != b.e_) return a.e_ < b.e_;
    return a.m_ < b.m_;
  }

 private:
  void normalize() {
    int k = 0;
    m_ = std::frexp(m_, &k);
    e_ += k;
  }

  int clamp_exp() const {
    if (e_ > 2400) return 2400;
    if (e_ < -2400) return -2400;
    return static_cast<int>(e_);
  }

  static constexpr double ln2_ = 0.6931471805599453094172321214581766;

  double m_;
  std::int64_t e_;
};

}  // namespace coboson
