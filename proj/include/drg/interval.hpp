#pragma once

#include <string>

#include "drg/arith.hpp"

namespace drg {

/// Closed interval [lo, hi] with exact rational endpoints.  Arithmetic is
/// inclusion-monotone: the result always contains every pointwise result.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const BigRational& point) : lo_(point), hi_(point) {}
  Interval(BigRational lo, BigRational hi);

  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  /// +1 / -1 when the interval lies strictly on one side of zero, else 0.
  int certain_sign() const;

  /// Widens the endpoints outward to multiples of 2^-bits so repeated
  /// products do not grow their denominators without bound.
  Interval rounded_outward(unsigned bits) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  std::string to_string() const;

 private:
  BigRational lo_{0};
  BigRational hi_{0};
};

}  // namespace drg
