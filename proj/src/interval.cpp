#include "drg/interval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace drg {

Interval::Interval(BigRational lo, BigRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

int Interval::certain_sign() const {
  if (lo_ > 0) return 1;
  if (hi_ < 0) return -1;
  return 0;
}

Interval Interval::rounded_outward(unsigned bits) const {
  BigInt scale = 1;
  scale <<= bits;
  BigRational lo_scaled = lo_ * scale;
  BigRational hi_scaled = hi_ * scale;
  return Interval(make_rational(floor(lo_scaled), scale), make_rational(ceil(hi_scaled), scale));
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

Interval operator*(const Interval& a, const Interval& b) {
  std::array<BigRational, 4> p{a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return Interval(*mn, *mx);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  Interval inv(BigRational(1) / b.hi_, BigRational(1) / b.lo_);
  return a * inv;
}

std::string Interval::to_string() const {
  return "[" + drg::to_string(lo_) + ", " + drg::to_string(hi_) + "]";
}

}  // namespace drg
