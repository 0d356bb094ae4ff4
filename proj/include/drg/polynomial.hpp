#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "drg/arith.hpp"
#include "drg/interval.hpp"

namespace drg {

/// Univariate polynomial over Q, coefficients stored lowest degree first,
/// with no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRational> ascending);
  Polynomial(std::initializer_list<long> ascending);

  static Polynomial constant(const BigRational& c);
  static Polynomial x();
  /// x - root
  static Polynomial linear_factor(const BigRational& root);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  BigRational coeff(int i) const;
  const BigRational& leading() const;
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

  BigRational evaluate(const BigRational& x) const;
  int sign_at(const BigRational& x) const { return sgn(evaluate(x)); }
  Interval evaluate(const Interval& x, unsigned round_bits = 0) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Integer coefficients with content 1 and positive leading coefficient.
  Polynomial primitive() const;
  /// p / gcd(p, p'), made primitive.
  Polynomial square_free_part() const;
  /// Integer coefficients of primitive(); only meaningful on integral polys.
  std::vector<BigInt> integer_coefficients() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const BigRational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder; throws std::domain_error on division by zero.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd (zero when both are zero).
  friend Polynomial gcd(const Polynomial& a, const Polynomial& b);

  std::string to_string(const char* var = "x") const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

/// Sturm chain of a square-free polynomial; counts distinct real roots.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);

  int sign_changes_at(const BigRational& x) const;
  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count_roots(const BigRational& lo, const BigRational& hi) const;
  const Polynomial& base() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

/// Every real root of p has absolute value strictly below this bound.
BigRational cauchy_root_bound(const Polynomial& p);

}  // namespace drg
