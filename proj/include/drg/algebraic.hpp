#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "drg/arith.hpp"
#include "drg/interval.hpp"
#include "drg/polynomial.hpp"

namespace drg {

/// p + q*sqrt(d) with d square-free.  Rational values carry q = 0, d = 0.
/// Values over the same radicand (or rational values) form a field; mixing
/// two different radicands throws std::domain_error.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const BigRational& rational) : p_(rational) {}  // NOLINT(google-explicit-constructor)
  /// Normalizes radicand = s^2 * d, folding s into q.
  QuadraticNumber(BigRational p, BigRational q, const BigInt& radicand);

  const BigRational& rational_part() const { return p_; }
  const BigRational& radical_coefficient() const { return q_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }

  QuadraticNumber conjugate() const;
  /// (p + q sqrt d)(p - q sqrt d) = p^2 - q^2 d
  BigRational norm() const { return p_ * p_ - q_ * q_ * d_; }
  int sign() const;

  Interval enclose(unsigned bits) const;
  /// x - p for rationals, otherwise the primitive integer quadratic.
  Polynomial minimal_polynomial() const;
  double approx() const;
  std::string to_string() const;

  friend QuadraticNumber operator+(const QuadraticNumber& a, const QuadraticNumber& b);
  friend QuadraticNumber operator-(const QuadraticNumber& a, const QuadraticNumber& b);
  friend QuadraticNumber operator*(const QuadraticNumber& a, const QuadraticNumber& b);
  friend QuadraticNumber operator/(const QuadraticNumber& a, const QuadraticNumber& b);
  QuadraticNumber operator-() const { return from_normalized(-p_, -q_, d_); }
  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_;
  }

 private:
  static BigInt common_radicand(const QuadraticNumber& a, const QuadraticNumber& b);
  /// Skips normalization: d must already be square-free (or q zero).
  static QuadraticNumber from_normalized(BigRational p, BigRational q, const BigInt& d);

  BigRational p_{0};
  BigRational q_{0};
  BigInt d_{0};
};

/// A real root of an integer polynomial with no rational roots, pinned by an
/// open interval (lo, hi) on which the polynomial changes sign exactly once.
class IsolatedRoot {
 public:
  /// Validates the sign change; throws std::invalid_argument otherwise.
  IsolatedRoot(Polynomial poly, BigRational lo, BigRational hi);

  const Polynomial& polynomial() const { return poly_; }
  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  BigRational width() const { return hi_ - lo_; }

  IsolatedRoot bisected() const;
  /// Bisects until width <= 2^-bits.
  IsolatedRoot refined(unsigned bits) const;
  Interval enclose(unsigned bits) const;
  double approx() const;

 private:
  IsolatedRoot(Polynomial poly, BigRational lo, BigRational hi, int sign_lo);

  Polynomial poly_;
  BigRational lo_;
  BigRational hi_;
  int sign_lo_ = 0;
};

enum class AlgebraicKind { Rational, Quadratic, Isolated };

/// Exact real algebraic number.  Comparisons never consult floating point.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : value_(BigRational(0)) {}
  AlgebraicNumber(const BigRational& r) : value_(r) {}  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(long r) : value_(BigRational(r)) {}   // NOLINT(google-explicit-constructor)
  /// Quadratic numbers with q = 0 are stored as rationals.
  AlgebraicNumber(const QuadraticNumber& q);  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(IsolatedRoot r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)

  AlgebraicKind kind() const { return static_cast<AlgebraicKind>(value_.index()); }
  bool is_rational() const { return kind() == AlgebraicKind::Rational; }
  const BigRational& as_rational() const { return std::get<BigRational>(value_); }
  /// Rational or quadratic values as a QuadraticNumber; nullopt for isolated roots.
  std::optional<QuadraticNumber> as_quadratic() const;
  const IsolatedRoot* as_isolated() const { return std::get_if<IsolatedRoot>(&value_); }

  /// Integer polynomial (content 1) vanishing at this number, of degree 1
  /// for rationals, 2 for quadratics.
  Polynomial defining_polynomial() const;

  int sign() const;
  Interval enclose(unsigned bits) const;
  double approx() const;
  std::string to_string() const;

  friend std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend std::strong_ordering operator<=>(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return compare(a, b);
  }
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }

 private:
  std::variant<BigRational, QuadraticNumber, IsolatedRoot> value_;
};

/// Exact sign of poly(theta).
int sign_at(const Polynomial& poly, const AlgebraicNumber& theta);

/// Distinct real roots of poly, descending.  Rational roots come back as
/// rationals, roots of quadratic factors as QuadraticNumbers, the rest as
/// IsolatedRoots narrowed to width <= 2^-80.  Throws std::invalid_argument
/// for the zero polynomial.
std::vector<AlgebraicNumber> isolate_real_roots(const Polynomial& poly);

/// Roots of x^2 - s x + p, larger first.  Throws std::domain_error when the
/// discriminant is negative.
std::pair<AlgebraicNumber, AlgebraicNumber> quadratic_roots(const BigRational& s, const BigRational& p);

/// A value P(theta) for a rational polynomial P at a fixed algebraic theta.
/// Closed under +, -, * at the same theta; the sign is always exact.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const AlgebraicNumber> theta, Polynomial expr);
  static FieldElement constant(std::shared_ptr<const AlgebraicNumber> theta, const BigRational& c);

  const AlgebraicNumber& theta() const { return *theta_; }
  const Polynomial& expression() const { return expr_; }

  /// Exact value when theta is rational or quadratic.
  std::optional<QuadraticNumber> exact() const;
  int sign() const;
  Interval enclose(unsigned bits) const;
  double approx() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const BigRational& c, const FieldElement& a);

 private:
  static void require_same(const FieldElement& a, const FieldElement& b);

  std::shared_ptr<const AlgebraicNumber> theta_;
  Polynomial expr_;
};

}  // namespace drg
