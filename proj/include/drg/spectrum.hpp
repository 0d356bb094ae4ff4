#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drg/algebraic.hpp"
#include "drg/intersection_array.hpp"

namespace drg {

/// Thrown when the reduced characteristic polynomial does not have D
/// distinct real roots different from k.
class SpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDiameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// det(xI - L) / (x - k) for the tridiagonal intersection matrix L; monic,
/// integer coefficients, degree D.
Polynomial reduced_char_poly(const IntersectionArray& arr);

/// k followed by the roots of reduced_char_poly, descending.
std::vector<AlgebraicNumber> eigenvalues(const IntersectionArray& arr);

using ThetaPtr = std::shared_ptr<const AlgebraicNumber>;

struct StandardSequence {
  ThetaPtr theta;
  std::vector<FieldElement> u;  // u_0..u_D
};

StandardSequence standard_sequence(const IntersectionArray& arr, ThetaPtr theta);
StandardSequence standard_sequence(const IntersectionArray& arr, const AlgebraicNumber& theta);

/// m = n / sum k_i u_i^2.  Exact when theta is rational or quadratic; for
/// higher-degree theta the value is an enclosure, while integrality is still
/// settled by an exact sign test.
struct Multiplicity {
  std::optional<QuadraticNumber> exact;
  Interval enclosure;
  bool interval_certified = false;
  bool positive = false;
  /// Set iff m is a (positive or not) integer.
  std::optional<BigInt> integer;

  bool is_positive_integer() const { return integer && *integer > 0; }
  double approx() const { return to_double(enclosure.midpoint()); }
  std::string to_string() const;
};

Multiplicity multiplicity(const IntersectionArray& arr, const StandardSequence& seq);
Multiplicity multiplicity(const IntersectionArray& arr, const AlgebraicNumber& theta);

struct SpectrumData {
  IntersectionArray array;
  DerivedParams derived;
  std::vector<ThetaPtr> theta;  // theta_0 = k > theta_1 > ... > theta_D
  std::vector<StandardSequence> sequences;
  std::vector<Multiplicity> multiplicities;

  int diameter() const { return array.diameter(); }
  bool exact() const;
};

/// Throws SpectrumError when eigenvalues are not distinct.
SpectrumData compute_spectrum(const IntersectionArray& arr);

struct KreinEntry {
  std::optional<QuadraticNumber> exact;
  Interval enclosure;
  int sign = 0;
  /// False only when an inexact entry could not be separated from zero.
  bool certified = true;
  double approx() const { return to_double(enclosure.midpoint()); }
};

/// q^k_ij = (m_i m_j / n) sum_l k_l u_l(theta_i) u_l(theta_j) u_l(theta_k).
/// Exact when every eigenvalue lies in one quadratic field (always the case
/// for Shilla arrays), interval-based otherwise.
class KreinTensor {
 public:
  KreinTensor(int diameter, std::vector<KreinEntry> entries) : d_(diameter), q_(std::move(entries)) {}
  int diameter() const { return d_; }
  /// q^k_{ij}
  const KreinEntry& at(int k, int i, int j) const {
    auto n = static_cast<std::size_t>(d_ + 1);
    return q_[(static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(j)];
  }
  /// Most negative entry, if any entry is negative.
  std::optional<std::tuple<int, int, int>> most_negative() const;

 private:
  int d_;
  std::vector<KreinEntry> q_;
};

KreinTensor krein_tensor(const SpectrumData& spec);
KreinTensor krein_tensor(const IntersectionArray& arr);

/// Diameter 3 only: q^2_11 = 0 or q^3_11 = 0.
bool q_poly_wrt_theta1(const IntersectionArray& arr);
bool q_poly_wrt_theta1(const KreinTensor& q);

}  // namespace drg
