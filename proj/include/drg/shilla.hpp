#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drg/feasibility.hpp"

namespace drg {

/// (b, a3, c2, b2) with k = b a3, a1 = a3 - b, b1 = (b-1)(a3+1), c3 = (b-1)a3.
struct ShillaParams {
  std::int64_t b = 0;
  std::int64_t a3 = 0;
  std::int64_t c2 = 0;
  std::int64_t b2 = 0;

  std::int64_t k() const { return b * a3; }
  std::int64_t a1() const { return a3 - b; }
  std::int64_t b1() const { return (b - 1) * (a3 + 1); }
  std::int64_t c3() const { return (b - 1) * a3; }
  std::int64_t a2() const { return k() - b2 - c2; }

  friend bool operator==(const ShillaParams&, const ShillaParams&) = default;
  friend auto operator<=>(const ShillaParams&, const ShillaParams&) = default;
};

std::string to_string(const ShillaParams& p);

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Params iff the array is Shilla (theta_1 = a3).  Diameter 3 only.
std::optional<ShillaParams> shilla_params(const IntersectionArray& arr);

/// {b a3, (b-1)(a3+1), b2; 1, c2, (b-1) a3}.  Throws InvalidParams naming the
/// violated inequality.
IntersectionArray shilla_array(const ShillaParams& p);

struct ShillaSpectrum {
  AlgebraicNumber theta2;
  AlgebraicNumber theta3;
  BigRational m1;
  QuadraticNumber m2;
  QuadraticNumber m3;
};

/// theta2 > theta3 are the roots of x^2 - (a1 + a2 - k) x + (b-1) b2 - a2.
ShillaSpectrum shilla_spectrum(const ShillaParams& p);

/// m1 = n b b2 / (b b2 + a3 b2 + (a3+1) c2).
BigRational shilla_m1(const ShillaParams& p);
BigRational shilla_n(const ShillaParams& p);

/// The integer left-hand side whose vanishing characterizes m2 = m3.
BigInt eq2_lhs(const ShillaParams& p);

struct Check {
  bool pass = true;
  std::string detail;
};

struct ShillaConstraintReport {
  ShillaParams params;
  ShillaSpectrum spectrum;

  Check c2_bound;
  std::array<Check, 5> divisibility;
  bool p333_zero = false;
  Check theta3_window;
  Check krein_q311;                    // closed form
  Check krein_q211;                    // q^2_11 > 0
  bool qpoly = false;
  std::optional<Check> qpoly_integral;
  std::optional<Check> qpoly_divisibility;
  std::optional<Check> qpoly_window;
  BigInt eq2;                          // always reported
  bool m2_eq_m3 = false;
  std::optional<Check> eq2_concordance;
  std::optional<Check> window_b2c2;
  std::optional<Check> window_c2;
  std::optional<Check> special_case;
  Check sqrt_k_bound;                  // m1 > sqrt(k)
  bool theta3_below_regime = false;    // theta3 < -b^2 + 2

  /// c2 bound and divisibility: the arithmetic conditions used for pruning.
  bool arithmetic_conditions_pass() const;
  /// Every evaluated check.
  bool all_pass() const;
  std::vector<std::pair<std::string, const Check*>> checks() const;
};

ShillaConstraintReport shilla_constraints(const ShillaParams& p);

/// Every valid Q-polynomial Shilla parameter set for a fixed b with integral
/// m1, ordered by (a3, c2).  Finite for each b.
std::vector<ShillaParams> qpoly_integral_candidates(std::int64_t b);

/// Q-polynomial Shilla candidates for a fixed b that survive the full
/// feasibility check under the given rules, ordered by (a3, c2).
std::vector<ShillaParams> qpoly_candidates(std::int64_t b, const ExclusionRules& rules = ExclusionRules::defaults());

/// Largest a3 to scan: b^4 (b+1)^2 - 1 when Q-polynomial arrays are handled
/// separately, otherwise 4 b^9 - 1.
BigInt search_bound_a3(std::int64_t b, bool assume_qpoly_handled);

/// The m2 = m3 family; none unless b = 0 or 1 (mod 4).  Requires b >= 4.
std::optional<IntersectionArray> family_array(std::int64_t b);

}  // namespace drg
