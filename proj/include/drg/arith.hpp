#pragma once

#include <compare>

// Exact integer and rational scalars.  Everything above this header speaks
// BigInt / BigRational; GMP sits underneath.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace drg {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
/// Throws std::domain_error when den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

inline BigRational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

inline BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

bool is_integer(const BigRational& x);
BigInt floor(const BigRational& x);
BigInt ceil(const BigRational& x);
inline int sign(const BigRational& x) { return sgn(x); }
inline int sign(const BigInt& x) { return sgn(x); }
inline std::strong_ordering three_way(const BigRational& a, const BigRational& b) { return cmp(a, b) <=> 0; }

BigRational abs(const BigRational& x);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const BigInt& x);
std::string to_string(const BigRational& x);

/// Parses "p" or "p/q".  Throws std::invalid_argument on malformed text.
BigRational parse_rational(const std::string& text);

double to_double(const BigRational& x);

/// Exact integer square root test.
bool is_perfect_square(const BigInt& n, BigInt* root = nullptr);

/// n = square_part^2 * square_free with square_free square-free.
struct SquareFreeSplit {
  BigInt square_part;
  BigInt square_free;
};

/// Requires n >= 0.  Trial division up to 10^6, then Pollard rho on the
/// remaining cofactor.
SquareFreeSplit square_free_split(const BigInt& n);

/// Prime factorization of |n| (n != 0), ascending primes with multiplicity.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

/// Positive divisors of |n|, ascending.  n != 0.
std::vector<BigInt> divisors(const BigInt& n);

}  // namespace drg
