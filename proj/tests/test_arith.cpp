#include <random>

#include "doctest.h"
#include "drg/algebraic.hpp"

using namespace drg;

namespace {

AlgebraicNumber sqrt_of(long n) { return QuadraticNumber(0, 1, BigInt(n)); }

Polynomial random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<long> coef(-6, 6);
  int d = deg(rng);
  std::vector<BigRational> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
  if (c.back() == 0) c.back() = 1;
  return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("square-free normalization") {
  auto s = square_free_split(BigInt(72));
  CHECK(s.square_part == 6);
  CHECK(s.square_free == 2);
  CHECK(square_free_split(BigInt(1)).square_free == 1);

  // Cofactor beyond the trial-division limit: two primes above 10^6.
  BigInt p("1000003"), q("1000033");
  BigInt n = p * p * q * 7;
  auto big = square_free_split(n);
  CHECK(big.square_part == p);
  CHECK(big.square_free == q * 7);

  BigInt r("1000000007"), t("998244353");
  auto semi = square_free_split(BigInt(r * t * r * t * 3));
  CHECK(semi.square_part == r * t);
  CHECK(semi.square_free == 3);
}

TEST_CASE("divisors") {
  auto d = divisors(BigInt(108));
  std::vector<BigInt> want{1, 2, 3, 4, 6, 9, 12, 18, 27, 36, 54, 108};
  CHECK(d == want);
}

TEST_CASE("quadratic numbers") {
  QuadraticNumber a(BigRational(3, 2), BigRational(-5), BigInt(12));  // 3/2 - 10 sqrt(3)
  CHECK(a.radicand() == 3);
  CHECK(a.radical_coefficient() == -10);
  CHECK(a * a.conjugate() == QuadraticNumber(a.norm()));
  CHECK(a.norm() == BigRational(9, 4) - 300);
  CHECK((a / a) == QuadraticNumber(1));
  CHECK(QuadraticNumber(2, 3, BigInt(4)) == QuadraticNumber(8));
  CHECK_THROWS_AS(QuadraticNumber(0, 1, BigInt(2)) + QuadraticNumber(0, 1, BigInt(3)), std::domain_error);
  CHECK(QuadraticNumber(BigRational(-3), BigRational(2), BigInt(2)).sign() < 0);  // -3 + 2.83
  CHECK(QuadraticNumber(BigRational(-2), BigRational(2), BigInt(2)).sign() > 0);

  std::mt19937 rng(7);
  std::uniform_int_distribution<long> v(-20, 20);
  for (int i = 0; i < 200; ++i) {
    QuadraticNumber x(BigRational(v(rng), 3), BigRational(v(rng), 2), BigInt(5));
    CHECK(x * x.conjugate() == QuadraticNumber(x.rational_part() * x.rational_part() -
                                               x.radical_coefficient() * x.radical_coefficient() * 5));
  }
}

TEST_CASE("isolate_real_roots examples") {
  auto r = isolate_real_roots(Polynomial({-2, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].kind() == AlgebraicKind::Quadratic);
  CHECK(*r[0].as_quadratic() == QuadraticNumber(0, 1, BigInt(2)));
  CHECK(*r[1].as_quadratic() == QuadraticNumber(0, -1, BigInt(2)));

  auto s = isolate_real_roots(Polynomial({1, 1}) * Polynomial({3, 1}));
  REQUIRE(s.size() == 2);
  CHECK(s[0].is_rational());
  CHECK(s[0].as_rational() == -1);
  CHECK(s[1].as_rational() == -3);

  // Odd graph O4: reduced characteristic polynomial after removing (x-4)(x-2).
  auto o = isolate_real_roots(Polynomial({3, 4, 1}));
  REQUIRE(o.size() == 2);
  CHECK(o[0] == AlgebraicNumber(-1));
  CHECK(o[1] == AlgebraicNumber(-3));

  CHECK_THROWS_AS(isolate_real_roots(Polynomial()), std::invalid_argument);
  CHECK(isolate_real_roots(Polynomial({5})).empty());
  CHECK(isolate_real_roots(Polynomial({1, 0, 1})).empty());
}

TEST_CASE("isolation handles repeated, cubic and product-of-quadratics inputs") {
  // (x-1)^3 (x+2)
  auto rep = isolate_real_roots(Polynomial({-1, 1}) * Polynomial({-1, 1}) * Polynomial({-1, 1}) * Polynomial({2, 1}));
  REQUIRE(rep.size() == 2);
  CHECK(rep[0] == AlgebraicNumber(1));
  CHECK(rep[1] == AlgebraicNumber(-2));

  // x^3 - 3x + 1: three real irrational roots
  auto cubic = isolate_real_roots(Polynomial({1, -3, 0, 1}));
  REQUIRE(cubic.size() == 3);
  for (const auto& c : cubic) {
    REQUIRE(c.kind() == AlgebraicKind::Isolated);
    CHECK(c.as_isolated()->width() <= BigRational(1, 1) / BigRational(BigInt(1) << 80));
  }
  CHECK(cubic[0] > cubic[1]);
  CHECK(cubic[1] > cubic[2]);

  // (x^2 - 2)(x^2 - 3)(2x - 1): quadratic factors recovered
  auto mixed = isolate_real_roots(Polynomial({-2, 0, 1}) * Polynomial({-3, 0, 1}) * Polynomial({-1, 2}));
  REQUIRE(mixed.size() == 5);
  CHECK(mixed[0] == sqrt_of(3));
  CHECK(mixed[1] == sqrt_of(2));
  CHECK(mixed[2] == AlgebraicNumber(BigRational(1, 2)));
  CHECK(mixed[3].kind() == AlgebraicKind::Quadratic);
  CHECK(mixed[4].approx() == doctest::Approx(-1.7320508));
}

TEST_CASE("compare") {
  CHECK(compare(sqrt_of(2), AlgebraicNumber(BigRational(3, 2))) == std::strong_ordering::less);
  auto [t2, t3] = quadratic_roots(-5, -20);  // theta_2, theta_3 of {50,44,5;1,5,40}
  CHECK(compare(AlgebraicNumber(-7), t3) == std::strong_ordering::greater);
  CHECK(t3 > AlgebraicNumber(make_rational(-7624, 1000)));
  CHECK(t3 < AlgebraicNumber(make_rational(-7622, 1000)));
  CHECK(compare(t3, t3) == std::strong_ordering::equal);
  CHECK(compare(sqrt_of(2), sqrt_of(3)) == std::strong_ordering::less);

  // Same number through two routes: isolated root of the quartic vs sqrt(2)+sqrt(3)?
  // x^4 - 10x^2 + 1 has sqrt(2)+sqrt(3) as its largest root.
  auto quartic = isolate_real_roots(Polynomial({1, 0, -10, 0, 1}));
  REQUIRE(quartic.size() == 4);
  CHECK(quartic[0].kind() == AlgebraicKind::Isolated);
  CHECK(quartic[0].approx() == doctest::Approx(1.41421356 + 1.7320508));
  CHECK(compare(quartic[0], AlgebraicNumber(make_rational(315, 100))) == std::strong_ordering::less);
  CHECK(compare(quartic[0], sqrt_of(10)) == std::strong_ordering::less);  // 3.146 < 3.162
  CHECK(compare(quartic[0], quartic[0]) == std::strong_ordering::equal);

  // A differently-bracketed copy of the same root compares equal.
  const IsolatedRoot& iso = *quartic[0].as_isolated();
  IsolatedRoot wide(Polynomial({1, 0, -10, 0, 1}) * Polynomial({-7, 0, 1}), BigRational(3), make_rational(315, 100));
  CHECK(compare(AlgebraicNumber(wide), quartic[0]) == std::strong_ordering::equal);
  CHECK(iso.polynomial().degree() == 4);
}

TEST_CASE("quadratic_roots") {
  auto [a, b] = quadratic_roots(-7, 0);
  CHECK(a == AlgebraicNumber(0));
  CHECK(b == AlgebraicNumber(-7));
  CHECK(a.is_rational());
  auto [c, d] = quadratic_roots(-4, 3);
  CHECK(c == AlgebraicNumber(-1));
  CHECK(d == AlgebraicNumber(-3));
  auto [e, f] = quadratic_roots(0, -2);
  CHECK(e == sqrt_of(2));
  CHECK(*f.as_quadratic() == QuadraticNumber(0, -1, BigInt(2)));
  CHECK_THROWS_AS(quadratic_roots(0, 1), std::domain_error);
  auto [g, h] = quadratic_roots(BigRational(1, 3), BigRational(-1, 5));
  CHECK(g.approx() == doctest::Approx((1.0 / 3 + std::sqrt(1.0 / 9 + 0.8)) / 2));
  CHECK(h.approx() == doctest::Approx((1.0 / 3 - std::sqrt(1.0 / 9 + 0.8)) / 2));
}

TEST_CASE("property: isolated roots reproduce the square-free part") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    Polynomial p = random_poly(rng, 6);
    if (trial % 3 == 0) p = p * Polynomial({-1, 0, 1});
    if (trial % 5 == 0) p = p * random_poly(rng, 2);
    Polynomial sf = p.square_free_part();
    auto roots = isolate_real_roots(p);
    SturmSequence sturm(sf);
    BigRational bound = cauchy_root_bound(sf);
    CHECK(static_cast<int>(roots.size()) == sturm.count_roots(-bound, bound));

    Polynomial rational_product = Polynomial::constant(1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& r = roots[i];
      if (i > 0) CHECK(roots[i - 1] > r);
      CHECK(sign_at(sf, r) == 0);
      switch (r.kind()) {
        case AlgebraicKind::Rational:
          rational_product = rational_product * Polynomial::linear_factor(r.as_rational());
          break;
        case AlgebraicKind::Quadratic:
          CHECK(divmod(sf, r.defining_polynomial()).second.is_zero());
          break;
        case AlgebraicKind::Isolated: {
          const IsolatedRoot* iso = r.as_isolated();
          CHECK(divmod(sf, iso->polynomial()).second.is_zero());
          CHECK(sf.sign_at(iso->lo()) * sf.sign_at(iso->hi()) < 0);
          break;
        }
      }
    }
    CHECK(divmod(sf, rational_product).second.is_zero());
  }
}

TEST_CASE("property: compare is a total order") {
  std::mt19937 rng(99);
  std::vector<AlgebraicNumber> sample;
  std::uniform_int_distribution<long> v(-9, 9);
  for (int i = 0; i < 12; ++i) sample.emplace_back(BigRational(v(rng), 1 + (i % 3)));
  for (long d : {2L, 3L, 5L, 6L})
    for (int i = 0; i < 3; ++i) sample.emplace_back(QuadraticNumber(BigRational(v(rng), 2), BigRational(v(rng)), BigInt(d)));
  for (const auto& r : isolate_real_roots(Polynomial({1, -3, 0, 1}))) sample.push_back(r);
  for (const auto& r : isolate_real_roots(Polynomial({1, 0, -10, 0, 1}))) sample.push_back(r);
  sample.push_back(sqrt_of(2));
  sample.push_back(sqrt_of(8));

  for (const auto& a : sample) {
    for (const auto& b : sample) {
      auto ab = compare(a, b);
      auto ba = compare(b, a);
      CHECK((ab == std::strong_ordering::less) == (ba == std::strong_ordering::greater));
      CHECK((ab == std::strong_ordering::equal) == (ba == std::strong_ordering::equal));
      if (std::abs(a.approx() - b.approx()) > 1e-9)
        CHECK((ab == std::strong_ordering::less) == (a.approx() < b.approx()));
      for (const auto& c : sample)
        if (ab != std::strong_ordering::greater && compare(b, c) != std::strong_ordering::greater)
          CHECK(compare(a, c) != std::strong_ordering::greater);
    }
  }
}

TEST_CASE("sign of a polynomial at an isolated root is exact") {
  auto roots = isolate_real_roots(Polynomial({1, -3, 0, 1}));
  // x^3 - 3x + 1 itself vanishes; a multiple does too; x - r does not.
  for (const auto& r : roots) {
    CHECK(sign_at(Polynomial({1, -3, 0, 1}) * Polynomial({4, 1}), r) == 0);
    CHECK(sign_at(Polynomial({0, 1}), r) == (r.approx() > 0 ? 1 : -1));
  }
}
