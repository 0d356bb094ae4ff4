#include "drg/shilla.hpp"

#include <algorithm>
#include <sstream>

namespace drg {

namespace {

BigInt Z(std::int64_t v) { return BigInt(static_cast<long>(v)); }
BigRational Q(std::int64_t v) { return BigRational(Z(v)); }

bool divides(const BigInt& d, const BigInt& n) { return d != 0 && n % d == 0; }

Check divisibility_check(const std::string& what, std::int64_t c2, const BigInt& n) {
  Check c;
  c.pass = divides(Z(c2), n);
  c.detail = "c2 = " + std::to_string(c2) + (c.pass ? " divides " : " does not divide ") + what + " = " + n.get_str();
  return c;
}

std::string str(const AlgebraicNumber& a) { return a.to_string(); }

// Standard sequence of the Shilla array at theta, exactly.
std::array<QuadraticNumber, 4> sequence_at(const ShillaParams& p, const QuadraticNumber& t) {
  QuadraticNumber u0(1);
  QuadraticNumber u1 = t / QuadraticNumber(Q(p.k()));
  QuadraticNumber u2 = ((t - QuadraticNumber(Q(p.a1()))) * u1 - u0) / QuadraticNumber(Q(p.b1()));
  QuadraticNumber u3 = ((t - QuadraticNumber(Q(p.a2()))) * u2 - QuadraticNumber(Q(p.c2)) * u1) / QuadraticNumber(Q(p.b2));
  return {u0, u1, u2, u3};
}

// Smallest integer >= every real root (at least 0).
BigInt largest_real_root_ceiling(const Polynomial& p) {
  auto roots = isolate_real_roots(p);
  if (roots.empty()) return 0;
  BigInt top = ceil(roots.front().enclose(32).hi());
  return top < 0 ? BigInt(0) : top;
}

}  // namespace

std::string to_string(const ShillaParams& p) {
  std::ostringstream out;
  out << "(b=" << p.b << ", a3=" << p.a3 << ", c2=" << p.c2 << ", b2=" << p.b2 << ")";
  return out.str();
}

std::optional<ShillaParams> shilla_params(const IntersectionArray& arr) {
  if (arr.diameter() != 3) throw UnsupportedDiameter("Shilla recognition needs diameter 3");
  std::int64_t a1 = arr.a_at(1), a3 = arr.a_at(3);
  std::int64_t b = a3 - a1;
  if (b < 2 || a1 < 0) return std::nullopt;
  ShillaParams p{b, a3, arr.c_at(2), arr.b_at(2)};
  if (arr.k() != p.k() || arr.b_at(1) != p.b1() || arr.c_at(3) != p.c3() || arr.c_at(1) != 1) return std::nullopt;
  return p;
}

IntersectionArray shilla_array(const ShillaParams& p) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidParams("invalid Shilla parameters: " + what);
  };
  need(p.b >= 2, "b >= 2");
  need(p.a3 >= p.b, "a3 >= b");
  need(p.c2 >= 1, "c2 >= 1");
  need(p.b2 >= 1, "b2 >= 1");
  IntersectionArray arr{{p.k(), p.b1(), p.b2}, {1, p.c2, p.c3()}};
  for (const auto& v : basic_conditions(arr))
    if (!v.pass) need(false, v.name + " violated at (" + v.witness->first + "," + v.witness->second + ") in " + format_array(arr));
  return arr;
}

BigRational shilla_n(const ShillaParams& p) {
  BigRational k = Q(p.k()), b1 = Q(p.b1());
  return 1 + k + k * b1 / Q(p.c2) + k * b1 * Q(p.b2) / (Q(p.c2) * Q(p.c3()));
}

BigRational shilla_m1(const ShillaParams& p) {
  BigInt b = Z(p.b), b2 = Z(p.b2), c2 = Z(p.c2), a3 = Z(p.a3);
  BigRational m = shilla_n(p) * BigRational(b * b2) / BigRational(b * b2 + a3 * b2 + (a3 + 1) * c2);
  m.canonicalize();
  return m;
}

ShillaSpectrum shilla_spectrum(const ShillaParams& p) {
  IntersectionArray arr = shilla_array(p);
  BigRational s = Q(p.a1() + p.a2() - p.k());
  BigRational prod = Q((p.b - 1) * p.b2 - p.a2());
  if (s * s - 4 * prod < 0) throw InvalidParams("complex eigenvalues for " + to_string(p));
  auto [t2, t3] = quadratic_roots(s, prod);
  Multiplicity m2 = multiplicity(arr, t2);
  Multiplicity m3 = multiplicity(arr, t3);
  return {t2, t3, shilla_m1(p), *m2.exact, *m3.exact};
}

BigInt eq2_lhs(const ShillaParams& p) {
  BigInt b = Z(p.b), a3 = Z(p.a3), c2 = Z(p.c2), b2 = Z(p.b2);
  BigInt s = b2 + c2;
  return s * (s - a3) * (s + (b - 1) * a3) - b * b2 * b2 + (2 * b - 3) * c2 * c2 + b * (b - 1) * c2 +
         (b - 1) * (b - 1) * a3 * c2 - b * (b - 1) * a3 * b2 + (b - 3) * b2 * c2;
}

std::vector<std::pair<std::string, const Check*>> ShillaConstraintReport::checks() const {
  std::vector<std::pair<std::string, const Check*>> out{{"c2-bound", &c2_bound}};
  for (std::size_t i = 0; i < divisibility.size(); ++i) out.emplace_back("divisibility-" + std::to_string(i + 1), &divisibility[i]);
  out.emplace_back("theta3-window", &theta3_window);
  out.emplace_back("krein-q311", &krein_q311);
  out.emplace_back("krein-q211", &krein_q211);
  if (qpoly_integral) out.emplace_back("qpoly-integral", &*qpoly_integral);
  if (qpoly_divisibility) out.emplace_back("qpoly-divisibility", &*qpoly_divisibility);
  if (qpoly_window) out.emplace_back("qpoly-window", &*qpoly_window);
  if (eq2_concordance) out.emplace_back("eq2-concordance", &*eq2_concordance);
  if (window_b2c2) out.emplace_back("m2m3-window-b2c2", &*window_b2c2);
  if (window_c2) out.emplace_back("m2m3-window-c2", &*window_c2);
  if (special_case) out.emplace_back("m2m3-special-case", &*special_case);
  out.emplace_back("sqrt-k-bound", &sqrt_k_bound);
  return out;
}

bool ShillaConstraintReport::arithmetic_conditions_pass() const {
  if (!c2_bound.pass) return false;
  return std::all_of(divisibility.begin(), divisibility.end(), [](const Check& c) { return c.pass; });
}

bool ShillaConstraintReport::all_pass() const {
  for (const auto& [name, c] : checks())
    if (!c->pass) return false;
  return true;
}

ShillaConstraintReport shilla_constraints(const ShillaParams& p) {
  ShillaConstraintReport r;
  r.params = p;
  r.spectrum = shilla_spectrum(p);
  const BigInt b = Z(p.b), a3 = Z(p.a3), c2 = Z(p.c2), b2 = Z(p.b2);
  const auto& t3 = r.spectrum.theta3;
  const auto& t2 = r.spectrum.theta2;

  // Lower bound on c2.
  BigRational bound = make_rational(BigInt(2 * a3 - b * b + b + 2), BigInt(b * (b + 1)));
  r.c2_bound.pass = BigRational(c2) >= bound;
  r.c2_bound.detail = "c2 = " + c2.get_str() + (r.c2_bound.pass ? " >= " : " < ") + to_string(bound);

  // Divisibility by c2.
  r.divisibility[0] = divisibility_check("(b-1) a3 b2", p.c2, BigInt((b - 1) * a3 * b2));
  r.divisibility[1] = divisibility_check("(b-1) b a3 (a3+1)", p.c2, BigInt((b - 1) * b * a3 * (a3 + 1)));
  r.divisibility[2] = divisibility_check("b (a3+1) b2", p.c2, BigInt(b * (a3 + 1) * b2));
  {
    BigInt lhs = (b + a3) * b2, rhs = (1 + a3) * c2;
    Check c = divisibility_check("(b+a3) b2", p.c2, lhs);
    bool ge = lhs >= rhs;
    c.pass = c.pass && ge;
    c.detail += "; (b+a3) b2 = " + lhs.get_str() + (ge ? " >= " : " < ") + "(1+a3) c2 = " + rhs.get_str();
    r.divisibility[3] = c;
    r.p333_zero = lhs == rhs;
  }
  r.divisibility[4] = divisibility_check("(b-1) b b2", p.c2, BigInt((b - 1) * b * b2));

  // Window for theta3.
  AlgebraicNumber lo(BigRational(-b * b)), hi(BigRational(-b));
  r.theta3_window.pass = lo < t3 && t3 < hi;
  r.theta3_window.detail = "-b^2 = " + lo.to_string() + " < theta3 = " + str(t3) + " < -b = " + hi.to_string();

  // Krein conditions.
  BigRational qbound = make_rational(BigInt(-b * (b * b2 + c2)), BigInt(b2 + c2));
  AlgebraicNumber qb(qbound);
  r.krein_q311.pass = t3 >= qb;
  r.krein_q311.detail = "theta3 = " + str(t3) + (r.krein_q311.pass ? " >= " : " < ") + to_string(qbound);
  {
    auto u1 = sequence_at(p, QuadraticNumber(Q(p.a3)));
    auto u2 = sequence_at(p, *t2.as_quadratic());
    auto ki = derive(shilla_array(p)).ki;
    QuadraticNumber sum;
    for (std::size_t l = 0; l < 4; ++l) sum = sum + QuadraticNumber(ki[l]) * u1[l] * u1[l] * u2[l];
    QuadraticNumber q211 = QuadraticNumber(r.spectrum.m1 * r.spectrum.m1 / shilla_n(p)) * sum;
    r.krein_q211.pass = q211.sign() > 0;
    r.krein_q211.detail = "q^2_11 = " + q211.to_string();
  }

  // Q-polynomial case.
  r.qpoly = t3 == qb;
  if (r.qpoly) {
    bool integral = t2.is_rational() && is_integer(t2.as_rational()) && t3.is_rational() && is_integer(t3.as_rational());
    r.qpoly_integral = Check{integral, "theta2 = " + str(t2) + ", theta3 = " + str(t3)};
    BigInt num = b * (b - 1) * b2;
    bool div = divides(BigInt(b2 + c2), num);
    r.qpoly_divisibility =
        Check{div, "b2 + c2 = " + BigInt(b2 + c2).get_str() + (div ? " divides " : " does not divide ") + num.get_str()};
    BigRational wlo(-b * b + 1), whi = make_rational(BigInt(-b * b * (b + 3)), BigInt(3 * b + 1));
    bool in = AlgebraicNumber(wlo) <= t3 && t3 <= AlgebraicNumber(whi);
    r.qpoly_window = Check{in, to_string(wlo) + " <= theta3 = " + str(t3) + " <= " + to_string(whi)};
  }

  // m2 = m3.
  r.eq2 = eq2_lhs(p);
  r.m2_eq_m3 = r.spectrum.m2 == r.spectrum.m3;
  if (r.m2_eq_m3) {
    r.eq2_concordance = Check{r.eq2 == 0, "m2 = m3 polynomial = " + r.eq2.get_str()};
    BigInt s = b2 + c2;
    bool w1 = a3 - b < s && s < a3 + b;
    r.window_b2c2 = Check{w1, "a3 - b = " + BigInt(a3 - b).get_str() + " < b2 + c2 = " + s.get_str() +
                                  " < a3 + b = " + BigInt(a3 + b).get_str()};
    bool w2 = c2 < b2 + b;
    r.window_c2 = Check{w2, "c2 = " + c2.get_str() + " < b2 + b = " + BigInt(b2 + b).get_str()};
    if (s == a3 || b2 == c2) {
      bool ok = 2 * a3 == b * (b - 1);
      r.special_case = Check{ok, "a3 = " + a3.get_str() + (ok ? " = " : " != ") + "b(b-1)/2"};
    }
  }

  const BigRational& m1 = r.spectrum.m1;
  r.sqrt_k_bound.pass = m1 > 0 && m1 * m1 > BigRational(p.k());
  r.sqrt_k_bound.detail = "m1 = " + to_string(m1) + ", k = " + std::to_string(p.k());

  r.theta3_below_regime = t3 < AlgebraicNumber(BigRational(-b * b + 2));
  return r;
}

BigInt search_bound_a3(std::int64_t b, bool assume_qpoly_handled) {
  if (b < 2) throw std::invalid_argument("search_bound_a3 needs b >= 2");
  BigInt B = Z(b);
  if (assume_qpoly_handled) {
    BigInt b4;
    mpz_pow_ui(b4.get_mpz_t(), B.get_mpz_t(), 4);
    return b4 * (B + 1) * (B + 1) - 1;
  }
  BigInt b9;
  mpz_pow_ui(b9.get_mpz_t(), B.get_mpz_t(), 9);
  return 4 * b9 - 1;
}

std::optional<IntersectionArray> family_array(std::int64_t b) {
  if (b < 4) throw std::invalid_argument("family_array needs b >= 4");
  if (b % 4 != 0 && b % 4 != 1) return std::nullopt;
  std::int64_t q = b * (b - 1) / 4;
  return IntersectionArray{{b * b * (b - 1) / 2, (b - 1) * (b * b - b + 2) / 2, q}, {1, q, b * (b - 1) * (b - 1) / 2}};
}

std::vector<ShillaParams> qpoly_integral_candidates(std::int64_t b) {
  if (b < 2) throw std::invalid_argument("Q-polynomial candidates need b >= 2");
  const BigInt B = Z(b);
  std::vector<ShillaParams> out;
  BigInt lo = -B * B + 1;
  BigInt hi = floor(make_rational(BigInt(-B * B * (B + 3)), BigInt(3 * B + 1)));
  Polynomial t = Polynomial::x();
  for (BigInt theta = lo; theta <= hi; ++theta) {
    if (theta + B == 0 || theta + B * B == 0) continue;
    BigRational ratio = make_rational(BigInt(-(theta + B)), BigInt(theta + B * B));  // b2 / c2
    if (ratio <= 0) continue;
    BigRational P(ratio.get_num()), Qd(ratio.get_den());
    BigRational th(theta);
    // a3 = theta + slope t with c2 = Q t, b2 = P t.
    BigRational slope = ((P + Qd) * th + BigRational(B) * P + Qd) / (th + BigRational(B));
    if (slope <= 0) continue;

    // m1(t) = N(t) / Den(t), both cubic in t.
    Polynomial a3 = Polynomial::constant(th) + slope * t;
    Polynomial c2 = Qd * t, b2 = P * t;
    Polynomial one = Polynomial::constant(1);
    Polynomial k = BigRational(B) * a3;
    Polynomial b1 = BigRational(B - 1) * (a3 + one);
    // n c2 = c2 + k c2 + k b1 + k b1 b2 / c3, with c3 = (b-1) a3 so k b1 b2 / c3 = b (a3+1) b2
    Polynomial nc2 = c2 + k * c2 + k * b1 + BigRational(B) * (a3 + one) * b2;
    Polynomial num = BigRational(B) * nc2 * b2;
    Polynomial den = c2 * (BigRational(B) * b2 + a3 * b2 + (a3 + one) * c2);
    auto [quo, rem] = divmod(num, den);
    BigRational limit = quo.coeff(0);  // quo is constant
    // Past the largest root of gap, |rem / den| < 1 / denominator(limit),
    // so m1 can only be an integer where rem vanishes.
    BigRational qden(limit.get_den());
    Polynomial gap = den * den - qden * qden * rem * rem;
    BigInt tmax = largest_real_root_ceiling(gap);
    if (!rem.is_zero()) tmax = std::max(tmax, largest_real_root_ceiling(rem));
    if (rem.is_zero()) throw std::logic_error("constant m1 along a Q-polynomial ray; no finite bound");
    // a3 is integral only when the slope's denominator divides t.
    BigInt step = slope.get_den();
    for (BigInt tt = step; tt <= tmax; tt += step) {
      BigRational a3v = th + slope * BigRational(tt);
      if (!is_integer(a3v)) continue;
      BigInt a3i = a3v.get_num();
      if (a3i < B) continue;
      ShillaParams p{b, a3i.get_si(), BigInt(ratio.get_den() * tt).get_si(), BigInt(ratio.get_num() * tt).get_si()};
      if (!is_integer(shilla_m1(p))) continue;
      IntersectionArray arr;
      try {
        arr = shilla_array(p);
      } catch (const InvalidParams&) {
        continue;
      }
      if (!shilla_constraints(p).qpoly) continue;
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const ShillaParams& x, const ShillaParams& y) {
    return std::tie(x.a3, x.c2, x.b2) < std::tie(y.a3, y.c2, y.b2);
  });
  return out;
}

std::vector<ShillaParams> qpoly_candidates(std::int64_t b, const ExclusionRules& rules) {
  std::vector<ShillaParams> out;
  for (const auto& p : qpoly_integral_candidates(b))
    if (feasibility_check(shilla_array(p), rules).overall != Verdict::Infeasible) out.push_back(p);
  return out;
}

}  // namespace drg
