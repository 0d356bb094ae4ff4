#include "drg/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace drg {

Polynomial::Polynomial(std::vector<BigRational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> ascending) {
  for (long c : ascending) coeffs_.emplace_back(c);
  trim();
}

Polynomial Polynomial::constant(const BigRational& c) { return Polynomial(std::vector<BigRational>{c}); }

Polynomial Polynomial::x() { return Polynomial({0L, 1L}); }

Polynomial Polynomial::linear_factor(const BigRational& root) {
  return Polynomial(std::vector<BigRational>{-root, BigRational(1)});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigRational& Polynomial::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

BigRational Polynomial::evaluate(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Interval Polynomial::evaluate(const Interval& x, unsigned round_bits) const {
  Interval acc(BigRational(0));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + Interval(*it);
    if (round_bits != 0) acc = acc.rounded_outward(round_bits);
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<BigRational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  BigRational lead = leading();
  std::vector<BigRational> c;
  c.reserve(coeffs_.size());
  for (const auto& v : coeffs_) c.push_back(v / lead);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  BigInt lcm_den = 1;
  for (const auto& v : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<BigInt> ints;
  BigInt content = 0;
  for (const auto& v : coeffs_) {
    BigInt n = v.get_num() * (lcm_den / v.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  if (ints.back() < 0) content = -content;
  std::vector<BigRational> c;
  for (const auto& n : ints) c.emplace_back(BigInt(n / content));
  return Polynomial(std::move(c));
}

std::vector<BigInt> Polynomial::integer_coefficients() const {
  std::vector<BigInt> out;
  for (const auto& v : coeffs_) {
    if (!is_integer(v)) throw std::domain_error("polynomial has non-integral coefficients");
    out.push_back(v.get_num());
  }
  return out;
}

Polynomial Polynomial::square_free_part() const {
  if (degree() <= 0) return primitive();
  Polynomial g = gcd(*this, derivative());
  return divmod(*this, g).first.primitive();
}

Polynomial Polynomial::operator-() const {
  std::vector<BigRational> c;
  for (const auto& v : coeffs_) c.push_back(-v);
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<BigRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) c[i] += b.coeffs_[i];
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const BigRational& c, const Polynomial& p) { return Polynomial::constant(c) * p; }

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<BigRational> rem = a.coeffs_;
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {Polynomial(), a};
  std::vector<BigRational> quo(static_cast<std::size_t>(dq) + 1);
  const BigRational& lead = b.leading();
  for (int i = dq; i >= 0; --i) {
    BigRational f = rem[static_cast<std::size_t>(i + db)] / lead;
    quo[static_cast<std::size_t>(i)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    // Keep coefficient growth in check.
    y = r.is_zero() ? r : r.primitive();
  }
  return x.monic();
}

std::string Polynomial::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigRational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigRational mag = drg::abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << drg::to_string(mag);
    if (i >= 1) out << var;
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    Polynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern intact.
    BigRational lead = drg::abs(r.leading());
    chain_.push_back(-(BigRational(1) / lead * r));
  }
}

int SturmSequence::sign_changes_at(const BigRational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count_roots(const BigRational& lo, const BigRational& hi) const {
  return sign_changes_at(lo) - sign_changes_at(hi);
}

BigRational cauchy_root_bound(const Polynomial& p) {
  if (p.degree() < 1) return 1;
  BigRational lead = drg::abs(p.leading());
  BigRational best = 0;
  for (int i = 0; i < p.degree(); ++i) {
    BigRational r = drg::abs(p.coeff(i)) / lead;
    if (r > best) best = r;
  }
  return best + 1;
}

}  // namespace drg
