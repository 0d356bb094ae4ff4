#include "drg/algebraic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace drg {

namespace {

constexpr unsigned kIsolationBits = 80;

BigRational pow2(int bits) {
  BigInt one = 1;
  if (bits >= 0) return BigRational(BigInt(one << static_cast<unsigned>(bits)));
  return make_rational(1, BigInt(one << static_cast<unsigned>(-bits)));
}

// Polynomial plus an interval holding exactly one of its roots, used as the
// common ground when two numbers of different kinds are compared.
struct RootBox {
  Polynomial poly;  // square-free
  BigRational lo, hi;
  std::optional<BigRational> exact;

  BigRational width() const { return hi - lo; }

  void bisect() {
    BigRational mid = (lo + hi) / 2;
    int s_mid = poly.sign_at(mid);
    if (s_mid == 0) {
      exact = mid;
      lo = hi = mid;
      return;
    }
    if (poly.sign_at(lo) * s_mid < 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
};

RootBox box_of_quadratic(const QuadraticNumber& q) {
  Polynomial f = q.minimal_polynomial();
  SturmSequence sturm(f);
  for (unsigned bits = 16;; bits *= 2) {
    Interval e = q.enclose(bits);
    // Open interval with a sign change and a single root of f.
    if (f.sign_at(e.lo()) * f.sign_at(e.hi()) < 0 && sturm.count_roots(e.lo(), e.hi()) == 1)
      return RootBox{f, e.lo(), e.hi(), std::nullopt};
  }
}

RootBox box_of(const AlgebraicNumber& a) {
  switch (a.kind()) {
    case AlgebraicKind::Rational:
      return RootBox{Polynomial::linear_factor(a.as_rational()), a.as_rational(), a.as_rational(), a.as_rational()};
    case AlgebraicKind::Quadratic:
      return box_of_quadratic(*a.as_quadratic());
    case AlgebraicKind::Isolated: {
      const IsolatedRoot* r = a.as_isolated();
      return RootBox{r->polynomial(), r->lo(), r->hi(), std::nullopt};
    }
  }
  throw std::logic_error("unreachable");
}

std::strong_ordering order_of(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Position of rational r relative to the unique root of box.poly in (lo, hi).
std::strong_ordering compare_rational_to_box(const BigRational& r, const RootBox& box) {
  if (r <= box.lo) return std::strong_ordering::less;
  if (r >= box.hi) return std::strong_ordering::greater;
  int s = box.poly.sign_at(r);
  if (s == 0) return std::strong_ordering::equal;
  // The sign on (root, hi) is the sign at hi.
  return s == box.poly.sign_at(box.hi) ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::strong_ordering compare_boxes(RootBox a, RootBox b) {
  if (a.exact && b.exact) return three_way(*a.exact, *b.exact);
  if (a.exact) return compare_rational_to_box(*a.exact, b);
  if (b.exact) return 0 <=> compare_rational_to_box(*b.exact, a);
  Polynomial g = gcd(a.poly, b.poly);
  bool may_be_equal = g.degree() >= 1;
  while (true) {
    if (a.hi <= b.lo) return std::strong_ordering::less;
    if (b.hi <= a.lo) return std::strong_ordering::greater;
    if (may_be_equal) {
      BigRational lo = std::max(a.lo, b.lo);
      BigRational hi = std::min(a.hi, b.hi);
      SturmSequence sg(g);
      int roots = sg.count_roots(lo, hi) - (g.sign_at(hi) == 0 ? 1 : 0);
      if (roots >= 1) return std::strong_ordering::equal;
      may_be_equal = false;
    }
    if (a.width() >= b.width()) {
      a.bisect();
      if (a.exact) return compare_rational_to_box(*a.exact, b);
    } else {
      b.bisect();
      if (b.exact) return 0 <=> compare_rational_to_box(*b.exact, a);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- Quadratic

QuadraticNumber::QuadraticNumber(BigRational p, BigRational q, const BigInt& radicand)
    : p_(std::move(p)), q_(std::move(q)) {
  p_.canonicalize();
  q_.canonicalize();
  if (radicand < 0) throw std::domain_error("negative radicand");
  if (q_ == 0 || radicand == 0) {
    q_ = 0;
    return;
  }
  SquareFreeSplit split = square_free_split(radicand);
  q_ *= split.square_part;
  if (split.square_free == 1) {
    p_ += q_;
    q_ = 0;
    return;
  }
  d_ = split.square_free;
}

QuadraticNumber QuadraticNumber::from_normalized(BigRational p, BigRational q, const BigInt& d) {
  QuadraticNumber r;
  r.p_ = std::move(p);
  if (q != 0) {
    r.q_ = std::move(q);
    r.d_ = d;
  }
  return r;
}

BigInt QuadraticNumber::common_radicand(const QuadraticNumber& a, const QuadraticNumber& b) {
  if (a.is_rational()) return b.d_;
  if (b.is_rational() || a.d_ == b.d_) return a.d_;
  throw std::domain_error("arithmetic between different quadratic fields");
}

QuadraticNumber QuadraticNumber::conjugate() const { return from_normalized(p_, -q_, d_); }

int QuadraticNumber::sign() const {
  int sp = sgn(p_);
  int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: compare p^2 against q^2 d.
  int s = sgn(BigRational(p_ * p_ - q_ * q_ * d_));
  return s > 0 ? sp : (s < 0 ? sq : 0);
}

Interval QuadraticNumber::enclose(unsigned bits) const {
  if (is_rational()) return Interval(p_);
  BigInt scaled = d_ << (2 * bits);
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  BigInt scale = BigInt(1) << bits;
  Interval root(make_rational(r, scale), make_rational(BigInt(r + 1), scale));
  return Interval(p_) + Interval(q_) * root;
}

Polynomial QuadraticNumber::minimal_polynomial() const {
  if (is_rational()) return Polynomial::linear_factor(p_).primitive();
  BigRational c0 = p_ * p_ - q_ * q_ * d_;
  return Polynomial(std::vector<BigRational>{c0, BigRational(-2 * p_), BigRational(1)}).primitive();
}

double QuadraticNumber::approx() const {
  Interval e = enclose(64);
  return to_double(e.midpoint());
}

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return drg::to_string(p_);
  std::ostringstream out;
  if (p_ != 0) out << drg::to_string(p_) << (q_ < 0 ? " - " : " + ");
  else if (q_ < 0) out << "-";
  BigRational mag = drg::abs(q_);
  if (mag != 1) out << drg::to_string(mag) << "*";
  out << "sqrt(" << d_.get_str() << ")";
  return out.str();
}

QuadraticNumber operator+(const QuadraticNumber& a, const QuadraticNumber& b) {
  BigInt d = QuadraticNumber::common_radicand(a, b);
  return QuadraticNumber::from_normalized(a.p_ + b.p_, a.q_ + b.q_, d);
}

QuadraticNumber operator-(const QuadraticNumber& a, const QuadraticNumber& b) {
  BigInt d = QuadraticNumber::common_radicand(a, b);
  return QuadraticNumber::from_normalized(a.p_ - b.p_, a.q_ - b.q_, d);
}

QuadraticNumber operator*(const QuadraticNumber& a, const QuadraticNumber& b) {
  BigInt d = QuadraticNumber::common_radicand(a, b);
  if (d == 0) return QuadraticNumber::from_normalized(a.p_ * b.p_, BigRational(0), d);
  return QuadraticNumber::from_normalized(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d);
}

QuadraticNumber operator/(const QuadraticNumber& a, const QuadraticNumber& b) {
  BigRational n = b.norm();
  if (n == 0) throw std::domain_error("quadratic division by zero");
  return a * QuadraticNumber::from_normalized(b.p_ / n, -b.q_ / n, b.d_);
}

// ---------------------------------------------------------------- Isolated

IsolatedRoot::IsolatedRoot(Polynomial poly, BigRational lo, BigRational hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_)) throw std::invalid_argument("isolating interval must have lo < hi");
  sign_lo_ = poly_.sign_at(lo_);
  int sign_hi = poly_.sign_at(hi_);
  if (sign_lo_ * sign_hi >= 0) throw std::invalid_argument("polynomial does not change sign on the interval");
}

IsolatedRoot::IsolatedRoot(Polynomial poly, BigRational lo, BigRational hi, int sign_lo)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)), sign_lo_(sign_lo) {}

IsolatedRoot IsolatedRoot::bisected() const {
  BigRational mid = (lo_ + hi_) / 2;
  int s = poly_.sign_at(mid);
  if (s == 0) throw std::logic_error("isolated root turned out to be rational");
  if (s == sign_lo_) return IsolatedRoot(poly_, mid, hi_, sign_lo_);
  return IsolatedRoot(poly_, lo_, mid, sign_lo_);
}

IsolatedRoot IsolatedRoot::refined(unsigned bits) const {
  BigRational target = pow2(-static_cast<int>(bits));
  IsolatedRoot r = *this;
  while (r.width() > target) r = r.bisected();
  return r;
}

Interval IsolatedRoot::enclose(unsigned bits) const {
  IsolatedRoot r = refined(bits);
  return Interval(r.lo_, r.hi_);
}

double IsolatedRoot::approx() const { return to_double(refined(60).lo_); }

// ---------------------------------------------------------------- Algebraic

AlgebraicNumber::AlgebraicNumber(const QuadraticNumber& q) {
  if (q.is_rational()) {
    value_ = q.rational_part();
  } else {
    value_ = q;
  }
}

std::optional<QuadraticNumber> AlgebraicNumber::as_quadratic() const {
  switch (kind()) {
    case AlgebraicKind::Rational:
      return QuadraticNumber(as_rational());
    case AlgebraicKind::Quadratic:
      return std::get<QuadraticNumber>(value_);
    case AlgebraicKind::Isolated:
      return std::nullopt;
  }
  return std::nullopt;
}

Polynomial AlgebraicNumber::defining_polynomial() const {
  switch (kind()) {
    case AlgebraicKind::Rational:
      return Polynomial::linear_factor(as_rational()).primitive();
    case AlgebraicKind::Quadratic:
      return std::get<QuadraticNumber>(value_).minimal_polynomial();
    case AlgebraicKind::Isolated:
      return as_isolated()->polynomial();
  }
  throw std::logic_error("unreachable");
}

int AlgebraicNumber::sign() const {
  switch (kind()) {
    case AlgebraicKind::Rational:
      return sgn(as_rational());
    case AlgebraicKind::Quadratic:
      return std::get<QuadraticNumber>(value_).sign();
    case AlgebraicKind::Isolated: {
      auto ord = compare_rational_to_box(BigRational(0), box_of(*this));
      return ord == std::strong_ordering::less ? 1 : (ord == std::strong_ordering::greater ? -1 : 0);
    }
  }
  return 0;
}

Interval AlgebraicNumber::enclose(unsigned bits) const {
  switch (kind()) {
    case AlgebraicKind::Rational:
      return Interval(as_rational());
    case AlgebraicKind::Quadratic:
      return std::get<QuadraticNumber>(value_).enclose(bits);
    case AlgebraicKind::Isolated:
      return as_isolated()->enclose(bits);
  }
  throw std::logic_error("unreachable");
}

double AlgebraicNumber::approx() const {
  switch (kind()) {
    case AlgebraicKind::Rational:
      return to_double(as_rational());
    case AlgebraicKind::Quadratic:
      return std::get<QuadraticNumber>(value_).approx();
    case AlgebraicKind::Isolated:
      return as_isolated()->approx();
  }
  return 0.0;
}

std::string AlgebraicNumber::to_string() const {
  switch (kind()) {
    case AlgebraicKind::Rational:
      return drg::to_string(as_rational());
    case AlgebraicKind::Quadratic:
      return std::get<QuadraticNumber>(value_).to_string();
    case AlgebraicKind::Isolated: {
      const IsolatedRoot* r = as_isolated();
      std::ostringstream out;
      out << "root of " << r->polynomial().to_string() << " in (" << drg::to_string(r->lo()) << ", "
          << drg::to_string(r->hi()) << ") ~ " << r->approx();
      return out.str();
    }
  }
  return {};
}

std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return three_way(a.as_rational(), b.as_rational());
  auto qa = a.as_quadratic();
  auto qb = b.as_quadratic();
  if (qa && qb && (qa->is_rational() || qb->is_rational() || qa->radicand() == qb->radicand()))
    return order_of((*qa - *qb).sign());
  return compare_boxes(box_of(a), box_of(b));
}

int sign_at(const Polynomial& poly, const AlgebraicNumber& theta) {
  if (poly.is_zero()) return 0;
  if (auto q = theta.as_quadratic()) {
    QuadraticNumber acc;
    for (int i = poly.degree(); i >= 0; --i) acc = acc * *q + QuadraticNumber(poly.coeff(i));
    return acc.sign();
  }
  const IsolatedRoot& root = *theta.as_isolated();
  Polynomial g = gcd(poly, root.polynomial());
  if (g.degree() >= 1 && g.sign_at(root.lo()) * g.sign_at(root.hi()) < 0) return 0;
  IsolatedRoot r = root;
  while (true) {
    int s = poly.evaluate(Interval(r.lo(), r.hi())).certain_sign();
    if (s != 0) return s;
    r = r.bisected();
  }
}

// ---------------------------------------------------------------- Isolation

namespace {

struct HalfOpen {
  BigRational lo, hi;  // exactly one root in (lo, hi]
};

void isolate(const SturmSequence& s, const BigRational& lo, const BigRational& hi, int count,
             std::vector<HalfOpen>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({lo, hi});
    return;
  }
  BigRational mid = (lo + hi) / 2;
  int left = s.count_roots(lo, mid);
  isolate(s, lo, mid, left, out);
  isolate(s, mid, hi, count - left, out);
}

void shrink(const SturmSequence& s, HalfOpen& box, const BigRational& width) {
  while (box.hi - box.lo > width) {
    BigRational mid = (box.lo + box.hi) / 2;
    if (s.count_roots(box.lo, mid) == 1) {
      box.hi = mid;
    } else {
      box.lo = mid;
    }
  }
}

// Integers in [lo, hi].
std::vector<BigInt> integers_in(const BigRational& lo, const BigRational& hi) {
  std::vector<BigInt> out;
  for (BigInt v = ceil(lo); v <= floor(hi); ++v) out.push_back(v);
  return out;
}

std::pair<AlgebraicNumber, AlgebraicNumber> roots_of_integer_quadratic(const BigInt& a, const BigInt& b,
                                                                      const BigInt& c) {
  // a x^2 + b x + c, a > 0: x = (-b +- sqrt(b^2 - 4ac)) / 2a
  BigInt disc = b * b - 4 * a * c;
  BigRational p = make_rational(BigInt(-b), BigInt(2 * a));
  BigRational q = make_rational(1, BigInt(2 * a));
  return {AlgebraicNumber(QuadraticNumber(p, q, disc)), AlgebraicNumber(QuadraticNumber(p, BigRational(-q), disc))};
}

}  // namespace

std::vector<AlgebraicNumber> isolate_real_roots(const Polynomial& poly) {
  if (poly.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  Polynomial sf = poly.square_free_part();
  std::vector<AlgebraicNumber> out;
  if (sf.degree() < 1) return out;

  SturmSequence sturm(sf);
  BigRational bound = cauchy_root_bound(sf);
  std::vector<HalfOpen> boxes;
  isolate(sturm, BigRational(-bound), bound, sturm.count_roots(-bound, bound), boxes);

  // Rational roots u/v have v | lead; once a box is narrower than 1/lead it
  // holds at most a couple of candidates per denominator.
  BigInt lead = sf.leading().get_num();
  std::vector<BigInt> denominators = divisors(lead);
  BigRational narrow = make_rational(BigInt(1), BigInt(2 * lead));
  Polynomial rest = sf;
  std::vector<HalfOpen> irrational;
  for (HalfOpen& box : boxes) {
    shrink(sturm, box, narrow);
    std::optional<BigRational> root;
    for (const BigInt& v : denominators) {
      for (const BigInt& u : integers_in(box.lo * v, box.hi * v)) {
        BigRational cand = make_rational(u, v);
        if (cand > box.lo && cand <= box.hi && sf.evaluate(cand) == 0) root = cand;
      }
      if (root) break;
    }
    if (root) {
      out.emplace_back(*root);
      rest = divmod(rest, Polynomial::linear_factor(*root)).first;
    } else {
      irrational.push_back(box);
    }
  }
  if (rest.degree() >= 1) rest = rest.primitive();

  if (rest.degree() == 2) {
    auto c = rest.integer_coefficients();
    if (c[1] * c[1] - 4 * c[2] * c[0] > 0) {
      auto [r1, r2] = roots_of_integer_quadratic(c[2], c[1], c[0]);
      out.push_back(std::move(r1));
      out.push_back(std::move(r2));
    }
  } else if (rest.degree() >= 3) {
    // Look for integer quadratic factors a x^2 - S x + P through pairs of
    // real roots; S and P are read off tight enclosures and confirmed by
    // exact division.
    SturmSequence rs(rest);
    BigRational rb = cauchy_root_bound(rest);
    BigInt rlead = rest.leading().get_num();
    BigRational tight = make_rational(BigInt(1), BigInt(16 * rlead * (2 * ceil(rb) + 2)));
    for (HalfOpen& box : irrational) shrink(rs, box, tight);
    std::vector<bool> used(irrational.size(), false);
    std::vector<BigInt> leads = divisors(rlead);
    for (std::size_t i = 0; i < irrational.size() && rest.degree() >= 4; ++i) {
      for (std::size_t j = i + 1; j < irrational.size() && !used[i]; ++j) {
        if (used[j]) continue;
        Interval ri(irrational[i].lo, irrational[i].hi);
        Interval rj(irrational[j].lo, irrational[j].hi);
        Interval sum = ri + rj;
        Interval prod = ri * rj;
        for (const BigInt& a : leads) {
          Interval as = Interval(BigRational(a)) * sum;
          Interval ap = Interval(BigRational(a)) * prod;
          for (const BigInt& s : integers_in(as.lo(), as.hi())) {
            for (const BigInt& p : integers_in(ap.lo(), ap.hi())) {
              Polynomial factor(std::vector<BigRational>{BigRational(p), BigRational(-s), BigRational(a)});
              auto [q, r] = divmod(rest, factor);
              if (!r.is_zero()) continue;
              auto straddles = [&](const HalfOpen& b) { return factor.sign_at(b.lo) * factor.sign_at(b.hi) < 0; };
              if (!straddles(irrational[i]) || !straddles(irrational[j])) continue;
              auto [r1, r2] = roots_of_integer_quadratic(a, BigInt(-s), p);
              out.push_back(std::move(r1));
              out.push_back(std::move(r2));
              rest = q.primitive();
              used[i] = used[j] = true;
              break;
            }
            if (used[i]) break;
          }
          if (used[i]) break;
        }
      }
    }
    if (rest.degree() == 2) {
      // The last two real roots belong to the leftover quadratic.
      auto c = rest.integer_coefficients();
      if (c[1] * c[1] - 4 * c[2] * c[0] > 0) {
        auto [r1, r2] = roots_of_integer_quadratic(c[2], c[1], c[0]);
        out.push_back(std::move(r1));
        out.push_back(std::move(r2));
      }
      std::fill(used.begin(), used.end(), true);
    }
    for (std::size_t i = 0; i < irrational.size(); ++i) {
      if (used[i]) continue;
      IsolatedRoot r(rest, irrational[i].lo, irrational[i].hi);
      out.emplace_back(r.refined(kIsolationBits));
    }
  }

  std::sort(out.begin(), out.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return b < a; });
  return out;
}

std::pair<AlgebraicNumber, AlgebraicNumber> quadratic_roots(const BigRational& s, const BigRational& p) {
  BigRational disc = s * s - 4 * p;
  if (disc < 0) throw std::domain_error("quadratic has complex roots (discriminant " + to_string(disc) + ")");
  BigRational half = s / 2;
  // sqrt(u/v) = sqrt(u v) / v
  BigInt radicand = disc.get_num() * disc.get_den();
  BigRational coef = make_rational(BigInt(1), BigInt(2 * disc.get_den()));
  return {AlgebraicNumber(QuadraticNumber(half, coef, radicand)),
          AlgebraicNumber(QuadraticNumber(half, BigRational(-coef), radicand))};
}

// ---------------------------------------------------------------- Field

FieldElement::FieldElement(std::shared_ptr<const AlgebraicNumber> theta, Polynomial expr)
    : theta_(std::move(theta)), expr_(std::move(expr)) {
  if (!theta_) throw std::invalid_argument("FieldElement without theta");
  Polynomial f = theta_->defining_polynomial();
  if (expr_.degree() >= f.degree()) expr_ = divmod(expr_, f).second;
}

FieldElement FieldElement::constant(std::shared_ptr<const AlgebraicNumber> theta, const BigRational& c) {
  return FieldElement(std::move(theta), Polynomial::constant(c));
}

void FieldElement::require_same(const FieldElement& a, const FieldElement& b) {
  if (a.theta_ != b.theta_ && !(*a.theta_ == *b.theta_))
    throw std::domain_error("field elements at different algebraic numbers");
}

std::optional<QuadraticNumber> FieldElement::exact() const {
  auto q = theta_->as_quadratic();
  if (!q) {
    if (expr_.degree() <= 0) return QuadraticNumber(expr_.coeff(0));
    return std::nullopt;
  }
  QuadraticNumber acc;
  for (int i = expr_.degree(); i >= 0; --i) acc = acc * *q + QuadraticNumber(expr_.coeff(i));
  return acc;
}

int FieldElement::sign() const { return sign_at(expr_, *theta_); }

Interval FieldElement::enclose(unsigned bits) const {
  if (auto e = exact()) return e->enclose(bits);
  Interval t = theta_->enclose(bits);
  return expr_.evaluate(t, bits + 16);
}

double FieldElement::approx() const { return to_double(enclose(64).midpoint()); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement::require_same(a, b);
  return FieldElement(a.theta_, a.expr_ + b.expr_);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement::require_same(a, b);
  return FieldElement(a.theta_, a.expr_ - b.expr_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement::require_same(a, b);
  return FieldElement(a.theta_, a.expr_ * b.expr_);
}

FieldElement operator*(const BigRational& c, const FieldElement& a) { return FieldElement(a.theta_, c * a.expr_); }

}  // namespace drg
