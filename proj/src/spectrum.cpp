#include "drg/spectrum.hpp"

#include <set>
#include <sstream>

namespace drg {

namespace {

constexpr unsigned kEncloseBits = 80;
constexpr unsigned kMaxKreinBits = 1280;

FieldElement sum_of_weighted_squares(const DerivedParams& d, const StandardSequence& seq) {
  FieldElement s = FieldElement::constant(seq.theta, 0);
  for (std::size_t i = 0; i < seq.u.size(); ++i) s = s + d.ki[i] * (seq.u[i] * seq.u[i]);
  return s;
}

// The integers inside [lo, hi].
std::vector<BigInt> integers_between(const Interval& iv) {
  std::vector<BigInt> out;
  for (BigInt j = ceil(iv.lo()); j <= floor(iv.hi()) && out.size() < 3; ++j) out.push_back(j);
  return out;
}

Multiplicity multiplicity_from(const DerivedParams& d, const StandardSequence& seq) {
  FieldElement s = sum_of_weighted_squares(d, seq);
  Multiplicity m;
  if (auto e = s.exact()) {
    if (e->sign() == 0) throw std::logic_error("multiplicity defect: vanishing norm of a standard sequence");
    m.exact = QuadraticNumber(d.n) / *e;
    m.enclosure = m.exact->enclose(kEncloseBits);
    m.positive = m.exact->sign() > 0;
    if (m.exact->is_rational() && is_integer(m.exact->rational_part())) m.integer = m.exact->rational_part().get_num();
    return m;
  }

  int s_sign = s.sign();
  if (s_sign == 0) throw std::logic_error("multiplicity defect: vanishing norm of a standard sequence");
  m.interval_certified = true;
  m.positive = sgn(d.n) * s_sign > 0;
  for (unsigned bits = kEncloseBits;; bits *= 2) {
    Interval se = s.enclose(bits);
    if (se.contains_zero()) continue;
    m.enclosure = Interval(d.n) / se;
    auto ints = integers_between(m.enclosure);
    if (ints.empty()) return m;
    if (ints.size() == 1 && m.enclosure.width() < BigRational(1, 1000000000)) {
      // j S - n = 0 decides integrality exactly.
      FieldElement diff = BigRational(ints[0]) * s - FieldElement::constant(seq.theta, d.n);
      if (diff.sign() == 0) {
        m.integer = ints[0];
        return m;
      }
    }
  }
}

bool all_quadratic_compatible(const std::vector<ThetaPtr>& theta) {
  std::set<BigInt> radicands;
  for (const auto& t : theta) {
    auto q = t->as_quadratic();
    if (!q) return false;
    if (!q->is_rational()) radicands.insert(q->radicand());
  }
  return radicands.size() <= 1;
}

}  // namespace

Polynomial reduced_char_poly(const IntersectionArray& arr) {
  int D = arr.diameter();
  // Leading principal minors of xI - L.
  Polynomial prev = Polynomial::constant(1);
  Polynomial cur = Polynomial({-arr.a_at(0), 1});
  for (int i = 1; i <= D; ++i) {
    Polynomial next = Polynomial({-arr.a_at(i), 1}) * cur -
                      Polynomial::constant(BigRational(arr.b_at(i - 1)) * arr.c_at(i)) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  auto [q, r] = divmod(cur, Polynomial::linear_factor(BigRational(arr.k())));
  if (!r.is_zero()) throw std::logic_error("defect: characteristic polynomial not divisible by x - k");
  return q;
}

std::vector<AlgebraicNumber> eigenvalues(const IntersectionArray& arr) {
  Polynomial p = reduced_char_poly(arr);
  auto roots = isolate_real_roots(p);
  if (static_cast<int>(roots.size()) != arr.diameter())
    throw SpectrumError("intersection matrix of " + format_array(arr) + " has a repeated eigenvalue");
  if (sign_at(p, AlgebraicNumber(arr.k())) == 0)
    throw SpectrumError("k is a repeated eigenvalue of " + format_array(arr));
  std::vector<AlgebraicNumber> out;
  out.emplace_back(arr.k());
  for (auto& r : roots) out.push_back(std::move(r));
  return out;
}

StandardSequence standard_sequence(const IntersectionArray& arr, ThetaPtr theta) {
  StandardSequence seq{theta, {}};
  int D = arr.diameter();
  Polynomial x = Polynomial::x();
  seq.u.push_back(FieldElement::constant(theta, 1));
  seq.u.push_back(FieldElement(theta, BigRational(1, arr.k()) * x));
  FieldElement t(theta, x);
  for (int i = 1; i < D; ++i) {
    const FieldElement& ui = seq.u[static_cast<std::size_t>(i)];
    const FieldElement& uprev = seq.u[static_cast<std::size_t>(i - 1)];
    FieldElement next = (t - FieldElement::constant(theta, arr.a_at(i))) * ui - BigRational(arr.c_at(i)) * uprev;
    BigRational inv(1, arr.b_at(i));
    seq.u.push_back(inv * next);
  }
  return seq;
}

StandardSequence standard_sequence(const IntersectionArray& arr, const AlgebraicNumber& theta) {
  return standard_sequence(arr, std::make_shared<const AlgebraicNumber>(theta));
}

std::string Multiplicity::to_string() const {
  if (exact) return exact->to_string();
  std::ostringstream out;
  if (integer)
    out << integer->get_str();
  else
    out << "~" << approx();
  out << " (interval-certified)";
  return out.str();
}

Multiplicity multiplicity(const IntersectionArray& arr, const StandardSequence& seq) {
  return multiplicity_from(derive(arr), seq);
}

Multiplicity multiplicity(const IntersectionArray& arr, const AlgebraicNumber& theta) {
  return multiplicity(arr, standard_sequence(arr, theta));
}

bool SpectrumData::exact() const {
  for (const auto& m : multiplicities)
    if (!m.exact) return false;
  return true;
}

SpectrumData compute_spectrum(const IntersectionArray& arr) {
  SpectrumData s;
  s.array = arr;
  s.derived = derive(arr);
  for (auto& t : eigenvalues(arr)) s.theta.push_back(std::make_shared<const AlgebraicNumber>(std::move(t)));
  for (const auto& t : s.theta) {
    s.sequences.push_back(standard_sequence(arr, t));
    s.multiplicities.push_back(multiplicity_from(s.derived, s.sequences.back()));
  }
  return s;
}

std::optional<std::tuple<int, int, int>> KreinTensor::most_negative() const {
  std::optional<std::tuple<int, int, int>> best;
  double lowest = 0;
  for (int k = 0; k <= d_; ++k)
    for (int i = 0; i <= d_; ++i)
      for (int j = 0; j <= d_; ++j) {
        const KreinEntry& e = at(k, i, j);
        if (e.sign < 0 && (!best || e.approx() < lowest)) {
          best = std::tuple{k, i, j};
          lowest = e.approx();
        }
      }
  return best;
}

KreinTensor krein_tensor(const SpectrumData& spec) {
  int D = spec.diameter();
  auto N = static_cast<std::size_t>(D + 1);
  std::vector<KreinEntry> out(N * N * N);
  const auto& ki = spec.derived.ki;

  if (all_quadratic_compatible(spec.theta)) {
    std::vector<std::vector<QuadraticNumber>> u(N);
    for (std::size_t t = 0; t < N; ++t)
      for (const auto& v : spec.sequences[t].u) u[t].push_back(*v.exact());
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
          QuadraticNumber sum;
          for (std::size_t l = 0; l < N; ++l) sum = sum + QuadraticNumber(ki[l]) * u[i][l] * u[j][l] * u[k][l];
          QuadraticNumber q = *spec.multiplicities[i].exact * *spec.multiplicities[j].exact / QuadraticNumber(spec.derived.n) * sum;
          KreinEntry e{q, q.enclose(64), q.sign(), true};
          out[(k * N + i) * N + j] = e;
          out[(k * N + j) * N + i] = e;
        }
    return KreinTensor(D, std::move(out));
  }

  std::vector<FieldElement> norms;
  for (const auto& seq : spec.sequences) norms.push_back(sum_of_weighted_squares(spec.derived, seq));
  std::vector<bool> done(out.size(), false);
  for (unsigned bits = kEncloseBits; bits <= kMaxKreinBits; bits *= 2) {
    std::vector<std::vector<Interval>> u(N);
    std::vector<Interval> m(N);
    for (std::size_t t = 0; t < N; ++t) {
      for (const auto& v : spec.sequences[t].u) u[t].push_back(v.enclose(bits).rounded_outward(bits + 8));
      m[t] = (Interval(spec.derived.n) / norms[t].enclose(bits)).rounded_outward(bits + 8);
    }
    bool last = bits * 2 > kMaxKreinBits;
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
          std::size_t idx = (k * N + i) * N + j;
          if (done[idx]) continue;
          Interval sum(BigRational(0));
          for (std::size_t l = 0; l < N; ++l)
            sum = (sum + Interval(ki[l]) * u[i][l] * u[j][l] * u[k][l]).rounded_outward(bits + 8);
          Interval q = m[i] * m[j] / Interval(spec.derived.n) * sum;
          int sg = q.certain_sign();
          if (sg == 0 && !last) continue;
          KreinEntry e{std::nullopt, q, sg, sg != 0};
          out[idx] = e;
          out[(k * N + j) * N + i] = e;
          done[idx] = done[(k * N + j) * N + i] = true;
        }
  }
  return KreinTensor(D, std::move(out));
}

KreinTensor krein_tensor(const IntersectionArray& arr) { return krein_tensor(compute_spectrum(arr)); }

bool q_poly_wrt_theta1(const KreinTensor& q) {
  if (q.diameter() != 3) throw UnsupportedDiameter("Q-polynomial test is implemented for diameter 3 only");
  return q.at(2, 1, 1).sign == 0 || q.at(3, 1, 1).sign == 0;
}

bool q_poly_wrt_theta1(const IntersectionArray& arr) {
  if (arr.diameter() != 3) throw UnsupportedDiameter("Q-polynomial test is implemented for diameter 3 only");
  return q_poly_wrt_theta1(krein_tensor(arr));
}

}  // namespace drg
