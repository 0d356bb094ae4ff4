#include "drg/arith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace drg {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const BigRational& x) { return x.get_den() == 1; }

BigInt floor(const BigRational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt ceil(const BigRational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigRational abs(const BigRational& x) { return x < 0 ? BigRational(-x) : x; }

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const BigRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

BigRational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer in '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad integer in '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer in '" + text + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return BigRational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

double to_double(const BigRational& x) { return x.get_d(); }

bool is_perfect_square(const BigInt& n, BigInt* root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (root != nullptr) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

namespace {

BigInt pollard_rho(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto step = [&](const BigInt& v) {
      BigInt r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      BigInt diff = x - y;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void split_cofactor(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  BigInt root;
  if (is_perfect_square(n, &root)) {
    split_cofactor(root, out);
    split_cofactor(root, out);
    return;
  }
  BigInt d = pollard_rho(n);
  split_cofactor(d, out);
  split_cofactor(BigInt(n / d), out);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  BigInt m = n;
  mpz_abs(m.get_mpz_t(), m.get_mpz_t());
  std::map<BigInt, unsigned> found;
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (mpz_fits_ulong_p(m.get_mpz_t()) != 0) {
      if (p > m.get_ui() / p) break;
    } else if (BigInt(p) * p > m) {
      break;
    }
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++found[BigInt(p)];
    }
  }
  split_cofactor(m, found);
  return {found.begin(), found.end()};
}

SquareFreeSplit square_free_split(const BigInt& n) {
  if (n < 0) throw std::domain_error("square_free_split of a negative integer");
  if (n == 0) return {0, 0};
  SquareFreeSplit out{1, 1};
  for (const auto& [p, e] : factorize(n)) {
    for (unsigned i = 0; i < e / 2; ++i) out.square_part *= p;
    if (e % 2 == 1) out.square_free *= p;
  }
  return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace drg
