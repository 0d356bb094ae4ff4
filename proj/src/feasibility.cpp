#include "drg/feasibility.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "default_rules.hpp"

namespace drg {

IntersectionNumbers::IntersectionNumbers(int diameter)
    : d_(diameter), p_(static_cast<std::size_t>((diameter + 1) * (diameter + 1) * (diameter + 1)), BigRational(0)) {}

IntersectionNumbers intersection_numbers(const IntersectionArray& arr) {
  int D = arr.diameter();
  IntersectionNumbers p(D);
  auto b = [&](int i) -> BigRational { return i < 0 ? 0 : arr.b_at(i); };
  auto c = [&](int i) -> BigRational { return i > D ? 0 : arr.c_at(i); };
  auto a = [&](int i) -> BigRational { return arr.a_at(i); };
  auto get = [&](int i, int j, int l) -> BigRational {
    if (j < 0 || l < 0 || j > D || l > D) return 0;
    return p.at(i, j, l);
  };
  for (int i = 0; i <= D; ++i) {
    p.at(i, 0, i) = 1;
    if (i >= 1) p.at(i, 1, i - 1) = c(i);
    p.at(i, 1, i) = a(i);
    if (i + 1 <= D) p.at(i, 1, i + 1) = b(i);
    for (int j = 1; j < D; ++j) {
      for (int l = 0; l <= D; ++l) {
        BigRational v = b(l - 1) * get(i, j, l - 1) + (a(l) - a(j)) * get(i, j, l) + c(l + 1) * get(i, j, l + 1) -
                        b(j - 1) * get(i, j - 1, l);
        v /= c(j + 1);
        v.canonicalize();
        p.at(i, j + 1, l) = v;
      }
    }
  }
  return p;
}

std::string to_string(CliqueVerdict v) {
  switch (v) {
    case CliqueVerdict::Pass: return "PASS";
    case CliqueVerdict::TerwilligerRequired: return "TERWILLIGER_REQUIRED";
    case CliqueVerdict::Fail: return "FAIL";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::FeasibleModuloTerwilliger: return "feasible-modulo-terwilliger";
  }
  return "?";
}

CliqueCocliqueResult clique_coclique_condition(const IntersectionArray& arr) {
  if (arr.diameter() < 2) throw std::invalid_argument("clique-coclique condition needs diameter >= 2");
  std::int64_t a1 = arr.a_at(1);
  if (a1 < 0) throw std::invalid_argument("clique-coclique condition needs a1 >= 0");
  CliqueCocliqueResult r;
  BigInt k = arr.k();
  r.alpha = ceil(make_rational(k, BigInt(a1 + 1)));
  r.lhs = BigRational(arr.c_at(2) - 1);
  r.threshold = 0;
  if (r.alpha < 2) return r;
  BigInt pairs = r.alpha * (r.alpha - 1) / 2;
  r.threshold = make_rational(BigInt(r.alpha * (a1 + 1) - k), pairs);
  if (r.lhs > r.threshold)
    r.verdict = CliqueVerdict::Pass;
  else if (r.lhs == r.threshold)
    r.verdict = CliqueVerdict::TerwilligerRequired;
  else
    r.verdict = CliqueVerdict::Fail;
  return r;
}

// ------------------------------------------------------------------ rules

const char* default_rules_text() { return detail::kDefaultRules; }

ExclusionRules ExclusionRules::parse(std::istream& in, const std::string& source) {
  ExclusionRules out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ConfigError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream words(body);
    std::string first;
    if (!(words >> first)) continue;
    ExclusionRule rule;
    if (first == "TERWILLIGER") {
      std::string cond;
      if (!(words >> cond) || cond.rfind("c2>=", 0) != 0) fail("expected 'c2>=<n>' after TERWILLIGER");
      try {
        std::size_t used = 0;
        rule.min_c2 = std::stoll(cond.substr(4), &used);
        if (used != cond.size() - 4) fail("bad c2 bound '" + cond + "'");
      } catch (const std::logic_error&) {
        fail("bad c2 bound '" + cond + "'");
      }
      rule.kind = ExclusionRule::Kind::Terwilliger;
    } else {
      // The array may contain spaces; it ends at the closing brace.
      auto close = body.find('}');
      if (close == std::string::npos) fail("expected an intersection array or TERWILLIGER");
      try {
        rule.array = parse_array(body.substr(0, close + 1));
      } catch (const ParseError& e) {
        fail(e.what());
      }
      words.str(body.substr(close + 1));
      words.clear();
      rule.kind = ExclusionRule::Kind::Literal;
    }
    if (!(words >> rule.name)) fail("missing rule name");
    std::string extra;
    if (words >> extra) fail("unexpected token '" + extra + "'");
    out.rules_.push_back(std::move(rule));
  }
  return out;
}

ExclusionRules ExclusionRules::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rules file " + path.string());
  return parse(in, path.string());
}

const ExclusionRules& ExclusionRules::defaults() {
  static const ExclusionRules rules = [] {
    if (const char* env = std::getenv("DRG_RULES_FILE"); env && *env) return load(env);
    std::istringstream in(default_rules_text());
    return parse(in, "<built-in rules>");
  }();
  return rules;
}

const ExclusionRules& ExclusionRules::none() {
  static const ExclusionRules empty;
  return empty;
}

std::optional<std::string> ExclusionRules::match(const IntersectionArray& arr, std::optional<CliqueVerdict> clique) const {
  for (const auto& r : rules_) {
    if (r.kind == ExclusionRule::Kind::Literal && r.array == arr) return r.name;
    if (r.kind == ExclusionRule::Kind::Terwilliger && clique == CliqueVerdict::TerwilligerRequired &&
        arr.diameter() >= 2 && arr.c_at(2) >= r.min_c2)
      return r.name;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- the report

namespace {

std::string pijl(int i, int j, int l) {
  return "p^" + std::to_string(i) + "_" + std::to_string(j) + std::to_string(l);
}

void fail(FeasibilityReport& r, ConditionWitness& w, const std::string& name, std::string detail) {
  w.pass = false;
  w.detail = std::move(detail);
  r.reasons.push_back(name + ": " + w.detail);
}

void check_intersection_numbers(const IntersectionArray& arr, FeasibilityReport& r) {
  IntersectionNumbers p = intersection_numbers(arr);
  int D = arr.diameter();
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      for (int l = 0; l <= D; ++l) {
        const BigRational& v = p.at(i, j, l);
        if (!is_integer(v)) return fail(r, r.p_integrality, "p-integrality", pijl(i, j, l) + " = " + to_string(v) + " is not integral");
        if (v < 0) return fail(r, r.p_integrality, "p-integrality", pijl(i, j, l) + " = " + to_string(v) + " is negative");
      }
}

void check_parity(const IntersectionArray& arr, const DerivedParams& d, FeasibilityReport& r) {
  for (int i = 0; i <= arr.diameter(); ++i) {
    const BigRational& ki = d.ki[static_cast<std::size_t>(i)];
    if (!is_integer(ki)) continue;  // reported by p-integrality
    if ((ki.get_num() * d.a[static_cast<std::size_t>(i)]) % 2 != 0)
      return fail(r, r.parity, "parity",
                  "k_" + std::to_string(i) + " a_" + std::to_string(i) + " = " + ki.get_num().get_str() + "*" +
                      std::to_string(d.a[static_cast<std::size_t>(i)]) + " is odd");
  }
}

void check_spectrum(const IntersectionArray& arr, FeasibilityReport& r) {
  SpectrumData spec;
  try {
    spec = compute_spectrum(arr);
  } catch (const SpectrumError& e) {
    r.spectrum_error = e.what();
    r.reasons.push_back(std::string("spectrum: ") + e.what());
    return;
  }
  for (const auto& t : spec.theta) r.eigenvalues.push_back(*t);
  r.multiplicities = spec.multiplicities;
  for (std::size_t i = 0; i < r.multiplicities.size(); ++i) {
    const Multiplicity& m = r.multiplicities[i];
    if (!m.is_positive_integer()) {
      fail(r, r.multiplicity_integrality, "multiplicity",
           "m" + std::to_string(i) + " = " + m.to_string() + (m.integer ? " is not positive" : " is not an integer"));
      break;
    }
  }

  KreinTensor q = krein_tensor(spec);
  if (auto neg = q.most_negative()) {
    auto [k, i, j] = *neg;
    const KreinEntry& e = q.at(k, i, j);
    std::string value = e.exact ? e.exact->to_string() : "~" + std::to_string(e.approx());
    fail(r, r.krein, "krein",
         "q^" + std::to_string(k) + "_" + std::to_string(i) + std::to_string(j) + " = " + value + " < 0");
  }
  int D = arr.diameter();
  for (int k = 0; k <= D; ++k)
    for (int i = 0; i <= D; ++i)
      for (int j = 0; j <= D; ++j)
        if (!q.at(k, i, j).certified) r.krein_uncertified = true;
  if (D == 3) r.q_polynomial = q_poly_wrt_theta1(q);
}

void settle(FeasibilityReport& r) {
  if (!r.reasons.empty())
    r.overall = Verdict::Infeasible;
  else if (r.clique && r.clique->verdict == CliqueVerdict::TerwilligerRequired)
    r.overall = Verdict::FeasibleModuloTerwilliger;
  else
    r.overall = Verdict::Feasible;
}

}  // namespace

FeasibilityReport arithmetic_feasibility(const IntersectionArray& arr) {
  FeasibilityReport r;
  r.array = arr;
  r.basic = basic_conditions(arr);
  for (const auto& v : r.basic)
    if (!v.pass) r.reasons.push_back("basic: " + v.name + " fails at (" + v.witness->first + "," + v.witness->second + ")");

  DerivedParams d = derive(arr);
  check_intersection_numbers(arr, r);
  check_spectrum(arr, r);
  check_parity(arr, d, r);

  if (arr.diameter() >= 2 && arr.a_at(1) >= 0) {
    r.clique = clique_coclique_condition(arr);
    if (r.clique->verdict == CliqueVerdict::Fail)
      r.reasons.push_back("clique-coclique: FAIL, threshold " + to_string(r.clique->threshold) + " > c2-1 = " +
                          to_string(r.clique->lhs) + " (alpha = " + r.clique->alpha.get_str() + ")");
  }
  settle(r);
  return r;
}

FeasibilityReport apply_known_results(const IntersectionArray& arr, FeasibilityReport report, const ExclusionRules& rules) {
  std::optional<CliqueVerdict> cv;
  if (report.clique) cv = report.clique->verdict;
  if (auto hit = rules.match(arr, cv)) {
    report.known_result = *hit;
    report.reasons.push_back("known-result: " + *hit);
    report.overall = Verdict::Infeasible;
  }
  return report;
}

FeasibilityReport feasibility_check(const IntersectionArray& arr, const ExclusionRules& rules) {
  return apply_known_results(arr, arithmetic_feasibility(arr), rules);
}

}  // namespace drg
