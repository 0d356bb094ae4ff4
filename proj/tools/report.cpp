#include "report.hpp"

#include <iomanip>

namespace drg::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kWidth = 72;

std::string clip(std::string s) {
  if (s.size() <= kWidth) return s;
  s.resize(kWidth - 3);
  return s + "...";
}

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

json check_json(const ConditionWitness& w) {
  json j{{"pass", w.pass}};
  if (!w.pass) j["detail"] = w.detail;
  return j;
}

json check_json(const Check& c) { return json{{"pass", c.pass}, {"detail", c.detail}}; }

std::string value_string(const FieldElement& f) {
  if (auto e = f.exact()) return e->to_string();
  return f.expression().to_string("t");
}

void row(std::ostream& out, const std::string& label, const std::string& value) {
  out << "  " << std::left << std::setw(26) << label << clip(value) << '\n';
}

std::string pass_text(bool pass, const std::string& detail) { return pass ? "pass" : "FAIL: " + detail; }

}  // namespace

json rational_json(const BigRational& r) { return to_string(r); }

json quadratic_json(const QuadraticNumber& q) {
  if (q.is_rational()) return rational_json(q.rational_part());
  return json{{"p", to_string(q.rational_part())},
              {"q", to_string(q.radical_coefficient())},
              {"d", to_string(q.radicand())}};
}

json algebraic_json(const AlgebraicNumber& a) {
  if (auto q = a.as_quadratic()) return quadratic_json(*q);
  const IsolatedRoot& r = *a.as_isolated();
  return json{{"polynomial", r.polynomial().to_string()}, {"interval", {to_string(r.lo()), to_string(r.hi())}}};
}

json multiplicity_json(const Multiplicity& m) {
  if (m.exact) return quadratic_json(*m.exact);
  if (m.integer) return to_string(*m.integer);
  return json{{"enclosure", {to_string(m.enclosure.lo()), to_string(m.enclosure.hi())}}, {"integer", false}};
}

json shilla_json(const ShillaConstraintReport& s) {
  const auto& p = s.params;
  json j{{"b", p.b},
         {"a3", p.a3},
         {"c2", p.c2},
         {"b2", p.b2},
         {"theta2", algebraic_json(s.spectrum.theta2)},
         {"theta3", algebraic_json(s.spectrum.theta3)},
         {"m1", rational_json(s.spectrum.m1)},
         {"m2", quadratic_json(s.spectrum.m2)},
         {"m3", quadratic_json(s.spectrum.m3)},
         {"q_polynomial", s.qpoly},
         {"m2_eq_m3", s.m2_eq_m3},
         {"eq2_lhs", to_string(s.eq2)},
         {"p333_zero", s.p333_zero},
         {"theta3_below_minus_b2_plus_2", s.theta3_below_regime}};
  json checks = json::object();
  for (const auto& [name, c] : s.checks()) checks[name] = check_json(*c);
  j["checks"] = checks;
  return j;
}

json report_json(const FeasibilityReport& r, const ShillaConstraintReport* shilla, bool verbose) {
  json j{{"array", format_array(r.array)}, {"verdict", to_string(r.overall)}, {"reasons", r.reasons}};
  json basic = json::object();
  for (const auto& v : r.basic) {
    json b{{"pass", v.pass}};
    if (v.witness) b["witness"] = {v.witness->first, v.witness->second};
    basic[v.name] = b;
  }
  j["basic"] = basic;
  j["p_integrality"] = check_json(r.p_integrality);
  if (r.spectrum_error) j["spectrum_error"] = *r.spectrum_error;
  json ev = json::array(), mult = json::array();
  for (const auto& t : r.eigenvalues) ev.push_back(algebraic_json(t));
  for (const auto& m : r.multiplicities) mult.push_back(multiplicity_json(m));
  j["eigenvalues"] = ev;
  j["multiplicities"] = mult;
  j["multiplicity_integrality"] = check_json(r.multiplicity_integrality);
  j["parity"] = check_json(r.parity);
  j["krein"] = check_json(r.krein);
  j["krein"]["certified"] = !r.krein_uncertified;
  if (r.array.diameter() == 3 && !r.spectrum_error) j["q_polynomial"] = r.q_polynomial;
  if (r.clique)
    j["clique_coclique"] = {{"verdict", to_string(r.clique->verdict)},
                            {"alpha", to_string(r.clique->alpha)},
                            {"c2_minus_1", rational_json(r.clique->lhs)},
                            {"threshold", rational_json(r.clique->threshold)}};
  j["known_result"] = r.known_result ? json(*r.known_result) : json(nullptr);
  if (shilla) j["shilla"] = shilla_json(*shilla);
  if (verbose && !r.spectrum_error && r.multiplicities.size() == r.eigenvalues.size()) {
    json seqs = json::array();
    SpectrumData spec = compute_spectrum(r.array);
    for (const auto& s : spec.sequences) {
      json u = json::array();
      for (const auto& x : s.u) {
        if (auto e = x.exact())
          u.push_back(quadratic_json(*e));
        else
          u.push_back(json{{"polynomial_in_theta", x.expression().to_string("t")}});
      }
      seqs.push_back(u);
    }
    j["standard_sequences"] = seqs;
  }
  return j;
}

void print_report(std::ostream& out, const FeasibilityReport& r, const ShillaConstraintReport* shilla, bool verbose) {
  std::string verdict = to_string(r.overall);
  for (auto& ch : verdict) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  out << format_array(r.array) << "  " << verdict << '\n';
  std::vector<std::string> bad;
  for (const auto& v : r.basic)
    if (!v.pass) bad.push_back(v.name + (v.witness ? " at " + v.witness->first + "," + v.witness->second : ""));
  row(out, "basic", bad.empty() ? "pass" : "FAIL: " + join(bad));
  row(out, "p-integrality", pass_text(r.p_integrality.pass, r.p_integrality.detail));
  if (r.spectrum_error) {
    row(out, "spectrum", "FAIL: " + *r.spectrum_error);
  } else if (!r.eigenvalues.empty()) {
    std::vector<std::string> ev, mu;
    for (const auto& t : r.eigenvalues) ev.push_back(t.to_string());
    for (const auto& m : r.multiplicities) mu.push_back(m.to_string());
    row(out, "eigenvalues", join(ev));
    row(out, "multiplicities", join(mu));
    row(out, "multiplicity-integrality", pass_text(r.multiplicity_integrality.pass, r.multiplicity_integrality.detail));
    row(out, "parity", pass_text(r.parity.pass, r.parity.detail));
    row(out, "krein", pass_text(r.krein.pass, r.krein.detail) + (r.krein_uncertified ? " (uncertified entries)" : ""));
    if (r.array.diameter() == 3) row(out, "Q-polynomial (theta1)", r.q_polynomial ? "yes" : "no");
  }
  if (r.clique)
    row(out, "clique-coclique", to_string(r.clique->verdict) + " (alpha " + to_string(r.clique->alpha) +
                                    ", threshold " + to_string(r.clique->threshold) + ", c2-1 = " +
                                    to_string(r.clique->lhs) + ")");
  if (r.known_result) row(out, "known result", *r.known_result);
  for (const auto& reason : r.reasons) row(out, "reason", reason);

  if (shilla) {
    const auto& s = *shilla;
    row(out, "Shilla", to_string(s.params));
    row(out, "theta2, theta3", s.spectrum.theta2.to_string() + ", " + s.spectrum.theta3.to_string());
    row(out, "m1, m2, m3", to_string(s.spectrum.m1) + ", " + s.spectrum.m2.to_string() + ", " +
                               s.spectrum.m3.to_string());
    row(out, "m2 = m3", std::string(s.m2_eq_m3 ? "yes" : "no") + " (polynomial " + to_string(s.eq2) + ")");
    for (const auto& [name, c] : s.checks()) row(out, "  " + name, pass_text(c->pass, c->detail));
  }

  if (verbose && !r.spectrum_error && !r.eigenvalues.empty()) {
    SpectrumData spec = compute_spectrum(r.array);
    for (std::size_t i = 0; i < spec.sequences.size(); ++i) {
      std::vector<std::string> u;
      for (const auto& x : spec.sequences[i].u) u.push_back(value_string(x));
      out << "  u(" << spec.theta[i]->to_string() << ") = (" << join(u) << ")\n";
    }
  }
}

}  // namespace drg::cli
