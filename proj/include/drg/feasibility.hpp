#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "drg/intersection_array.hpp"
#include "drg/spectrum.hpp"

namespace drg {

/// p^i_{jl}: for x, y at distance i, the number of z with d(x,z) = j and
/// d(y,z) = l.
class IntersectionNumbers {
 public:
  explicit IntersectionNumbers(int diameter);
  int diameter() const { return d_; }
  const BigRational& at(int i, int j, int l) const { return p_[index(i, j, l)]; }
  BigRational& at(int i, int j, int l) { return p_[index(i, j, l)]; }

 private:
  std::size_t index(int i, int j, int l) const {
    auto n = static_cast<std::size_t>(d_ + 1);
    return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(l);
  }
  int d_;
  std::vector<BigRational> p_;
};

IntersectionNumbers intersection_numbers(const IntersectionArray& arr);

enum class CliqueVerdict { Pass, TerwilligerRequired, Fail };
std::string to_string(CliqueVerdict v);

struct CliqueCocliqueResult {
  CliqueVerdict verdict = CliqueVerdict::Pass;
  BigInt alpha;            // ceil(k / (a1 + 1))
  BigRational lhs;         // c2 - 1
  BigRational threshold;   // (alpha (a1+1) - k) / C(alpha, 2); 0 when alpha < 2
};

/// Requires D >= 2 and a1 >= 0 (std::invalid_argument otherwise).
CliqueCocliqueResult clique_coclique_condition(const IntersectionArray& arr);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExclusionRule {
  enum class Kind { Literal, Terwilliger };
  Kind kind = Kind::Literal;
  IntersectionArray array;     // Literal
  std::int64_t min_c2 = 0;     // Terwilliger
  std::string name;
};

/// Known-nonexistence rules, one per line:
///   <canonical-array> <rule-name>
///   TERWILLIGER c2>=<n> <rule-name>
class ExclusionRules {
 public:
  ExclusionRules() = default;
  static ExclusionRules parse(std::istream& in, const std::string& source = "<rules>");
  static ExclusionRules load(const std::filesystem::path& path);
  /// The shipped rules, or the file named by DRG_RULES_FILE when set.
  /// Loaded once.
  static const ExclusionRules& defaults();
  static const ExclusionRules& none();

  const std::vector<ExclusionRule>& rules() const { return rules_; }
  std::optional<std::string> match(const IntersectionArray& arr, std::optional<CliqueVerdict> clique) const;

 private:
  std::vector<ExclusionRule> rules_;
};

const char* default_rules_text();

enum class Verdict { Feasible, Infeasible, FeasibleModuloTerwilliger };
std::string to_string(Verdict v);

struct ConditionWitness {
  bool pass = true;
  std::string detail;  // empty on pass
};

struct FeasibilityReport {
  IntersectionArray array;
  std::vector<BasicVerdict> basic;
  /// Integrality and nonnegativity of every p^i_{jl} (k_i among them).
  ConditionWitness p_integrality;
  std::optional<std::string> spectrum_error;
  std::vector<AlgebraicNumber> eigenvalues;
  std::vector<Multiplicity> multiplicities;
  ConditionWitness multiplicity_integrality;
  ConditionWitness parity;
  ConditionWitness krein;
  bool krein_uncertified = false;
  bool q_polynomial = false;  // diameter 3 only
  std::optional<CliqueCocliqueResult> clique;
  std::optional<std::string> known_result;

  Verdict overall = Verdict::Feasible;
  std::vector<std::string> reasons;

  bool feasible() const { return overall != Verdict::Infeasible; }
};

/// Hard conditions plus the clique-coclique condition, without consulting
/// any exclusion list.
FeasibilityReport arithmetic_feasibility(const IntersectionArray& arr);

/// Downgrades the verdict when a rule matches.
FeasibilityReport apply_known_results(const IntersectionArray& arr, FeasibilityReport report,
                                      const ExclusionRules& rules = ExclusionRules::defaults());

FeasibilityReport feasibility_check(const IntersectionArray& arr,
                                    const ExclusionRules& rules = ExclusionRules::defaults());

}  // namespace drg
