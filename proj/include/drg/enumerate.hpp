#pragma once

#include <bitset>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "drg/shilla.hpp"

namespace drg {

enum class Filter : unsigned {
  Basic,
  Divisibility,
  MultiplicityIntegrality,
  Parity,
  Krein,
  CliqueCoclique,
  KnownResults,
  RequireM2EqM3,
  RequireQpoly,
};
inline constexpr std::size_t kFilterCount = 9;

std::string to_string(Filter f);
std::optional<Filter> parse_filter(const std::string& name);
const std::vector<Filter>& all_filters();

class FilterSet {
 public:
  FilterSet() = default;
  /// basic through known-results; the two require-* filters are off.
  static FilterSet defaults();
  static FilterSet none() { return {}; }

  bool has(Filter f) const { return bits_.test(static_cast<std::size_t>(f)); }
  FilterSet with(Filter f) const;
  FilterSet without(Filter f) const;
  std::string to_string() const;
  friend bool operator==(const FilterSet&, const FilterSet&) = default;

 private:
  std::bitset<kFilterCount> bits_;
};

struct EnumerationProgress {
  std::uint64_t visited = 0;
  std::uint64_t survivors = 0;
  std::int64_t b = 0;
  std::int64_t a3 = 0;  // last a3 completed
};

struct EnumerationQuery {
  std::int64_t b_min = 2;
  std::int64_t b_max = 2;
  /// Defaults to search_bound_a3(b, true), with Q-polynomial arrays above
  /// that bound supplied by qpoly_candidates.
  std::optional<std::int64_t> a3_max;
  FilterSet filters = FilterSet::defaults();
  unsigned parallelism = 1;
  /// Stop after this many visited tuples.
  std::optional<std::uint64_t> candidate_cap;
  const ExclusionRules* rules = nullptr;  // null: ExclusionRules::defaults()
  std::function<void(const EnumerationProgress&)> progress;

  /// Throws std::invalid_argument when the query is malformed.
  void validate() const;
};

struct Survivor {
  ShillaParams params;
  IntersectionArray array;
  ShillaConstraintReport shilla;
  FeasibilityReport feasibility;
};

struct EnumerationResult {
  std::vector<Survivor> survivors;  // ordered by (b, a3, c2, b2)
  std::uint64_t visited = 0;
  /// Tuples rejected, keyed by the first rejecting filter.
  std::map<std::string, std::uint64_t> pruned;
  /// Disagreements between exact multiplicity equality and the Eq. LHS.
  std::vector<std::string> defects;
  double wall_seconds = 0;
};

class CandidateCapExceeded : public std::runtime_error {
 public:
  CandidateCapExceeded(EnumerationResult partial, EnumerationProgress progress);
  const EnumerationResult& partial() const { return partial_; }
  const EnumerationProgress& progress() const { return progress_; }

 private:
  EnumerationResult partial_;
  EnumerationProgress progress_;
};

EnumerationResult enumerate_shilla(const EnumerationQuery& q);

/// Reference path: every tuple passing the basic conditions goes straight
/// through the exact pipeline, with no arithmetic pruning.
EnumerationResult enumerate_shilla_unpruned(const EnumerationQuery& q);

/// Names of the enabled filters that reject p, with details.  Empty when p
/// survives.
std::vector<std::string> rejecting_filters(const ShillaParams& p, const FilterSet& filters,
                                           const ExclusionRules& rules = ExclusionRules::defaults());

struct ListDiff {
  std::vector<IntersectionArray> unexpected;  // found, not expected
  std::vector<std::pair<IntersectionArray, std::string>> missing;  // expected, not found, with reason
  bool empty() const { return unexpected.empty() && missing.empty(); }
};

ListDiff verify_list(const EnumerationQuery& q, const std::vector<IntersectionArray>& expected);
ListDiff diff_against(const EnumerationQuery& q, const EnumerationResult& result,
                      const std::vector<IntersectionArray>& expected);
std::string to_string(const ListDiff& d);

}  // namespace drg
