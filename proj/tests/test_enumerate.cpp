#include <doctest.h>

#include <random>
#include <set>

#include "drg/enumerate.hpp"

using namespace drg;

namespace {

std::vector<IntersectionArray> arrays_of(const EnumerationResult& r) {
  std::vector<IntersectionArray> out;
  for (const auto& s : r.survivors) out.push_back(s.array);
  return out;
}

std::vector<IntersectionArray> parse_all(std::initializer_list<const char*> texts) {
  std::vector<IntersectionArray> out;
  for (const char* t : texts) out.push_back(parse_array(t));
  return out;
}

EnumerationQuery query(std::int64_t bmin, std::int64_t bmax, std::optional<std::int64_t> a3max,
                       FilterSet f = FilterSet::defaults()) {
  EnumerationQuery q;
  q.b_min = bmin;
  q.b_max = bmax;
  q.a3_max = a3max;
  q.filters = f;
  return q;
}

const std::vector<IntersectionArray>& twelve() {
  static const auto v = parse_all({"{12,10,5;1,1,8}", "{12,10,2;1,2,8}", "{12,10,3;1,3,8}", "{15,12,6;1,2,10}",
                                   "{24,18,9;1,1,16}", "{27,20,10;1,2,18}", "{30,22,9;1,3,20}", "{42,30,12;1,6,28}",
                                   "{60,42,18;1,6,40}", "{69,48,24;1,4,46}", "{93,64,24;1,6,62}",
                                   "{105,72,24;1,12,70}"});
  return v;
}

std::uint64_t accounted(const EnumerationResult& r) {
  std::uint64_t total = r.survivors.size();
  for (const auto& [name, n] : r.pruned) total += n;
  return total;
}

}  // namespace

TEST_CASE("filter names round-trip") {
  for (Filter f : all_filters()) CHECK(parse_filter(to_string(f)) == f);
  CHECK_FALSE(parse_filter("nonsense"));
  FilterSet d = FilterSet::defaults();
  CHECK(d.has(Filter::Krein));
  CHECK_FALSE(d.has(Filter::RequireM2EqM3));
  CHECK_FALSE(d.has(Filter::RequireQpoly));
  CHECK(d.without(Filter::Krein).with(Filter::Krein) == d);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(query(1, 3, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(query(4, 3, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(query(2, 10001, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(query(5, 6, 4).validate(), std::invalid_argument);
  CHECK_NOTHROW(query(2, 2, 2).validate());
}

TEST_CASE("b = 3 with default bound gives the twelve arrays") {
  auto q = query(3, 3, std::nullopt);
  auto r = enumerate_shilla(q);
  auto d = diff_against(q, r, twelve());
  INFO(to_string(d));
  CHECK(d.empty());
  CHECK(r.defects.empty());
  CHECK(accounted(r) == r.visited);
}

TEST_CASE("explicit a3-max 1295 matches") {
  auto d = verify_list(query(3, 3, 1295), twelve());
  INFO(to_string(d));
  CHECK(d.empty());
}

TEST_CASE("Q-polynomial b = 3") {
  auto q = query(3, 3, std::nullopt, FilterSet::defaults().with(Filter::RequireQpoly));
  auto r = enumerate_shilla(q);
  CHECK(arrays_of(r) == parse_all({"{42,30,12;1,6,28}", "{105,72,24;1,12,70}"}));

  ExclusionRules none;
  q.rules = &none;
  auto all = arrays_of(enumerate_shilla(q));
  CHECK(all == parse_all({"{21,16,8;1,4,14}", "{42,30,12;1,6,28}", "{105,72,24;1,12,70}"}));

  // Scanning explicitly agrees.
  auto scanned = enumerate_shilla(query(3, 3, 200, FilterSet::defaults().with(Filter::RequireQpoly)));
  CHECK(arrays_of(scanned) == parse_all({"{42,30,12;1,6,28}", "{105,72,24;1,12,70}"}));
}

TEST_CASE("b = 2, a3 = 2") {
  auto found = arrays_of(enumerate_shilla(query(2, 2, 2)));
  std::set<IntersectionArray> s(found.begin(), found.end());
  CHECK(s.count(parse_array("{4,3,3;1,1,2}")));
  CHECK_FALSE(s.count(parse_array("{4,3,1;1,1,2}")));
  CHECK_FALSE(s.count(parse_array("{4,3,2;1,1,2}")));
}

TEST_CASE("b = 2 up to the default bound") {
  auto r = enumerate_shilla(query(2, 2, std::nullopt));
  CHECK(arrays_of(r) == parse_all({"{4,3,3;1,1,2}", "{6,4,4;1,1,3}", "{6,4,2;1,2,3}", "{10,6,4;1,2,5}",
                                   "{18,10,4;1,4,9}"}));
}

TEST_CASE("pruned and unpruned agree for b = 2, a3 <= 20") {
  auto q = query(2, 2, 20);
  auto pruned = enumerate_shilla(q);
  auto full = enumerate_shilla_unpruned(q);
  CHECK(arrays_of(pruned) == arrays_of(full));
  CHECK(pruned.visited == full.visited);
  CHECK(accounted(full) == full.visited);
  CHECK(full.defects.empty());
}

TEST_CASE("adding a filter never adds a survivor") {
  std::mt19937 rng(7);
  auto q = query(2, 3, 7, FilterSet::none());
  for (int round = 0; round < 6; ++round) {
    FilterSet base;
    for (Filter f : all_filters())
      if (rng() % 2) base = base.with(f);
    Filter extra = all_filters()[rng() % kFilterCount];
    q.filters = base;
    auto loose = arrays_of(enumerate_shilla(q));
    q.filters = base.with(extra);
    auto tight = arrays_of(enumerate_shilla(q));
    std::set<IntersectionArray> ls(loose.begin(), loose.end());
    INFO(base.to_string(), " + ", to_string(extra));
    for (const auto& a : tight) CHECK(ls.count(a));
  }
}

TEST_CASE("determinism across parallelism") {
  auto q = query(2, 4, 60);
  auto one = enumerate_shilla(q);
  q.parallelism = 4;
  auto four = enumerate_shilla(q);
  REQUIRE(one.survivors.size() == four.survivors.size());
  for (std::size_t i = 0; i < one.survivors.size(); ++i) CHECK(one.survivors[i].params == four.survivors[i].params);
  CHECK(one.pruned == four.pruned);
  CHECK(one.visited == four.visited);
}

TEST_CASE("survivors are ordered, round-trip and pass feasibility_check") {
  auto r = enumerate_shilla(query(2, 5, 80));
  REQUIRE(!r.survivors.empty());
  for (std::size_t i = 1; i < r.survivors.size(); ++i) CHECK(r.survivors[i - 1].params < r.survivors[i].params);
  for (const auto& s : r.survivors) {
    CHECK(parse_array(format_array(s.array)) == s.array);
    auto rep = feasibility_check(s.array);
    if (s.feasibility.clique && s.feasibility.clique->verdict == CliqueVerdict::TerwilligerRequired)
      CHECK(rep.overall != Verdict::Infeasible);
    else
      CHECK(rep.overall == Verdict::Feasible);
  }
}

TEST_CASE("candidate cap") {
  auto q = query(3, 3, 200);
  q.candidate_cap = 1000000;
  try {
    enumerate_shilla(q);
    FAIL("cap not enforced");
  } catch (const CandidateCapExceeded& e) {
    CHECK(e.progress().visited <= 1000000);
    CHECK(e.progress().a3 >= 3);
    CHECK(e.partial().visited == e.progress().visited);
    for (const auto& s : e.partial().survivors) CHECK(s.params.a3 <= e.progress().a3);
  }
  q.candidate_cap = 1ull << 40;
  CHECK_NOTHROW(enumerate_shilla(q));
}

TEST_CASE("progress callback") {
  auto q = query(2, 2, 30);
  std::uint64_t calls = 0, last = 0;
  q.progress = [&](const EnumerationProgress& p) {
    ++calls;
    CHECK(p.visited >= last);
    last = p.visited;
  };
  auto r = enumerate_shilla(q);
  CHECK(calls == 29);
  CHECK(last == r.visited);
}

TEST_CASE("verify_list reports both directions") {
  auto q = query(3, 3, 40);
  auto expected = parse_all({"{12,10,5;1,1,8}", "{12,10,2;1,2,8}", "{12,10,3;1,3,8}", "{15,12,6;1,2,10}",
                             "{24,18,9;1,1,16}", "{27,20,10;1,2,18}", "{30,22,9;1,3,20}",
                             "{60,42,18;1,6,40}",
                             "{12,10,4;1,1,8}",       // absent
                             "{6,4,2;1,2,3}",         // b = 2
                             "{20,18,4;1,1,5}"});     // not Shilla
  auto d = verify_list(q, expected);
  std::map<IntersectionArray, std::string> why(d.missing.begin(), d.missing.end());
  CHECK(why.at(parse_array("{6,4,2;1,2,3}")).find("outside the query range") != std::string::npos);
  CHECK(why.at(parse_array("{20,18,4;1,1,5}")) == "not a Shilla array");
  CHECK(why.count(parse_array("{12,10,4;1,1,8}")));
  CHECK_FALSE(why.at(parse_array("{12,10,4;1,1,8}")).empty());
  // {42,30,12;1,6,28} is found but was not listed.
  CHECK(std::count(d.unexpected.begin(), d.unexpected.end(), parse_array("{42,30,12;1,6,28}")) == 1);
}

TEST_CASE("rejecting_filters names the failing stage") {
  auto why = rejecting_filters(ShillaParams{2, 2, 1, 1}, FilterSet::defaults());
  REQUIRE(!why.empty());
  CHECK(why.front().rfind("multiplicity-integrality", 0) == 0);
  CHECK(rejecting_filters(ShillaParams{2, 2, 1, 3}, FilterSet::defaults()).empty());
  auto coolsaet = rejecting_filters(ShillaParams{3, 7, 4, 8}, FilterSet::defaults());
  REQUIRE(coolsaet.size() == 1);
  CHECK(coolsaet.front().rfind("known-results", 0) == 0);
}
