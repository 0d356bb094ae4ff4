#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "drg/feasibility.hpp"

using namespace drg;

namespace {

IntersectionArray A(const char* s) { return parse_array(s); }

std::vector<IntersectionArray> random_arrays(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<IntersectionArray> out;
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  while (static_cast<int>(out.size()) < count) {
    int D = static_cast<int>(pick(2, 4));
    IntersectionArray arr;
    arr.b.push_back(pick(2, 40));
    arr.c.push_back(1);
    for (int i = 1; i < D; ++i) arr.b.push_back(pick(1, arr.b.back() - (i == 1 ? 1 : 0)));
    for (int i = 1; i < D; ++i) arr.c.push_back(pick(arr.c.back(), arr.k()));
    if (arr.b[1] >= 1 && passes_basic(arr)) out.push_back(arr);
  }
  return out;
}

}  // namespace

TEST_CASE("intersection numbers") {
  auto p = intersection_numbers(A("{42,30,12;1,6,28}"));
  CHECK(p.at(3, 3, 2) == 56);
  CHECK(p.at(3, 3, 2) == BigRational(28 * 11 + 14 * 2) / 6);
  CHECK(p.at(3, 3, 3) == 19);
  CHECK(p.at(3, 3, 3) == 90 - 1 - 14 - 56);
  for (int i = 0; i <= 3; ++i)
    for (int l = 0; l <= 3; ++l) CHECK(p.at(i, 0, l) == (i == l ? 1 : 0));

  // The conflicting (⊛) entry: p^3_32 = (b-1) a3 b2 / c2 = 25*26*31/9.
  auto bad = intersection_numbers(A("{676,675,31;1,9,650}"));
  CHECK(bad.at(3, 3, 2) == make_rational(25 * 26 * 31, 9));
}

TEST_CASE("property: intersection number identities") {
  auto arrays = random_arrays(400, 1);
  for (const char* s : {"{4,3,3;1,1,2}", "{6,4,2;1,2,3}", "{18,10,4;1,4,9}", "{81,56,24,1;1,3,56,81}",
                        "{3,2,2,2,1,1,1;1,1,1,1,1,1,3}"})
    arrays.push_back(A(s));
  for (const auto& arr : arrays) {
    auto p = intersection_numbers(arr);
    auto d = derive(arr);
    int D = arr.diameter();
    for (int i = 0; i <= D; ++i) {
      if (i >= 1) CHECK(p.at(i, 1, i - 1) == arr.c_at(i));
      CHECK(p.at(i, 1, i) == arr.a_at(i));
      if (i < D) CHECK(p.at(i, 1, i + 1) == arr.b_at(i));
      for (int j = 0; j <= D; ++j) {
        BigRational row = 0;
        for (int l = 0; l <= D; ++l) {
          row += p.at(i, j, l);
          CHECK(p.at(i, j, l) == p.at(i, l, j));
          CHECK(d.ki[static_cast<std::size_t>(i)] * p.at(i, j, l) == d.ki[static_cast<std::size_t>(j)] * p.at(j, i, l));
        }
        CHECK(row == d.ki[static_cast<std::size_t>(j)]);
      }
    }
  }
}

TEST_CASE("clique_coclique_condition") {
  auto t = clique_coclique_condition(A("{44,30,5;1,3,40}"));
  CHECK(t.verdict == CliqueVerdict::TerwilligerRequired);
  CHECK(t.alpha == 4);
  CHECK(t.threshold == 2);
  CHECK(t.lhs == 2);

  auto f = clique_coclique_condition(A("{65,44,11;1,4,55}"));
  CHECK(f.verdict == CliqueVerdict::Fail);
  CHECK(f.alpha == 4);
  CHECK(f.threshold == make_rational(19, 6));

  auto r = clique_coclique_condition(A("{81,56,24,1;1,3,56,81}"));
  CHECK(r.verdict == CliqueVerdict::Fail);
  CHECK(r.alpha == 4);
  CHECK(r.threshold == make_rational(19, 6));

  // a1 = 0: alpha = k.
  auto odd = clique_coclique_condition(A("{4,3,3;1,1,2}"));
  CHECK(odd.alpha == 4);
  CHECK(odd.threshold == 0);
  CHECK(odd.verdict == CliqueVerdict::TerwilligerRequired);

  // alpha = 2 when a1 = k - 2; threshold (2(k-1) - k) / 1 = k - 2.
  auto dense = clique_coclique_condition(A("{5,1;1,5}"));
  CHECK(dense.alpha == 2);
  CHECK(dense.threshold == 3);
  CHECK(dense.verdict == CliqueVerdict::Pass);

  CHECK_THROWS_AS(clique_coclique_condition(A("{4;1}")), std::invalid_argument);
  CHECK_THROWS_AS(clique_coclique_condition(A("{4,9;1,1}")), std::invalid_argument);
}

TEST_CASE("property: clique-coclique agrees with the max formulation") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> kd(2, 300);
  for (int t = 0; t < 3000; ++t) {
    std::int64_t k = kd(rng);
    std::int64_t a1 = std::uniform_int_distribution<std::int64_t>(0, k - 1)(rng);
    std::int64_t c2 = std::uniform_int_distribution<std::int64_t>(1, k)(rng);
    IntersectionArray arr{{k, k - 1 - a1}, {1, c2}};
    if (arr.b[1] < 1) continue;
    auto r = clique_coclique_condition(arr);
    BigInt alpha = ceil(make_rational(k, a1 + 1));
    std::optional<BigRational> best;
    for (BigInt s = 2; s <= alpha; ++s) {
      BigRational v = make_rational(BigInt(s * (a1 + 1) - k), BigInt(s * (s - 1) / 2));
      if (!best || v > *best) best = v;
    }
    if (!best || BigRational(c2 - 1) > *best) CHECK(r.verdict == CliqueVerdict::Pass);
    if (r.verdict != CliqueVerdict::Pass) CHECK(best);
  }
}

TEST_CASE("feasibility_check") {
  auto ok = feasibility_check(A("{42,30,12;1,6,28}"));
  CHECK(ok.overall == Verdict::Feasible);
  CHECK(ok.reasons.empty());
  CHECK(ok.q_polynomial);
  std::vector<long> m{1, 42, 210, 90};
  for (std::size_t i = 0; i < 4; ++i) CHECK(*ok.multiplicities[i].integer == m[i]);
  CHECK(ok.clique->verdict == CliqueVerdict::Pass);

  auto frac = feasibility_check(A("{4,3,2;1,1,2}"));
  CHECK(frac.overall == Verdict::Infeasible);
  CHECK_FALSE(frac.multiplicity_integrality.pass);
  CHECK(frac.multiplicity_integrality.detail.find("m1") == 0);

  auto cc = feasibility_check(A("{65,44,11;1,4,55}"));
  CHECK(cc.overall == Verdict::Infeasible);
  CHECK(cc.clique->verdict == CliqueVerdict::Fail);

  auto basic = feasibility_check(A("{4,5,3;1,1,2}"));
  CHECK(basic.overall == Verdict::Infeasible);
  CHECK(basic.reasons.front().find("monotone-b") != std::string::npos);

  auto star = feasibility_check(A("{676,675,31;1,9,650}"));
  CHECK_FALSE(star.p_integrality.pass);
  CHECK(star.p_integrality.detail.find("not integral") != std::string::npos);

  auto parity = feasibility_check(A("{3,2;1,1}"), ExclusionRules::none());  // Petersen
  CHECK(parity.overall == Verdict::FeasibleModuloTerwilliger);
  auto odd_parity = feasibility_check(A("{5,4,1;1,1,4}"), ExclusionRules::none());
  CHECK_FALSE(odd_parity.parity.pass);
}

TEST_CASE("known results") {
  auto t = feasibility_check(A("{44,30,5;1,3,40}"));
  CHECK(t.overall == Verdict::Infeasible);
  CHECK(t.known_result == "excluded-by-terwilliger-graph-classification");
  CHECK(feasibility_check(A("{44,30,5;1,3,40}"), ExclusionRules::none()).overall == Verdict::FeasibleModuloTerwilliger);

  auto c = feasibility_check(A("{21,16,8;1,4,14}"));
  CHECK(c.overall == Verdict::Infeasible);
  CHECK(c.known_result == "excluded-by-nonexistence-result");
  CHECK(feasibility_check(A("{21,16,8;1,4,14}"), ExclusionRules::none()).overall == Verdict::Feasible);

  auto base = arithmetic_feasibility(A("{42,30,12;1,6,28}"));
  auto after = apply_known_results(A("{42,30,12;1,6,28}"), base);
  CHECK(after.overall == base.overall);
  CHECK_FALSE(after.known_result);
}

TEST_CASE("rules files") {
  std::istringstream good("# c\n{ 4,3,3 ; 1,1,2 }  odd4\nTERWILLIGER c2>=3 big\n\n");
  auto rules = ExclusionRules::parse(good);
  REQUIRE(rules.rules().size() == 2);
  CHECK(rules.match(A("{4,3,3;1,1,2}"), CliqueVerdict::Pass) == "odd4");
  CHECK_FALSE(rules.match(A("{44,30,5;1,2,40}"), CliqueVerdict::TerwilligerRequired));
  CHECK_FALSE(rules.match(A("{44,30,5;1,3,40}"), CliqueVerdict::Pass));
  CHECK(rules.match(A("{44,30,5;1,3,40}"), CliqueVerdict::TerwilligerRequired) == "big");

  for (const char* bad : {"TERWILLIGER c2>2 x\n", "TERWILLIGER c2>=2\n", "{4,3;1} name\n", "{4,3;1,1}\n",
                          "garbage\n", "TERWILLIGER c2>=x y\n", "{4,3;1,1} a b\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(ExclusionRules::parse(in), ConfigError);
  }

  std::string path = "drg_rules_test.txt";
  {
    std::ofstream out(path);
    out << "{42,30,12;1,6,28} made-up\n";
  }
  auto loaded = ExclusionRules::load(path);
  CHECK(feasibility_check(A("{42,30,12;1,6,28}"), loaded).overall == Verdict::Infeasible);
  std::remove(path.c_str());
  CHECK_THROWS_AS(ExclusionRules::load("/nonexistent/rules.txt"), ConfigError);

  std::istringstream shipped(default_rules_text());
  CHECK(ExclusionRules::parse(shipped).rules().size() == 2);
}

TEST_CASE("property: determinism and monotone verdicts") {
  for (const auto& arr : random_arrays(60, 8)) {
    auto a = feasibility_check(arr);
    auto b = feasibility_check(arr);
    CHECK(a.reasons == b.reasons);
    CHECK(a.overall == b.overall);
    // Exclusions can only remove.
    auto bare = feasibility_check(arr, ExclusionRules::none());
    if (bare.overall == Verdict::Infeasible) CHECK(a.overall == Verdict::Infeasible);
  }
}
