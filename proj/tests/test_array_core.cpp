#include <random>
#include <sstream>

#include "doctest.h"
#include "drg/intersection_array.hpp"

using namespace drg;

TEST_CASE("parse_array") {
  auto a = parse_array("{44,30,5;1,3,40}");
  CHECK(a.diameter() == 3);
  CHECK(a.b == std::vector<std::int64_t>{44, 30, 5});
  CHECK(a.c == std::vector<std::int64_t>{1, 3, 40});

  auto o = parse_array("{ 4 , 3 , 3 ; 1 , 1 , 2 }");
  CHECK(o.b == std::vector<std::int64_t>{4, 3, 3});
  CHECK(o.c == std::vector<std::int64_t>{1, 1, 2});

  CHECK_THROWS_WITH_AS(parse_array("{4,3;1}"), doctest::Contains("unequal"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  auto position_of = [](const char* s) -> std::size_t {
    try {
      parse_array(s);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position_of("{4,x;1,1}") == 3);
  CHECK(position_of("{4,3;1,0}") == 7);
  CHECK(position_of("{4,-3;1,1}") == 3);
  CHECK(position_of("{4,3.5;1,1}") == 3);
  CHECK(position_of("4,3;1,1}") == 0);
  CHECK(position_of("{4,3;1,1} x") == 10);
  CHECK(position_of("{4,3;1,1") == 8);
  CHECK(position_of("{;1}") == 1);
  CHECK(position_of("{99999999999999999999;1}") == 1);
}

TEST_CASE("format_array") {
  CHECK(format_array(parse_array("{ 12 ,10, 2 ; 1 ,2, 8 }")) == "{12,10,2;1,2,8}");
  CHECK(format_array(parse_array("{4,3,3;1,1,2}")) == "{4,3,3;1,1,2}");
  CHECK(format_array(parse_array("{105,72,24;1,12,70}")) == "{105,72,24;1,12,70}");
}

TEST_CASE("property: format/parse round trip") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<std::int64_t> v(1, 100000);
  std::uniform_int_distribution<int> spaces(0, 2);
  for (int t = 0; t < 1000; ++t) {
    int D = len(rng);
    std::string s = std::string(static_cast<std::size_t>(spaces(rng)), ' ') + "{";
    for (int i = 0; i < 2 * D; ++i) {
      if (i) s += (i == D ? ";" : ",");
      s += std::string(static_cast<std::size_t>(spaces(rng)), ' ') + std::to_string(v(rng)) + std::string(static_cast<std::size_t>(spaces(rng)), '\t');
    }
    s += "}";
    auto once = format_array(parse_array(s));
    CHECK(format_array(parse_array(once)) == once);
    CHECK(once.find(' ') == std::string::npos);
  }
}

TEST_CASE("derive") {
  auto o = derive(parse_array("{4,3,3;1,1,2}"));
  CHECK(o.a == std::vector<std::int64_t>{0, 0, 0, 2});
  CHECK(o.ki == std::vector<BigRational>{1, 4, 12, 18});
  CHECK(o.n == 35);

  auto s = derive(parse_array("{42,30,12;1,6,28}"));
  CHECK(s.a == std::vector<std::int64_t>{0, 11, 24, 14});
  CHECK(s.ki == std::vector<BigRational>{1, 42, 210, 90});
  CHECK(s.n == 343);

  CHECK(derive(parse_array("{44,30,5;1,3,40}")).a[1] == 13);

  auto frac = derive(parse_array("{4,3,2;1,2,3}"));
  CHECK(frac.ki[2] == 6);
  CHECK(frac.ki[3] == 4);
  CHECK(derive(parse_array("{5,3;1,2}")).ki[2] == BigRational(15, 2));
}

TEST_CASE("basic_conditions") {
  for (const auto& v : basic_conditions(parse_array("{42,30,12;1,6,28}"))) CHECK(v.pass);
  for (const auto& v : basic_conditions(parse_array("{6,4,4;1,1,3}"))) CHECK(v.pass);

  auto bad = basic_conditions(parse_array("{4,5,3;1,1,2}"));
  REQUIRE(bad.size() == 3);
  CHECK(bad[0].name == "monotone-b");
  CHECK_FALSE(bad[0].pass);
  CHECK(bad[0].witness == std::pair<std::string, std::string>{"b0", "b1"});

  auto c1 = basic_conditions(parse_array("{4,3,3;2,2,2}"));
  CHECK_FALSE(c1[1].pass);
  auto nonmono = basic_conditions(parse_array("{6,4,4;1,3,2}"));
  CHECK(nonmono[1].witness == std::pair<std::string, std::string>{"c2", "c3"});
  auto cross = basic_conditions(parse_array("{6,2,2;1,3,3}"));
  CHECK_FALSE(cross[2].pass);
  CHECK(cross[2].witness == std::pair<std::string, std::string>{"b1", "c2"});
  CHECK_FALSE(passes_basic(parse_array("{6,2,2;1,3,3}")));
}

TEST_CASE("property: edge double counting and n >= 1 + k") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> v(1, 60);
  for (int t = 0; t < 1000; ++t) {
    IntersectionArray arr;
    int D = 1 + t % 4;
    for (int i = 0; i < D; ++i) {
      arr.b.push_back(v(rng));
      arr.c.push_back(v(rng));
    }
    arr.c[0] = 1;
    auto d = derive(arr);
    for (int i = 0; i < D; ++i)
      CHECK(d.ki[static_cast<std::size_t>(i)] * arr.b_at(i) == d.ki[static_cast<std::size_t>(i + 1)] * arr.c_at(i + 1));
    CHECK(d.n >= 1 + arr.k());
    BigRational sum = 0;
    for (const auto& k : d.ki) sum += k;
    CHECK(sum == d.n);
  }
}

TEST_CASE("batch files") {
  std::istringstream ok("# comment\n\n{4,3,3;1,1,2}  # Odd graph\n  {6,4,2;1,2,3}\n");
  auto arrs = read_arrays(ok);
  REQUIRE(arrs.size() == 2);
  CHECK(format_array(arrs[1]) == "{6,4,2;1,2,3}");

  std::istringstream bad("{4,3,3;1,1,2}\n\n{4,3;1}\n");
  try {
    read_arrays(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
