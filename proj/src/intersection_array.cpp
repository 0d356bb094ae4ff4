#include "drg/intersection_array.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace drg {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  IntersectionArray run() {
    IntersectionArray arr;
    skip_ws();
    expect('{');
    arr.b = list(';');
    arr.c = list('}');
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after '}'");
    if (arr.b.size() != arr.c.size())
      throw ParseError("unequal list lengths: " + std::to_string(arr.b.size()) + " b entries, " +
                           std::to_string(arr.c.size()) + " c entries",
                       pos_ == 0 ? 0 : pos_ - 1);
    return arr;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::vector<std::int64_t> list(char terminator) {
    std::vector<std::int64_t> out;
    while (true) {
      out.push_back(entry());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(terminator);
      return out;
    }
  }

  std::int64_t entry() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      pos_ = start;
      fail("non-integer entry");
    }
    std::string_view tok = s_.substr(start, pos_ - start);
    if (tok.empty()) {
      pos_ = start;
      fail("expected an integer");
    }
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(tok.data() + (tok[0] == '+' ? 1 : 0), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) {
      pos_ = start;
      fail(ec == std::errc::result_out_of_range ? "entry out of range" : "non-integer entry '" + std::string(tok) + "'");
    }
    if (v <= 0) {
      pos_ = start;
      fail("entries must be positive");
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

IntersectionArray parse_array(std::string_view text) { return Parser(text).run(); }

std::string format_array(const IntersectionArray& arr) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < arr.b.size(); ++i) out << (i ? "," : "") << arr.b[i];
  out << ';';
  for (std::size_t i = 0; i < arr.c.size(); ++i) out << (i ? "," : "") << arr.c[i];
  out << '}';
  return out.str();
}

std::vector<IntersectionArray> read_arrays(std::istream& in) {
  std::vector<IntersectionArray> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    std::string body = line.substr(0, hash);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_array(body));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.position(), lineno);
    }
  }
  return out;
}

DerivedParams derive(const IntersectionArray& arr) {
  DerivedParams d;
  d.k = arr.k();
  int D = arr.diameter();
  for (int i = 0; i <= D; ++i) d.a.push_back(arr.a_at(i));
  d.ki.emplace_back(1);
  d.n = 1;
  for (int i = 1; i <= D; ++i) {
    BigRational next = d.ki.back() * arr.b_at(i - 1) / BigRational(arr.c_at(i));
    next.canonicalize();
    d.n += next;
    d.ki.push_back(std::move(next));
  }
  return d;
}

std::vector<BasicVerdict> basic_conditions(const IntersectionArray& arr) {
  auto label = [](char ch, int i) { return std::string(1, ch) + std::to_string(i); };
  int D = arr.diameter();

  BasicVerdict mb{"monotone-b", true, std::nullopt};
  // k = b0 > b1 >= ... >= b_{D-1}
  for (int i = 1; i < D && mb.pass; ++i) {
    bool ok = i == 1 ? arr.b_at(0) > arr.b_at(1) : arr.b_at(i - 1) >= arr.b_at(i);
    if (!ok) mb = {"monotone-b", false, std::pair{label('b', i - 1), label('b', i)}};
  }

  BasicVerdict mc{"monotone-c", true, std::nullopt};
  if (arr.c_at(1) != 1) mc = {"monotone-c", false, std::pair{label('c', 1), std::string("1")}};
  for (int i = 2; i <= D && mc.pass; ++i)
    if (arr.c_at(i - 1) > arr.c_at(i)) mc = {"monotone-c", false, std::pair{label('c', i - 1), label('c', i)}};

  BasicVerdict cross{"cross", true, std::nullopt};
  for (int i = 0; i < D && cross.pass; ++i)
    for (int j = 1; i + j <= D && cross.pass; ++j)
      if (arr.b_at(i) < arr.c_at(j)) cross = {"cross", false, std::pair{label('b', i), label('c', j)}};

  return {mb, mc, cross};
}

bool passes_basic(const IntersectionArray& arr) {
  for (const auto& v : basic_conditions(arr))
    if (!v.pass) return false;
  return true;
}

}  // namespace drg
