#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drg/arith.hpp"

namespace drg {

/// {b0,...,b_{D-1}; c1,...,cD}.  Entries are positive; c1 = 1 and the
/// monotonicity conditions are checked by basic_conditions, not here.
struct IntersectionArray {
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> c;

  int diameter() const { return static_cast<int>(b.size()); }
  std::int64_t k() const { return b.front(); }
  /// b_i with b_D = 0.
  std::int64_t b_at(int i) const { return i < diameter() ? b[static_cast<std::size_t>(i)] : 0; }
  /// c_i with c_0 = 0.
  std::int64_t c_at(int i) const { return i == 0 ? 0 : c[static_cast<std::size_t>(i - 1)]; }
  std::int64_t a_at(int i) const { return k() - b_at(i) - c_at(i); }

  friend bool operator==(const IntersectionArray&, const IntersectionArray&) = default;
  friend auto operator<=>(const IntersectionArray&, const IntersectionArray&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : std::runtime_error(what), position_(position), line_(line) {}
  /// 0-based character offset within the offending text.
  std::size_t position() const { return position_; }
  /// 1-based line number for batch files, 0 otherwise.
  std::size_t line() const { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

IntersectionArray parse_array(std::string_view text);
std::string format_array(const IntersectionArray& arr);

/// One array per line; blank lines and '#' comments are skipped.
std::vector<IntersectionArray> read_arrays(std::istream& in);

struct DerivedParams {
  std::int64_t k = 0;
  std::vector<std::int64_t> a;  // a_0..a_D
  std::vector<BigRational> ki;  // k_0..k_D
  BigRational n;
};

DerivedParams derive(const IntersectionArray& arr);

struct BasicVerdict {
  std::string name;  // monotone-b, monotone-c, cross
  bool pass = true;
  /// First violation, e.g. {"b0", "b1"}.
  std::optional<std::pair<std::string, std::string>> witness;
};

std::vector<BasicVerdict> basic_conditions(const IntersectionArray& arr);
bool passes_basic(const IntersectionArray& arr);

}  // namespace drg
