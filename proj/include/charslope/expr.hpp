#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "charslope/tree.hpp"

namespace charslope {

/// Syntax error with a 1-based position and the tokens that would have been accepted.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected, std::string found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Maximum nesting depth accepted by the parser.
inline constexpr std::size_t kMaxExpressionDepth = 256;

/// Parses the knot expression grammar:
///
///   knot   := "unknot" | "torus(" int "," int ")" | "cable(" int "," int ";" knot ")"
///           | "sum(" knot { "," knot }+ ")" | "hyp(" geom [ ";" knot { "," knot }* ] ")"
///   geom   := identifier | "{" "sys" "=" decimal [ "," "mu" "=" list ] [ "," "lk" "=" list ] "}"
///
/// The result is not validated.
SatelliteTree parse_knot(std::string_view text);

/// Canonical single-line form, no whitespace. parse_knot(render(t)) == t.
std::string render(const SatelliteTree& tree);

/// Shortest fixed-notation decimal that reads back to the same double.
std::string format_decimal(double v);

}  // namespace charslope
