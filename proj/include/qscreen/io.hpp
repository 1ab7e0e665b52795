#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qscreen/design.hpp"
#include "qscreen/linalg.hpp"

namespace qscreen {

/// Malformed input text; line() is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Design text format:
///
///   # comment
///   n m s_1 ... s_m
///   n rows of m integers      (runs as rows, the default)
///
/// With `factors_as_rows` the body is m rows of n integers instead; the
/// header is unchanged.
Design read_design(std::istream& in, bool factors_as_rows = false, const std::string& source = "<input>");
void write_design(std::ostream& out, const Design& design);

/// "builtin:D1", "builtin:D2", "builtin:L18", or a file path.
Design load_design(const std::string& source, bool factors_as_rows = false);

/// Covariance text format: `n` followed by an n x n whitespace-separated matrix.
Matrix read_covariance(std::istream& in, const std::string& source = "<input>");
Matrix load_covariance(const std::string& path);

}  // namespace qscreen
