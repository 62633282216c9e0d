#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace navforge {

enum class Errc {
  InvalidArgument,
  InvalidDate,
  DateOutOfRange,
  ScaleOverflow,
  NegativeAge,
  InvalidSubframeId,
  FieldOverflow,
  MissingField,
  NegativeInterval,
  NonPositiveAxis,
  HalfWeekExceeded,
  MissingHeaderEnd,
  MalformedNumber,
  MissingValue,
  MalformedEpoch,
  TruncatedRecord,
  InvalidRecord,
  NoConvergence,
  InsufficientSatellites,
  SingularGeometry,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse failures carry a 1-based line and column into the source text
// (column 0 when the whole line is at fault).
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, std::size_t column, const std::string& what)
      : Error(code, "line " + std::to_string(line) +
                        (column ? ", column " + std::to_string(column) : std::string{}) +
                        ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace navforge
