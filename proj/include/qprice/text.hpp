#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qprice {

/// Input text that could not be parsed. `where` names the line or key.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Shortest decimal text that parses back to the same double; always has a
/// decimal point or exponent ("80.0", not "80").
std::string format_number(double value);

/// Fixed notation with `decimals` places; NaN renders as "nan".
std::string format_fixed(double value, int decimals);

/// Strict parse of a whole field as a finite double (surrounding blanks allowed).
std::optional<double> parse_number(std::string_view text);

/// Splits one CSV record. A field is quoted only when it starts with '"';
/// inside it "" is an escaped quote. Quotes inside unquoted fields are kept
/// literally. Returns nullopt for an unterminated or malformed quoted field.
std::optional<std::vector<std::string>> split_csv_record(std::string_view line);

/// Quotes a field if it contains a comma, starts with a quote or has a line break.
std::string csv_field(std::string_view field);

/// Splits text into lines, dropping a UTF-8 BOM and trailing '\r'.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace qprice
