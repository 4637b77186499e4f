#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "inp/formula.hpp"

namespace inp {

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}
  /// Byte offset into the input at which the error was detected.
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Parses the concrete grammar
///
///   phi ::= "true" | "false" | ident | "!" phi | "X" phi | "F" phi | "G" phi
///         | "(" phi ")" | phi "U" phi | phi "&&" phi | phi "||" phi
///         | phi "->" phi
///
/// with "<>" and "[]" as synonyms for F and G. Precedence, tightest first:
/// unary, U (right associative), &&, ||, -> (right associative).
/// Identifiers match [a-zA-Z][a-zA-Z0-9_]* and are interned into `props`.
Formula parse(std::string_view text, PropRegistry& props);

/// Same grammar, but rejects the next operator: task formulas live in the
/// fragment without X.
Formula parse_task(std::string_view text, PropRegistry& props);

}  // namespace inp
