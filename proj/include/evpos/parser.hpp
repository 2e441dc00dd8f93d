#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "evpos/laurent.hpp"

namespace evpos {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (offset " + std::to_string(offset) + ")"),
          offset_(offset),
          message_(message) {}

    std::size_t offset() const { return offset_; }
    const std::string& bare_message() const { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

// Grammar (whitespace insensitive):
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' ['-'] integer]
//   base   := integer ['/' integer] | identifier | '(' expr ')'
// '^' does not associate: x^2^3 is rejected.  A negative exponent is allowed
// only on a bare variable.  '/' is allowed only inside a rational literal.
LaurentPolynomial parse_polynomial(const std::string& text,
                                   const std::vector<std::string>& variables);

// Canonical rendering: terms in increasing lexicographic exponent order,
// exact coefficients, explicit '*' and '^'.  parse(format(p)) == p.
std::string format_polynomial(const LaurentPolynomial& p,
                              const std::vector<std::string>& variables);

// Identifiers appearing in the text, deduplicated, in natural sorted order
// (shorter-number-aware, so x2 < x10).
std::vector<std::string> collect_identifiers(const std::string& text);

}  // namespace evpos
