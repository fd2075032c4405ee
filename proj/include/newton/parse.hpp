#pragma once

#include "newton/rational_poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace newton {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset;
};

// Grammar: rational coefficients, variable t, operators + - * / ^ and
// parentheses. '^' takes a nonnegative integer exponent; '/' requires a
// nonzero constant divisor. Whitespace is free.
RationalPoly parse_polynomial(const std::string& text);

// Parses a single rational: "5", "-3/4". Rejects anything else.
Rat parse_rational(const std::string& text);

} // namespace newton
