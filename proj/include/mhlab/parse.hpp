#pragma once

#include <string_view>

#include "mhlab/poly.hpp"

namespace mhlab {

/// Grammar: variables y1, y2; integer literals and rationals a/b; + - * ^ and
/// parentheses; ^ takes a nonnegative integer literal; whitespace ignored.
/// Throws ParseError carrying the 0-based offset of the offending character.
BivariatePoly parse_poly(std::string_view text);

/// Same grammar with double coefficients, additionally accepting decimal
/// literals (1.25, 2e-3) and sqrt(<constant expression>).
NumericPoly parse_numeric_poly(std::string_view text);

}  // namespace mhlab
