#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pinch/rational_function.hpp"

namespace pinch {

// Expression grammar shared by file formats and the CLI:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' uint)?
//   base   := number | ident | '(' expr ')'
// "i" is the imaginary unit.  Numbers: "7", "3/4", "2.5", "1e-3" — all exact.
// Identifiers must appear in `vars`; anything else is rejected.

RationalFunction parse_rational_function(std::string_view text,
                                         const std::map<std::string, VarId>& vars);

// As above but requires the result to be a polynomial.
Polynomial parse_polynomial(std::string_view text, const std::map<std::string, VarId>& vars);

// Permissive variants: identifiers are interned on first sight instead of
// being checked against a fixed set.
RationalFunction parse_rational_function(std::string_view text);
Polynomial parse_polynomial(std::string_view text);

// Constant expression (no identifiers except i), e.g. "3i", "1+2i", "-1/2".
GaussianRational parse_complex_literal(std::string_view text);

}  // namespace pinch
