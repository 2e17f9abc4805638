#pragma once

#include <string_view>

#include "rank2/exact/ratfunc.hpp"

namespace rank2 {

// Parses the shared expression grammar into a rational function on `ring`:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
//
// Rationals are written as quotients of integers. Exponents must be
// nonnegative integer literals. Throws ParseError with a character offset.
RatFunc parse_expression(std::string_view text, const RingPtr& ring);

}  // namespace rank2
