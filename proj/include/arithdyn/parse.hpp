#pragma once

// Textual map input.
//
// Expression grammar (whitespace ignored between tokens):
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := ('+' | '-') unary | power
//   power    := primary ('^' exponent)?
//   exponent := integer ('^' exponent)? | '(' exponent ')'
//   primary  := integer | 'x' | '(' expr ')'
//
// '^' binds tightest and is right-associative; exponents are nonnegative
// integer constants. Rational constants are written as quotients ("1/2").
// Sums of fractions are combined over the lcm of their denominators;
// products and quotients are not cancelled, so "(x^2-1)/(x-1)" is rejected
// by the coprimality check.
//
// Coefficient format: "num=c_k,...,c_0;den=c_j,...,c_0", highest degree
// first, rational entries allowed.

#include <string_view>

#include "arithdyn/ratmap.hpp"

namespace arithdyn {

RatMap parse_map_expression(std::string_view text);
RatMap parse_coefficient_format(std::string_view text);

/// Coefficient format if the text contains "num=", expression otherwise.
RatMap parse_map(std::string_view text);

}  // namespace arithdyn
