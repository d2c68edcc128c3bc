#pragma once

#include <string>

#include "bispec/poly.hpp"

namespace bispec {

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | '+' factor | primary ('^' uint)?
//   primary:= NUMBER | NUMBER 'i' | 'i' | 'z1' | 'z2' | '(' expr ')'
// Exponents are nonnegative integers <= 64. Errors carry the 0-based offset.
WeightPoly parse_weight(const std::string& text);

inline constexpr long long MAX_EXPONENT = 64;

}  // namespace bispec
