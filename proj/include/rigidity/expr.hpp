#pragma once

#include "rigidity/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rigidity {

/// Parse polynomial text over the given variables.
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := coeff | name ['^' nat] | '(' expr ')' ['^' nat]
///   coeff  := rational | rational 'i' | 'i'
///
/// Whitespace (including newlines) is ignored. 'i' is the imaginary unit and can never
/// be a variable. Throws ParseError with a 1-based position.
Polynomial parse_poly(std::string_view text, const Variables& vars);

/// Identifiers occurring in the text, in order of first appearance ('i' excluded).
/// Useful for choosing a default variable list before parsing.
std::vector<std::string> identifiers_in(std::string_view text);

/// Canonical text: grlex-descending terms, explicit '*', and coefficients rendered as
/// "3/2*X", "i*T", "(1 + 2i)*X". parse_poly(format_poly(p), vars) == p.
std::string format_poly(const Polynomial& p);

/// Rendering of a lone scalar in the same style ("0", "-3/2", "2i", "(1 - i)").
std::string format_scalar(const GaussianRational& c);

}  // namespace rigidity
