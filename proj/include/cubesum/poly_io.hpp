#pragma once

// Text, JSON and LaTeX forms of polynomials.
//
// Text:  36*t^3 - 54*t^2 + m + 27*t - 3     (terms in canonical order)
// JSON:  {"vars": ["m","t"], "terms": [{"e": [0,3], "c": "36"}, ...]}
// LaTeX: 36 t^{3} - 54 t^{2} + m + 27 t - 3

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cubesum/polynomial.hpp"

namespace cubesum {

std::string to_text(const Polynomial& p);
std::string to_latex(const Polynomial& p);

/// Parses integer expressions in variables with + - * ^ and parentheses.
/// Exponents must be non-negative integer literals. Throws ParseError with
/// the 1-based column of the offending character (line is always 1).
Polynomial parse_polynomial(std::string_view text);

nlohmann::json to_json(const Polynomial& p);
/// Throws ParseError when the value does not match the schema.
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace cubesum
