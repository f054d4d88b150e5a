#pragma once

#include "fsig/poly/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fsig::poly {

/// Variable names x0..x{n-1}.
std::vector<std::string> default_variable_names(std::size_t nvars);

/// Grammar: sums and differences of products of powers of integers,
/// variables and parenthesised expressions. Whitespace is ignored and
/// integer literals of any length are reduced mod p.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars, std::uint32_t p);
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, std::uint32_t p);

/// Canonical form, terms in descending grevlex order, e.g. "x0*x1 + 4*x2^2".
std::string to_string(const Polynomial& f);
std::string to_string(const Polynomial& f, const std::vector<std::string>& names);

}  // namespace fsig::poly
