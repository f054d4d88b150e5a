#pragma once

#include "fsig/poly/ideal.hpp"

#include <vector>

namespace fsig::poly::detail {

/// Minimal elements under divisibility, grevlex ascending.
std::vector<Monomial> minimalize(std::vector<Monomial> monomials);

bool has_all_pure_powers(const std::vector<Monomial>& monomials, std::size_t nvars);

/// Minimal generators of the grevlex initial ideal (the ideal itself when
/// monomial).
std::vector<Monomial> initial_monomials(const Ideal& ideal, const Deadline& deadline);

}  // namespace fsig::poly::detail
