#pragma once

#include <optional>
#include <vector>

#include "sclean/ring.hpp"

namespace sclean {

/// Non-negative rational square root when q is the square of a rational:
/// the reduced numerator and denominator must both be perfect squares.
std::optional<Rational> rational_sqrt(const Rational& q);

/// All distinct rational roots of a polynomial with rational coefficients
/// (coeffs low degree first, leading coefficient nonzero), sorted ascending.
/// Returns nullopt when the integer content is too large to factor by trial
/// division, so callers can report an incomplete search.
std::optional<std::vector<Rational>> rational_roots(const std::vector<Rational>& coeffs);

}  // namespace sclean
