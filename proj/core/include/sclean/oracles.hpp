#pragma once

/**
 * @file oracles.hpp
 * @brief Exhaustive and linear-algebra oracles for strong cleanness and
 * strong pi-regularity of single matrices.
 */

#include <cstdint>
#include <optional>

#include "sclean/matrix.hpp"

namespace sclean {

/// A = E + U with E idempotent, U invertible (inverse U_inv) and EU = UE.
struct StrongCleanCertificate {
  Matrix E;
  Matrix U;
  Matrix U_inv;
};

/// A^(k+1)·X = A^k and Y·A^(k+1) = A^k.
struct PiRegularCertificate {
  unsigned k;
  Matrix X;
  Matrix Y;
};

/// Some X with A·X = B, solved stalk by stalk. Z/p^k and Z_(p) stalks use
/// elimination with minimal-valuation pivots; table stalks are enumerated
/// (BudgetExceeded past 4·10^6 candidates per column).
std::optional<Matrix> linear_solve(const Matrix& a, const Matrix& b);

/// Scans every E in canonical order (row-major, entry (0,0) most significant)
/// and returns the first strongly clean decomposition, or nullopt after an
/// exhaustive scan. Throws InfiniteRing for Z_(p) stalks and BudgetExceeded
/// when |R|^(n^2) exceeds the budget.
std::optional<StrongCleanCertificate> strongly_clean_bruteforce(const Matrix& a, std::uint64_t budget = 1'000'000);

/// Largest stalk nilpotency index (1 for Z_(p)).
int max_nilpotency_index(const Ring& ring);

/// Least k <= n·max_nilpotency_index with both one-sided equations solvable.
/// Throws InfiniteRing for Z_(p) stalks.
std::optional<PiRegularCertificate> pi_regular_oracle(const Matrix& a);

/// Strong-clean certificate built from E alone (U = A - E); nullopt if E does
/// not qualify.
std::optional<StrongCleanCertificate> certificate_from_idempotent(const Matrix& a, const Matrix& e);

}  // namespace sclean
