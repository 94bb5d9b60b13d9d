#pragma once

// Root finding for the small polynomials met during reconstruction: roots in
// a prime field by gcd with z^r - z and equal-degree splitting, and rational
// roots of bounded height lifted from one such field.

#include <cstdint>
#include <vector>

#include "lacuna/arith.hpp"

namespace lacuna {

/// The distinct roots in Z_r, ascending, of the polynomial with ascending
/// coefficients `coeffs` (reduced modulo r on entry). r must be a prime below
/// 2^63. Splitting is randomised over a deterministic seed sequence, so the
/// result depends only on the inputs. Throws std::invalid_argument for the
/// zero polynomial.
std::vector<std::uint64_t> roots_mod_prime(std::vector<std::uint64_t> coeffs, std::uint64_t r,
                                           std::uint64_t seed = 0);

/// All distinct rational roots a/b with |a|, b <= 2^bits, ascending. Found
/// modulo a prime above 2^(2 bits + 1), lifted by rational reconstruction and
/// checked exactly. Requires bits <= 30; throws std::domain_error otherwise.
std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs, std::uint64_t bits);

}  // namespace lacuna
