#pragma once

// Number-theoretic transforms over three fixed NTT primes, combined by Garner
// to give exact cyclic convolutions of residue vectors modulo a word prime.

#include <cstdint>
#include <vector>

namespace lacuna::detail {

/// Cyclic convolution of a and b (each of length <= len, len a power of two)
/// reduced modulo p. Exact while len * (p-1)^2 < 2^86; p < 2^26 is checked.
std::vector<std::uint64_t> cyclic_convolution_mod(const std::vector<std::uint64_t>& a,
                                                  const std::vector<std::uint64_t>& b,
                                                  std::size_t len, std::uint64_t p);

/// Largest supported transform length.
constexpr std::size_t kMaxNttLength = std::size_t{1} << 23;

}  // namespace lacuna::detail
