#pragma once

// Recovering the sparsest shift alpha of a polynomial seen only through a
// modular black box: alpha mod p is read off f^(p) for enough primes with
// large reduced degree and lifted by CRT and rational reconstruction. When
// f has low degree no such prime exists, and f itself is rebuilt densely.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lacuna/blackbox.hpp"

namespace lacuna {

/// size(alpha) <= BA, t <= BT, size(c_i) <= BH, log2(deg) <= BN.
struct Bounds {
  std::uint64_t BA = 1;
  std::uint64_t BT = 1;
  std::uint64_t BH = 1;
  std::uint64_t BN = 1;

  /// Zeros lifted to one.
  Bounds normalized() const;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// The tightest bounds satisfied by f (then normalized).
Bounds tight_bounds(const ShiftedLacunary& f);

enum class ShiftPath { Modular, DenseFallback };

struct ShiftResult {
  Rat alpha;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> residues;  // (alpha mod p, p)
  ShiftPath path = ShiftPath::Modular;
  std::optional<RationalPoly> dense;  // the recovered f on the dense path
  std::uint64_t primes_drawn = 0;
};

struct ShiftOptions {
  ReduceOptions reduce;
  double mu = 1.0;
  unsigned max_regenerations = 10;
};

ShiftResult sparsest_shift(const ModularBlackBox& bb, const Bounds& bounds, const ShiftOptions& options = {});

/// The alpha with |num|, den <= 2^BA minimising tau(f(x + alpha)); ties go to
/// the smaller size_of(alpha), then the smaller alpha.
Rat dense_sparsest_shift(const RationalPoly& f, std::uint64_t BA);

/// f exactly, for deg f <= 2 BT: interpolation at 0..2BT modulo the least prime
/// above 2^(2 BT BA + BH), rational reconstruction, and a check at the next
/// prime (more primes are folded in until the reconstruction checks out).
/// Primes whose evaluation fails are skipped. `primes_used`, when given,
/// receives every prime whose evaluations were used, in order.
RationalPoly dense_case_recover(const ModularBlackBox& bb, const Bounds& bounds,
                                std::vector<Int>* primes_used = nullptr);

/// The a/b with |a|, b <= 2^BA congruent to every alpha_p modulo its prime.
Rat reconstruct_shift(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& residues, std::uint64_t BA);

}  // namespace lacuna
