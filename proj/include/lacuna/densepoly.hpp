#pragma once

// Dense polynomials over Z_m for word-size m (m < 2^32), with the operations
// the interpolation algorithms need: full-grid interpolation over a prime
// field, Taylor shifts, term counting and the exhaustive sparsest-shift search.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lacuna {

class DensePolyMod {
 public:
  DensePolyMod() = default;

  /// Reduces every coefficient modulo `modulus` and trims trailing zeros.
  DensePolyMod(std::uint64_t modulus, std::vector<std::uint64_t> coeffs);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  std::uint64_t operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }

  std::uint64_t eval(std::uint64_t x) const;

  friend bool operator==(const DensePolyMod&, const DensePolyMod&) = default;

 private:
  std::uint64_t modulus_ = 2;
  std::vector<std::uint64_t> coeffs_;
};

struct InterpolationOptions {
  /// Primes below this use Newton interpolation; larger ones the full-grid transform.
  std::uint64_t threshold = 512;
};

/// The unique polynomial of degree < p through (i, values[i]) for i = 0..p-1.
/// Throws std::invalid_argument on a length mismatch or a composite p.
DensePolyMod interpolate_range(std::span<const std::uint64_t> values, std::uint64_t p,
                               const InterpolationOptions& options = {});

/// Newton interpolation through arbitrary distinct points modulo a prime.
DensePolyMod interpolate_newton(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                                std::uint64_t p);

/// Closed-form interpolation from the full grid Z_p; always uses the transform.
DensePolyMod interpolate_full_grid(std::span<const std::uint64_t> values, std::uint64_t p);

/// f(0), ..., f(p-1).
std::vector<std::uint64_t> evaluate_grid(const DensePolyMod& f);

/// f(x + gamma).
DensePolyMod taylor_shift(const DensePolyMod& f, std::uint64_t gamma);

/// Number of nonzero coefficients of degree >= 1.
std::size_t tau(const DensePolyMod& f);

struct ShiftSearch {
  std::uint64_t gamma = 0;
  std::size_t tau = 0;
  bool tie = false;  // more than one gamma attains the minimum

  friend bool operator==(const ShiftSearch&, const ShiftSearch&) = default;
};

/// Minimises tau(f(x + gamma)) over all gamma in Z_p; the smallest minimiser
/// is reported. Requires a prime modulus and deg f < p.
///
/// Candidates are pruned without losing exactness: if f(x + gamma) has s
/// nonconstant terms and deg f = d > s, one of the coefficients of
/// x^(d-1), ..., x^(d-s) vanishes, so gamma is a root of one of the first s
/// Hasse-derivative polynomials c_k(y) = [x^(d-k)] f(x + y).
ShiftSearch min_shift(const DensePolyMod& f);

/// As min_shift, but gives up (nullopt) once it is certain that the minimum
/// exceeds `limit`. Much cheaper when a small minimum is expected.
std::optional<ShiftSearch> min_shift_within(const DensePolyMod& f, std::size_t limit);

}  // namespace lacuna
