#pragma once

// Sparse interpolation over Q: for primes p where f^(p) keeps all t terms,
// the exponents of f^(p) are the true exponents reduced into {1, ..., p-1}.
// Their elementary symmetric functions, combined over many p - 1 by CRT,
// give g(z) = prod (z - e_i) over Z; its integer roots are the exponents, and
// each coefficient is rebuilt from its residues by rational reconstruction.

#include <cstdint>
#include <vector>

#include "lacuna/blackbox.hpp"
#include "lacuna/prime_oracle.hpp"
#include "lacuna/sparsest_shift.hpp"

namespace lacuna {

struct PrimeImage {
  std::uint64_t p = 0;
  DensePolyMod fp;
  std::vector<std::uint64_t> exponents;  // ascending, within 1..p-1
  std::vector<std::uint64_t> coeffs;     // coeffs[i] belongs to exponents[i]
  std::uint64_t constant = 0;

  std::size_t tau() const { return exponents.size(); }
};

PrimeImage make_image(const DensePolyMod& fp);

/// Monic integer polynomial, ascending coefficients a_0..a_t with a_t = 1.
struct SymPoly {
  std::vector<Int> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Int eval(const Int& z) const;

  friend bool operator==(const SymPoly&, const SymPoly&) = default;
};

struct InterpOptions {
  ReduceOptions reduce;
  double mu = 1.0;
  unsigned max_regenerations = 10;
  unsigned max_retries = 16;   // reconstruction attempts before giving up
  std::uint64_t seed = 0;      // root-splitting seed
};

/// log2 Q must reach this before g is recovered: B_T (B_N + 1) + 1.
std::uint64_t q_target(const Bounds& bounds);

/// Draws primes and keeps the images of maximal tau, flushing everything
/// whenever a larger tau shows up.
class ImageCollector {
 public:
  ImageCollector(const Bounds& bounds, const InterpOptions& options = {});

  /// Draws primes until P >= 2^(2 BH + 1), Q >= 2^q_target and the oracle
  /// guarantees a good prime. With `require_new`, at least one more image is
  /// accepted first.
  void collect(const ModularBlackBox& bb, bool require_new = false);

  /// Forgets the most recently accepted image.
  void drop_newest();

  bool satisfied() const;

  const std::vector<PrimeImage>& images() const { return images_; }
  const Int& product() const { return product_; }   // P, product of the image primes
  const Int& lcm() const { return lcm_; }           // Q, lcm of p - 1
  std::uint64_t primes_drawn() const { return drawn_; }
  const PrimeStream& stream() const { return stream_; }

 private:
  void recompute();

  Bounds bounds_;
  InterpOptions options_;
  PrimeStream stream_;
  std::vector<PrimeImage> images_;
  long best_tau_ = -1;
  Int product_ = 1;
  Int lcm_ = 1;
  std::uint64_t drawn_ = 0;
};

std::vector<PrimeImage> collect_images(const ModularBlackBox& bb, const Bounds& bounds,
                                       const InterpOptions& options = {});

/// prod (z - e) over Z_m. Requires m >= 2.
DensePolyMod build_g_image(const std::vector<std::uint64_t>& exponents, std::uint64_t m);

/// Coefficient-wise CRT over the moduli p_i - 1 and symmetric lift.
/// Throws InconsistentResidues, or std::invalid_argument when the images
/// differ in degree.
SymPoly recover_g(const std::vector<PrimeImage>& images);

/// The deg g distinct integer roots of g in [1, bound], ascending. Throws
/// NotSplitting if g does not split that way.
std::vector<std::uint64_t> integer_roots(const SymPoly& g, const Int& bound, std::uint64_t seed = 0);

/// Matches every exponent with its residue remo(e, p - 1) in each image and
/// reconstructs the coefficients with bound 2^BH. Throws NoMatch,
/// AmbiguousMatch or NoReconstruction.
ShiftedLacunary match_and_recover(const std::vector<std::uint64_t>& roots, const std::vector<PrimeImage>& images,
                                  std::uint64_t BH);

/// The sparse (unshifted) f behind the black box.
ShiftedLacunary sparse_interpolate(const ModularBlackBox& bb, const Bounds& bounds, const InterpOptions& options = {});

/// Sparsest shift followed by sparse interpolation of f(x + alpha).
ShiftedLacunary full_interpolate(const ModularBlackBox& bb, const Bounds& bounds, const InterpOptions& options = {});

/// Sparse interpolation of f(x + alpha) for a known alpha.
ShiftedLacunary interpolate_with_shift(const ModularBlackBox& bb, const Bounds& bounds, const Rat& alpha,
                                       const InterpOptions& options = {});

}  // namespace lacuna
