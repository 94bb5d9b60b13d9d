#pragma once

// Exact integer, rational and modular primitives shared by every other module.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lacuna {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Builds num/den in lowest terms with a positive denominator. Throws
/// std::invalid_argument when den == 0.
Rat make_rat(const Int& num, const Int& den);

/// Parses "a" or "a/b" (decimal, optional sign on a). Throws std::invalid_argument.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& q);
std::string to_string(const Int& z);

/// ceil(log2(|a|+1)) + ceil(log2(b+1)) + 1 for q = a/b in lowest terms.
std::uint64_t size_of(const Rat& q);

/// Number of bits of |z|; 0 for z == 0.
std::uint64_t bit_length(const Int& z);

/// floor(log2 z) as a real, good enough for threshold tests (z > 0).
double log2_of(const Int& z);

// ---------------------------------------------------------------------------
// Residues
// ---------------------------------------------------------------------------

/// a rem m, in {0, ..., m-1}.
Int rem(const Int& a, const Int& m);

/// The representative of a modulo m in {1, ..., m}. Throws std::invalid_argument for m == 0.
Int remo(const Int& a, const Int& m);
std::uint64_t remo(std::uint64_t a, std::uint64_t m);

/// A value reduced modulo some modulus >= 1.
struct Residue {
  Int value;
  Int modulus;

  Residue(Int v, Int m);

  /// Representative in [-floor(m/2), floor(m/2)] (ties go to the positive side).
  Int symmetric() const;

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value == b.value && a.modulus == b.modulus;
  }
};

/// Chinese remaindering for moduli that need not be coprime.
/// Throws InconsistentResidues when gcd(m_a, m_b) does not divide the difference.
Residue crt_pair(const Residue& a, const Residue& b);

/// Finds a/b with |a| <= bound, 1 <= b <= bound, a == b*u (mod m) by the
/// half-extended Euclidean scheme. Unique when m >= 2*bound^2 + 1.
/// Throws NoReconstruction.
Rat rational_reconstruct(const Residue& u, const Int& bound);

/// Same, with numerator and denominator bounds chosen as large as the modulus
/// allows: floor(sqrt((m-1)/2)).
Rat rational_reconstruct_balanced(const Residue& u);

Int inv_mod(const Int& a, const Int& m);

/// q mod m. Throws DenominatorVanished if the denominator is not invertible.
Int rat_mod(const Rat& q, const Int& m);

// ---------------------------------------------------------------------------
// Word-size modular arithmetic
// ---------------------------------------------------------------------------

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Throws std::domain_error when a is not invertible modulo m.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

std::uint64_t rat_mod(const Rat& q, std::uint64_t m);

/// Barrett reduction for a fixed modulus n with 2 <= n < 2^32.
class FastMod {
 public:
  explicit FastMod(std::uint64_t n);

  std::uint64_t modulus() const { return n_; }

  std::uint64_t reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * inv_) >> 64);
    std::uint64_t r = x - q * n_;
    while (r >= n_) r -= n_;
    return r;
  }

  // a, b < n
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + n_ - b; }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;

 private:
  std::uint64_t n_;
  std::uint64_t inv_;
};

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

/// Deterministic Miller-Rabin with a witness set that is exact for all 64-bit n.
bool is_prime(std::uint64_t n);

/// Exact for every n. Below 3.3e24 a proven Miller-Rabin witness set is used;
/// beyond that a Pocklington certificate is built. Throws PrimalityUndecided if
/// n survives all compositeness checks but cannot be certified.
bool is_prime(const Int& n);

/// Least prime strictly greater than x.
std::uint64_t next_prime_above(std::uint64_t x);

/// Least certified prime strictly greater than x (uncertifiable candidates are skipped).
Int next_prime_above(const Int& x);

/// Distinct prime factors of n by trial division, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest generator of the multiplicative group of Z_p.
std::uint64_t primitive_root(std::uint64_t p);

/// All primes below limit.
std::vector<std::uint32_t> primes_below(std::uint32_t limit);

}  // namespace lacuna
