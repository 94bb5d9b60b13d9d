#pragma once

// A deterministic source of primes with a counting guarantee: among any
// beta1 + beta2 + k primes handed out, at least k avoid dividing a fixed C1
// (log2 C1 <= beta1) and have p - 1 not dividing a fixed C2 (log2 C2 <= beta2).
// Primes are S(q), the least prime congruent to 1 mod q, for the primes q in
// a window [n, 2n) sized by the density function upsilon.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace lacuna {

struct OracleConfig {
  std::uint64_t beta1 = 0;
  std::uint64_t beta2 = 0;
  std::uint64_t ell = 1;
  double mu = 1.0;

  std::uint64_t total() const { return beta1 + beta2 + ell; }
};

/// 3x / (5 ln x) - mu x / ln^2 x.
double upsilon(double x, double mu);

/// The least integer n with n > 21, n > mu and upsilon(n, mu) > target.
/// Throws std::overflow_error if n would exceed 2^40.
std::uint64_t choose_n(double target, double mu);

/// Exponent of the search cap q^1.89 used by default.
inline constexpr double kDefaultCapExponent = 1.89;

/// The least prime k*q + 1 below q^cap_exponent, or nullopt if there is none.
std::optional<std::uint64_t> s_of_q(std::uint64_t q, double cap_exponent = kDefaultCapExponent);

struct OraclePrime {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t k = 0;  // p = k*q + 1

  friend bool operator==(const OraclePrime&, const OraclePrime&) = default;
};

struct Reservoir {
  std::uint64_t n = 0;
  double mu = 1.0;                    // value in force after any doubling
  std::vector<OraclePrime> primes;    // ascending by p
};

/// Remembers S(q) across restarts so no primality test is repeated.
using SqMemo = std::map<std::uint64_t, std::optional<std::uint64_t>>;

/// Exactly config.total() distinct primes. Doubles mu and restarts while the
/// window yields too few.
Reservoir generate(const OracleConfig& config, SqMemo* memo = nullptr);

class PrimeStream {
 public:
  /// `max_regenerations` bounds how often an exhausted reservoir is rebuilt.
  explicit PrimeStream(OracleConfig config, unsigned max_regenerations = 10);

  /// The smallest reservoir prime not handed out before. On exhaustion the
  /// reservoir is regenerated with ell doubled; throws BlackBoxFailure once
  /// the regeneration limit is spent.
  std::uint64_t next_prime();

  /// Marks a handed-out prime as unusable (its evaluation failed). Rejected
  /// primes do not count towards the guarantee.
  void reject(std::uint64_t p);

  /// delivered() >= beta1 + beta2 + k.
  bool guarantee_reached(std::uint64_t k) const;

  std::uint64_t delivered() const { return delivered_; }
  const OracleConfig& config() const { return config_; }
  const Reservoir& reservoir() const { return reservoir_; }
  unsigned regenerations() const { return regenerations_; }

 private:
  OracleConfig config_;
  unsigned max_regenerations_;
  unsigned regenerations_ = 0;
  Reservoir reservoir_;
  std::size_t cursor_ = 0;
  std::uint64_t delivered_ = 0;
  std::set<std::uint64_t> handed_out_;
  std::set<std::uint64_t> rejected_;
  SqMemo memo_;
};

}  // namespace lacuna
