#include <algorithm>
#include <array>
#include <cmath>

#include "lacuna/arith.hpp"
#include "lacuna/errors.hpp"

namespace lacuna {

namespace {

constexpr std::array<std::uint64_t, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool strong_probable_prime(const Int& n, unsigned long a) {
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x, base = a, nm1 = n - 1;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Sorenson & Webster: the first 13 prime bases decide every n below this value.
const Int& proven_mr_limit() {
  static const Int limit("3317044064679887385961981", 10);
  return limit;
}

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_below(1u << 16);
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, or 0 if none turned up within the iteration budget.
Int rho_factor(const Int& n, unsigned long budget) {
  for (unsigned long c = 1; c < 20; ++c) {
    Int y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, steps = 0;
    const unsigned long m = 128;
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(Int(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
        steps += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1 && steps < budget);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (steps >= budget) return 0;
  }
  return 0;
}

// Pocklington: with n-1 = F*R, F > sqrt(n) and F completely factored, n is
// prime if every prime factor r of F admits a witness a with a^(n-1) = 1 and
// gcd(a^((n-1)/r) - 1, n) = 1.
bool pocklington(const Int& n) {
  Int m = n - 1;
  Int cofactor = m;
  Int factored = 1;
  std::vector<Int> factors;
  auto take = [&](const Int& p) {
    factors.push_back(p);
    while (mpz_divisible_p(cofactor.get_mpz_t(), p.get_mpz_t())) {
      cofactor /= p;
      factored *= p;
    }
  };
  for (std::uint32_t p : trial_primes()) {
    if (mpz_divisible_ui_p(cofactor.get_mpz_t(), p)) take(Int(p));
  }
  // split the remaining cofactor with rho until enough of n-1 is factored
  std::vector<Int> pending;
  if (cofactor > 1) pending.push_back(cofactor);
  while (!pending.empty() && factored * factored <= n) {
    Int c = gcd(pending.back(), cofactor);
    pending.pop_back();
    if (c == 1) continue;
    bool prime = false, undecided = false;
    try {
      prime = is_prime(c);
    } catch (const PrimalityUndecided&) {
      undecided = true;
    }
    if (prime) {
      take(c);
      continue;
    }
    if (undecided) continue;
    Int d = rho_factor(c, 1ul << 22);
    if (d == 0) continue;
    pending.push_back(d);
    pending.push_back(c / d);
  }
  if (factored * factored <= n) {
    throw PrimalityUndecided("no certificate for " + to_string(n));
  }
  for (const Int& r : factors) {
    bool witnessed = false;
    for (unsigned long a = 2; a < 400 && !witnessed; ++a) {
      Int base = a, x;
      mpz_powm(x.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
      if (x != 1) return false;
      Int e = m / r;
      mpz_powm(x.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
      if (gcd(Int(x - 1), n) == 1) witnessed = true;
    }
    if (!witnessed) throw PrimalityUndecided("no Pocklington witness for " + to_string(n));
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit <= 2) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  return std::all_of(kSmallPrimes.begin(), kSmallPrimes.end(),
                     [n](std::uint64_t a) { return strong_probable_prime(n, a); });
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  for (std::uint32_t p : trial_primes()) {
    if (p > 1000) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static constexpr std::array<unsigned long, 13> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long a : kBases) {
    if (!strong_probable_prime(n, a)) return false;
  }
  if (n < proven_mr_limit()) return true;
  return pocklington(n);
}

std::uint64_t next_prime_above(std::uint64_t x) {
  std::uint64_t c = x + 1;
  while (!is_prime(c)) ++c;
  return c;
}

Int next_prime_above(const Int& x) {
  Int c = x + 1;
  for (;; ++c) {
    try {
      if (is_prime(c)) return c;
    } catch (const PrimalityUndecided&) {
      // skipped: only certified primes are returned
    }
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](std::uint64_t r) { return pow_mod(g, (p - 1) / r, p) != 1; });
    if (ok) return g;
  }
  throw std::invalid_argument("no primitive root: modulus is not prime");
}

}  // namespace lacuna
