#include "lacuna/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lacuna/errors.hpp"

namespace lacuna {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  auto parse_int = [](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw std::invalid_argument("malformed rational");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed rational");
    }
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return Int(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text, true));
  Int num = parse_int(text.substr(0, slash), true);
  Int den = parse_int(text.substr(slash + 1), false);
  return make_rat(num, den);
}

std::string to_string(const Int& z) { return z.get_str(10); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::uint64_t bit_length(const Int& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::uint64_t size_of(const Rat& q) {
  return bit_length(q.get_num()) + bit_length(q.get_den()) + 1;
}

double log2_of(const Int& z) {
  if (z <= 0) return -INFINITY;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

Int rem(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

Int remo(const Int& a, const Int& m) {
  if (m <= 0) throw std::invalid_argument("remo: modulus must be positive");
  Int r = rem(a, m);
  return r == 0 ? m : r;
}

std::uint64_t remo(std::uint64_t a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("remo: modulus must be positive");
  std::uint64_t r = a % m;
  return r == 0 ? m : r;
}

Residue::Residue(Int v, Int m) : value(std::move(v)), modulus(std::move(m)) {
  if (modulus < 1) throw std::invalid_argument("residue modulus must be >= 1");
  value = rem(value, modulus);
}

Int Residue::symmetric() const {
  Int half = modulus / 2;
  return value > half ? Int(value - modulus) : value;
}

Residue crt_pair(const Residue& a, const Residue& b) {
  Int g = gcd(a.modulus, b.modulus);
  Int diff = b.value - a.value;
  if (rem(diff, g) != 0) {
    throw InconsistentResidues("residues " + to_string(a.value) + " mod " + to_string(a.modulus) +
                               " and " + to_string(b.value) + " mod " + to_string(b.modulus) +
                               " cannot be combined");
  }
  Int ma = a.modulus / g;
  Int mb = b.modulus / g;
  Int lcm = ma * b.modulus;
  Int t = 0;
  if (mb > 1) t = rem(Int(diff / g) * inv_mod(ma, mb), mb);
  return Residue(a.value + a.modulus * t, lcm);
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return 0;
    throw std::domain_error("not invertible");
  }
  return r;
}

namespace {

Rat reconstruct(const Residue& u, const Int& num_bound, const Int& den_bound) {
  Int r0 = u.modulus, r1 = u.value;
  Int s0 = 0, s1 = 1;
  while (r1 > num_bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0 || abs(s1) > den_bound) {
    throw NoReconstruction("no fraction with bounded numerator and denominator matches " +
                           to_string(u.value) + " mod " + to_string(u.modulus));
  }
  Int a = r1, b = s1;
  if (b < 0) {
    a = -a;
    b = -b;
  }
  if (gcd(a, b) != 1 || gcd(b, u.modulus) != 1) {
    throw NoReconstruction("reconstructed fraction is not reduced for " + to_string(u.value) +
                           " mod " + to_string(u.modulus));
  }
  return make_rat(a, b);
}

}  // namespace

Rat rational_reconstruct(const Residue& u, const Int& bound) {
  return reconstruct(u, bound, bound);
}

Rat rational_reconstruct_balanced(const Residue& u) {
  Int bound;
  Int half = (u.modulus - 1) / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  return reconstruct(u, bound, bound);
}

Int rat_mod(const Rat& q, const Int& m) {
  Int den = rem(q.get_den(), m);
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DenominatorVanished("denominator " + to_string(q.get_den()) + " vanishes modulo " +
                              to_string(m));
  }
  return rem(q.get_num() * inv, m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on signed 128-bit to stay clear of overflow
  __int128 r0 = m, r1 = a % m;
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    __int128 s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("not invertible");
  if (s0 < 0) s0 += m;
  return static_cast<std::uint64_t>(s0);
}

std::uint64_t rat_mod(const Rat& q, std::uint64_t m) {
  std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), m);
  if (den == 0 || std::gcd(den, m) != 1) {
    throw DenominatorVanished("denominator " + to_string(q.get_den()) + " vanishes modulo " +
                              std::to_string(m));
  }
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), m);
  return mul_mod(num, inv_mod(den, m), m);
}

FastMod::FastMod(std::uint64_t n) : n_(n), inv_(~std::uint64_t{0} / n) {
  if (n < 2 || n >= (std::uint64_t{1} << 32)) throw std::invalid_argument("FastMod modulus out of range");
}

std::uint64_t FastMod::pow(std::uint64_t base, std::uint64_t exp) const {
  std::uint64_t result = 1;
  base = reduce(base);
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

}  // namespace lacuna
