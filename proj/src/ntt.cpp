#include "ntt.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "lacuna/arith.hpp"

namespace lacuna::detail {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

constexpr u64 pow_c(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Montgomery arithmetic modulo an odd m < 2^30; values are kept in [0, 2m).
struct Montgomery {
  u32 m;
  u32 neg_inv;  // -m^(-1) mod 2^32
  u32 r2;       // 2^64 mod m

  constexpr explicit Montgomery(u32 mod) : m(mod), neg_inv(0), r2(0) {
    u32 inv = mod;
    for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
    neg_inv = ~inv + 1;
    const u64 r = (u64{1} << 32) % mod;
    r2 = static_cast<u32>(r * r % mod);
  }
  constexpr u32 reduce(u64 x) const { return static_cast<u32>((x + u64{static_cast<u32>(x) * neg_inv} * m) >> 32); }
  constexpr u32 mul(u32 a, u32 b) const { return reduce(u64{a} * b); }
  constexpr u32 to(u32 a) const { return mul(a, r2); }
  constexpr u32 from(u32 a) const {
    const u32 x = reduce(a);
    return x >= m ? x - m : x;
  }
};

// In-place iterative radix-2 NTT in Montgomery form; Mod - 1 must be divisible by a.size().
template <u32 Mod, u32 Root>
void ntt(std::vector<u32>& a, bool invert) {
  static constexpr Montgomery mont(Mod);
  constexpr u32 m2 = 2 * Mod;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<u32> w(std::max<std::size_t>(n / 2, 1));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 wl = pow_c(Root, (Mod - 1) / len, Mod);
    if (invert) wl = pow_c(wl, Mod - 2, Mod);
    const std::size_t half = len / 2;
    const u32 step = mont.to(static_cast<u32>(wl));
    w[0] = mont.to(1);
    for (std::size_t k = 1; k < half; ++k) w[k] = mont.mul(w[k - 1], step);
    for (std::size_t i = 0; i < n; i += len) {
      u32* lo = a.data() + i;
      u32* hi = lo + half;
      for (std::size_t k = 0; k < half; ++k) {
        const u32 u = lo[k];
        const u32 v = mont.mul(hi[k], w[k]);
        u32 s = u + v;
        if (s >= m2) s -= m2;
        u32 d = u + m2 - v;
        if (d >= m2) d -= m2;
        lo[k] = s;
        hi[k] = d;
      }
    }
  }
  if (invert) {
    const u32 inv_n = mont.to(static_cast<u32>(pow_c(n, Mod - 2, Mod)));
    for (auto& x : a) x = mont.mul(x, inv_n);
  }
}

// Plain residues of the cyclic convolution modulo Mod.
template <u32 Mod, u32 Root>
std::vector<u32> convolve(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t len) {
  static constexpr Montgomery mont(Mod);
  std::vector<u32> fa(len, 0), fb(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = mont.to(static_cast<u32>(a[i] % Mod));
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = mont.to(static_cast<u32>(b[i] % Mod));
  ntt<Mod, Root>(fa, false);
  ntt<Mod, Root>(fb, false);
  for (std::size_t i = 0; i < len; ++i) fa[i] = mont.mul(fa[i], fb[i]);
  ntt<Mod, Root>(fa, true);
  for (auto& x : fa) x = mont.from(x);
  return fa;
}

constexpr u32 kM1 = 998244353;  // 119 * 2^23 + 1
constexpr u32 kM2 = 167772161;  // 5 * 2^25 + 1
constexpr u32 kM3 = 469762049;  // 7 * 2^26 + 1

}  // namespace

std::vector<u64> cyclic_convolution_mod(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t len,
                                        u64 p) {
  if (len == 0 || (len & (len - 1)) != 0 || len > kMaxNttLength) {
    throw std::invalid_argument("transform length must be a power of two within range");
  }
  if (a.size() > len || b.size() > len) throw std::invalid_argument("operand longer than transform");
  if (p >= (u64{1} << 26)) throw std::domain_error("modulus too large for exact convolution");

  auto r1 = convolve<kM1, 3>(a, b, len);
  auto r2 = convolve<kM2, 3>(a, b, len);
  const u64 inv_m1_mod_m2 = pow_c(kM1, kM2 - 2, kM2);
  const u64 m1_mod_p = kM1 % p;
  std::vector<u64> out(len);

  // each true coefficient is at most min(|a|, |b|) (p-1)^2; two primes suffice below m1 m2
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(std::min(a.size(), b.size())) * (p - 1) * (p - 1);
  if (bound < static_cast<unsigned __int128>(kM1) * kM2) {
    for (std::size_t i = 0; i < len; ++i) {
      const u64 v1 = r1[i];
      const u64 v2 = (r2[i] + kM2 - v1 % kM2) % kM2 * inv_m1_mod_m2 % kM2;
      out[i] = (v1 % p + mul_mod(m1_mod_p, v2, p)) % p;
    }
    return out;
  }

  auto r3 = convolve<kM3, 3>(a, b, len);
  // Garner: x = v1 + m1*v2 + m1*m2*v3
  const u64 m1m2_mod_m3 = u64{kM1} % kM3 * kM2 % kM3;
  const u64 inv_m1m2_mod_m3 = pow_c(m1m2_mod_m3, kM3 - 2, kM3);
  const u64 m1m2_mod_p = mul_mod(kM1 % p, kM2 % p, p);
  for (std::size_t i = 0; i < len; ++i) {
    const u64 v1 = r1[i];
    const u64 v2 = (r2[i] + kM2 - v1 % kM2) % kM2 * inv_m1_mod_m2 % kM2;
    const u64 partial = (v1 + u64{kM1} % kM3 * v2) % kM3;
    const u64 v3 = (r3[i] + kM3 - partial) % kM3 * inv_m1m2_mod_m3 % kM3;
    out[i] = (v1 % p + mul_mod(m1_mod_p, v2, p) + mul_mod(m1m2_mod_p, v3, p)) % p;
  }
  return out;
}

}  // namespace lacuna::detail
