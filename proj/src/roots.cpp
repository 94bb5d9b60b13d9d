#include "lacuna/roots.hpp"

#include <algorithm>
#include <stdexcept>

#include "lacuna/errors.hpp"

namespace lacuna {

namespace {

using Poly = std::vector<std::uint64_t>;

struct Field {
  std::uint64_t r;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mul_mod(a, b, r); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return add_mod(a, b, r); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return sub_mod(a, b, r); }
  std::uint64_t inv(std::uint64_t a) const { return inv_mod(a, r); }

  static void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  // remainder of a modulo nonzero b
  Poly rem(Poly a, const Poly& b) const {
    const std::uint64_t lc_inv = inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t c = mul(a.back(), lc_inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i]));
      a.pop_back();
      trim(a);
    }
    return a;
  }

  Poly quot(Poly a, const Poly& b) const {
    if (a.size() < b.size()) return {};
    Poly q(a.size() - b.size() + 1, 0);
    const std::uint64_t lc_inv = inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t c = mul(a.back(), lc_inv);
      const std::size_t shift = a.size() - b.size();
      q[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i]));
      a.pop_back();
    }
    trim(q);
    return q;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = add(c[i + j], mul(a[i], b[j]));
    trim(c);
    return rem(std::move(c), m);
  }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly result{1};
    result = rem(result, m);
    base = rem(std::move(base), m);
    while (e) {
      if (e & 1) result = mulmod(result, base, m);
      base = mulmod(base, base, m);
      e >>= 1;
    }
    return result;
  }

  Poly monic(Poly f) const {
    const std::uint64_t c = inv(f.back());
    for (auto& x : f) x = mul(x, c);
    return f;
  }

  Poly gcd(Poly a, Poly b) const {
    while (!b.empty()) {
      Poly t = rem(std::move(a), b);
      a = std::move(b);
      b = std::move(t);
    }
    return a.empty() ? a : monic(std::move(a));
  }
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// h monic, squarefree, product of distinct linear factors
void split(const Field& F, const Poly& h, std::uint64_t& state, std::vector<std::uint64_t>& out) {
  const std::size_t deg = h.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(F.sub(0, h[0]));
    return;
  }
  for (;;) {
    state = splitmix(state);
    const std::uint64_t delta = state % F.r;
    Poly w = F.powmod(Poly{delta, 1}, (F.r - 1) / 2, h);
    if (w.empty()) w.push_back(0);
    w[0] = F.sub(w[0], 1);
    Field::trim(w);
    Poly g = F.gcd(h, w);
    if (g.size() > 1 && g.size() < h.size()) {
      split(F, g, state, out);
      split(F, F.monic(F.quot(h, g)), state, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> roots_mod_prime(std::vector<std::uint64_t> coeffs, std::uint64_t r, std::uint64_t seed) {
  if (r < 2 || r >= (std::uint64_t{1} << 63) || !is_prime(r)) {
    throw std::invalid_argument("roots_mod_prime needs a prime below 2^63");
  }
  for (auto& c : coeffs) c %= r;
  Field::trim(coeffs);
  if (coeffs.empty()) throw std::invalid_argument("the zero polynomial has every element as a root");
  std::vector<std::uint64_t> out;
  if (r == 2) {
    for (std::uint64_t x = 0; x < 2; ++x) {
      std::uint64_t acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % 2;
      if (acc == 0) out.push_back(x);
    }
    return out;
  }
  const Field F{r};
  Poly f = F.monic(coeffs);
  if (f[0] == 0) {
    out.push_back(0);
    // remove every factor z
    std::size_t k = 0;
    while (f[k] == 0) ++k;
    f.erase(f.begin(), f.begin() + static_cast<long>(k));
  }
  if (f.size() > 1) {
    // product of the distinct linear factors with nonzero roots: gcd(f, z^(r-1) - 1)
    Poly w = F.powmod(Poly{0, 1}, r - 1, f);
    if (w.empty()) w.push_back(0);
    w[0] = F.sub(w[0], 1);
    Field::trim(w);
    Poly h = w.empty() ? f : F.gcd(f, w);
    std::uint64_t state = seed;
    split(F, h, state, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs, std::uint64_t bits) {
  if (bits > 30) throw std::domain_error("rational root bound above 2^30 is not supported");
  // clear denominators
  Int l = 1;
  for (const auto& c : coeffs) l = lcm(l, Int(c.get_den()));
  std::vector<Int> z;
  for (const auto& c : coeffs) z.push_back(Int(c * l));
  while (!z.empty() && z.back() == 0) z.pop_back();
  if (z.empty()) throw std::invalid_argument("the zero polynomial has every rational as a root");
  std::vector<Rat> out;
  if (z.size() == 1) return out;

  const Int bound = Int(1) << bits;
  std::uint64_t r = next_prime_above(std::uint64_t{1} << (2 * bits + 1));
  while (rem(z.back(), Int(static_cast<unsigned long>(r))) == 0) r = next_prime_above(r);
  const Int rz = static_cast<unsigned long>(r);
  std::vector<std::uint64_t> reduced;
  for (const auto& c : z) reduced.push_back(rem(c, rz).get_ui());
  for (std::uint64_t u : roots_mod_prime(reduced, r)) {
    Rat cand;
    try {
      cand = rational_reconstruct(Residue(Int(static_cast<unsigned long>(u)), rz), bound);
    } catch (const NoReconstruction&) {
      continue;
    }
    Rat acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = acc * cand + Rat(*it);
    if (acc == 0) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lacuna
