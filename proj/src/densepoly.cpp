#include "lacuna/densepoly.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "lacuna/arith.hpp"
#include "ntt.hpp"

namespace lacuna {

DensePolyMod::DensePolyMod(std::uint64_t modulus, std::vector<std::uint64_t> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (modulus_ < 2 || modulus_ >= (std::uint64_t{1} << 32)) {
    throw std::invalid_argument("modulus must satisfy 2 <= m < 2^32");
  }
  for (auto& c : coeffs_) c %= modulus_;
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t DensePolyMod::eval(std::uint64_t x) const {
  FastMod fm(modulus_);
  x %= modulus_;
  std::uint64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = fm.add(fm.mul(acc, x), *it);
  return acc;
}

std::vector<std::uint64_t> evaluate_grid(const DensePolyMod& f) {
  std::vector<std::uint64_t> out(f.modulus());
  for (std::uint64_t x = 0; x < f.modulus(); ++x) out[x] = f.eval(x);
  return out;
}

DensePolyMod interpolate_newton(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                                std::uint64_t p) {
  if (xs.size() != ys.size()) throw std::invalid_argument("point and value counts differ");
  const std::size_t n = xs.size();
  FastMod fm(p);
  // divided differences in place
  std::vector<std::uint64_t> dd(ys.begin(), ys.end());
  for (auto& v : dd) v %= p;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      std::uint64_t denom = fm.sub(xs[i] % p, xs[i - level] % p);
      if (denom == 0) throw std::invalid_argument("interpolation points are not distinct");
      dd[i] = fm.mul(fm.sub(dd[i], dd[i - 1]), inv_mod(denom, p));
    }
  }
  // expand the Newton form by Horner from the innermost coefficient
  std::vector<std::uint64_t> coeffs(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // coeffs <- coeffs * (x - xs[i]) + dd[i]
    std::uint64_t shift = xs[i] % p;
    for (std::size_t k = n - 1; k > 0; --k) coeffs[k] = fm.sub(coeffs[k - 1], fm.mul(coeffs[k], shift));
    coeffs[0] = fm.sub(0, fm.mul(coeffs[0], shift));
    coeffs[0] = fm.add(coeffs[0], dd[i]);
  }
  return DensePolyMod(p, std::move(coeffs));
}

// Over the full field, f(x) = sum_a v_a (1 - (x - a)^(p-1)), which gives
//   [x^0] f = v_0,
//   [x^j] f = -sum_{a != 0} v_a a^(p-1-j)        (1 <= j < p-1),
//   [x^(p-1)] f = -sum_a v_a.
// The power sums S_m = sum_{a != 0} v_a a^m are a length p-1 DFT with a
// primitive root as kernel, computed through Bluestein's chirp with the
// identity i*m = C(i+m, 2) - C(i, 2) - C(m, 2).
DensePolyMod interpolate_full_grid(std::span<const std::uint64_t> values, std::uint64_t p) {
  if (values.size() != p) throw std::invalid_argument("grid interpolation needs exactly p values");
  if (!is_prime(p)) throw std::invalid_argument("grid interpolation needs a prime modulus");
  if (p == 2) {
    std::vector<std::uint64_t> v{values[0] % 2, (values[0] + values[1]) % 2};
    return DensePolyMod(2, std::move(v));
  }
  const std::uint64_t n = p - 1;
  FastMod fm(p);
  const std::uint64_t g = primitive_root(p);
  const std::uint64_t g_inv = inv_mod(g, p);

  std::size_t len = 1;
  while (len < 2 * n - 1) len <<= 1;
  if (len > detail::kMaxNttLength) throw std::domain_error("prime too large for grid interpolation");

  // a_rev[n-1-i] = u_i * g^(-C(i,2)),  u_i = v(g^i)
  std::vector<std::uint64_t> a_rev(n), chirp(2 * n - 1);
  std::uint64_t point = 1, inv_chirp = 1, inv_step = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    a_rev[n - 1 - i] = fm.mul(values[point] % p, inv_chirp);
    inv_chirp = fm.mul(inv_chirp, inv_step);  // g^(-C(i+1,2)) = g^(-C(i,2)) * g^(-i)
    inv_step = fm.mul(inv_step, g_inv);
    point = fm.mul(point, g);
  }
  std::uint64_t c = 1, step = 1;
  for (std::uint64_t k = 0; k < 2 * n - 1; ++k) {
    chirp[k] = c;
    c = fm.mul(c, step);
    step = fm.mul(step, g);
  }
  auto conv = detail::cyclic_convolution_mod(a_rev, chirp, len, p);

  std::vector<std::uint64_t> sums(n);
  inv_chirp = 1;
  inv_step = 1;
  for (std::uint64_t m = 0; m < n; ++m) {
    sums[m] = fm.mul(conv[n - 1 + m], inv_chirp);
    inv_chirp = fm.mul(inv_chirp, inv_step);
    inv_step = fm.mul(inv_step, g_inv);
  }

  std::vector<std::uint64_t> coeffs(p);
  coeffs[0] = values[0] % p;
  for (std::uint64_t j = 1; j < n; ++j) coeffs[j] = fm.sub(0, sums[n - j]);
  coeffs[n] = fm.sub(0, fm.add(sums[0], values[0] % p));
  return DensePolyMod(p, std::move(coeffs));
}

DensePolyMod interpolate_range(std::span<const std::uint64_t> values, std::uint64_t p,
                               const InterpolationOptions& options) {
  if (values.size() != p) throw std::invalid_argument("grid interpolation needs exactly p values");
  if (!is_prime(p)) throw std::invalid_argument("grid interpolation needs a prime modulus");
  for (auto v : values) {
    if (v >= p) throw std::invalid_argument("grid value not reduced modulo p");
  }
  if (p >= options.threshold) return interpolate_full_grid(values, p);
  std::vector<std::uint64_t> xs(p);
  for (std::uint64_t i = 0; i < p; ++i) xs[i] = i;
  return interpolate_newton(xs, values, p);
}

DensePolyMod taylor_shift(const DensePolyMod& f, std::uint64_t gamma) {
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> a = f.coeffs();
  const std::size_t n = a.size();
  if (n <= 1) return f;
  FastMod fm(p);
  gamma %= p;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) a[j] = fm.add(a[j], fm.mul(gamma, a[j + 1]));
  }
  return DensePolyMod(p, std::move(a));
}

std::size_t tau(const DensePolyMod& f) {
  const auto& c = f.coeffs();
  if (c.size() <= 1) return 0;
  return static_cast<std::size_t>(std::count_if(c.begin() + 1, c.end(), [](std::uint64_t x) { return x != 0; }));
}

namespace {

// tau(f(x + gamma)), or any value > cap once that much is certain.
std::size_t shifted_tau_capped(const std::vector<std::uint64_t>& coeffs, std::uint64_t gamma, std::size_t cap,
                               const FastMod& fm) {
  std::vector<std::uint64_t> a = coeffs;
  const std::size_t d = a.size() - 1;
  std::size_t count = 1;  // leading term
  if (count > cap) return count;
  // after round i of synthetic division, a[i] is final
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = d; j-- > i;) a[j] = fm.add(a[j], fm.mul(gamma, a[j + 1]));
    if (i >= 1 && a[i] != 0 && ++count > cap) return count;
  }
  return count;
}

std::optional<ShiftSearch> search_shift(const DensePolyMod& f, std::size_t limit) {
  const std::uint64_t p = f.modulus();
  if (!is_prime(p)) throw std::invalid_argument("min_shift needs a prime modulus");
  const long deg = f.degree();
  if (deg <= 0) return ShiftSearch{0, 0, p > 1};
  const auto d = static_cast<std::uint64_t>(deg);
  if (d >= p) throw std::invalid_argument("min_shift needs deg f < p");
  if (d == 1) {
    if (limit < 1) return std::nullopt;
    return ShiftSearch{0, 1, p > 1};
  }

  FastMod fm(p);
  const auto& coeffs = f.coeffs();

  // factorials for binomials C(n, i) with n <= d < p
  std::vector<std::uint64_t> fact(d + 1), inv_fact(d + 1);
  fact[0] = 1;
  for (std::uint64_t i = 1; i <= d; ++i) fact[i] = fm.mul(fact[i - 1], i);
  inv_fact[d] = inv_mod(fact[d], p);
  for (std::uint64_t i = d; i > 0; --i) inv_fact[i - 1] = fm.mul(inv_fact[i], i);
  auto binom = [&](std::uint64_t n, std::uint64_t k) { return fm.mul(fact[n], fm.mul(inv_fact[k], inv_fact[n - k])); };

  std::map<std::uint64_t, std::size_t> evaluated;  // candidate gamma -> capped tau
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_gamma = 0;
  std::size_t best_count = 0;

  const std::uint64_t last_level = std::min<std::uint64_t>(d - 1, limit);
  std::vector<std::uint64_t> ck;
  for (std::uint64_t k = 1; k <= last_level; ++k) {
    // c_k(y) = sum_{i=0}^{k} f_{d-k+i} C(d-k+i, i) y^i
    ck.assign(k + 1, 0);
    for (std::uint64_t i = 0; i <= k; ++i) ck[i] = fm.mul(coeffs[d - k + i], binom(d - k + i, i));
    for (std::uint64_t y = 0; y < p; ++y) {
      std::uint64_t acc = 0;
      for (std::uint64_t i = k + 1; i-- > 0;) acc = fm.add(fm.mul(acc, y), ck[i]);
      if (acc != 0 || evaluated.count(y)) continue;
      std::size_t t = shifted_tau_capped(coeffs, y, best, fm);
      evaluated.emplace(y, t);
      if (t < best) {
        best = t;
        best_gamma = y;
        best_count = 1;
      } else if (t == best) {
        ++best_count;
        best_gamma = std::min(best_gamma, y);
      }
    }
    if (best <= k) return ShiftSearch{best_gamma, best, best_count > 1};
  }
  if (last_level < d - 1) return std::nullopt;  // minimum is certainly above limit
  if (limit < d) return std::nullopt;

  // Every gamma outside the candidate set has all d nonconstant terms, so the
  // minimum is d, attained by every non-candidate and any candidate with tau == d.
  std::uint64_t count = 0;
  std::optional<std::uint64_t> first;
  for (std::uint64_t y = 0; y < p; ++y) {
    auto it = evaluated.find(y);
    if (it == evaluated.end() || it->second == d) {
      if (!first) first = y;
      ++count;
    }
  }
  return ShiftSearch{*first, static_cast<std::size_t>(d), count > 1};
}

}  // namespace

ShiftSearch min_shift(const DensePolyMod& f) {
  return *search_shift(f, std::numeric_limits<std::size_t>::max());
}

std::optional<ShiftSearch> min_shift_within(const DensePolyMod& f, std::size_t limit) {
  return search_shift(f, limit);
}

}  // namespace lacuna
