#include "lacuna/sparsest_shift.hpp"

#include <algorithm>
#include <tuple>

#include "lacuna/errors.hpp"
#include "lacuna/prime_oracle.hpp"
#include "lacuna/roots.hpp"

namespace lacuna {

Bounds Bounds::normalized() const {
  return {std::max<std::uint64_t>(BA, 1), std::max<std::uint64_t>(BT, 1), std::max<std::uint64_t>(BH, 1),
          std::max<std::uint64_t>(BN, 1)};
}

Bounds tight_bounds(const ShiftedLacunary& poly) {
  ShiftedLacunary f = poly;
  f.normalize();
  Bounds b;
  b.BA = size_of(f.shift);
  b.BT = f.terms.size();
  b.BH = size_of(f.constant);
  for (const auto& t : f.terms) b.BH = std::max(b.BH, size_of(t.coeff));
  const std::uint64_t n = f.degree();
  b.BN = n <= 1 ? 0 : bit_length(Int(static_cast<unsigned long>(n - 1)));  // ceil(log2 n)
  return b.normalized();
}

Rat reconstruct_shift(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& residues, std::uint64_t BA) {
  if (residues.empty()) throw NoReconstruction("no residues to reconstruct from");
  Residue acc(0, 1);
  for (const auto& [a, p] : residues) {
    acc = crt_pair(acc, Residue(Int(static_cast<unsigned long>(a)), Int(static_cast<unsigned long>(p))));
  }
  return rational_reconstruct(acc, Int(1) << BA);
}

namespace {

// coefficients of the interpolant through (xs[i], ys[i]) modulo the prime q
std::vector<Int> newton_big(const std::vector<Int>& xs, std::vector<Int> dd, const Int& q) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = rem((dd[i] - dd[i - 1]) * inv_mod(rem(xs[i] - xs[i - level], q), q), q);
    }
  }
  std::vector<Int> c(n, Int(0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = n - 1; k > 0; --k) c[k] = rem(c[k - 1] - c[k] * xs[i], q);
    c[0] = rem(dd[i] - c[0] * xs[i], q);
  }
  return c;
}

bool agrees(const RationalPoly& f, const std::vector<Int>& xs, const std::vector<Int>& ys, const Int& q) {
  try {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (rat_mod(f.eval(Rat(xs[i])), q) != ys[i]) return false;
    }
    return true;
  } catch (const DenominatorVanished&) {
    return false;
  }
}

}  // namespace

RationalPoly dense_case_recover(const ModularBlackBox& bb, const Bounds& bounds_in, std::vector<Int>* primes_used) {
  const Bounds b = bounds_in.normalized();
  const std::uint64_t npts = 2 * b.BT + 1;
  std::vector<Int> xs;
  for (std::uint64_t i = 0; i < npts; ++i) xs.emplace_back(static_cast<unsigned long>(i));

  Int q = next_prime_above(Int(1) << (2 * b.BT * b.BA + b.BH));
  std::vector<Residue> acc(npts, Residue(0, 1));
  std::optional<RationalPoly> candidate;
  constexpr int kMaxPrimes = 64;
  for (int used = 0; used < kMaxPrimes; q = next_prime_above(q)) {
    std::vector<Int> ys;
    try {
      for (const auto& x : xs) ys.push_back(bb.eval_big(q, x));
    } catch (const DenominatorVanished&) {
      continue;
    }
    ++used;
    if (primes_used) primes_used->push_back(q);
    if (candidate && agrees(*candidate, xs, ys, q)) return *candidate;

    std::vector<Int> c = newton_big(xs, ys, q);
    for (std::size_t k = 0; k < npts; ++k) acc[k] = crt_pair(acc[k], Residue(c[k], q));
    candidate.reset();
    try {
      std::vector<Rat> coeffs;
      for (const auto& r : acc) coeffs.push_back(rational_reconstruct_balanced(r));
      candidate = RationalPoly(std::move(coeffs));
    } catch (const NoReconstruction&) {
    }
  }
  throw NoReconstruction("dense recovery did not stabilise; the bounds are likely too small");
}

Rat dense_sparsest_shift(const RationalPoly& f, std::uint64_t BA) {
  const long d = f.degree();
  if (d <= 1) return Rat(0);
  std::vector<Rat> candidates{Rat(0)};
  const auto& a = f.coeffs();
  for (long k = 1; k < d; ++k) {
    // c_k(y) = [x^k] f(x + y) = sum_{i >= k} a_i C(i, k) y^(i-k)
    std::vector<Rat> ck;
    for (long i = k; i <= d; ++i) {
      Int binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(k));
      ck.push_back(a[i] * Rat(binom));
    }
    for (const Rat& y : rational_roots(ck, BA)) candidates.push_back(y);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const Int box = Int(1) << BA;
  Rat best = 0;
  auto key = [&](const Rat& y) { return std::make_tuple(tau(taylor_shift(f, y)), size_of(y)); };
  auto best_key = key(best);
  for (const Rat& y : candidates) {
    if (abs(y.get_num()) > box || y.get_den() > box) continue;
    auto k = key(y);
    if (k < best_key || (k == best_key && y < best)) {
      best = y;
      best_key = k;
    }
  }
  return best;
}

ShiftResult sparsest_shift(const ModularBlackBox& bb, const Bounds& bounds_in, const ShiftOptions& options) {
  const Bounds b = bounds_in.normalized();
  OracleConfig config;
  config.beta1 = 2 * b.BH;
  config.beta2 = b.BN * (3 * b.BT - 1);
  config.ell = 2 * b.BA + 1;
  config.mu = options.mu;
  PrimeStream stream(config, options.max_regenerations);

  ShiftResult result;
  const Int target = Int(1) << (2 * b.BA + 1);
  Int product = 1;
  while (product < target) {
    const std::uint64_t p = stream.next_prime();
    ++result.primes_drawn;
    DensePolyMod fp;
    try {
      fp = reduce_mod(bb, p, options.reduce);
    } catch (const DenominatorVanished&) {
      stream.reject(p);
      continue;
    }
    if (fp.degree() >= static_cast<long>(2 * b.BT + 1)) {
      auto s = min_shift_within(fp, b.BT);
      if (s && !s->tie) {
        result.residues.emplace_back(s->gamma, p);
        product *= static_cast<unsigned long>(p);
      }
      if (product < target && stream.guarantee_reached(config.ell)) {
        throw NoReconstruction("too few primes with a unique sparse shift; the bounds do not hold for this box");
      }
      continue;
    }
    if (result.residues.empty() && stream.guarantee_reached(1)) {
      RationalPoly f = dense_case_recover(bb, b);
      result.alpha = dense_sparsest_shift(f, b.BA);
      result.path = ShiftPath::DenseFallback;
      result.dense = std::move(f);
      return result;
    }
    if (stream.guarantee_reached(config.ell) && product < target) {
      throw NoReconstruction("too few primes with a unique sparse shift; the bounds do not hold for this box");
    }
  }
  result.alpha = reconstruct_shift(result.residues, b.BA);
  result.path = ShiftPath::Modular;
  return result;
}

}  // namespace lacuna
