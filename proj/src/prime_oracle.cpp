#include "lacuna/prime_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lacuna/arith.hpp"
#include "lacuna/errors.hpp"

namespace lacuna {

double upsilon(double x, double mu) {
  const double l = std::log(x);
  return 3.0 * x / (5.0 * l) - mu * x / (l * l);
}

std::uint64_t choose_n(double target, double mu) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 40;
  // n > 21 and n > mu
  std::uint64_t lo = 22;
  if (mu >= 22.0) {
    if (mu >= static_cast<double>(kLimit)) throw std::overflow_error("mu too large");
    lo = static_cast<std::uint64_t>(std::floor(mu)) + 1;
  }
  // upsilon is increasing wherever it is positive, so the predicate
  // upsilon(n) > target is monotone in n
  auto ok = [&](std::uint64_t n) { return upsilon(static_cast<double>(n), mu) > target; };
  if (ok(lo)) return lo;
  std::uint64_t hi = lo;
  while (!ok(hi)) {
    if (hi > kLimit) throw std::overflow_error("no window size below 2^40 for this target and mu");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<std::uint64_t> s_of_q(std::uint64_t q, double cap_exponent) {
  const double cap = std::pow(static_cast<double>(q), cap_exponent);
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t c = k * q + 1;
    if (static_cast<double>(c) >= cap) return std::nullopt;
    if (is_prime(c)) return c;
  }
}

namespace {

std::vector<std::uint64_t> primes_in_window(std::uint64_t lo, std::uint64_t hi) {
  // segmented sieve of [lo, hi) using base primes up to sqrt(hi)
  std::vector<bool> composite(hi - lo, false);
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  for (std::uint64_t b : primes_below(static_cast<std::uint32_t>(root + 1))) {
    std::uint64_t start = std::max(b * b, (lo + b - 1) / b * b);
    for (std::uint64_t j = start; j < hi; j += b) composite[j - lo] = true;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 2); v < hi; ++v) {
    if (!composite[v - lo]) out.push_back(v);
  }
  return out;
}

}  // namespace

Reservoir generate(const OracleConfig& config, SqMemo* memo) {
  if (config.ell < 1) throw std::invalid_argument("ell must be at least 1");
  if (!(config.mu >= 1.0)) throw std::invalid_argument("mu must be at least 1");
  SqMemo local;
  SqMemo& table = memo ? *memo : local;
  const std::uint64_t want = config.total();
  double mu = config.mu;
  for (;;) {
    Reservoir r;
    r.mu = mu;
    r.n = choose_n(static_cast<double>(want), mu);
    std::set<std::uint64_t> seen;
    for (std::uint64_t q : primes_in_window(r.n, 2 * r.n)) {
      auto it = table.find(q);
      if (it == table.end()) it = table.emplace(q, s_of_q(q)).first;
      if (!it->second || !seen.insert(*it->second).second) continue;
      r.primes.push_back({*it->second, q, (*it->second - 1) / q});
      if (r.primes.size() == want) break;
    }
    if (r.primes.size() == want) {
      std::sort(r.primes.begin(), r.primes.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
      return r;
    }
    mu *= 2;
  }
}

PrimeStream::PrimeStream(OracleConfig config, unsigned max_regenerations)
    : config_(config), max_regenerations_(max_regenerations) {
  reservoir_ = generate(config_, &memo_);
  config_.mu = reservoir_.mu;
}

std::uint64_t PrimeStream::next_prime() {
  for (;;) {
    while (cursor_ < reservoir_.primes.size()) {
      const std::uint64_t p = reservoir_.primes[cursor_++].p;
      if (handed_out_.insert(p).second) {
        ++delivered_;
        return p;
      }
    }
    if (regenerations_ >= max_regenerations_) {
      throw BlackBoxFailure("prime reservoir exhausted after " + std::to_string(regenerations_) +
                            " regenerations");
    }
    ++regenerations_;
    config_.ell *= 2;
    reservoir_ = generate(config_, &memo_);
    config_.mu = reservoir_.mu;
    cursor_ = 0;
  }
}

void PrimeStream::reject(std::uint64_t p) {
  if (!handed_out_.count(p)) throw std::invalid_argument("rejecting a prime that was never handed out");
  if (rejected_.insert(p).second) --delivered_;
}

bool PrimeStream::guarantee_reached(std::uint64_t k) const {
  return delivered_ >= config_.beta1 + config_.beta2 + k;
}

}  // namespace lacuna
