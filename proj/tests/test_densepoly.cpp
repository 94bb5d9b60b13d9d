#include <gtest/gtest.h>

#include <random>

#include "lacuna/arith.hpp"
#include "lacuna/densepoly.hpp"
#include "support/oracles.hpp"

using namespace lacuna;

namespace {

DensePolyMod poly(std::uint64_t p, std::vector<std::uint64_t> c) { return DensePolyMod(p, std::move(c)); }

DensePolyMod random_poly(std::mt19937_64& rng, std::uint64_t p, std::size_t len) {
  std::vector<std::uint64_t> c(len);
  for (auto& x : c) x = rng() % p;
  return DensePolyMod(p, std::move(c));
}

}  // namespace

TEST(InterpolateRange, PaperExample) {
  // (x-3)^15 - 2(x-3)^5 evaluated at 0..6 modulo 7
  std::vector<std::uint64_t> values{4, 0, 1, 0, 6, 0, 3};
  for (std::uint64_t x = 0; x < 7; ++x) {
    std::int64_t y = static_cast<std::int64_t>(x) - 3;
    mpz_class v = mpz_class(1);
    mpz_class exact;
    mpz_class base = static_cast<long>(y);
    mpz_pow_ui(exact.get_mpz_t(), base.get_mpz_t(), 15);
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), 5);
    exact -= 2 * v;
    EXPECT_EQ(oracle::mod_of(exact, 7), values[x]);
  }
  DensePolyMod f = interpolate_range(values, 7);
  EXPECT_EQ(f, poly(7, {4, 1, 6, 3, 2, 5}));
  InterpolationOptions transform{.threshold = 2};
  EXPECT_EQ(interpolate_range(values, 7, transform), f);
}

TEST(InterpolateRange, TrivialCases) {
  std::vector<std::uint64_t> c(11, 4);
  EXPECT_EQ(interpolate_range(c, 11), poly(11, {4}));
  std::vector<std::uint64_t> id(13);
  for (std::uint64_t i = 0; i < 13; ++i) id[i] = i;
  EXPECT_EQ(interpolate_range(id, 13), poly(13, {0, 1}));
  std::vector<std::uint64_t> zeros(5, 0);
  EXPECT_TRUE(interpolate_range(zeros, 5).is_zero());
}

TEST(InterpolateRange, Errors) {
  std::vector<std::uint64_t> v(6, 0);
  EXPECT_THROW(interpolate_range(v, 7), std::invalid_argument);
  EXPECT_THROW(interpolate_range(v, 6), std::invalid_argument);
  std::vector<std::uint64_t> bad{0, 7, 0, 0, 0, 0, 0};
  EXPECT_THROW(interpolate_range(bad, 7), std::invalid_argument);
}

TEST(InterpolateRange, InvertsGridEvaluation) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : oracle::primes_upto(101)) {
    for (int trial = 0; trial < 5; ++trial) {
      DensePolyMod f = random_poly(rng, p, rng() % p + 1);
      std::vector<std::uint64_t> grid(p);
      for (std::uint64_t x = 0; x < p; ++x) grid[x] = oracle::eval(f.coeffs(), x, p);
      EXPECT_EQ(interpolate_range(grid, p), f) << p;
      EXPECT_EQ(interpolate_full_grid(grid, p), f) << p;
      EXPECT_EQ(evaluate_grid(f), grid);
    }
  }
}

TEST(InterpolateRange, TransformAgreesWithNewtonOnLargerPrimes) {
  std::mt19937_64 rng(9);
  for (std::uint64_t p : {521u, 1031u, 4099u}) {
    std::vector<std::uint64_t> grid(p);
    for (auto& v : grid) v = rng() % p;
    std::vector<std::uint64_t> xs(p);
    for (std::uint64_t i = 0; i < p; ++i) xs[i] = i;
    DensePolyMod newton = interpolate_newton(xs, grid, p);
    EXPECT_EQ(interpolate_full_grid(grid, p), newton);
    EXPECT_EQ(evaluate_grid(newton), grid);
  }
}

TEST(InterpolateNewton, ArbitraryPoints) {
  std::vector<std::uint64_t> xs{3, 9, 1}, ys{2, 5, 7};
  DensePolyMod f = interpolate_newton(xs, ys, 13);
  EXPECT_LE(f.degree(), 2);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(f.eval(xs[i]), ys[i]);
  std::vector<std::uint64_t> dup{1, 1};
  EXPECT_THROW(interpolate_newton(dup, dup, 13), std::invalid_argument);
}

TEST(TaylorShift, Examples) {
  DensePolyMod f = poly(7, {4, 1, 6, 3, 2, 5});
  EXPECT_EQ(taylor_shift(f, 3), poly(7, {0, 0, 0, 1, 0, 5}));
  EXPECT_EQ(taylor_shift(f, 0), f);
  EXPECT_EQ(taylor_shift(poly(5, {0, 0, 1}), 1), poly(5, {1, 2, 1}));
}

TEST(TaylorShift, GroupActionAndPointwise) {
  std::mt19937_64 rng(1);
  for (std::uint64_t p : oracle::primes_upto(31)) {
    for (int trial = 0; trial < 4; ++trial) {
      DensePolyMod f = random_poly(rng, p, rng() % p + 1);
      for (std::uint64_t g = 0; g < p; ++g) {
        DensePolyMod s = taylor_shift(f, g);
        EXPECT_EQ(taylor_shift(s, (p - g) % p), f);
        for (std::uint64_t x = 0; x < p; ++x) EXPECT_EQ(s.eval(x), f.eval((x + g) % p));
        oracle::Poly expect = oracle::shift(f.coeffs(), g, p);
        EXPECT_EQ(s.coeffs(), expect);
      }
    }
  }
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(poly(7, {0, 0, 0, 1, 0, 5})), 2u);
  EXPECT_EQ(tau(poly(7, {4})), 0u);
  EXPECT_EQ(tau(poly(7, {1, 3})), 1u);
  EXPECT_EQ(tau(poly(7, {})), 0u);
}

TEST(MinShift, Examples) {
  EXPECT_EQ(min_shift(poly(7, {4, 1, 6, 3, 2, 5})), (ShiftSearch{3, 2, false}));
  ShiftSearch sq = min_shift(poly(5, {0, 0, 1}));
  EXPECT_EQ(sq.gamma, 0u);
  EXPECT_EQ(sq.tau, 1u);

  // (x-2)^5 + (x-2) over Z_11, expanded independently
  oracle::Poly a = oracle::linear_power(2, 5, 11), b = oracle::linear_power(2, 1, 11);
  a.resize(6, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % 11;
  DensePolyMod f(11, a);
  auto exhaustive = oracle::min_shift_exhaustive(a, 11);
  EXPECT_EQ(exhaustive.gamma, 2u);
  EXPECT_EQ(exhaustive.tau, 2u);
  EXPECT_EQ(exhaustive.attained, 1u);
  EXPECT_EQ(min_shift(f), (ShiftSearch{2, 2, false}));
}

TEST(MinShift, DegenerateInputs) {
  EXPECT_EQ(min_shift(poly(7, {})).tau, 0u);
  EXPECT_EQ(min_shift(poly(7, {})).gamma, 0u);
  EXPECT_EQ(min_shift(poly(7, {3})).tau, 0u);
  EXPECT_EQ(min_shift(poly(7, {3})).gamma, 0u);
  EXPECT_TRUE(min_shift(poly(7, {3, 1})).tie);
}

TEST(MinShift, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(21);
  for (std::uint64_t p : oracle::primes_upto(61)) {
    for (int trial = 0; trial < 30; ++trial) {
      DensePolyMod f;
      if (trial % 2 == 0) {
        f = random_poly(rng, p, rng() % p + 1);
      } else {
        // planted sparse shift so that small minima occur
        std::uint64_t g = rng() % p;
        std::vector<std::uint64_t> c(rng() % p + 1, 0);
        for (int k = 0; k < 3; ++k) c[rng() % c.size()] = rng() % p;
        f = taylor_shift(DensePolyMod(p, c), g);
      }
      auto expect = oracle::min_shift_exhaustive(f.coeffs(), p);
      ShiftSearch got = min_shift(f);
      EXPECT_EQ(got.tau, expect.tau) << "p=" << p;
      EXPECT_EQ(got.tie, expect.attained > 1) << "p=" << p;
      EXPECT_EQ(tau(taylor_shift(f, got.gamma)), got.tau);
      if (f.degree() > 0) EXPECT_EQ(got.gamma, expect.gamma) << "p=" << p;

      for (std::size_t limit = 0; limit <= 4; ++limit) {
        auto within = min_shift_within(f, limit);
        if (expect.tau <= limit) {
          ASSERT_TRUE(within.has_value());
          EXPECT_EQ(within->tau, expect.tau);
          EXPECT_EQ(within->tie, expect.attained > 1);
          if (f.degree() > 0) EXPECT_EQ(within->gamma, expect.gamma);
        } else {
          EXPECT_FALSE(within.has_value());
        }
      }
    }
  }
}
