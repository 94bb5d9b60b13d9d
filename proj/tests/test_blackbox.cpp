#include <gtest/gtest.h>

#include <random>

#include "lacuna/blackbox.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/poly_json.hpp"
#include "support/oracles.hpp"

using namespace lacuna;

namespace {

ShiftedLacunary paper_poly() {
  return ShiftedLacunary{Rat(3), Rat(0), {{Rat(1), 15}, {Rat(-2), 5}}};
}

ShiftedLacunary random_lacunary(std::mt19937_64& rng, std::uint64_t max_exp) {
  ShiftedLacunary f;
  f.shift = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 6) + 1);
  f.constant = make_rat(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 9) + 1);
  const int t = static_cast<int>(rng() % 5);
  for (int i = 0; i < t; ++i) {
    long num = static_cast<long>(rng() % 2001) - 1000;
    if (num == 0) num = 1;
    f.terms.push_back({make_rat(num, static_cast<long>(rng() % 12) + 1), rng() % max_exp + 1});
  }
  f.normalize();
  return f;
}

std::vector<oracle::LacTerm> oracle_terms(const ShiftedLacunary& f) {
  std::vector<oracle::LacTerm> out;
  for (const auto& t : f.terms) out.push_back({t.coeff, t.exp});
  return out;
}

}  // namespace

TEST(MakeBlackBox, Examples) {
  auto bb = make_blackbox(paper_poly());
  EXPECT_EQ(bb->eval(7, 4), 6u);
  auto five = make_blackbox(ShiftedLacunary{Rat(0), Rat(5), {}});
  for (std::uint64_t p : {7u, 11u, 101u}) {
    for (std::uint64_t x = 0; x < 5; ++x) EXPECT_EQ(five->eval(p, x), 5u);
  }
  auto third = make_blackbox(ShiftedLacunary{Rat(0), Rat(0), {{make_rat(1, 3), 1}}});
  EXPECT_THROW(third->eval(3, 1), DenominatorVanished);
  EXPECT_THROW(third->eval_big(Int(3), Int(1)), DenominatorVanished);
}

TEST(MakeBlackBox, BigPrimeAgreesWithExactValue) {
  ShiftedLacunary f{make_rat(-1, 2), Rat(4), {{Rat(3), 2}, {Rat(1), 9}}};
  auto bb = make_blackbox(f);
  Int p("1000000000000000000000000000057", 10);
  for (long x = -3; x <= 3; ++x) {
    Rat exact = f.eval(Rat(x));
    EXPECT_EQ(bb->eval_big(p, rem(Int(x), p)), rat_mod(exact, p));
  }
}

TEST(ReduceMod, Examples) {
  auto bb = make_blackbox(paper_poly());
  EXPECT_EQ(reduce_mod(*bb, 7), DensePolyMod(7, {4, 1, 6, 3, 2, 5}));
  auto five = make_blackbox(ShiftedLacunary{Rat(0), Rat(5), {}});
  EXPECT_EQ(reduce_mod(*five, 13), DensePolyMod(13, {5}));
  auto unshifted = make_blackbox(ShiftedLacunary{Rat(0), Rat(0), {{Rat(1), 15}, {Rat(-2), 5}}});
  EXPECT_EQ(reduce_mod(*unshifted, 7), DensePolyMod(7, {0, 0, 0, 1, 0, 5}));
  EXPECT_THROW(reduce_mod(*bb, 8), std::invalid_argument);
}

TEST(ReduceMod, MatchesTermwiseFermatReduction) {
  std::mt19937_64 rng(17);
  std::vector<ShiftedLacunary> fixtures{paper_poly()};
  for (int i = 0; i < 40; ++i) fixtures.push_back(random_lacunary(rng, 1u << 12));
  for (const auto& f : fixtures) {
    auto bb = make_blackbox(f);
    for (std::uint64_t p : oracle::primes_upto(101)) {
      auto expect = oracle::fermat_reduce(f.shift, f.constant, oracle_terms(f), p);
      if (!expect) {
        EXPECT_THROW(reduce_mod(*bb, p), DenominatorVanished);
        continue;
      }
      EXPECT_EQ(reduce_mod(*bb, p).coeffs(), *expect) << to_json(f) << " p=" << p;
    }
  }
}

TEST(ReduceMod, ThreadedMatchesSequential) {
  std::mt19937_64 rng(2);
  auto f = random_lacunary(rng, 1000);
  f.shift = Rat(1);  // avoid vanishing denominators
  auto bb = make_blackbox(f);
  ReduceOptions threaded;
  threaded.threads = 4;
  for (std::uint64_t p : {2053u, 10007u}) {
    try {
      EXPECT_EQ(reduce_mod(*bb, p, threaded), reduce_mod(*bb, p));
    } catch (const DenominatorVanished&) {
    }
  }
}

TEST(ReduceMod, CallsTheBoxExactlyPTimes) {
  auto counter = std::make_shared<CountingBlackBox>(make_blackbox(paper_poly()));
  for (std::uint64_t p : {7u, 11u, 101u, 1009u}) {
    counter->reset();
    reduce_mod(*counter, p);
    EXPECT_EQ(counter->calls(), p);
  }
}

TEST(BlackBox, Purity) {
  std::mt19937_64 rng(4);
  auto f = random_lacunary(rng, 500);
  f.shift = Rat(2);
  f.constant = Rat(1);
  for (auto& t : f.terms) t.coeff = Rat(t.coeff.get_num());
  auto bb = make_blackbox(f);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t p = 1000003, x = rng() % p;
    EXPECT_EQ(bb->eval(p, x), bb->eval(p, x));
    std::vector<std::uint64_t> range(3);
    bb->eval_range(p, x, range);
    EXPECT_EQ(range[0], bb->eval(p, x));
  }
}

TEST(ShiftedBlackBox, Examples) {
  auto bb = make_blackbox(paper_poly());
  auto g = shifted_blackbox(bb, Rat(3));
  EXPECT_EQ(g->eval(7, 0), 0u);
  EXPECT_EQ(reduce_mod(*g, 7), DensePolyMod(7, {0, 0, 0, 1, 0, 5}));
  auto same = shifted_blackbox(bb, Rat(0));
  for (std::uint64_t x = 0; x < 11; ++x) EXPECT_EQ(same->eval(11, x), bb->eval(11, x));
  auto ident = make_blackbox(ShiftedLacunary{Rat(0), Rat(0), {{Rat(1), 1}}});
  auto half = shifted_blackbox(ident, make_rat(1, 2));
  EXPECT_EQ(half->eval(5, 0), 3u);
  EXPECT_THROW(half->eval(2, 0), DenominatorVanished);
  EXPECT_EQ(half->eval_big(Int(5), Int(0)), 3);
}

TEST(DenseBlackBox, MatchesLacunaryExpansion) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    auto f = random_lacunary(rng, 40);
    RationalPoly dense = expand(f);
    auto a = make_blackbox(f), b = make_blackbox(dense);
    for (std::uint64_t p : {101u, 103u, 107u}) {
      for (std::uint64_t x = 0; x < 20; ++x) {
        try {
          EXPECT_EQ(a->eval(p, x), b->eval(p, x));
        } catch (const DenominatorVanished&) {
        }
      }
    }
    for (long x = -2; x <= 2; ++x) EXPECT_EQ(dense.eval(Rat(x)), f.eval(Rat(x)));
  }
}

TEST(ProgramBlackBox, EvaluatesStraightLineProgram) {
  // ((x - 3)^15) - 2 * (x - 3)^5
  using I = Instruction;
  std::vector<I> prog{I::var(),    I::constant(Rat(3)), I::sub(0, 1), I::pow(2, 15), I::pow(2, 5),
                      I::constant(Rat(2)), I::mul(5, 4), I::sub(3, 6)};
  ProgramBlackBox box(prog);
  auto reference = make_blackbox(paper_poly());
  for (std::uint64_t p : {7u, 11u, 13u, 10007u}) {
    for (std::uint64_t x = 0; x < 7; ++x) EXPECT_EQ(box.eval(p, x), reference->eval(p, x));
  }
  EXPECT_EQ(reduce_mod(box, 7), DensePolyMod(7, {4, 1, 6, 3, 2, 5}));
  EXPECT_EQ(box.eval_big(Int(7), Int(4)), 6);
  EXPECT_THROW(ProgramBlackBox({I::add(0, 1)}), std::invalid_argument);
  EXPECT_THROW(ProgramBlackBox({}), std::invalid_argument);
  ProgramBlackBox inv({I::var(), I::constant(make_rat(1, 5)), I::mul(0, 1)});
  EXPECT_THROW(inv.eval(5, 1), DenominatorVanished);
}

TEST(RationalPoly, TaylorShiftAndLacunaryForm) {
  RationalPoly f(std::vector<Rat>{Rat(18), Rat(33), Rat(24), Rat(8), Rat(1)});
  RationalPoly g = taylor_shift(f, Rat(-2));
  EXPECT_EQ(g, RationalPoly(std::vector<Rat>{Rat(0), Rat(1), Rat(0), Rat(0), Rat(1)}));
  EXPECT_EQ(tau(g), 2u);
  ShiftedLacunary l = to_lacunary(f, Rat(-2));
  EXPECT_EQ(l.shift, Rat(-2));
  ASSERT_EQ(l.terms.size(), 2u);
  EXPECT_EQ(expand(l), f);
}

TEST(ShiftedLacunary, NormalizeMergesAndSorts) {
  ShiftedLacunary f{Rat(0), Rat(1), {{Rat(2), 5}, {Rat(1), 3}, {Rat(-2), 5}, {Rat(0), 7}}};
  f.normalize();
  ASSERT_EQ(f.terms.size(), 1u);
  EXPECT_EQ(f.terms[0], (Term{Rat(1), 3}));
  ShiftedLacunary bad{Rat(0), Rat(0), {{Rat(1), 0}}};
  EXPECT_THROW(bad.normalize(), std::invalid_argument);
}

TEST(PolyJson, CanonicalRoundTrip) {
  const std::string canonical =
      R"({"constant":"0","shift":"3","terms":[{"coeff":"-2","exp":5},{"coeff":"1","exp":15}]})";
  auto parsed = parse_polynomial(
      R"({"shift":"3","constant":"0","terms":[{"coeff":"1","exp":15},{"coeff":"-2","exp":5}]})");
  ASSERT_TRUE(std::holds_alternative<ShiftedLacunary>(parsed));
  EXPECT_EQ(std::get<ShiftedLacunary>(parsed), [] {
    auto f = paper_poly();
    f.normalize();
    return f;
  }());
  EXPECT_EQ(to_json(parsed), canonical);
  EXPECT_EQ(to_json(parse_polynomial(canonical)), canonical);

  auto dense = parse_polynomial(R"({"dense":["-1/2","1","3"]})");
  ASSERT_TRUE(std::holds_alternative<RationalPoly>(dense));
  EXPECT_EQ(std::get<RationalPoly>(dense).coeffs().size(), 3u);
  EXPECT_EQ(to_json(dense), R"({"dense":["-1/2","1","3"]})");
}

TEST(PolyJson, RejectsMalformedInput) {
  EXPECT_THROW(parse_polynomial("not json"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("[]"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial(R"({"terms":[{"coeff":"1"}]})"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial(R"({"terms":[{"coeff":"1","exp":0}]})"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial(R"({"shift":"1/0"})"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial(R"({"shift":"1","extra":2})"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial(R"({"terms":[{"coeff":"1","exp":-3}]})"), std::invalid_argument);
}
