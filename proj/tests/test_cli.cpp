#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lacuna/arith.hpp"
#include "lacuna/cli.hpp"

using namespace lacuna;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(LACUNA_FIXTURE_DIR) + "/" + name; }

const std::string kCanonical =
    R"({"constant":"0","shift":"3","terms":[{"coeff":"-2","exp":5},{"coeff":"1","exp":15}]})";

}  // namespace

TEST(Cli, ReduceFixtureAtSeven) {
  CliRun r = run({"reduce", "--poly-file", fixture("shifted_example.json"), "--prime", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), json({4, 1, 6, 3, 2, 5}));
}

TEST(Cli, SqOfThree) {
  CliRun r = run({"sq", "--q", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), json::parse(R"({"q":3,"S":7,"conjecture_holds":true})"));
  CliRun two = run({"sq", "--q", "2"});
  EXPECT_EQ(json::parse(two.out)["conjecture_holds"], false);
  CliRun capped = run({"sq", "--q", "3", "--cap-exp", "1.5"});
  EXPECT_TRUE(json::parse(capped.out)["S"].is_null());
}

TEST(Cli, InterpolateRoundTripIsByteIdentical) {
  CliRun r = run({"interpolate", "--poly-file", fixture("shifted_example.json"), "--bounds", "4,2,4,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, kCanonical + "\n");
  CliRun named = run({"interpolate", "--poly", kCanonical, "--bounds", "BN=4,BH=4,BT=2,BA=4"});
  EXPECT_EQ(named.out, r.out);
  CliRun assumed = run({"interpolate", "--poly", kCanonical, "--bounds", "4,2,4,4", "--assume-shift", "3"});
  EXPECT_EQ(assumed.out, r.out);
  CliRun pretty = run({"interpolate", "--poly", kCanonical, "--bounds", "4,2,4,4", "--format", "pretty"});
  EXPECT_EQ(pretty.out, "-2*(x - 3)^5 + (x - 3)^15\n");
}

TEST(Cli, InterpolateDenseInput) {
  // 3x^2 + x - 1/2 = 3 (x + 1/6)^2 - 7/12
  CliRun r = run({"interpolate", "--poly-file", fixture("dense_quadratic.json"), "--bounds", "4,1,4,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, R"({"constant":"-7/12","shift":"-1/6","terms":[{"coeff":"3","exp":2}]})"
                   "\n");
}

TEST(Cli, InterpolateThenEvalAgrees) {
  const std::string input =
      R"({"shift":"-5/3","constant":"2/7","terms":[{"coeff":"4","exp":3},{"coeff":"-9/2","exp":44}]})";
  CliRun r = run({"interpolate", "--poly", input, "--bounds", "3,2,4,6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string output = r.out.substr(0, r.out.size() - 1);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const Int p = next_prime_above(Int(static_cast<unsigned long>(rng() >> 4)));
    const std::string theta = std::to_string(rng() % 100000);
    CliRun a = run({"eval", "--poly", input, "--prime", to_string(p), "--point", theta});
    CliRun b = run({"eval", "--poly", output, "--prime", to_string(p), "--point", theta});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, EvalExample) {
  CliRun r = run({"eval", "--poly", kCanonical, "--prime", "7", "--point", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["value"], "6");
}

TEST(Cli, ShiftReportsTrail) {
  CliRun r = run({"shift", "--poly", kCanonical, "--bounds", "4,2,4,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["alpha"], "3");
  EXPECT_EQ(j["path"], "modular");
  ASSERT_FALSE(j["residues"].empty());
  for (const auto& e : j["residues"]) EXPECT_EQ(e["alpha"].get<std::uint64_t>(), 3u % e["p"].get<std::uint64_t>());
}

TEST(Cli, OracleDump) {
  CliRun r = run({"oracle", "--beta1", "3", "--beta2", "4", "--ell", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  ASSERT_EQ(j["primes"].size(), 9u);
  std::uint64_t last = 0;
  for (const auto& e : j["primes"]) {
    const std::uint64_t p = e["p"], q = e["q"], k = e["k"];
    EXPECT_EQ(p, k * q + 1);
    EXPECT_GT(p, last);
    last = p;
  }
}

TEST(Cli, MuFromEnvironment) {
  setenv("LACUNA_MU", "2", 1);
  CliRun r = run({"oracle", "--beta1", "0", "--beta2", "0", "--ell", "1"});
  CliRun over = run({"oracle", "--beta1", "0", "--beta2", "0", "--ell", "1", "--mu", "3"});
  setenv("LACUNA_MU", "zero", 1);
  CliRun bad = run({"sq", "--q", "3"});
  unsetenv("LACUNA_MU");
  EXPECT_EQ(json::parse(r.out)["mu"], 2.0);
  EXPECT_EQ(json::parse(over.out)["mu"], 3.0);
  EXPECT_EQ(bad.code, kExitInvalid);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitInvalid);
  EXPECT_EQ(run({"bogus"}).code, kExitInvalid);
  EXPECT_EQ(run({"reduce", "--poly", kCanonical, "--prime", "8"}).code, kExitInvalid);
  EXPECT_EQ(run({"reduce", "--prime", "7"}).code, kExitInvalid);
  EXPECT_EQ(run({"reduce", "--poly", kCanonical, "--poly-file", fixture("shifted_example.json"), "--prime", "7"}).code,
            kExitInvalid);
  EXPECT_EQ(run({"interpolate", "--poly", kCanonical, "--bounds", "0,2,4,4"}).code, kExitInvalid);
  EXPECT_EQ(run({"interpolate", "--poly", kCanonical, "--bounds", "4,2,4"}).code, kExitInvalid);
  EXPECT_EQ(run({"interpolate", "--poly", "{\"shift\":1.5}", "--bounds", "4,2,4,4"}).code, kExitInvalid);
  EXPECT_EQ(run({"sq", "--q", "4"}).code, kExitInvalid);
  EXPECT_EQ(run({"interpolate", "--poly", kCanonical, "--bounds", "1,1,1,1"}).code, kExitReconstruction);
  EXPECT_EQ(run({"interpolate", "--poly", kCanonical, "--bounds", "4,1,4,4"}).code, kExitReconstruction);
  CliRun vanish = run({"eval", "--poly", R"({"terms":[{"coeff":"1/3","exp":1}]})", "--prime", "3", "--point", "1"});
  EXPECT_EQ(vanish.code, kExitEvaluation);
  EXPECT_FALSE(vanish.err.empty());
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}
