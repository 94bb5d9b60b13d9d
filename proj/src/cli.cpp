#include "lacuna/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/poly_json.hpp"
#include "lacuna/prime_oracle.hpp"
#include "lacuna/sparse_interp.hpp"

namespace lacuna {

namespace {

using nlohmann::json;

struct Settings {
  std::string poly;
  std::string poly_file;
  std::string bounds;
  std::string format = "json";
  double mu = 1.0;
  unsigned threads = 1;
  std::uint64_t threshold = InterpolationOptions{}.threshold;
  std::uint64_t seed = 0;
};

Polynomial load_polynomial(const Settings& s) {
  if (s.poly.empty() == s.poly_file.empty()) {
    throw std::invalid_argument("give exactly one of --poly and --poly-file");
  }
  if (!s.poly.empty()) return parse_polynomial(s.poly);
  std::ifstream in(s.poly_file);
  if (!in) throw std::invalid_argument("cannot read " + s.poly_file);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_polynomial(buf.str());
}

std::uint64_t parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-' || v == 0) {
    throw std::invalid_argument(what + " must be a positive integer, got '" + text + "'");
  }
  return v;
}

// "BA=4,BT=2,BH=4,BN=4" or the positional "4,2,4,4"
Bounds parse_bounds(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--bounds is required");
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 4) throw std::invalid_argument("--bounds needs four entries");
  Bounds b;
  std::uint64_t* slots[4] = {&b.BA, &b.BT, &b.BH, &b.BN};
  const char* names[4] = {"BA", "BT", "BH", "BN"};
  bool seen[4] = {false, false, false, false};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto eq = parts[i].find('=');
    std::size_t slot = i;
    std::string value = parts[i];
    if (eq != std::string::npos) {
      const std::string key = parts[i].substr(0, eq);
      auto it = std::find_if(std::begin(names), std::end(names), [&](const char* n) { return key == n; });
      if (it == std::end(names)) throw std::invalid_argument("unknown bound '" + key + "'");
      slot = static_cast<std::size_t>(it - std::begin(names));
      value = parts[i].substr(eq + 1);
    }
    if (seen[slot]) throw std::invalid_argument(std::string("bound ") + names[slot] + " given twice");
    seen[slot] = true;
    *slots[slot] = parse_positive(value, names[slot]);
  }
  if (b.BA > 30) throw std::invalid_argument("BA above 30 is not supported");
  if (b.BN > 60) throw std::invalid_argument("BN above 60 is not supported");
  return b;
}

ReduceOptions reduce_options(const Settings& s) {
  ReduceOptions r;
  r.threads = std::max(1u, s.threads);
  r.interpolation.threshold = s.threshold;
  return r;
}

InterpOptions interp_options(const Settings& s) {
  InterpOptions o;
  o.reduce = reduce_options(s);
  o.mu = s.mu;
  o.seed = s.seed;
  return o;
}

std::string pretty_rat(const Rat& r) { return to_string(r); }

std::string pretty_lacunary(const ShiftedLacunary& f) {
  std::string base = "x";
  if (f.shift != 0) {
    base = f.shift > 0 ? "(x - " + pretty_rat(f.shift) + ")" : "(x + " + pretty_rat(Rat(-f.shift)) + ")";
  }
  std::string s = f.constant != 0 || f.terms.empty() ? pretty_rat(f.constant) : "";
  for (const auto& t : f.terms) {
    const bool neg = t.coeff < 0;
    const Rat mag = neg ? Rat(-t.coeff) : t.coeff;
    if (s.empty()) {
      s = neg ? "-" : "";
    } else {
      s += neg ? " - " : " + ";
    }
    if (mag != 1) s += pretty_rat(mag) + "*";
    s += base;
    if (t.exp != 1) s += "^" + std::to_string(t.exp);
  }
  return s;
}

void emit(std::ostream& out, const Settings& s, const json& j) {
  if (s.format == "pretty") {
    out << j.dump(2) << "\n";
  } else {
    out << j.dump() << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparsest-shift interpolation of rational polynomials from modular black boxes", "lacuna"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  if (const char* env = std::getenv("LACUNA_MU")) {
    try {
      s.mu = std::stod(env);
    } catch (const std::exception&) {
      err << "error: LACUNA_MU is not a number\n";
      return kExitInvalid;
    }
  }
  app.add_option("--mu", s.mu, "Estimate of Mikawa's constant (default from LACUNA_MU, else 1)");
  app.add_option("--threads", s.threads, "Worker threads for grid evaluation")->check(CLI::PositiveNumber);
  app.add_option("--interp-threshold", s.threshold, "Primes below this use Newton interpolation");
  app.add_option("--seed", s.seed, "Seed for root splitting");
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  auto add_poly = [&](CLI::App* sub) {
    auto* inline_opt = sub->add_option("--poly", s.poly, "Polynomial as inline JSON");
    auto* file_opt = sub->add_option("--poly-file", s.poly_file, "Path of a polynomial JSON file");
    inline_opt->excludes(file_opt);
  };

  std::string prime_text, point_text, assume_shift;
  std::uint64_t prime = 0;
  auto* eval = app.add_subcommand("eval", "f(t) mod p");
  add_poly(eval);
  eval->add_option("--prime", prime_text, "Prime modulus")->required();
  eval->add_option("--point", point_text, "Evaluation point t")->required();

  auto* reduce = app.add_subcommand("reduce", "f^(p), the reduction of f modulo x^p - x, as ascending coefficients");
  add_poly(reduce);
  reduce->add_option("--prime", prime, "Prime modulus below 2^32")->required();

  auto* shift = app.add_subcommand("shift", "Sparsest shift and its residue trail");
  add_poly(shift);
  shift->add_option("--bounds", s.bounds, "BA=..,BT=..,BH=..,BN=..")->required();

  auto* interp = app.add_subcommand("interpolate", "Full sparsest-shifted interpolation");
  add_poly(interp);
  interp->add_option("--bounds", s.bounds, "BA=..,BT=..,BH=..,BN=..")->required();
  interp->add_option("--assume-shift", assume_shift, "Skip the shift search and use this shift");

  std::uint64_t beta1 = 0, beta2 = 0, ell = 1;
  auto* oracle = app.add_subcommand("oracle", "Dump the prime reservoir");
  oracle->add_option("--beta1", beta1)->required();
  oracle->add_option("--beta2", beta2)->required();
  oracle->add_option("--ell", ell)->required();

  std::uint64_t q = 0;
  double cap = kDefaultCapExponent;
  auto* sq = app.add_subcommand("sq", "S(q) and the 2 q ln^2 q check");
  sq->add_option("--q", q, "Prime q")->required();
  sq->add_option("--cap-exp", cap, "Search k q + 1 below q^cap");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (!(s.mu >= 1.0)) throw std::invalid_argument("mu must be at least 1");
    if (*eval) {
      auto bb = make_blackbox(load_polynomial(s));
      const Int p = parse_rat(prime_text).get_num();
      if (parse_rat(prime_text).get_den() != 1 || !is_prime(p)) throw std::invalid_argument("--prime must be a prime");
      const Rat t = parse_rat(point_text);
      const Int theta = t.get_den() == 1 ? rem(t.get_num(), p) : rat_mod(t, p);
      const Int v = bb->eval_big(p, theta);
      if (s.format == "pretty") {
        out << "f(" << to_string(theta) << ") = " << to_string(v) << " (mod " << to_string(p) << ")\n";
      } else {
        emit(out, s, json{{"point", to_string(theta)}, {"prime", to_string(p)}, {"value", to_string(v)}});
      }
    } else if (*reduce) {
      auto bb = make_blackbox(load_polynomial(s));
      if (prime >= (std::uint64_t{1} << 32) || !is_prime(Int(static_cast<unsigned long>(prime)))) {
        throw std::invalid_argument("--prime must be a prime below 2^32");
      }
      DensePolyMod fp = reduce_mod(*bb, prime, reduce_options(s));
      emit(out, s, json(fp.coeffs()));
    } else if (*shift) {
      auto bb = make_blackbox(load_polynomial(s));
      ShiftOptions so;
      so.reduce = reduce_options(s);
      so.mu = s.mu;
      ShiftResult r = sparsest_shift(*bb, parse_bounds(s.bounds), so);
      json trail = json::array();
      for (const auto& [a, p] : r.residues) trail.push_back({{"alpha", a}, {"p", p}});
      emit(out, s,
           json{{"alpha", to_string(r.alpha)},
                {"path", r.path == ShiftPath::Modular ? "modular" : "dense"},
                {"primes_drawn", r.primes_drawn},
                {"residues", trail}});
    } else if (*interp) {
      auto bb = make_blackbox(load_polynomial(s));
      const Bounds b = parse_bounds(s.bounds);
      ShiftedLacunary f = assume_shift.empty() ? full_interpolate(*bb, b, interp_options(s))
                                               : interpolate_with_shift(*bb, b, parse_rat(assume_shift), interp_options(s));
      if (s.format == "pretty") {
        out << pretty_lacunary(f) << "\n";
      } else {
        out << to_json(f) << "\n";
      }
    } else if (*oracle) {
      Reservoir r = generate({beta1, beta2, ell, s.mu});
      json primes = json::array();
      for (const auto& e : r.primes) primes.push_back({{"k", e.k}, {"p", e.p}, {"q", e.q}});
      emit(out, s, json{{"mu", r.mu}, {"n", r.n}, {"primes", primes}});
    } else if (*sq) {
      if (!is_prime(Int(static_cast<unsigned long>(q)))) throw std::invalid_argument("--q must be a prime");
      auto v = s_of_q(q, cap);
      json j{{"q", q}};
      if (v) {
        const double lq = std::log(static_cast<double>(q));
        j["S"] = *v;
        j["conjecture_holds"] = static_cast<double>(*v) < 2.0 * static_cast<double>(q) * lq * lq;
      } else {
        j["S"] = nullptr;
        j["conjecture_holds"] = false;
      }
      emit(out, s, j);
    }
  } catch (const ReconstructionFailure& e) {
    err << "reconstruction failed (bounds too small?): " << e.what() << "\n";
    return kExitReconstruction;
  } catch (const EvaluationFailure& e) {
    err << "black-box failure: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace lacuna
