#include "lacuna/poly_json.hpp"

#include <stdexcept>

#include "json.hpp"

namespace lacuna {

namespace {

using nlohmann::json;

Rat rat_field(const json& j, const char* what) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  throw std::invalid_argument(std::string(what) + " must be a decimal string");
}

ShiftedLacunary parse_lacunary(const json& j) {
  ShiftedLacunary f;
  f.shift = j.contains("shift") ? rat_field(j.at("shift"), "shift") : Rat(0);
  f.constant = j.contains("constant") ? rat_field(j.at("constant"), "constant") : Rat(0);
  if (j.contains("terms")) {
    const json& terms = j.at("terms");
    if (!terms.is_array()) throw std::invalid_argument("terms must be an array");
    for (const json& t : terms) {
      if (!t.is_object() || !t.contains("coeff") || !t.contains("exp")) {
        throw std::invalid_argument("each term needs coeff and exp");
      }
      const json& e = t.at("exp");
      std::uint64_t exp = 0;
      if (e.is_number_unsigned() || (e.is_number_integer() && e.get<long long>() >= 0)) {
        exp = e.get<std::uint64_t>();
      } else if (e.is_string()) {
        exp = std::stoull(e.get<std::string>());
      } else {
        throw std::invalid_argument("exp must be a non-negative integer");
      }
      f.terms.push_back({rat_field(t.at("coeff"), "coeff"), exp});
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "shift" && it.key() != "constant" && it.key() != "terms") {
      throw std::invalid_argument("unknown key: " + it.key());
    }
  }
  f.normalize();
  return f;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed polynomial JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("polynomial JSON must be an object");
  try {
    if (j.contains("dense")) {
      if (j.size() != 1 || !j.at("dense").is_array()) throw std::invalid_argument("dense form is {\"dense\":[...]}");
      std::vector<Rat> coeffs;
      for (const json& c : j.at("dense")) coeffs.push_back(rat_field(c, "dense coefficient"));
      return RationalPoly(std::move(coeffs));
    }
    return parse_lacunary(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed polynomial JSON: ") + e.what());
  }
}

std::string to_json(const ShiftedLacunary& poly) {
  ShiftedLacunary f = poly;
  f.normalize();
  json terms = json::array();
  for (const auto& t : f.terms) terms.push_back({{"coeff", to_string(t.coeff)}, {"exp", t.exp}});
  json j = {{"shift", to_string(f.shift)}, {"constant", to_string(f.constant)}, {"terms", terms}};
  return j.dump();
}

std::string to_json(const RationalPoly& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_string(c));
  return json{{"dense", coeffs}}.dump();
}

std::string to_json(const Polynomial& f) {
  return std::visit([](const auto& g) { return to_json(g); }, f);
}

BlackBoxPtr make_blackbox(const Polynomial& f) {
  return std::visit([](const auto& g) { return make_blackbox(g); }, f);
}

}  // namespace lacuna
