#pragma once

// Canonical JSON encoding of polynomials. Shifted-lacunary form:
//   {"constant":"0","shift":"3","terms":[{"coeff":"-2","exp":5},{"coeff":"1","exp":15}]}
// Dense form: {"dense":["-1/2","1","3"]} (ascending degree).
// Keys are sorted, terms ascend by exponent and every rational is a string, so
// equal polynomials always encode to identical bytes.

#include <string>
#include <string_view>
#include <variant>

#include "lacuna/blackbox.hpp"

namespace lacuna {

using Polynomial = std::variant<ShiftedLacunary, RationalPoly>;

/// Throws std::invalid_argument on malformed input.
Polynomial parse_polynomial(std::string_view text);

std::string to_json(const ShiftedLacunary& f);
std::string to_json(const RationalPoly& f);
std::string to_json(const Polynomial& f);

BlackBoxPtr make_blackbox(const Polynomial& f);

}  // namespace lacuna
