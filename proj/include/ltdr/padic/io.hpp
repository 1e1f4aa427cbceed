#pragma once

#include <json.hpp>

#include "ltdr/padic/matrix.hpp"

namespace ltdr::padic {

using Json = nlohmann::ordered_json;

/// {p, m, modulus, precision}; integers as decimal strings.
Json to_json(const Field& field);
FieldPtr field_from_json(const Json& j);

/// {p, m, modulus, precision, exponent, coeffs: [str]}.
Json to_json(const Padic& x, const FieldPtr& field);

/// {p, m, modulus, precision, rows, cols, coeffs: [[str]]}, each entry's
/// coefficients scaled to p^exponent where exponent is the common minimum.
Json to_json(const PadicMatrix& m, const FieldPtr& field);
PadicMatrix matrix_from_json(const Json& j);

/// "num/den" (or "num" when integral).
std::string rational_string(const Rational& q);

}  // namespace ltdr::padic
