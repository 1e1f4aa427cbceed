#include "ltdr/padic/io.hpp"

#include <algorithm>

namespace ltdr::padic {

namespace {

Json integer_list(const Coeffs& c) {
  Json out = Json::array();
  for (const auto& x : c) out.push_back(x.get_str());
  return out;
}

Coeffs parse_integers(const Json& j) {
  Coeffs out;
  for (const auto& x : j) {
    if (x.is_string())
      out.emplace_back(x.get<std::string>());
    else
      out.emplace_back(x.get<long>());
  }
  return out;
}

Json header(const Field& field) {
  Json j;
  j["p"] = std::to_string(field.prime());
  j["m"] = field.degree();
  j["modulus"] = integer_list(field.modulus());
  return j;
}

// Integer coefficients of x * p^{-exponent}, which must be integral.
Coeffs scaled(const Padic& x, long exponent) {
  const auto m = static_cast<std::size_t>(x.field()->degree());
  if (x.is_zero()) return Coeffs(m, 0);
  Coeffs c = x.integer_coeffs();
  const Integer& s = x.field()->prime_power(x.exponent() - exponent);
  for (auto& v : c) v *= s;
  return c;
}

}  // namespace

Json to_json(const Field& field) {
  Json j = header(field);
  j["precision"] = field.precision();
  return j;
}

FieldPtr field_from_json(const Json& j) {
  const long p = j.at("p").is_string() ? std::stol(j.at("p").get<std::string>()) : j.at("p").get<long>();
  FieldPtr f = Field::make(p, j.at("m").get<int>(), j.at("precision").get<int>());
  if (j.contains("modulus") && parse_integers(j.at("modulus")) != f->modulus())
    throw std::invalid_argument("field_from_json: modulus differs from the canonical choice");
  return f;
}

Json to_json(const Padic& x, const FieldPtr& field) {
  const Padic y = x.in_field(field);
  Json j = header(*field);
  j["precision"] = std::min<long>(y.precision(), field->capacity() + std::max<long>(0, y.exponent()));
  j["exponent"] = y.is_zero() ? 0 : y.exponent();
  j["coeffs"] = integer_list(scaled(y, y.is_zero() ? 0 : y.exponent()));
  return j;
}

Json to_json(const PadicMatrix& m, const FieldPtr& field) {
  const PadicMatrix y = materialize(m, field);
  long exponent = 0;
  long precision = field->precision();
  bool any = false;
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    for (Eigen::Index k = 0; k < y.cols(); ++k) {
      precision = std::min(precision, y(i, k).precision());
      if (y(i, k).is_zero()) continue;
      exponent = any ? std::min(exponent, y(i, k).exponent()) : y(i, k).exponent();
      any = true;
    }
  exponent = std::min<long>(exponent, 0);
  Json j = header(*field);
  j["precision"] = precision;
  j["exponent"] = exponent;
  j["rows"] = y.rows();
  j["cols"] = y.cols();
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    for (Eigen::Index k = 0; k < y.cols(); ++k) {
      Coeffs c = scaled(y(i, k), exponent);
      const Integer& mod = field->prime_power(std::clamp<long>(precision - exponent, 0, field->capacity()));
      for (auto& v : c) {
        v %= mod;
        if (v < 0) v += mod;
      }
      entries.push_back(integer_list(c));
    }
  j["coeffs"] = std::move(entries);
  return j;
}

PadicMatrix matrix_from_json(const Json& j) {
  FieldPtr field = field_from_json(j);
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const long exponent = j.value("exponent", 0L);
  const auto& coeffs = j.at("coeffs");
  if (static_cast<Eigen::Index>(coeffs.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: expected rows*cols coefficient lists");
  PadicMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      out(i, k) = Padic::from_coeffs(field, parse_integers(coeffs[i * cols + k]), exponent, field->precision());
  return out;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace ltdr::padic
