#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ltdr/padic/field.hpp"

namespace ltdr::padic {

/// A p-adic valuation as seen at finite precision: either exact, or only a
/// lower bound ("indistinguishable from zero below this").
struct Valuation {
  long value = 0;
  bool exact = false;

  static Valuation exactly(long v) { return {v, true}; }
  static Valuation at_least(long v) { return {v, false}; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// Element of an unramified extension K = Q_{p^m} at finite absolute precision.
///
/// The value is p^exponent * u where u is a polynomial in x with integer
/// coefficients reduced modulo p^(precision - exponent). A nonzero element is
/// kept normalized so that u is a unit; an element indistinguishable from zero
/// has exponent == precision and u == 0.
///
/// A default-constructed or integer-constructed value without a field is an
/// exact integer constant. It adopts the field of whatever it is combined with,
/// which is what lets Eigen build zero and identity matrices of Padic.
class Padic {
 public:
  Padic() = default;
  Padic(long constant) : constant_(constant) {}  // NOLINT: implicit by design of Eigen scalars

  /// Integer n at the field's working precision.
  static Padic from_integer(FieldPtr field, const Integer& n);
  /// Rational a/b (b may contain powers of p).
  static Padic from_rational(FieldPtr field, const Rational& q);
  /// p^exponent * sum coeffs[i] x^i known modulo p^precision.
  static Padic from_coeffs(FieldPtr field, Coeffs coeffs, long exponent, long precision);
  /// p^k exactly, at relative precision = field capacity.
  static Padic prime_power(FieldPtr field, long k);
  /// The generator x of K over Q_p.
  static Padic generator(FieldPtr field);
  /// Teichmüller lift of a residue (vector of m residues mod p, lowest first).
  static Padic teichmueller(FieldPtr field, const std::vector<long>& residue);
  /// Element of K from its coordinates over Q_p (in the basis 1, x, ..., x^{m-1}).
  static Padic from_coordinates(FieldPtr field, const std::vector<Padic>& coords);

  bool has_field() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }
  /// Constant integer, for values without a field.
  const Integer& constant() const { return constant_; }

  long exponent() const { return exponent_; }
  long precision() const;
  long relative_precision() const { return precision() - exponent_; }
  const Coeffs& unit_part() const { return unit_; }

  Valuation valuation() const;
  bool is_zero() const;  // indistinguishable from zero at precision
  bool is_unit() const;  // exact valuation 0
  bool is_integral() const;

  /// Coordinates over Q_p in the basis 1, x, ..., x^{m-1}, as elements of Q_p.
  std::vector<Padic> coordinates() const;
  /// Integer representatives: value = p^exponent * sum integer_coeffs()[i] x^i.
  Coeffs integer_coeffs() const { return unit_; }

  /// Residue in F_{p^m} (integral elements only).
  std::vector<long> residue() const;

  Padic with_precision(long precision) const;
  /// Same value, placed in a field with the given descriptor (must be compatible).
  Padic in_field(FieldPtr field) const;

  Padic inverse() const;
  Padic frobenius(long power = 1) const;
  Padic pow(long e) const;

  Padic operator-() const;
  Padic& operator+=(const Padic& other);
  Padic& operator-=(const Padic& other);
  Padic& operator*=(const Padic& other);
  Padic& operator/=(const Padic& other);

  friend Padic operator+(Padic a, const Padic& b) { return a += b; }
  friend Padic operator-(Padic a, const Padic& b) { return a -= b; }
  friend Padic operator*(Padic a, const Padic& b) { return a *= b; }
  friend Padic operator/(Padic a, const Padic& b) { return a /= b; }

  /// Equality at the common precision: a - b is indistinguishable from zero.
  friend bool operator==(const Padic& a, const Padic& b) { return (a - b).is_zero(); }

  std::string to_string() const;

 private:
  Padic lift_constant(const FieldPtr& field) const;
  void normalize();

  FieldPtr field_;
  Integer constant_ = 0;
  long exponent_ = 0;
  long precision_ = 0;
  Coeffs unit_;
};

std::ostream& operator<<(std::ostream& os, const Padic& x);

constexpr long kInfinitePrecision = std::numeric_limits<long>::max() / 4;

}  // namespace ltdr::padic

namespace Eigen {
template <>
struct NumTraits<ltdr::padic::Padic> : GenericNumTraits<ltdr::padic::Padic> {
  using Real = ltdr::padic::Padic;
  using NonInteger = ltdr::padic::Padic;
  using Literal = ltdr::padic::Padic;
  using Nested = ltdr::padic::Padic;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
