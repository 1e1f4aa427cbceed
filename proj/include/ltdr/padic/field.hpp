#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ltdr::padic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficient vector of a polynomial in x, lowest degree first.
using Coeffs = std::vector<Integer>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Raised when a computation cannot be certified at the available precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Descriptor of the unramified extension Q_{p^m} = Q_p[x]/(f) at a working
/// precision N.
///
/// The modulus f is the lowest irreducible monic polynomial mod p in the
/// lexicographic order on (c_{m-1}, ..., c_0). The Frobenius is realized by
/// the Hensel lift r of x^p, so that sigma(sum c_i x^i) = sum c_i r^i.
/// All tables are computed modulo p^capacity, capacity = 2N + 16, which
/// bounds the relative precision any element of this field can carry.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(long p, int degree, int precision);

  long prime() const { return p_; }
  int degree() const { return m_; }
  int precision() const { return precision_; }
  int capacity() const { return capacity_; }

  /// Monic modulus, m+1 coefficients in [0, p).
  const Coeffs& modulus() const { return modulus_; }
  /// sigma(x), reduced mod p^capacity.
  const Coeffs& frobenius_image() const { return sigma_x_[m_ > 1 ? 1 : 0]; }

  /// p^k for 0 <= k <= capacity.
  const Integer& prime_power(long k) const;

  /// Q_p at the same precision (this field when m = 1).
  FieldPtr prime_field() const;

  bool compatible(const Field& other) const;

  std::string describe() const;

  // Coefficient-level ring operations in Z/p^rel [x]/(f).
  Coeffs reduce(Coeffs a, long rel) const;
  Coeffs multiply(const Coeffs& a, const Coeffs& b, long rel) const;
  /// sigma^k applied to a, for any integer k (taken mod m).
  Coeffs frobenius(const Coeffs& a, long k, long rel) const;
  /// Inverse of a unit (a not divisible by p) modulo p^rel.
  Coeffs inverse_unit(const Coeffs& a, long rel) const;

  /// Residue-field arithmetic on vectors of length m with entries in [0, p).
  std::vector<long> residue(const Coeffs& a) const;
  std::vector<long> residue_multiply(const std::vector<long>& a, const std::vector<long>& b) const;
  std::vector<long> residue_power(std::vector<long> a, const Integer& e) const;
  /// A generator of the multiplicative group of the residue field.
  std::vector<long> residue_generator() const;

 private:
  Field(long p, int m, int precision);
  void build();

  long p_;
  int m_;
  int precision_;
  int capacity_;
  Coeffs modulus_;
  std::vector<Integer> powers_;
  // sigma_x_[k] = sigma^k(x); frob_[k][i] = sigma^k(x^i).
  std::vector<Coeffs> sigma_x_;
  std::vector<std::vector<Coeffs>> frob_;
  FieldPtr prime_field_;
};

bool is_prime(long n);

/// Irreducibility of a monic polynomial over F_p (Rabin's test).
bool irreducible_mod_p(const std::vector<long>& monic, long p);

}  // namespace ltdr::padic
