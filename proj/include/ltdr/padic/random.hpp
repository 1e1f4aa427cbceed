#pragma once

#include <cstdint>
#include <random>

#include "ltdr/padic/matrix.hpp"

namespace ltdr::padic {

/// Seeded source of random p-adic data.
///
/// Built on std::mt19937_64 and only its raw 64-bit outputs, so sequences are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform residue modulo p^k.
  Integer integer_mod(const Integer& modulus);

  /// Integral element with every coefficient uniform mod p^N.
  Padic integral(const FieldPtr& field);
  Padic unit(const FieldPtr& field);
  /// Element of Z_p (coefficients beyond the constant term zero).
  Padic integral_in_prime_field(const FieldPtr& field);

  PadicMatrix integral_matrix(const FieldPtr& field, Eigen::Index rows, Eigen::Index cols);
  /// Product of random unipotent triangular factors and a unit diagonal.
  PadicMatrix unimodular(const FieldPtr& field, Eigen::Index n, bool prime_field_entries = false);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ltdr::padic
